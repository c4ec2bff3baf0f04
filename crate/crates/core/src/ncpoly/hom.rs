//! Algebra maps defined on generators: homomorphism checks, coassociativity,
//! counit-style characters.

use std::collections::BTreeSet;

use serde::Serialize;

use super::expr::{Letter, Monomial, NCExpr};
use super::normal::{mul, normal_form, star};
use super::presentation::{Adjoint, GenId, Presentation, RuleKind};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A map from the generators of a presentation into arity-`k` expressions
/// over the same presentation, extended multiplicatively.
#[derive(Clone, Debug, PartialEq)]
pub struct Hom {
    arity: usize,
    images: Vec<NCExpr>,
    inverses: Vec<Option<NCExpr>>,
}

fn invert_single_term(e: &NCExpr, p: &Presentation) -> Option<NCExpr> {
    if e.num_terms() != 1 {
        return None;
    }
    let (factors, c) = e.terms().next()?;
    let inv_c = c.inverse()?;
    let mut inv = Vec::with_capacity(factors.len());
    for m in factors {
        let mut letters = Vec::with_capacity(m.letters().len());
        for l in m.letters().iter().rev() {
            if !p.generator(l.gen)?.invertible {
                return None;
            }
            letters.push(Letter::new(l.gen, -l.exp));
        }
        inv.push(Monomial(letters));
    }
    Some(NCExpr::term(inv_c, inv))
}

impl Hom {
    /// `images[g]` is the image of generator `g`. Invertible generators
    /// must map to a single invertible tensor monomial.
    pub fn new(p: &Presentation, images: Vec<NCExpr>) -> Result<Self> {
        if images.len() != p.generators().len() {
            let missing = p
                .generators()
                .get(images.len())
                .map_or_else(String::new, |g| g.name.clone());
            return Err(Error::MissingImage(missing));
        }
        let arity = images.first().map_or(1, NCExpr::arity);
        let mut normal = Vec::with_capacity(images.len());
        for img in &images {
            if img.arity() != arity {
                return Err(Error::ArityMismatch {
                    left: arity,
                    right: img.arity(),
                });
            }
            normal.push(normal_form(img, p)?);
        }
        let mut inverses = Vec::with_capacity(images.len());
        for (g, img) in p.generators().iter().zip(&normal) {
            if g.invertible {
                let inv = invert_single_term(img, p)
                    .ok_or_else(|| Error::NonInvertibleImage(g.name.clone()))?;
                inverses.push(Some(normal_form(&inv, p)?));
            } else {
                inverses.push(None);
            }
        }
        Ok(Self {
            arity,
            images: normal,
            inverses,
        })
    }

    /// Build from images of some generators; adjoint partners that are not
    /// listed get `star` of their partner's image.
    pub fn from_assignments(p: &Presentation, assigned: &[(GenId, NCExpr)]) -> Result<Self> {
        let n = p.generators().len();
        let mut images: Vec<Option<NCExpr>> = vec![None; n];
        for (g, img) in assigned {
            if *g >= n {
                return Err(Error::UnknownGenerator(format!("#{g}")));
            }
            images[*g] = Some(img.clone());
        }
        for g in 0..n {
            if images[g].is_none() {
                if let Adjoint::Partner(h) = p.generators()[g].adjoint {
                    if let Some(img) = &images[h] {
                        images[g] = Some(star(img, p)?);
                    }
                }
            }
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(g, img)| img.ok_or_else(|| Error::MissingImage(p.generators()[g].name.clone())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(p, images)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn image(&self, g: GenId) -> &NCExpr {
        &self.images[g]
    }

    /// Image of `g^exp`.
    pub fn image_of_letter(&self, l: Letter, p: &Presentation) -> Result<NCExpr> {
        let base = if l.exp >= 0 {
            &self.images[l.gen]
        } else {
            self.inverses[l.gen].as_ref().ok_or_else(|| {
                Error::NonInvertiblePower(p.generators()[l.gen].name.clone())
            })?
        };
        super::normal::pow(base, l.exp.unsigned_abs(), p)
    }

    pub fn image_of_word(&self, m: &Monomial, p: &Presentation) -> Result<NCExpr> {
        let mut acc = NCExpr::one(self.arity);
        for l in m.letters() {
            acc = mul(&acc, &self.image_of_letter(*l, p)?, p)?;
        }
        Ok(acc)
    }

    /// Apply the map to an arity-1 expression.
    pub fn apply(&self, e: &NCExpr, p: &Presentation) -> Result<NCExpr> {
        self.apply_on_factor(e, 0, p)
    }

    /// Apply the map to tensor factor `factor` of `e`, splicing the image's
    /// factors in place. The result has arity `e.arity() - 1 + self.arity()`.
    pub fn apply_on_factor(&self, e: &NCExpr, factor: usize, p: &Presentation) -> Result<NCExpr> {
        if factor >= e.arity() {
            return Err(Error::ArityMismatch {
                left: e.arity(),
                right: factor + 1,
            });
        }
        let mut out = NCExpr::zero(e.arity() - 1 + self.arity);
        for (factors, c) in e.terms() {
            let img = self.image_of_word(&factors[factor], p)?;
            for (img_factors, ic) in img.terms() {
                let mut spliced = Vec::with_capacity(out.arity());
                spliced.extend(factors[..factor].iter().cloned());
                spliced.extend(img_factors.iter().cloned());
                spliced.extend(factors[factor + 1..].iter().cloned());
                out.add_term(spliced, &(c * ic));
            }
        }
        normal_form(&out, p)
    }

    /// Compose with the flip of tensor factors (arity 2).
    pub fn flipped(&self) -> Self {
        let perm: Vec<usize> = (0..self.arity).rev().collect();
        Self {
            arity: self.arity,
            images: self.images.iter().map(|e| e.permute(&perm)).collect(),
            inverses: self
                .inverses
                .iter()
                .map(|o| o.as_ref().map(|e| e.permute(&perm)))
                .collect(),
        }
    }

    /// Apply `s -> s^{-1}` to every image coefficient.
    pub fn with_inverted_s(&self) -> Self {
        let f = |e: &NCExpr| e.map_coefficients(Scalar::invert_s);
        Self {
            arity: self.arity,
            images: self.images.iter().map(f).collect(),
            inverses: self.inverses.iter().map(|o| o.as_ref().map(f)).collect(),
        }
    }
}

/// One identity checked by [`check_hom`] or [`coassoc_check`].
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub label: String,
    pub kind: String,
    /// Normal form of `lhs - rhs`, rendered in the expression grammar.
    pub residual: String,
    pub residual_terms: usize,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckReport {
    pub checks: Vec<IdentityCheck>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.residual_terms == 0)
    }

    /// Total number of nonzero terms left over across all identities.
    pub fn residual_terms(&self) -> usize {
        self.checks.iter().map(|c| c.residual_terms).sum()
    }

    fn push(&mut self, label: String, kind: &str, residual: &NCExpr, p: &Presentation) {
        self.checks.push(IdentityCheck {
            label,
            kind: kind.to_string(),
            residual: residual.display(p).to_string(),
            residual_terms: residual.num_terms(),
        });
    }
}

fn kind_name(kind: RuleKind) -> &'static str {
    match kind {
        RuleKind::Defining => "defining",
        RuleKind::Normality => "normality",
        RuleKind::Derived => "derived",
    }
}

/// Check that `hom` respects every rule of `p` and the `*`-structure.
pub fn check_hom(hom: &Hom, p: &Presentation) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    for rule in p.rules() {
        let gl = hom.image(rule.left);
        let gr = hom.image(rule.right);
        let lhs = mul(gl, gr, p)?;
        let rhs = mul(gr, gl, p)?.scale(&rule.factor);
        let residual = normal_form(&lhs.sub(&rhs), p)?;
        let names = p.generators();
        let label = format!(
            "{} {} = {} {} {}",
            names[rule.left].name, names[rule.right].name, rule.factor, names[rule.right].name,
            names[rule.left].name
        );
        report.push(label, kind_name(rule.kind), &residual, p);
    }
    for (g, gen) in p.generators().iter().enumerate() {
        let starred = star(hom.image(g), p)?;
        let expected = match gen.adjoint {
            Adjoint::SelfAdjoint => hom.image(g).clone(),
            Adjoint::Partner(h) => hom.image(h).clone(),
            Adjoint::Unitary => hom.image_of_letter(Letter::new(g, -1), p)?,
        };
        let residual = normal_form(&starred.sub(&expected), p)?;
        report.push(format!("star({})", gen.name), "adjoint", &residual, p);
    }
    Ok(report)
}

/// Words checked by [`coassoc_check`]: every generator (and inverse), plus
/// every word of up to `degree` letters when `degree >= 2`.
pub fn coassoc_words(p: &Presentation, degree: usize) -> Vec<Monomial> {
    let mut alphabet = Vec::new();
    for (g, gen) in p.generators().iter().enumerate() {
        alphabet.push(Letter::new(g, 1));
        if gen.invertible {
            alphabet.push(Letter::new(g, -1));
        }
    }
    let mut words = BTreeSet::new();
    let mut frontier: Vec<Vec<Letter>> = alphabet.iter().map(|l| vec![*l]).collect();
    for w in &frontier {
        words.insert(w.clone());
    }
    for _ in 1..degree.max(1) {
        let mut next = Vec::new();
        for w in &frontier {
            for l in &alphabet {
                let mut w2 = w.clone();
                w2.push(*l);
                words.insert(w2.clone());
                next.push(w2);
            }
        }
        frontier = next;
    }
    // keep generator-first ordering: shorter words first
    let mut out: Vec<Vec<Letter>> = words.into_iter().collect();
    out.sort_by_key(Vec::len);
    out.into_iter().map(Monomial).collect()
}

/// `(Δ⊗id)Δ(w) = (id⊗Δ)Δ(w)` for the words from [`coassoc_words`].
pub fn coassoc_check(hom: &Hom, p: &Presentation, degree: usize) -> Result<CheckReport> {
    if hom.arity() != 2 {
        return Err(Error::ArityMismatch {
            left: hom.arity(),
            right: 2,
        });
    }
    let mut report = CheckReport::default();
    for w in coassoc_words(p, degree) {
        let delta = hom.image_of_word(&w, p)?;
        let left = hom.apply_on_factor(&delta, 0, p)?;
        let right = hom.apply_on_factor(&delta, 1, p)?;
        let residual = normal_form(&left.sub(&right), p)?;
        report.push(format!("{}", w.display(p)), "coassociativity", &residual, p);
    }
    Ok(report)
}

/// A multiplicative map from the generators to scalars, used for
/// counit-style checks.
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    values: Vec<Scalar>,
}

impl Character {
    pub fn new(p: &Presentation, values: Vec<Scalar>) -> Result<Self> {
        if values.len() != p.generators().len() {
            return Err(Error::MissingImage(format!(
                "character needs {} values",
                p.generators().len()
            )));
        }
        Ok(Self { values })
    }

    pub fn value(&self, g: GenId) -> &Scalar {
        &self.values[g]
    }

    pub fn eval_word(&self, m: &Monomial, p: &Presentation) -> Result<Scalar> {
        let mut acc = Scalar::one();
        for l in m.letters() {
            let v = self.values[l.gen].powi(i64::from(l.exp)).ok_or_else(|| {
                Error::NonInvertibleImage(p.generators()[l.gen].name.clone())
            })?;
            acc = &acc * &v;
        }
        Ok(acc)
    }

    /// Evaluate on tensor factor `factor`, dropping it. `e` needs arity >= 2.
    pub fn apply_on_factor(&self, e: &NCExpr, factor: usize, p: &Presentation) -> Result<NCExpr> {
        if e.arity() < 2 || factor >= e.arity() {
            return Err(Error::ArityMismatch {
                left: e.arity(),
                right: factor + 1,
            });
        }
        let mut out = NCExpr::zero(e.arity() - 1);
        for (factors, c) in e.terms() {
            let v = self.eval_word(&factors[factor], p)?;
            let mut rest = factors.clone();
            rest.remove(factor);
            out.add_term(rest, &(c * &v));
        }
        normal_form(&out, p)
    }

    /// `χ(g)χ(h) - c χ(h)χ(g)` for every rule.
    pub fn check_relations(&self, p: &Presentation) -> CheckReport {
        let mut report = CheckReport::default();
        for rule in p.rules() {
            let prod = &self.values[rule.left] * &self.values[rule.right];
            let residual = &prod - &(&prod * &rule.factor);
            let names = p.generators();
            report.push(
                format!("{} {}", names[rule.left].name, names[rule.right].name),
                kind_name(rule.kind),
                &NCExpr::scalar(residual, 1),
                p,
            );
        }
        report
    }
}
