//! The twisted upper-triangular quantum group: its normal-generator and
//! polar presentations, the coproduct and the symmetry checks around it.

use serde::Serialize;

use crate::error::Result;
use crate::ncpoly::{
    oracle,
    check_hom, coassoc_check, mul, normal_form, scalar_ratio, star, Adjoint, Character,
    CheckReport, GenId, Generator, Hom, Monomial, NCExpr, Presentation, Rule, RuleKind,
};
use crate::scalar::Scalar;

/// Generator indices of [`qtriag_presentation`], in normal order.
pub const BS: GenId = 0;
pub const B: GenId = 1;
pub const A: GenId = 2;
pub const AS: GenId = 3;

/// Generator indices of [`polar_presentation`], in normal order.
pub const M_B: GenId = 0;
pub const M_A: GenId = 1;
pub const PH_B: GenId = 2;
pub const PH_A: GenId = 3;

/// A relation `lhs = rhs` between arity-1 expressions.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub kind: RuleKind,
    pub lhs: NCExpr,
    pub rhs: NCExpr,
}

impl Relation {
    /// Normal form of `lhs - rhs`.
    pub fn residual(&self, p: &Presentation) -> Result<NCExpr> {
        normal_form(&self.lhs.sub(&self.rhs), p)
    }
}

fn rule(left: GenId, right: GenId, factor: Scalar, kind: RuleKind) -> Rule {
    Rule {
        left,
        right,
        factor,
        kind,
    }
}

fn word(pairs: &[(GenId, i32)]) -> NCExpr {
    NCExpr::monomial(Monomial::from_pairs(pairs))
}

/// Normal generators `a` (invertible) and `b` with `ab = ba`,
/// `a b* = q b* a`, normality of both, and the two adjoint consequences.
pub fn qtriag_presentation() -> Presentation {
    let q = Scalar::q();
    Presentation::new(
        "qtriag",
        vec![
            Generator::new("bs", false, Adjoint::Partner(B)),
            Generator::new("b", false, Adjoint::Partner(BS)),
            Generator::new("a", true, Adjoint::Partner(AS)),
            Generator::new("as", true, Adjoint::Partner(A)),
        ],
        vec![
            rule(B, BS, Scalar::one(), RuleKind::Normality),
            rule(A, BS, q.clone(), RuleKind::Defining),
            rule(A, B, Scalar::one(), RuleKind::Defining),
            rule(AS, BS, Scalar::one(), RuleKind::Derived),
            rule(AS, B, q.inverse().expect("q is a unit"), RuleKind::Derived),
            rule(AS, A, Scalar::one(), RuleKind::Normality),
        ],
    )
    .expect("qtriag presentation is well formed")
}

/// Phases `Ph_a`, `Ph_b` (unitary) and moduli `M_a`, `M_b` (positive,
/// invertible). Each phase scales the other generator's modulus by `s^4`.
pub fn polar_presentation() -> Presentation {
    let s4 = Scalar::s_pow(4);
    Presentation::new(
        "polar",
        vec![
            Generator::new("Mb", true, Adjoint::SelfAdjoint),
            Generator::new("Ma", true, Adjoint::SelfAdjoint),
            Generator::new("Phb", true, Adjoint::Unitary),
            Generator::new("Pha", true, Adjoint::Unitary),
        ],
        vec![
            rule(M_A, M_B, Scalar::one(), RuleKind::Defining),
            rule(PH_B, M_B, Scalar::one(), RuleKind::Defining),
            rule(PH_B, M_A, s4.clone(), RuleKind::Defining),
            rule(PH_A, M_B, s4, RuleKind::Defining),
            rule(PH_A, M_A, Scalar::one(), RuleKind::Defining),
            rule(PH_A, PH_B, Scalar::one(), RuleKind::Defining),
        ],
    )
    .expect("polar presentation is well formed")
}

fn rule_relations(p: &Presentation) -> Vec<Relation> {
    p.rules()
        .iter()
        .map(|r| {
            let g = p.generators();
            Relation {
                name: format!("{} {} = c {} {}", g[r.left].name, g[r.right].name, g[r.right].name, g[r.left].name),
                kind: r.kind,
                lhs: word(&[(r.left, 1), (r.right, 1)]),
                rhs: word(&[(r.right, 1), (r.left, 1)]).scale(&r.factor),
            }
        })
        .collect()
}

/// The six q-triangular relations as explicit equations.
pub fn qtriag_relations() -> Vec<Relation> {
    rule_relations(&qtriag_presentation())
}

/// The polar relations: the six rules plus the two inverse-phase forms
/// `Ph_a* M_b = s^-4 M_b Ph_a*` and `Ph_b* M_a = s^-4 M_a Ph_b*`.
pub fn polar_relations() -> Vec<Relation> {
    let p = polar_presentation();
    let mut out = rule_relations(&p);
    let s_m4 = Scalar::s_pow(-4);
    for (ph, m, name) in [(PH_A, M_B, "Pha* Mb = s^-4 Mb Pha*"), (PH_B, M_A, "Phb* Ma = s^-4 Ma Phb*")] {
        out.push(Relation {
            name: name.to_string(),
            kind: RuleKind::Derived,
            lhs: word(&[(ph, -1), (m, 1)]),
            rhs: word(&[(m, 1), (ph, -1)]).scale(&s_m4),
        });
    }
    out
}

/// Scalars read off the polar presentation with `a = Ph_a M_a`, `b = Ph_b M_b`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolarDerivation {
    /// `a b* / b* a`.
    pub q: String,
    /// `a b / b a`.
    pub ab_ratio: String,
    #[serde(skip)]
    pub q_scalar: Scalar,
    #[serde(skip)]
    pub ab_scalar: Scalar,
}

/// Compute the q-commutation scalars of `a`, `b` inside a polar-type
/// presentation `p` (for example [`polar_presentation`] or its
/// `s -> 1/s` image).
pub fn derive_q_in(p: &Presentation) -> Result<PolarDerivation> {
    let a = word(&[(PH_A, 1), (M_A, 1)]);
    let b = word(&[(PH_B, 1), (M_B, 1)]);
    let bs = star(&b, p)?;
    let q = scalar_ratio(&mul(&a, &bs, p)?, &mul(&bs, &a, p)?, p)?;
    let ab = scalar_ratio(&mul(&a, &b, p)?, &mul(&b, &a, p)?, p)?;
    Ok(PolarDerivation {
        q: q.to_string(),
        ab_ratio: ab.to_string(),
        q_scalar: q,
        ab_scalar: ab,
    })
}

/// `q` as derived from [`polar_presentation`]; equals `s^8`.
pub fn derive_q_from_polar() -> Result<Scalar> {
    Ok(derive_q_in(&polar_presentation())?.q_scalar)
}

/// `Δ(a) = a⊗a`, `Δ(b) = a⊗b + b⊗a^-1`, adjoints by `*`.
pub fn coproduct(p: &Presentation) -> Result<Hom> {
    let a = Monomial::letter(A, 1);
    let delta_a = NCExpr::tensor(vec![a.clone(), a.clone()]);
    let delta_b = NCExpr::tensor(vec![a, Monomial::letter(B, 1)])
        .add(&NCExpr::tensor(vec![Monomial::letter(B, 1), Monomial::letter(A, -1)]));
    Hom::from_assignments(p, &[(A, delta_a), (B, delta_b)])
}

fn grouplike_inverse_check(hom: &Hom, p: &Presentation, report: &mut CheckReport) -> Result<()> {
    let inv = Monomial::letter(A, -1);
    let img = hom.image_of_word(&inv, p)?;
    let expected = NCExpr::tensor(vec![inv.clone(), inv]);
    let residual = normal_form(&img.sub(&expected), p)?;
    report.checks.push(crate::ncpoly::IdentityCheck {
        label: "Δ(a^-1) = a^-1 ⊗ a^-1".into(),
        kind: "inverse".into(),
        residual: residual.display(p).to_string(),
        residual_terms: residual.num_terms(),
    });
    Ok(())
}

/// Homomorphism, adjoint and degree-2 coassociativity checks of the
/// coproduct on [`qtriag_presentation`].
pub fn check_coproduct() -> Result<CheckReport> {
    let p = qtriag_presentation();
    let hom = coproduct(&p)?;
    let mut report = check_hom(&hom, &p)?;
    report.checks.extend(coassoc_check(&hom, &p, 2)?.checks);
    grouplike_inverse_check(&hom, &p, &mut report)?;
    Ok(report)
}

/// Flip the tensor legs of the coproduct and substitute `s -> 1/s`; the
/// result must be a coassociative `*`-homomorphism for the substituted
/// presentation.
pub fn check_flip_symmetry() -> Result<CheckReport> {
    flip_report(1)
}

/// [`check_flip_symmetry`] with the flip applied `flips` times.
pub fn flip_report(flips: usize) -> Result<CheckReport> {
    let p = qtriag_presentation();
    let mut hom = coproduct(&p)?;
    let mut target = p.clone();
    for _ in 0..flips {
        hom = hom.flipped().with_inverted_s();
        target = target.with_inverted_s();
    }
    let mut report = check_hom(&hom, &target)?;
    report.checks.extend(coassoc_check(&hom, &target, 2)?.checks);
    Ok(report)
}

/// Counit candidate `ε(a) = 1`, `ε(b) = 0`. Not part of the source
/// construction; kept as a sanity instrument only.
#[derive(Clone, Debug, Serialize)]
pub struct CounitReport {
    pub label: &'static str,
    pub relations: CheckReport,
    pub counit_identities: CheckReport,
}

impl CounitReport {
    pub fn passed(&self) -> bool {
        self.relations.passed() && self.counit_identities.passed()
    }
}

pub fn counit_candidate_check() -> Result<CounitReport> {
    let p = qtriag_presentation();
    let hom = coproduct(&p)?;
    let eps = Character::new(
        &p,
        vec![Scalar::zero(), Scalar::zero(), Scalar::one(), Scalar::one()],
    )?;
    let mut identities = CheckReport::default();
    for (g, gen) in p.generators().iter().enumerate() {
        let target = NCExpr::gen(g, 1);
        for (side, factor) in [("(ε⊗id)", 0), ("(id⊗ε)", 1)] {
            let got = eps.apply_on_factor(hom.image(g), factor, &p)?;
            let residual = normal_form(&got.sub(&target), &p)?;
            identities.checks.push(crate::ncpoly::IdentityCheck {
                label: format!("{side}Δ({}) = {}", gen.name, gen.name),
                kind: "counit".into(),
                residual: residual.display(&p).to_string(),
                residual_terms: residual.num_terms(),
            });
        }
    }
    Ok(CounitReport {
        label: "extrapolated candidate",
        relations: eps.check_relations(&p),
        counit_identities: identities,
    })
}

/// One cell of the q-ladder: `a^m (b*)^n = q^{mn} (b*)^n a^m`.
#[derive(Clone, Debug, Serialize)]
pub struct LadderCell {
    pub m: i32,
    pub n: i32,
    /// Normal form from the rewriting engine.
    pub normal_form: String,
    /// Matches `q^{mn} (b*)^n a^m`.
    pub matches_law: bool,
    /// Matches the one-swap-at-a-time oracle.
    pub matches_oracle: bool,
}

/// Check the q-ladder for `0 ≤ m, n ≤ max` against the closed law and the
/// step-by-step rewriting oracle.
pub fn q_ladder(max: i32) -> Result<Vec<LadderCell>> {
    let p = qtriag_presentation();
    let mut out = Vec::new();
    for m in 0..=max {
        for n in 0..=max {
            let w = Monomial::from_pairs(&[(A, m), (BS, n)]);
            let fast = normal_form(&NCExpr::monomial(w.clone()), &p)?;
            let law = NCExpr::monomial(Monomial::from_pairs(&[(BS, n), (A, m)]))
                .scale(&Scalar::q().powi(i64::from(m * n)).expect("q is a unit"));
            let law = normal_form(&law, &p)?;
            let limit = crate::ncpoly::rewrite_budget(w.length().max(1) * 2);
            let slow = oracle::leftmost_normal_form(&oracle::unit_letters(&w), &p, limit)
                .map(|(c, word)| NCExpr::monomial(oracle::compress(&word)).scale(&c));
            out.push(LadderCell {
                m,
                n,
                normal_form: fast.display(&p).to_string(),
                matches_law: fast == law,
                matches_oracle: slow.as_ref() == Some(&fast),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::{coassoc_words, oracle, parse_expr};

    fn nf(text: &str, p: &Presentation) -> NCExpr {
        normal_form(&parse_expr(text, p).unwrap(), p).unwrap()
    }

    #[test]
    fn qtriag_relation_count() {
        let p = qtriag_presentation();
        let count = |k| p.rules().iter().filter(|r| r.kind == k).count();
        assert_eq!(count(RuleKind::Defining), 2);
        assert_eq!(count(RuleKind::Normality), 2);
        assert_eq!(count(RuleKind::Derived), 2);
    }

    #[test]
    fn qtriag_examples() {
        let p = qtriag_presentation();
        assert_eq!(nf("a bs", &p), nf("s^8 bs a", &p));
        assert_eq!(nf("as b", &p), nf("s^-8 b as", &p));
    }

    #[test]
    fn derived_rules_are_adjoints_of_defining_ones() {
        let p = qtriag_presentation();
        for rel in qtriag_relations() {
            let diff = rel.lhs.sub(&rel.rhs);
            assert!(star(&diff, &p).unwrap().is_zero(), "{}", rel.name);
        }
    }

    #[test]
    fn polar_examples() {
        let p = polar_presentation();
        assert_eq!(nf("Pha Mb", &p), nf("s^4 Mb Pha", &p));
        assert_eq!(nf("Ma Mb", &p), nf("Mb Ma", &p));
        assert_eq!(nf("Phbi Ma", &p), nf("s^-4 Ma Phbi", &p));
        assert_eq!(polar_relations().len(), 8);
        for rel in polar_relations() {
            assert!(rel.residual(&p).unwrap().is_zero(), "{}", rel.name);
        }
    }

    #[test]
    fn polar_gives_q() {
        assert_eq!(derive_q_from_polar().unwrap(), Scalar::s_pow(8));
        let d = derive_q_in(&polar_presentation()).unwrap();
        assert!(d.ab_scalar.is_one());
        let inv = derive_q_in(&polar_presentation().with_inverted_s()).unwrap();
        assert_eq!(inv.q_scalar, Scalar::s_pow(-8));
    }

    #[test]
    fn coproduct_checks_pass() {
        let report = check_coproduct().unwrap();
        assert!(report.passed(), "{report:?}");
        assert!(report.checks.iter().any(|c| c.kind == "coassociativity"));
    }

    #[test]
    fn coassociativity_on_b_is_three_terms() {
        let p = qtriag_presentation();
        let hom = coproduct(&p).unwrap();
        let delta = hom.image(B);
        let left = hom.apply_on_factor(delta, 0, &p).unwrap();
        let m = |g, e| Monomial::letter(g, e);
        let expected = NCExpr::tensor(vec![m(A, 1), m(A, 1), m(B, 1)])
            .add(&NCExpr::tensor(vec![m(A, 1), m(B, 1), m(A, -1)]))
            .add(&NCExpr::tensor(vec![m(B, 1), m(A, -1), m(A, -1)]));
        assert_eq!(left, expected);
    }

    #[test]
    fn naive_b_coproduct_breaks_the_relation() {
        let p = qtriag_presentation();
        let a = Monomial::letter(A, 1);
        let b = Monomial::letter(B, 1);
        let hom = Hom::from_assignments(
            &p,
            &[(A, NCExpr::tensor(vec![a.clone(), a])), (B, NCExpr::tensor(vec![b.clone(), b]))],
        )
        .unwrap();
        let report = check_hom(&hom, &p).unwrap();
        assert!(!report.passed());
    }

    #[test]
    fn identity_map_is_a_hom() {
        let p = qtriag_presentation();
        let images = (0..4).map(|g| NCExpr::gen(g, 1)).collect();
        let hom = Hom::new(&p, images).unwrap();
        assert!(check_hom(&hom, &p).unwrap().passed());
    }

    #[test]
    fn flip_symmetry_holds_and_squares_to_identity() {
        assert!(check_flip_symmetry().unwrap().passed());
        let twice = flip_report(2).unwrap();
        let direct = flip_report(0).unwrap();
        assert_eq!(
            serde_json::to_string(&twice).unwrap(),
            serde_json::to_string(&direct).unwrap()
        );
        // the coproduct is not cocommutative, so the flip changes it
        let p = qtriag_presentation();
        let delta = coproduct(&p).unwrap();
        assert_ne!(delta.flipped().image(B), delta.image(B));
    }

    #[test]
    fn flipped_b_image() {
        let p = qtriag_presentation();
        let flipped = coproduct(&p).unwrap().flipped();
        let m = |g, e| Monomial::letter(g, e);
        let expected = NCExpr::tensor(vec![m(B, 1), m(A, 1)])
            .add(&NCExpr::tensor(vec![m(A, -1), m(B, 1)]));
        assert_eq!(flipped.image(B), &expected);
    }

    #[test]
    fn counit_candidate() {
        let r = counit_candidate_check().unwrap();
        assert_eq!(r.label, "extrapolated candidate");
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn b_coproduct_multidegrees() {
        let p = qtriag_presentation();
        let hom = coproduct(&p).unwrap();
        let mut degrees = hom.image(B).multidegrees(&p);
        degrees.sort();
        let deg = |pairs: &[(GenId, i64)]| pairs.iter().copied().collect();
        let mut expected = vec![
            vec![deg(&[(A, 1)]), deg(&[(BS, 1)])],
            vec![deg(&[(BS, 1)]), deg(&[(A, -1)])],
        ];
        expected.sort();
        assert_eq!(degrees, expected);
    }

    #[test]
    fn q_ladder_matches_oracle() {
        let p = qtriag_presentation();
        for m in 0..=5 {
            for n in 0..=5 {
                let w = Monomial::from_pairs(&[(A, m), (BS, n)]);
                let fast = normal_form(&NCExpr::monomial(w.clone()), &p).unwrap();
                let expected = NCExpr::monomial(Monomial::from_pairs(&[(BS, n), (A, m)]))
                    .scale(&Scalar::q().powi(i64::from(m * n)).unwrap());
                let expected = normal_form(&expected, &p).unwrap();
                assert_eq!(fast, expected);
                let (c, word) =
                    oracle::leftmost_normal_form(&oracle::unit_letters(&w), &p, 1000).unwrap();
                let slow = NCExpr::monomial(oracle::compress(&word)).scale(&c);
                assert_eq!(fast, slow);
            }
        }
    }

    #[test]
    fn coassoc_word_count() {
        let p = qtriag_presentation();
        // 6 letters (a, a^-1, as, as^-1, b, bs) plus 36 words of length two
        assert_eq!(coassoc_words(&p, 2).len(), 42);
    }
}
