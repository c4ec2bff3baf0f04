use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use super::presentation::{GenId, Presentation};
use crate::scalar::{fmt_gauss, Scalar};

/// A generator raised to a nonzero integer power.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: GenId,
    pub exp: i32,
}

impl Letter {
    pub fn new(gen: GenId, exp: i32) -> Self {
        Self { gen, exp }
    }
}

/// A word in the generators. Not necessarily normal-ordered; the normal
/// form has strictly increasing generators and nonzero exponents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub Vec<Letter>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn letter(gen: GenId, exp: i32) -> Self {
        if exp == 0 {
            Self::one()
        } else {
            Self(vec![Letter::new(gen, exp)])
        }
    }

    pub fn from_pairs(pairs: &[(GenId, i32)]) -> Self {
        Self(pairs.iter().map(|&(g, e)| Letter::new(g, e)).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of unit letters, counting `g^e` as `|e|`.
    pub fn length(&self) -> usize {
        self.0.iter().map(|l| l.exp.unsigned_abs() as usize).sum()
    }

    pub fn is_normal(&self) -> bool {
        self.0.iter().all(|l| l.exp != 0) && self.0.windows(2).all(|w| w[0].gen < w[1].gen)
    }

    /// Concatenation (no reordering).
    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Monomial(v)
    }

    /// Exponent sum per `{g, g*}` class, inverse powers counting negatively.
    pub fn multidegree(&self, p: &Presentation) -> BTreeMap<GenId, i64> {
        let mut deg = BTreeMap::new();
        for l in &self.0 {
            *deg.entry(p.class_of(l.gen)).or_insert(0) += i64::from(l.exp);
        }
        deg.retain(|_, d| *d != 0);
        deg
    }

    pub fn display<'a>(&'a self, p: &'a Presentation) -> impl fmt::Display + 'a {
        MonomialDisplay { m: self, p }
    }
}

struct MonomialDisplay<'a> {
    m: &'a Monomial,
    p: &'a Presentation,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.is_one() {
            return write!(f, "1");
        }
        for (i, l) in self.m.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            let name = self.p.generator(l.gen).map_or("?", |g| g.name.as_str());
            if l.exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{}", l.exp)?;
            }
        }
        Ok(())
    }
}

/// One basis element of the algebraic tensor power: a monomial per factor.
pub type TensorMonomial = Vec<Monomial>;

/// Finite linear combination of tensor monomials with [`Scalar`]
/// coefficients.
///
/// Arity 1 is an element of the algebra itself, arity 2 and 3 the tensor
/// square and cube. Tensor factors use disjoint copies of the generator
/// alphabet, and letters of different factors commute, so a term is just
/// the tuple of per-factor words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NCExpr {
    arity: usize,
    terms: BTreeMap<TensorMonomial, Scalar>,
}

impl NCExpr {
    pub fn zero(arity: usize) -> Self {
        assert!(arity >= 1, "tensor arity must be at least 1");
        Self {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::term(Scalar::one(), vec![Monomial::one(); arity])
    }

    pub fn scalar(c: Scalar, arity: usize) -> Self {
        Self::term(c, vec![Monomial::one(); arity])
    }

    /// A single generator `g^exp` (arity 1).
    pub fn gen(g: GenId, exp: i32) -> Self {
        Self::monomial(Monomial::letter(g, exp))
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(Scalar::one(), vec![m])
    }

    pub fn tensor(factors: Vec<Monomial>) -> Self {
        Self::term(Scalar::one(), factors)
    }

    pub fn term(c: Scalar, factors: Vec<Monomial>) -> Self {
        let mut e = Self::zero(factors.len());
        e.add_term(factors, &c);
        e
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, factors: &[Monomial]) -> Scalar {
        self.terms.get(factors).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, factors: TensorMonomial, c: &Scalar) {
        debug_assert_eq!(factors.len(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(factors) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Sum. Panics on arity mismatch; see [`NCExpr::checked_add`].
    pub fn add(&self, other: &NCExpr) -> NCExpr {
        self.checked_add(other).expect("arity mismatch in NCExpr::add")
    }

    pub fn checked_add(&self, other: &NCExpr) -> crate::Result<NCExpr> {
        if self.arity != other.arity {
            return Err(crate::Error::ArityMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &NCExpr) -> NCExpr {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> NCExpr {
        let mut out = Self::zero(self.arity);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), &(v * c));
        }
        out
    }

    /// Factorwise concatenation product, without normal ordering.
    pub fn concat(&self, other: &NCExpr) -> crate::Result<NCExpr> {
        if self.arity != other.arity {
            return Err(crate::Error::ArityMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        let mut out = Self::zero(self.arity);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let factors = k1.iter().zip(k2).map(|(a, b)| a.concat(b)).collect();
                out.add_term(factors, &(c1 * c2));
            }
        }
        Ok(out)
    }

    /// Tensor product of two expressions; arities add.
    pub fn tensor_with(&self, other: &NCExpr) -> NCExpr {
        let mut out = Self::zero(self.arity + other.arity);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let mut factors = k1.clone();
                factors.extend(k2.iter().cloned());
                out.add_term(factors, &(c1 * c2));
            }
        }
        out
    }

    /// Reorder tensor factors: factor `i` of the result is factor `perm[i]`
    /// of `self`. The flip on arity 2 is `permute(&[1, 0])`.
    pub fn permute(&self, perm: &[usize]) -> NCExpr {
        assert_eq!(perm.len(), self.arity);
        let mut out = Self::zero(self.arity);
        for (k, c) in &self.terms {
            out.add_term(perm.iter().map(|&i| k[i].clone()).collect(), c);
        }
        out
    }

    /// Apply `f` to every coefficient.
    pub fn map_coefficients(&self, f: impl Fn(&Scalar) -> Scalar) -> NCExpr {
        let mut out = Self::zero(self.arity);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), &f(c));
        }
        out
    }

    /// Per-factor multidegree of every term.
    pub fn multidegrees(&self, p: &Presentation) -> Vec<Vec<BTreeMap<GenId, i64>>> {
        self.terms
            .keys()
            .map(|k| k.iter().map(|m| m.multidegree(p)).collect())
            .collect()
    }

    /// Renders in the expression grammar (arity 1) or with ` ⊗ ` between
    /// factors. Each `s`-power of a coefficient becomes its own term so the
    /// output re-parses exactly.
    pub fn display<'a>(&'a self, p: &'a Presentation) -> impl fmt::Display + 'a {
        ExprDisplay { e: self, p }
    }
}

impl fmt::Debug for NCExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NCExpr")
            .field("arity", &self.arity)
            .field("terms", &self.terms)
            .finish()
    }
}

struct ExprDisplay<'a> {
    e: &'a NCExpr,
    p: &'a Presentation,
}

impl fmt::Display for ExprDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (factors, c) in &self.e.terms {
            for (k, g) in c.terms() {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "{}*s^{}", fmt_gauss(g), k)?;
                for (i, m) in factors.iter().enumerate() {
                    let sep = if i == 0 { "*" } else { " ⊗ " };
                    if m.is_one() {
                        if i > 0 {
                            write!(f, "{sep}1")?;
                        }
                    } else {
                        write!(f, "{sep}{}", m.display(self.p))?;
                    }
                }
            }
        }
        Ok(())
    }
}
