//! Exact coefficients: Gaussian rationals times integer powers of a formal
//! positive unit `s`.
//!
//! `s` stands for `e^x`, so `s^4 = e^{4x}`, `q = s^8 = e^{8x}` and the
//! modular base `q_x = s^{-2}`. Everything symbolic in this crate is done
//! over this ring; floating point only enters through [`Scalar::eval`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A complex number with rational real and imaginary parts.
pub type GaussRational = Complex<BigRational>;

/// Build a Gaussian rational from integer numerator/denominator pairs.
pub fn gauss(re: (i64, i64), im: (i64, i64)) -> GaussRational {
    Complex::new(
        BigRational::new(BigInt::from(re.0), BigInt::from(re.1)),
        BigRational::new(BigInt::from(im.0), BigInt::from(im.1)),
    )
}

fn gauss_inv(z: &GaussRational) -> Option<GaussRational> {
    let norm = &z.re * &z.re + &z.im * &z.im;
    if norm.is_zero() {
        return None;
    }
    Some(Complex::new(&z.re / &norm, -&z.im / &norm))
}

fn gauss_to_c64(z: &GaussRational) -> Complex64 {
    Complex64::new(
        z.re.to_f64().unwrap_or(f64::NAN),
        z.im.to_f64().unwrap_or(f64::NAN),
    )
}

/// Laurent polynomial in `s` with Gaussian-rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is ring
/// equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    terms: BTreeMap<i32, GaussRational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::s_pow(0)
    }

    /// `s^k`.
    pub fn s_pow(k: i32) -> Self {
        Self::monomial(GaussRational::one(), k)
    }

    /// `q = s^8`.
    pub fn q() -> Self {
        Self::s_pow(8)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::monomial(gauss((0, 1), (1, 1)), 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::monomial(gauss((n, 1), (0, 1)), 0)
    }

    pub fn from_gauss(c: GaussRational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * s^k`.
    pub fn monomial(c: GaussRational, k: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Iterate over `(s-exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &GaussRational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// If this is a single term `c * s^k`, return it.
    pub fn as_monomial(&self) -> Option<(&GaussRational, i32)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, c)| (c, *k))
        } else {
            None
        }
    }

    /// Complex conjugate. `s` is real, so only the coefficients change.
    pub fn conj(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, c.conj())).collect(),
        }
    }

    /// The substitution `s -> s^{-1}` (that is, `x -> -x`).
    pub fn invert_s(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (-*k, c.clone())).collect(),
        }
    }

    /// Multiplicative inverse; only single-term scalars are units of the ring.
    pub fn inverse(&self) -> Option<Self> {
        let (c, k) = self.as_monomial()?;
        Some(Self::monomial(gauss_inv(c)?, -k))
    }

    /// Integer power. Negative exponents need [`Scalar::inverse`] to exist.
    pub fn powi(&self, e: i64) -> Option<Self> {
        if e < 0 {
            return self.inverse()?.powi(-e);
        }
        if let Some((c, k)) = self.as_monomial() {
            let mut acc = GaussRational::one();
            for _ in 0..e {
                acc = acc * c.clone();
            }
            let k = i32::try_from(i64::from(k) * e).ok()?;
            return Some(Self::monomial(acc, k));
        }
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Some(acc)
    }

    /// Exact quotient `self / other` when `other` is a unit.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        Some(self * &other.inverse()?)
    }

    /// Numeric value at `s = e^x`.
    pub fn eval(&self, x: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|(k, c)| gauss_to_c64(c) * (f64::from(*k) * x).exp())
            .sum()
    }

    fn add_term(&mut self, k: i32, c: &GaussRational) {
        let entry = self.terms.entry(k).or_insert_with(GaussRational::zero);
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, c);
        }
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, rhs: Scalar) -> Scalar {
        self += &rhs;
        self
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &rhs.terms {
                out.add_term(k1 + k2, &(c1 * c2));
            }
        }
        out
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Formats a Gaussian rational as `(re+imi)`, the literal form the
/// expression grammar accepts.
pub fn fmt_gauss(c: &GaussRational) -> String {
    let sign = if c.im.is_negative() { '-' } else { '+' };
    format!("({}{}{}i)", fmt_rational(&c.re), sign, fmt_rational(&c.im.abs()))
}

impl fmt::Display for Scalar {
    /// Sum of `(re+imi)*s^k` terms; re-parses to the same scalar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*s^{}", fmt_gauss(c), k)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_is_s_to_the_eighth() {
        assert_eq!(Scalar::q(), Scalar::s_pow(4).powi(2).unwrap());
        assert_eq!(Scalar::q().invert_s(), Scalar::s_pow(-8));
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let a = Scalar::s_pow(3) + Scalar::from_int(2);
        let b = &a - &Scalar::s_pow(3);
        assert_eq!(b, Scalar::from_int(2));
        assert_eq!(b.num_terms(), 1);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn inverse_exists_only_for_units() {
        let u = Scalar::monomial(gauss((1, 2), (1, 2)), -4);
        let inv = u.inverse().unwrap();
        assert!((&u * &inv).is_one());
        assert!((Scalar::one() + Scalar::s_pow(1)).inverse().is_none());
        assert!(Scalar::zero().inverse().is_none());
    }

    #[test]
    fn eval_is_multiplicative() {
        let a = Scalar::s_pow(2) + Scalar::i();
        let b = Scalar::monomial(gauss((3, 2), (-1, 5)), -3) + Scalar::from_int(1);
        let x = 0.37;
        let lhs = (&a * &b).eval(x);
        let rhs = a.eval(x) * b.eval(x);
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn conj_of_i() {
        assert_eq!(Scalar::i().conj(), -Scalar::i());
    }

    #[test]
    fn powi_of_sum_matches_repeated_product() {
        let a = Scalar::s_pow(1) + Scalar::i();
        assert_eq!(a.powi(3).unwrap(), &(&a * &a) * &a);
        assert!(a.powi(-1).is_none());
    }

    #[test]
    fn display_round_trip_shape() {
        let a = Scalar::monomial(gauss((3, 2), (1, 2)), -4);
        assert_eq!(a.to_string(), "(3/2+1/2i)*s^-4");
        assert_eq!(Scalar::zero().to_string(), "0");
    }
}
