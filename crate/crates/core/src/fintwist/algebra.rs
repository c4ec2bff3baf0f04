//! Elements of the group algebra `C[G^k]` in coefficient form.
//!
//! The left regular representation is faithful, so identities between
//! operators of the form `Σ c λ_{g₁}⊗…⊗λ_{g_k}` can be checked on the
//! coefficients. The ℓ¹ norm of the coefficients bounds the operator norm
//! from above and the ℓ² norm bounds it from below.

use num_complex::Complex64;

use super::dense::DenseOp;
use crate::grouplab::FinGroup;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Clone, Debug, PartialEq)]
pub struct GaElem {
    arity: usize,
    order: usize,
    coeffs: Vec<Complex64>,
}

impl GaElem {
    pub fn zero(arity: usize, order: usize) -> Self {
        Self {
            arity,
            order,
            coeffs: vec![ZERO; order.pow(arity as u32)],
        }
    }

    /// `λ_{g₁}⊗…⊗λ_{g_k}`.
    pub fn basis(legs: &[usize], order: usize) -> Self {
        let mut e = Self::zero(legs.len(), order);
        let i = e.index(legs);
        e.coeffs[i] = Complex64::new(1.0, 0.0);
        e
    }

    pub fn one(arity: usize, group: &FinGroup) -> Self {
        Self::basis(&vec![group.identity(); arity], group.order())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, legs: &[usize]) -> Complex64 {
        self.coeffs[self.index(legs)]
    }

    pub fn set(&mut self, legs: &[usize], v: Complex64) {
        let i = self.index(legs);
        self.coeffs[i] = v;
    }

    fn index(&self, legs: &[usize]) -> usize {
        debug_assert_eq!(legs.len(), self.arity);
        legs.iter().fold(0, |acc, &g| acc * self.order + g)
    }

    fn legs(&self, mut i: usize) -> Vec<usize> {
        let mut legs = vec![0; self.arity];
        for slot in legs.iter_mut().rev() {
            *slot = i % self.order;
            i /= self.order;
        }
        legs
    }

    fn nonzeros(&self) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| **c != ZERO).map(|(i, c)| (i, *c))
    }

    pub fn nnz(&self) -> usize {
        self.nonzeros().count()
    }

    /// Convolution product, leg by leg.
    pub fn mul(&self, other: &GaElem, group: &FinGroup) -> GaElem {
        assert_eq!(self.arity, other.arity, "arity mismatch");
        let mut out = GaElem::zero(self.arity, self.order);
        let right: Vec<(Vec<usize>, Complex64)> =
            other.nonzeros().map(|(i, c)| (other.legs(i), c)).collect();
        let mut legs = vec![0; self.arity];
        for (i, a) in self.nonzeros() {
            let left = self.legs(i);
            for (r, b) in &right {
                for (slot, (g, h)) in legs.iter_mut().zip(left.iter().zip(r)) {
                    *slot = group.mul(*g, *h);
                }
                let idx = out.index(&legs);
                out.coeffs[idx] += a * b;
            }
        }
        out
    }

    /// `x*`: conjugate coefficients, invert every leg.
    pub fn adjoint(&self, group: &FinGroup) -> GaElem {
        let mut out = GaElem::zero(self.arity, self.order);
        for (i, c) in self.nonzeros() {
            let legs: Vec<usize> = self.legs(i).into_iter().map(|g| group.inv(g)).collect();
            let idx = out.index(&legs);
            out.coeffs[idx] = c.conj();
        }
        out
    }

    pub fn add(&self, other: &GaElem) -> GaElem {
        assert_eq!(self.arity, other.arity, "arity mismatch");
        GaElem {
            arity: self.arity,
            order: self.order,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &GaElem) -> GaElem {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> GaElem {
        GaElem {
            arity: self.arity,
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn tensor(&self, other: &GaElem) -> GaElem {
        let mut out = GaElem::zero(self.arity + other.arity, self.order);
        let block = other.coeffs.len();
        for (i, a) in self.nonzeros() {
            for (j, b) in other.nonzeros() {
                out.coeffs[i * block + j] = a * b;
            }
        }
        out
    }

    /// Apply `λ_g ↦ λ_g⊗λ_g` on tensor leg `leg`.
    pub fn coproduct_on_leg(&self, leg: usize) -> GaElem {
        assert!(leg < self.arity, "leg out of range");
        let mut out = GaElem::zero(self.arity + 1, self.order);
        for (i, c) in self.nonzeros() {
            let mut legs = self.legs(i);
            legs.insert(leg, legs[leg]);
            let idx = out.index(&legs);
            out.coeffs[idx] += c;
        }
        out
    }

    /// `(id⊗…⊗h⊗…⊗id)` with `h(λ_g) = [g = e]` on tensor leg `leg`.
    pub fn haar_on_leg(&self, leg: usize, group: &FinGroup) -> GaElem {
        assert!(self.arity >= 2 && leg < self.arity, "leg out of range");
        let e = group.identity();
        let mut out = GaElem::zero(self.arity - 1, self.order);
        for (i, c) in self.nonzeros() {
            let mut legs = self.legs(i);
            if legs.remove(leg) == e {
                let idx = out.index(&legs);
                out.coeffs[idx] += c;
            }
        }
        out
    }

    /// Zero every coefficient with modulus below `eps`; returns the largest
    /// modulus removed.
    pub fn chop(&mut self, eps: f64) -> f64 {
        let mut dropped = 0.0f64;
        for c in &mut self.coeffs {
            let m = c.norm();
            if m < eps && m > 0.0 {
                dropped = dropped.max(m);
                *c = ZERO;
            }
        }
        dropped
    }

    pub fn l1(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    pub fn l2(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// The operator `Σ c λ_{g₁}⊗…⊗λ_{g_k}` on `(C^{|G|})^{⊗k}`, with
    /// `λ_g e_h = e_{gh}`.
    pub fn to_dense(&self, group: &FinGroup) -> DenseOp {
        let d = self.order;
        let dim = d.pow(self.arity as u32);
        let mut out = DenseOp::zeros(dim);
        for (i, c) in self.nonzeros() {
            let legs = self.legs(i);
            for col in 0..dim {
                let src = self.legs(col);
                let row = legs
                    .iter()
                    .zip(&src)
                    .fold(0, |acc, (&g, &h)| acc * d + group.mul(g, h));
                out.add_at(row, col, c);
            }
        }
        out
    }
}
