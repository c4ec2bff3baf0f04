//! The group of pairs `(z, ω)`, `z ≠ 0`, standing for `[[z, ω], [0, 1/z]]`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Default exponent `c` in `modular(g) = |z|^{-c}`.
pub const DEFAULT_MODULAR_EXPONENT: f64 = 2.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroupElement {
    z: Complex64,
    omega: Complex64,
}

impl GroupElement {
    pub fn new(z: Complex64, omega: Complex64) -> Result<Self> {
        if z.norm() == 0.0 || !z.is_finite() || !omega.is_finite() {
            return Err(Error::InvalidGroup(format!("z must be finite and nonzero, got {z}")));
        }
        Ok(Self { z, omega })
    }

    pub fn identity() -> Self {
        Self {
            z: Complex64::new(1.0, 0.0),
            omega: Complex64::new(0.0, 0.0),
        }
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn omega(&self) -> Complex64 {
        self.omega
    }

    /// `(z₁z₂, z₁ω₂ + ω₁/z₂)`.
    pub fn mul(&self, other: &Self) -> Self {
        Self {
            z: self.z * other.z,
            omega: self.z * other.omega + self.omega / other.z,
        }
    }

    pub fn inv(&self) -> Self {
        Self {
            z: self.z.inv(),
            omega: -self.omega,
        }
    }

    pub fn to_matrix(&self) -> [[Complex64; 2]; 2] {
        [[self.z, self.omega], [Complex64::new(0.0, 0.0), self.z.inv()]]
    }

    fn coords(&self) -> [f64; 4] {
        [self.z.re, self.z.im, self.omega.re, self.omega.im]
    }

    fn from_coords(c: [f64; 4]) -> Self {
        Self {
            z: Complex64::new(c[0], c[1]),
            omega: Complex64::new(c[2], c[3]),
        }
    }
}

/// `|z|^{-c}`.
pub fn modular(g: &GroupElement, c: f64) -> f64 {
    g.z.norm().powf(-c)
}

fn det4(mut m: [[f64; 4]; 4]) -> f64 {
    let mut det = 1.0;
    for col in 0..4 {
        let pivot = (col..4)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .expect("nonempty range");
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for row in col + 1..4 {
            let f = m[row][col] / m[col][col];
            for k in col..4 {
                m[row][k] -= f * m[col][k];
            }
        }
    }
    det
}

/// Real Jacobian determinant of `f` at `h` in the coordinates
/// `(Re z, Im z, Re ω, Im ω)`, by central differences.
fn jacobian_det(f: impl Fn(&GroupElement) -> GroupElement, h: &GroupElement) -> f64 {
    const STEP: f64 = 1e-5;
    let base = h.coords();
    let mut jac = [[0.0; 4]; 4];
    for j in 0..4 {
        let mut plus = base;
        let mut minus = base;
        plus[j] += STEP;
        minus[j] -= STEP;
        let fp = f(&GroupElement::from_coords(plus)).coords();
        let fm = f(&GroupElement::from_coords(minus)).coords();
        for i in 0..4 {
            jac[i][j] = (fp[i] - fm[i]) / (2.0 * STEP);
        }
    }
    det4(jac).abs()
}

/// Outcome of [`haar_grid_oracle`].
#[derive(Clone, Debug, Serialize)]
pub struct HaarOracle {
    /// Measure of `E g` over measure of `E` for the numerically built
    /// left Haar measure.
    pub ratio: f64,
    /// `-ln(ratio) / ln|z_g|`: the exponent `c` with `ratio = |z_g|^{-c}`.
    pub observed_exponent: f64,
    /// Relative change of the measure of `E` under left translation by `g`.
    pub left_invariance_residual: f64,
    pub grid_points: usize,
}

/// Build the left Haar density numerically (`ρ(h) = 1 / |det D(L_h)(e)|`),
/// sum it over a grid box `E` around `(1.3, 0.4)`, and compare with the
/// grid sum over `E g` and `g E`, pulled back through the translation
/// Jacobians. Everything is in Lebesgue coordinates on `C* × C`.
///
/// `g` must have `|z| ≠ 1` for the exponent to be defined.
pub fn haar_grid_oracle(g: &GroupElement, cells_per_axis: usize) -> Result<HaarOracle> {
    if (g.z.norm().ln()).abs() < 1e-6 {
        return Err(Error::InvalidArgument("|z| must differ from 1".into()));
    }
    if cells_per_axis == 0 {
        return Err(Error::InvalidArgument("grid needs at least one cell".into()));
    }
    let density = |h: &GroupElement| 1.0 / jacobian_det(|k| h.mul(k), &GroupElement::identity());
    let center = [1.3, 0.4, 0.7, -0.2];
    let width = 0.2;
    let step = width / cells_per_axis as f64;
    let cell = step.powi(4);
    let (mut base, mut right, mut left) = (0.0, 0.0, 0.0);
    let mut points = 0usize;
    for i0 in 0..cells_per_axis {
        for i1 in 0..cells_per_axis {
            for i2 in 0..cells_per_axis {
                for i3 in 0..cells_per_axis {
                    let at = |c: f64, i: usize| c - width / 2.0 + (i as f64 + 0.5) * step;
                    let h = GroupElement::from_coords([
                        at(center[0], i0),
                        at(center[1], i1),
                        at(center[2], i2),
                        at(center[3], i3),
                    ]);
                    base += density(&h) * cell;
                    right += density(&h.mul(g)) * jacobian_det(|k| k.mul(g), &h) * cell;
                    left += density(&g.mul(&h)) * jacobian_det(|k| g.mul(k), &h) * cell;
                    points += 1;
                }
            }
        }
    }
    let ratio = right / base;
    Ok(HaarOracle {
        ratio,
        observed_exponent: -ratio.ln() / g.z.norm().ln(),
        left_invariance_residual: (left - base).abs() / base,
        grid_points: points,
    })
}
