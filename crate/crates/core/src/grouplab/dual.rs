//! Characters of `C*` parametrised by `Z × R₊*`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default `κ` in `gamma_t(t) = (0, e^{κt})`, chosen so that
/// `pair(gamma_t(t), z) = |z|^{2it}`.
pub const DEFAULT_GAMMA_KAPPA: f64 = 2.0;

/// `γ_{n,ρ}: r e^{iθ} ↦ e^{i ln r ln ρ} e^{inθ}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualChar {
    pub n: i64,
    pub rho: f64,
}

impl DualChar {
    pub fn new(n: i64, rho: f64) -> Result<Self> {
        if !(rho > 0.0 && rho.is_finite()) {
            return Err(Error::InvalidArgument(format!("rho must be positive, got {rho}")));
        }
        Ok(Self { n, rho })
    }

    pub fn trivial() -> Self {
        Self { n: 0, rho: 1.0 }
    }

    /// Componentwise product `(n₁ + n₂, ρ₁ρ₂)`.
    pub fn mul(&self, other: &Self) -> Self {
        Self {
            n: self.n + other.n,
            rho: self.rho * other.rho,
        }
    }
}

/// Argument of `z` in `(-π, π]`.
pub fn principal_arg(z: Complex64) -> f64 {
    let theta = z.im.atan2(z.re);
    if theta <= -PI {
        PI
    } else {
        theta
    }
}

pub fn pair(chi: &DualChar, z: Complex64) -> Result<Complex64> {
    let r = z.norm();
    if r == 0.0 {
        return Err(Error::DomainMismatch("characters of C* are undefined at 0".into()));
    }
    let phase = r.ln() * chi.rho.ln() + chi.n as f64 * principal_arg(z);
    Ok(Complex64::from_polar(1.0, phase))
}

/// `(0, e^{κt})`.
pub fn gamma_t(t: f64, kappa: f64) -> DualChar {
    DualChar {
        n: 0,
        rho: (kappa * t).exp(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_radius_sees_only_winding() {
        let chi = DualChar::new(1, 1.0).unwrap();
        let z = Complex64::from_polar(1.0, 0.7);
        assert!((pair(&chi, z).unwrap() - z).norm() < 1e-15);
    }

    #[test]
    fn radial_part() {
        let chi = DualChar::new(0, std::f64::consts::E).unwrap();
        let r = 3.5f64;
        let v = pair(&chi, Complex64::new(r, 0.0)).unwrap();
        assert!((v - Complex64::from_polar(1.0, r.ln())).norm() < 1e-15);
    }

    #[test]
    fn values_have_modulus_one() {
        let chi = DualChar::new(-3, 0.2).unwrap();
        for k in 0..20 {
            let z = Complex64::from_polar(0.1 + k as f64, k as f64 * 0.9);
            assert!((pair(&chi, z).unwrap().norm() - 1.0).abs() < 1e-15);
        }
        assert!(pair(&chi, Complex64::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn branch_is_half_open() {
        assert_eq!(principal_arg(Complex64::new(-1.0, 0.0)), PI);
        assert_eq!(principal_arg(Complex64::new(-1.0, -0.0)), PI);
    }

    #[test]
    fn gamma_t_pairs_to_modulus_power() {
        let t = 0.37;
        let g = gamma_t(t, DEFAULT_GAMMA_KAPPA);
        let r = 2.2f64;
        let expected = Complex64::from_polar(1.0, 2.0 * t * r.ln());
        assert!((pair(&g, Complex64::new(r, 0.0)).unwrap() - expected).norm() < 1e-15);
        assert_eq!(gamma_t(0.0, DEFAULT_GAMMA_KAPPA), DualChar::trivial());
        let (a, b) = (0.3, -1.1);
        let sum = gamma_t(a + b, DEFAULT_GAMMA_KAPPA);
        let prod = gamma_t(a, DEFAULT_GAMMA_KAPPA).mul(&gamma_t(b, DEFAULT_GAMMA_KAPPA));
        assert_eq!(sum.n, prod.n);
        assert!((sum.rho - prod.rho).abs() < 1e-15 * sum.rho);
    }
}
