//! Bicharacters on `Z × R₊*`, on `C` and on finite duals, with cocycle
//! checks.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::dual::{gamma_t, DualChar, DEFAULT_GAMMA_KAPPA};
use super::finite::{root_of_unity, FinGroup};
use crate::error::{Error, Result};

/// Tolerance for accepting a table as a bicharacter.
pub const BICHAR_TOLERANCE: f64 = 1e-12;

/// A bicharacter table on the dual of `K`, indexed by character number.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteBichar {
    product: Vec<Vec<usize>>,
    table: Vec<Vec<Complex64>>,
}

fn max_bichar_defect(product: &[Vec<usize>], table: &[Vec<Complex64>]) -> f64 {
    let m = table.len();
    let mut worst = 0.0f64;
    for a in 0..m {
        for b in 0..m {
            worst = worst.max((table[a][b].norm() - 1.0).abs());
            for c in 0..m {
                let first = table[product[a][b]][c] - table[a][c] * table[b][c];
                let second = table[a][product[b][c]] - table[a][b] * table[a][c];
                worst = worst.max(first.norm()).max(second.norm());
            }
        }
    }
    worst
}

impl FiniteBichar {
    /// Validate `table` against the dual of `K` in `group`.
    pub fn new(group: &FinGroup, table: Vec<Vec<Complex64>>) -> Result<Self> {
        let b = Self::unchecked(group, table)?;
        let defect = b.defect();
        if defect > BICHAR_TOLERANCE {
            return Err(Error::NotBicharacter(format!(
                "table fails unimodularity or biplicativity by {defect:e}"
            )));
        }
        Ok(b)
    }

    /// Shape-checked but otherwise arbitrary table, for negative controls.
    pub fn unchecked(group: &FinGroup, table: Vec<Vec<Complex64>>) -> Result<Self> {
        let m = group.k_dual().len();
        if table.len() != m || table.iter().any(|r| r.len() != m) {
            return Err(Error::DomainMismatch(format!("bicharacter table must be {m}x{m}")));
        }
        Ok(Self {
            product: group.k_dual().product_table().to_vec(),
            table,
        })
    }

    /// `ψ ≡ 1`.
    pub fn trivial(group: &FinGroup) -> Self {
        let m = group.k_dual().len();
        Self::unchecked(group, vec![vec![Complex64::new(1.0, 0.0); m]; m]).expect("square")
    }

    /// `ψ(χ^a, χ^b) = e^{2πi ab/r}` on a cyclic dual, with `r` dividing its
    /// order. `r = 4` is `i^{ab}`; `r = |K|` is `ζ^{ab}`.
    pub fn power(group: &FinGroup, r: u64) -> Result<Self> {
        let d = group.k_dual();
        let m = d.len() as u64;
        if !d.is_cyclic() {
            return Err(Error::InvalidArgument(format!(
                "the dual of K for n = {} is not cyclic",
                group.modulus()
            )));
        }
        if r == 0 || m % r != 0 {
            return Err(Error::InvalidArgument(format!(
                "root order {r} does not divide |K| = {m}"
            )));
        }
        let table = (0..m)
            .map(|a| (0..m).map(|b| root_of_unity(a * b, r)).collect())
            .collect();
        Self::new(group, table)
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn value(&self, a: usize, b: usize) -> Complex64 {
        self.table[a][b]
    }

    pub fn table(&self) -> &[Vec<Complex64>] {
        &self.table
    }

    /// Largest deviation from unimodularity or biplicativity.
    pub fn defect(&self) -> f64 {
        max_bichar_defect(&self.product, &self.table)
    }

    pub fn dual_mul(&self, a: usize, b: usize) -> usize {
        self.product[a][b]
    }

    pub fn conj(&self) -> Self {
        Self {
            product: self.product.clone(),
            table: self
                .table
                .iter()
                .map(|r| r.iter().map(|c| c.conj()).collect())
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Bicharacter {
    /// `Ψ((n, ρ), (k, r)) = e^{ix(k ln ρ - n ln r)}` on `Z × R₊*`.
    ZxR { x: f64 },
    /// `Ψ(z₁, z₂) = exp(ix Im(z₁ conj z₂))` on the additive group `C`.
    C { x: f64 },
    Finite(FiniteBichar),
}

/// A point of a bicharacter's domain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BicharArg {
    ZxR(DualChar),
    C(Complex64),
    Finite(usize),
}

impl Bicharacter {
    /// The group law of the domain.
    pub fn arg_mul(&self, u: BicharArg, v: BicharArg) -> Result<BicharArg> {
        match (self, u, v) {
            (Self::ZxR { .. }, BicharArg::ZxR(a), BicharArg::ZxR(b)) => Ok(BicharArg::ZxR(a.mul(&b))),
            (Self::C { .. }, BicharArg::C(a), BicharArg::C(b)) => Ok(BicharArg::C(a + b)),
            (Self::Finite(f), BicharArg::Finite(a), BicharArg::Finite(b))
                if a < f.len() && b < f.len() =>
            {
                Ok(BicharArg::Finite(f.dual_mul(a, b)))
            }
            _ => Err(Error::DomainMismatch(format!("{u:?} · {v:?}"))),
        }
    }

    pub fn identity(&self) -> BicharArg {
        match self {
            Self::ZxR { .. } => BicharArg::ZxR(DualChar::trivial()),
            Self::C { .. } => BicharArg::C(Complex64::new(0.0, 0.0)),
            Self::Finite(_) => BicharArg::Finite(0),
        }
    }

    /// `Ψ_{-x}`; the conjugate table for finite kinds.
    pub fn negated(&self) -> Self {
        match self {
            Self::ZxR { x } => Self::ZxR { x: -x },
            Self::C { x } => Self::C { x: -x },
            Self::Finite(f) => Self::Finite(f.conj()),
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> BicharArg {
        match self {
            Self::ZxR { .. } => BicharArg::ZxR(DualChar {
                n: rng.gen_range(-5..=5),
                rho: rng.gen_range(-2.0f64..2.0).exp(),
            }),
            Self::C { .. } => {
                BicharArg::C(Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
            }
            Self::Finite(f) => BicharArg::Finite(rng.gen_range(0..f.len())),
        }
    }
}

pub fn bichar_eval(psi: &Bicharacter, u: BicharArg, v: BicharArg) -> Result<Complex64> {
    match (psi, u, v) {
        (Bicharacter::ZxR { x }, BicharArg::ZxR(a), BicharArg::ZxR(b)) => {
            if !(a.rho > 0.0 && b.rho > 0.0) {
                return Err(Error::DomainMismatch("radial parameters must be positive".into()));
            }
            let phase = x * (b.n as f64 * a.rho.ln() - a.n as f64 * b.rho.ln());
            Ok(Complex64::from_polar(1.0, phase))
        }
        (Bicharacter::C { x }, BicharArg::C(a), BicharArg::C(b)) => {
            Ok(Complex64::from_polar(1.0, x * (a * b.conj()).im))
        }
        (Bicharacter::Finite(f), BicharArg::Finite(a), BicharArg::Finite(b))
            if a < f.len() && b < f.len() =>
        {
            Ok(f.value(a, b))
        }
        _ => Err(Error::DomainMismatch(format!("{u:?}, {v:?} for {psi:?}"))),
    }
}

/// Grid of `t` values used by [`lambda_constant`].
pub const LAMBDA_GRID: [f64; 9] = [-1.0, -0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75, 1.0];

/// Least-squares `λ` with `f(t, s) = λ^{ist}` on [`LAMBDA_GRID`]², failing
/// when the fit leaves a residual above [`BICHAR_TOLERANCE`].
pub fn fit_lambda(f: impl Fn(f64, f64) -> Result<Complex64>) -> Result<f64> {
    let (mut num, mut den) = (0.0, 0.0);
    let mut samples = Vec::new();
    for &t in &LAMBDA_GRID {
        for &s in &LAMBDA_GRID {
            let v = f(t, s)?;
            let phase = v.im.atan2(v.re);
            num += phase * t * s;
            den += (t * s) * (t * s);
            samples.push((t, s, v));
        }
    }
    let ln_lambda = num / den;
    let worst = samples
        .iter()
        .map(|&(t, s, v)| (v - Complex64::from_polar(1.0, ln_lambda * t * s)).norm())
        .fold(0.0, f64::max);
    if worst > BICHAR_TOLERANCE {
        return Err(Error::NotBicharacter(format!(
            "values are not of the form λ^(ist) (residual {worst:e})"
        )));
    }
    Ok(ln_lambda.exp())
}

/// `λ` with `Ψ(γ_t, γ_s) = λ^{ist}`, for the `Z × R₊*` kind.
pub fn lambda_constant(psi: &Bicharacter) -> Result<f64> {
    if !matches!(psi, Bicharacter::ZxR { .. }) {
        return Err(Error::DomainMismatch("λ is defined for the Z × R₊* kind".into()));
    }
    fit_lambda(|t, s| {
        bichar_eval(
            psi,
            BicharArg::ZxR(gamma_t(t, DEFAULT_GAMMA_KAPPA)),
            BicharArg::ZxR(gamma_t(s, DEFAULT_GAMMA_KAPPA)),
        )
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SampledResidual {
    pub samples: usize,
    pub seed: u64,
    pub max_residual: f64,
}

/// `Ψ(s₁,s₂)Ψ(s₁s₂,s₃) = Ψ(s₂,s₃)Ψ(s₁,s₂s₃)` on seeded random triples.
pub fn cocycle_check(psi: &Bicharacter, samples: usize, seed: u64) -> Result<SampledResidual> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let (a, b, c) = (psi.sample(&mut rng), psi.sample(&mut rng), psi.sample(&mut rng));
        let lhs = bichar_eval(psi, a, b)? * bichar_eval(psi, psi.arg_mul(a, b)?, c)?;
        let rhs = bichar_eval(psi, b, c)? * bichar_eval(psi, a, psi.arg_mul(b, c)?)?;
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(SampledResidual {
        samples,
        seed,
        max_residual: worst,
    })
}

/// `Ψ_{-x}(u, v) = conj Ψ_x(u, v)` on seeded random pairs.
pub fn antisymmetry_check(psi: &Bicharacter, samples: usize, seed: u64) -> Result<SampledResidual> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let neg = psi.negated();
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let (a, b) = (psi.sample(&mut rng), psi.sample(&mut rng));
        let d = bichar_eval(&neg, a, b)? - bichar_eval(psi, a, b)?.conj();
        worst = worst.max(d.norm());
    }
    Ok(SampledResidual {
        samples,
        seed,
        max_residual: worst,
    })
}

/// Largest deviation from multiplicativity in either slot on seeded
/// random triples.
pub fn biplicativity_check(psi: &Bicharacter, samples: usize, seed: u64) -> Result<SampledResidual> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let (a, b, c) = (psi.sample(&mut rng), psi.sample(&mut rng), psi.sample(&mut rng));
        let first = bichar_eval(psi, psi.arg_mul(a, b)?, c)? - bichar_eval(psi, a, c)? * bichar_eval(psi, b, c)?;
        let second = bichar_eval(psi, a, psi.arg_mul(b, c)?)? - bichar_eval(psi, a, b)? * bichar_eval(psi, a, c)?;
        worst = worst.max(first.norm()).max(second.norm());
    }
    Ok(SampledResidual {
        samples,
        seed,
        max_residual: worst,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zr(n: i64, rho: f64) -> BicharArg {
        BicharArg::ZxR(DualChar { n, rho })
    }

    #[test]
    fn zxr_example() {
        let x = 0.3;
        let v = bichar_eval(&Bicharacter::ZxR { x }, zr(1, 1.0), zr(0, std::f64::consts::E)).unwrap();
        assert!((v - Complex64::from_polar(1.0, -x)).norm() < 1e-15);
    }

    #[test]
    fn c_example() {
        let x = 0.3;
        let psi = Bicharacter::C { x };
        let v = bichar_eval(&psi, BicharArg::C(Complex64::new(1.0, 0.0)), BicharArg::C(Complex64::new(0.0, 1.0)))
            .unwrap();
        assert!((v - Complex64::from_polar(1.0, -x)).norm() < 1e-15);
    }

    #[test]
    fn identity_pairs_to_one() {
        let g = FinGroup::new(5).unwrap();
        for psi in [
            Bicharacter::ZxR { x: 0.7 },
            Bicharacter::C { x: 0.7 },
            Bicharacter::Finite(FiniteBichar::power(&g, 4).unwrap()),
        ] {
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            let v = psi.sample(&mut rng);
            assert_eq!(bichar_eval(&psi, psi.identity(), v).unwrap(), Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn domain_mismatch() {
        let psi = Bicharacter::ZxR { x: 1.0 };
        assert!(bichar_eval(&psi, BicharArg::C(Complex64::new(1.0, 0.0)), zr(0, 1.0)).is_err());
    }

    #[test]
    fn lambda_is_one() {
        assert_eq!(lambda_constant(&Bicharacter::ZxR { x: 0.4 }).unwrap(), 1.0);
        assert_eq!(lambda_constant(&Bicharacter::ZxR { x: 0.0 }).unwrap(), 1.0);
        assert!(lambda_constant(&Bicharacter::C { x: 0.4 }).is_err());
    }

    #[test]
    fn lambda_fit_recovers_a_planted_value() {
        let lambda: f64 = 1.7;
        let fitted = fit_lambda(|t, s| Ok(Complex64::from_polar(1.0, lambda.ln() * t * s))).unwrap();
        assert!((fitted - lambda).abs() < 1e-12);
        let bad = fit_lambda(|t, s| Ok(Complex64::from_polar(1.0, t * t * s)));
        assert!(matches!(bad, Err(Error::NotBicharacter(_))));
    }

    #[test]
    fn cocycle_and_antisymmetry() {
        for psi in [Bicharacter::ZxR { x: 0.37 }, Bicharacter::C { x: 0.37 }] {
            assert!(cocycle_check(&psi, 2000, 42).unwrap().max_residual <= 1e-12);
            assert!(antisymmetry_check(&psi, 2000, 42).unwrap().max_residual <= 1e-12);
            assert!(biplicativity_check(&psi, 2000, 42).unwrap().max_residual <= 1e-12);
        }
        assert_eq!(cocycle_check(&Bicharacter::ZxR { x: 0.0 }, 100, 1).unwrap().max_residual, 0.0);
    }

    #[test]
    fn finite_tables() {
        let g = FinGroup::new(5).unwrap();
        let psi = FiniteBichar::power(&g, 4).unwrap();
        assert_eq!(psi.value(1, 1), Complex64::new(0.0, 1.0));
        assert_eq!(psi.value(2, 3), Complex64::new(-1.0, 0.0));
        assert_eq!(psi.value(2, 2), Complex64::new(1.0, 0.0));
        assert_eq!(FiniteBichar::trivial(&g).defect(), 0.0);
        let mut bad = psi.table().to_vec();
        bad[1][1] = Complex64::new(-1.0, 0.0);
        assert!(matches!(FiniteBichar::new(&g, bad), Err(Error::NotBicharacter(_))));
        assert!(FiniteBichar::power(&g, 3).is_err());
        assert!(FiniteBichar::power(&FinGroup::new(8).unwrap(), 2).is_err());
    }
}
