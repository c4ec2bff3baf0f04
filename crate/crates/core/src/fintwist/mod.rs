//! Exact finite-dimensional twisting: the group algebra of the finite
//! triangular group in its regular representation, a 2-cocycle lifted from
//! a bicharacter on the dual of the diagonal subgroup, the twisted
//! coproduct, Haar invariance and multiplicative unitaries.
//!
//! The finite model is unimodular, so it cannot show a deformed Haar
//! weight; that part lives in [`crate::spectra`].

mod algebra;
mod dense;
mod sparse;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use algebra::GaElem;
pub use dense::DenseOp;
pub use sparse::{pentagon_residual, PentagonResidual, SparseOp};

use crate::error::{Error, Result};
use crate::grouplab::{FinGroup, FiniteBichar};

/// Tolerance of the Fourier inversion in [`FinQG::fourier`].
pub const SPAN_TOLERANCE: f64 = 1e-12;
/// Coefficients of `Ω` and of `W` columns below this are rounding residue
/// of character sums and are set to zero; the checks then run on the
/// chopped operators.
pub const CHOP: f64 = 1e-14;

/// The group algebra of a finite group acting on `l²(G)` by left
/// translations, with the normalized trace as Haar state.
#[derive(Clone, Debug)]
pub struct FinQG {
    group: FinGroup,
    reps: Vec<DenseOp>,
}

pub fn regular_rep(group: &FinGroup) -> FinQG {
    let d = group.order();
    let reps = (0..d)
        .map(|g| {
            let mut m = DenseOp::zeros(d);
            for h in 0..d {
                m.set(group.mul(g, h), h, Complex64::new(1.0, 0.0));
            }
            m
        })
        .collect();
    FinQG {
        group: group.clone(),
        reps,
    }
}

impl FinQG {
    pub fn group(&self) -> &FinGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.group.order()
    }

    /// `λ_g`.
    pub fn rep(&self, g: usize) -> &DenseOp {
        &self.reps[g]
    }

    /// Basis label `z,ω` of `e_g`.
    pub fn label(&self, g: usize) -> String {
        let e = self.group.element(g);
        format!("{},{}", e.z, e.omega)
    }

    /// Normalized trace.
    pub fn haar(&self, x: &DenseOp) -> Complex64 {
        x.trace() / self.dim() as f64
    }

    /// Coefficients `c_g = tr(λ_g* x) / |G|`, failing when `x` is not in
    /// the span of the `λ_g` (Frobenius residual above [`SPAN_TOLERANCE`]).
    pub fn fourier(&self, x: &DenseOp) -> Result<GaElem> {
        let d = self.dim();
        if x.dim() != d {
            return Err(Error::DomainMismatch(format!("expected a {d}x{d} operator")));
        }
        let mut c = GaElem::zero(1, d);
        for g in 0..d {
            let tr: Complex64 = (0..d).map(|h| x.get(self.group.mul(g, h), h)).sum();
            c.set(&[g], tr / d as f64);
        }
        let residual = x.sub(&c.to_dense(&self.group)).frobenius();
        if residual > SPAN_TOLERANCE {
            return Err(Error::OutsideSpan(residual));
        }
        Ok(c)
    }

    /// `Δ(x) = Σ c_g λ_g⊗λ_g`.
    pub fn coproduct(&self, x: &DenseOp) -> Result<DenseOp> {
        Ok(self.fourier(x)?.coproduct_on_leg(0).to_dense(&self.group))
    }

    /// `P_χ = |K|⁻¹ Σ_k conj χ(k) λ_k` for every character `χ` of `K`.
    pub fn spectral_projections(&self) -> Vec<DenseOp> {
        self.projection_coeffs()
            .iter()
            .map(|p| p.to_dense(&self.group))
            .collect()
    }

    fn projection_coeffs(&self) -> Vec<GaElem> {
        let k = self.group.k_subgroup();
        let dual = self.group.k_dual();
        let norm = 1.0 / k.len() as f64;
        (0..dual.len())
            .map(|chi| {
                let mut p = GaElem::zero(1, self.dim());
                for (pos, &g) in k.iter().enumerate() {
                    p.set(&[g], dual.value(chi, pos).conj() * norm);
                }
                p
            })
            .collect()
    }

    /// `Ω = Σ ψ(χ, χ') P_χ⊗P_χ'` for a validated bicharacter.
    pub fn build_omega(&self, psi: &FiniteBichar) -> Result<Omega> {
        let defect = psi.defect();
        if defect > crate::grouplab::BICHAR_TOLERANCE {
            return Err(Error::NotBicharacter(format!("defect {defect:e}")));
        }
        self.lift_unchecked(psi)
    }

    /// The same lift without the bicharacter test, for negative controls.
    pub fn lift_unchecked(&self, psi: &FiniteBichar) -> Result<Omega> {
        let projections = self.projection_coeffs();
        if psi.len() != projections.len() {
            return Err(Error::DomainMismatch(format!(
                "bicharacter on {} characters, K has {}",
                psi.len(),
                projections.len()
            )));
        }
        let mut coeffs = GaElem::zero(2, self.dim());
        for (a, pa) in projections.iter().enumerate() {
            for (b, pb) in projections.iter().enumerate() {
                coeffs = coeffs.add(&pa.tensor(pb).scale(psi.value(a, b)));
            }
        }
        let chopped = coeffs.chop(CHOP);
        let adjoint = coeffs.adjoint(&self.group);
        Ok(Omega {
            coeffs,
            adjoint,
            chopped,
        })
    }

    /// `Δ_Ω(x) = Ω Δ(x) Ω*` as an operator on `l²(G)⊗l²(G)`.
    pub fn twist_coproduct(&self, x: &DenseOp, omega: &Omega) -> Result<DenseOp> {
        let c = self.fourier(x)?;
        Ok(omega.twisted(&c, &self.group).to_dense(&self.group))
    }
}

/// A unitary in `C[G×G]` used to twist the coproduct.
#[derive(Clone, Debug)]
pub struct Omega {
    coeffs: GaElem,
    adjoint: GaElem,
    chopped: f64,
}

impl Omega {
    pub fn identity(group: &FinGroup) -> Self {
        let one = GaElem::one(2, group);
        Self {
            coeffs: one.clone(),
            adjoint: one,
            chopped: 0.0,
        }
    }

    pub fn coeffs(&self) -> &GaElem {
        &self.coeffs
    }

    /// Largest coefficient modulus removed by [`CHOP`].
    pub fn chopped(&self) -> f64 {
        self.chopped
    }

    pub fn to_dense(&self, group: &FinGroup) -> DenseOp {
        self.coeffs.to_dense(group)
    }

    /// `Ω Δ(x) Ω*` for `x` in coefficient form.
    pub fn twisted(&self, x: &GaElem, group: &FinGroup) -> GaElem {
        self.coeffs
            .mul(&x.coproduct_on_leg(0), group)
            .mul(&self.adjoint, group)
    }

    /// `(Δ_Ω ⊗ id)(y)` or `(id ⊗ Δ_Ω)(y)` for an arity-2 element.
    fn twisted_on_leg(&self, y: &GaElem, leg: usize, group: &FinGroup) -> GaElem {
        let one = GaElem::one(1, group);
        let (o, oa) = if leg == 0 {
            (self.coeffs.tensor(&one), self.adjoint.tensor(&one))
        } else {
            (one.tensor(&self.coeffs), one.tensor(&self.adjoint))
        };
        o.mul(&y.coproduct_on_leg(leg), group).mul(&oa, group)
    }
}

/// ℓ¹ coefficient norm of `(Ω⊗1)(Δ⊗id)(Ω) - (1⊗Ω)(id⊗Δ)(Ω)`.
pub fn check_2cocycle(omega: &Omega, group: &FinGroup) -> f64 {
    let one = GaElem::one(1, group);
    let left = omega.coeffs.tensor(&one).mul(&omega.coeffs.coproduct_on_leg(0), group);
    let right = one.tensor(&omega.coeffs).mul(&omega.coeffs.coproduct_on_leg(1), group);
    left.sub(&right).l1()
}

/// Largest ℓ¹ coefficient norm of `(Δ_Ω⊗id)Δ_Ω(λ_g) - (id⊗Δ_Ω)Δ_Ω(λ_g)`
/// over all `g`.
pub fn coassociativity_residual(omega: &Omega, group: &FinGroup) -> f64 {
    (0..group.order())
        .map(|g| {
            let y = omega.twisted(&GaElem::basis(&[g], group.order()), group);
            let left = omega.twisted_on_leg(&y, 0, group);
            let right = omega.twisted_on_leg(&y, 1, group);
            left.sub(&right).l1()
        })
        .fold(0.0, f64::max)
}

#[derive(Clone, Debug, Serialize)]
pub struct HaarInvariance {
    /// `max ‖(id⊗h)Δ(x) - h(x)1‖` (Frobenius) over the tested `x`.
    pub left: f64,
    /// `max ‖(h⊗id)Δ(x) - h(x)1‖` (Frobenius) over the tested `x`.
    pub right: f64,
    pub tested: usize,
}

fn haar_inputs(f: &FinQG, random: usize, seed: u64) -> Vec<GaElem> {
    let d = f.dim();
    let mut inputs: Vec<GaElem> = (0..d).map(|g| GaElem::basis(&[g], d)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random {
        inputs.push(random_span_coeffs(f, &mut rng));
    }
    inputs
}

/// Invariance of the normalized trace under `x ↦ Ω Δ(x) Ω*` for every
/// `λ_g` and `random` seeded random elements of the span.
///
/// The normalized partial trace of `Σ c_{g,h} λ_g⊗λ_h` over a leg keeps the
/// coefficients with `e` on that leg, and `‖Σ c_g λ_g‖_F = √|G| ‖c‖₂`, so
/// this equals [`haar_invariance_dense`] without forming `|G|²`-dimensional
/// products.
pub fn haar_invariance(f: &FinQG, omega: &Omega, random: usize, seed: u64) -> Result<HaarInvariance> {
    let group = &f.group;
    let scale = (f.dim() as f64).sqrt();
    let one = GaElem::one(1, group);
    let (mut left, mut right) = (0.0f64, 0.0f64);
    let inputs = haar_inputs(f, random, seed);
    for x in &inputs {
        let delta = omega.twisted(x, group);
        let target = one.scale(x.coeff(&[group.identity()]));
        left = left.max(delta.haar_on_leg(1, group).sub(&target).l2() * scale);
        right = right.max(delta.haar_on_leg(0, group).sub(&target).l2() * scale);
    }
    Ok(HaarInvariance {
        left,
        right,
        tested: inputs.len(),
    })
}

/// [`haar_invariance`] on dense operators with explicit partial traces.
pub fn haar_invariance_dense(f: &FinQG, omega: &Omega, random: usize, seed: u64) -> Result<HaarInvariance> {
    let d = f.dim();
    let omega_dense = omega.to_dense(&f.group);
    let omega_adj = omega_dense.adjoint();
    let (mut left, mut right) = (0.0f64, 0.0f64);
    let inputs = haar_inputs(f, random, seed);
    for c in &inputs {
        let x = c.to_dense(&f.group);
        let delta = omega_dense.matmul(&f.coproduct(&x)?).matmul(&omega_adj);
        let target = DenseOp::identity(d).scale(f.haar(&x));
        left = left.max(delta.normalized_partial_trace(d, d, 1).sub(&target).frobenius());
        right = right.max(delta.normalized_partial_trace(d, d, 0).sub(&target).frobenius());
    }
    Ok(HaarInvariance {
        left,
        right,
        tested: inputs.len(),
    })
}

/// Coefficients uniform in `[-1, 1] + [-1, 1]i`.
pub fn random_span_coeffs(f: &FinQG, rng: &mut ChaCha8Rng) -> GaElem {
    let mut c = GaElem::zero(1, f.dim());
    for g in 0..f.dim() {
        c.set(&[g], Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    }
    c
}

pub fn random_span_element(f: &FinQG, rng: &mut ChaCha8Rng) -> DenseOp {
    random_span_coeffs(f, rng).to_dense(&f.group)
}

/// Random unimodular table on the dual of `K`; almost never a bicharacter.
pub fn random_unimodular_table(group: &FinGroup, seed: u64) -> Result<FiniteBichar> {
    let m = group.k_dual().len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let table = (0..m)
        .map(|_| {
            (0..m)
                .map(|_| Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU)))
                .collect()
        })
        .collect();
    FiniteBichar::unchecked(group, table)
}

/// The multiplicative unitary of `x ↦ Ω Δ(x) Ω*` on the GNS space of the
/// trace, identified with `l²(G)` through `Λ(λ_g) = e_g`:
/// `W*(e_a⊗e_b)` is the coefficient vector of `Δ_Ω(λ_b)(λ_a⊗1)`, with
/// entries below [`CHOP`] removed.
pub fn build_multiplicative_unitary(f: &FinQG, omega: &Omega) -> DenseOp {
    let d = f.dim();
    let group = &f.group;
    let mut w_star = DenseOp::zeros(d * d);
    let e = group.identity();
    for b in 0..d {
        let mut delta_b = omega.twisted(&GaElem::basis(&[b], d), group);
        delta_b.chop(CHOP);
        for a in 0..d {
            let col = delta_b.mul(&GaElem::basis(&[a, e], d), group);
            for (row, v) in col.coeffs().iter().enumerate() {
                if *v != Complex64::new(0.0, 0.0) {
                    w_star.set(row, a * d + b, *v);
                }
            }
        }
    }
    w_star.adjoint()
}

/// Named residuals of the full finite twisting suite.
#[derive(Clone, Debug, Serialize)]
pub struct FintwistReport {
    pub n: u64,
    pub group_order: usize,
    pub omega_unitarity: f64,
    pub omega_nnz: usize,
    /// Largest coefficient of `Ω` removed as rounding residue.
    pub omega_chopped: f64,
    pub projection_ranks: Vec<f64>,
    pub cocycle: f64,
    pub coassoc: f64,
    pub haar_left: f64,
    pub haar_right: f64,
    pub haar_left_untwisted: f64,
    pub haar_right_untwisted: f64,
    pub w_unitarity: f64,
    pub w_twisted_unitarity: f64,
    pub pentagon: PentagonResidual,
    pub pentagon_twisted: PentagonResidual,
    /// Untwisted `W` against the permutation `e_a⊗e_b ↦ e_{b⁻¹a}⊗e_b`.
    pub w_permutation_deviation: f64,
    pub w_twisted_nnz: usize,
    /// When `K` is central, `Ω` commutes with every `Δ(x)` and no table can
    /// break coassociativity; the negative controls need a non-central `K`.
    pub negative_controls_applicable: bool,
    /// Cocycle residual of the lift of a random unimodular table.
    pub corrupted_cocycle: f64,
    /// Pentagon residual (sampled lower bound) for the coproduct twisted by
    /// that lift.
    pub corrupted_pentagon: PentagonResidual,
    /// Exploratory: `‖W_Ω - Ω W‖` in Frobenius norm.
    pub w_twisted_minus_omega_w: f64,
}

/// Largest group order the dense suite accepts (`|G|²`-dimensional
/// operators are stored densely).
pub const MAX_SUITE_ORDER: usize = 64;

/// Number of columns sampled for the corrupted pentagon lower bound.
pub const CORRUPTED_PENTAGON_COLUMNS: usize = 64;

pub fn k_is_central(group: &FinGroup) -> bool {
    group
        .k_subgroup()
        .iter()
        .all(|&k| (0..group.order()).all(|g| group.mul(k, g) == group.mul(g, k)))
}

/// Run every finite-twisting check for `group` and bicharacter `psi`.
/// `seed` drives the random span elements and the corrupted table.
pub fn run_suite(group: &FinGroup, psi: &FiniteBichar, seed: u64) -> Result<FintwistReport> {
    if group.order() > MAX_SUITE_ORDER {
        return Err(Error::InvalidArgument(format!(
            "group order {} exceeds the dense limit {MAX_SUITE_ORDER}",
            group.order()
        )));
    }
    let f = regular_rep(group);
    let d = f.dim();
    let omega = f.build_omega(psi)?;
    let omega_dense = omega.to_dense(group);
    let untwisted = Omega::identity(group);

    let haar = haar_invariance(&f, &omega, 4, seed)?;
    let haar_plain = haar_invariance(&f, &untwisted, 4, seed)?;

    let w = build_multiplicative_unitary(&f, &untwisted);
    let w_twisted = build_multiplicative_unitary(&f, &omega);
    let reference = DenseOp::from_fn(d * d, |r, c| {
        let (a, b) = (c / d, c % d);
        let target = group.mul(group.inv(b), a) * d + b;
        if r == target {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });

    let corrupted_table = random_unimodular_table(group, seed)?;
    let corrupted = f.lift_unchecked(&corrupted_table)?;
    let w_corrupted = build_multiplicative_unitary(&f, &corrupted);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample: Vec<usize> = (0..CORRUPTED_PENTAGON_COLUMNS)
        .map(|_| rng.gen_range(0..d * d * d))
        .collect();

    Ok(FintwistReport {
        n: group.modulus(),
        group_order: d,
        omega_unitarity: omega_dense.unitarity_residual(),
        omega_nnz: omega_dense.nnz(),
        omega_chopped: omega.chopped(),
        projection_ranks: projection_ranks(&f),
        cocycle: check_2cocycle(&omega, group),
        coassoc: coassociativity_residual(&omega, group),
        haar_left: haar.left,
        haar_right: haar.right,
        haar_left_untwisted: haar_plain.left,
        haar_right_untwisted: haar_plain.right,
        w_unitarity: w.unitarity_residual(),
        w_twisted_unitarity: w_twisted.unitarity_residual(),
        pentagon: pentagon_residual(&SparseOp::from_dense(&w, d), None),
        pentagon_twisted: pentagon_residual(&SparseOp::from_dense(&w_twisted, d), None),
        w_permutation_deviation: w.sub(&reference).frobenius(),
        w_twisted_nnz: w_twisted.nnz(),
        negative_controls_applicable: !k_is_central(group),
        corrupted_cocycle: check_2cocycle(&corrupted, group),
        corrupted_pentagon: pentagon_residual(&SparseOp::from_dense(&w_corrupted, d), Some(&sample)),
        w_twisted_minus_omega_w: w_twisted.sub(&omega_dense.matmul(&w)).frobenius(),
    })
}

/// Rank of each spectral projection, in character order.
pub fn projection_ranks(f: &FinQG) -> Vec<f64> {
    f.spectral_projections().iter().map(|p| p.trace().re).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (FinGroup, FinQG) {
        let g = FinGroup::new(5).unwrap();
        let f = regular_rep(&g);
        (g, f)
    }

    #[test]
    fn regular_rep_is_a_permutation_rep() {
        let (g, f) = setup();
        assert_eq!(f.dim(), 20);
        assert_eq!(f.rep(g.identity()), &DenseOp::identity(20));
        for a in 0..20 {
            assert_eq!(f.rep(a).nnz(), 20);
            assert_eq!(f.rep(a).matmul(f.rep(g.inv(a))), DenseOp::identity(20));
            for b in 0..20 {
                assert_eq!(f.rep(a).matmul(f.rep(b)), *f.rep(g.mul(a, b)));
            }
            if a != g.identity() {
                assert_eq!(f.rep(a).trace(), Complex64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn coproduct_of_basis_and_identity() {
        let (g, f) = setup();
        let e = f.coproduct(f.rep(3)).unwrap();
        assert_eq!(e, f.rep(3).kron(f.rep(3)));
        assert_eq!(f.coproduct(&DenseOp::identity(20)).unwrap(), DenseOp::identity(400));
        let _ = g;
    }

    #[test]
    fn fourier_rejects_outside_span() {
        let (_, f) = setup();
        let mut x = DenseOp::zeros(20);
        x.set(0, 1, Complex64::new(1.0, 0.0));
        assert!(matches!(f.fourier(&x), Err(Error::OutsideSpan(_))));
    }

    #[test]
    fn coproduct_is_multiplicative() {
        let (_, f) = setup();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let x = random_span_element(&f, &mut rng);
            let y = random_span_element(&f, &mut rng);
            let lhs = f.coproduct(&x.matmul(&y)).unwrap();
            let rhs = f.coproduct(&x).unwrap().matmul(&f.coproduct(&y).unwrap());
            assert!(lhs.sub(&rhs).frobenius() <= 1e-12 * lhs.frobenius().max(1.0));
        }
    }

    #[test]
    fn projections_are_a_resolution_of_identity() {
        let (_, f) = setup();
        let ps = f.spectral_projections();
        assert_eq!(ps.len(), 4);
        let mut sum = DenseOp::zeros(20);
        for (i, p) in ps.iter().enumerate() {
            assert!(p.matmul(p).sub(p).frobenius() < 1e-15);
            assert!(p.adjoint().sub(p).frobenius() < 1e-15);
            assert_eq!(p.trace(), Complex64::new(5.0, 0.0));
            for (j, q) in ps.iter().enumerate() {
                if i != j {
                    assert!(p.matmul(q).frobenius() < 1e-15);
                }
            }
            sum = sum.add(p);
        }
        assert!(sum.sub(&DenseOp::identity(20)).frobenius() < 1e-15);
    }

    #[test]
    fn trivial_bicharacter_gives_identity_omega() {
        let (g, f) = setup();
        let omega = f.build_omega(&FiniteBichar::trivial(&g)).unwrap();
        assert!(omega.to_dense(&g).sub(&DenseOp::identity(400)).frobenius() < 1e-15);
        assert_eq!(check_2cocycle(&omega, &g), 0.0);
    }

    #[test]
    fn omega_commutes_with_k_grouplikes() {
        let (g, f) = setup();
        let omega = f.build_omega(&FiniteBichar::power(&g, 4).unwrap()).unwrap();
        let od = omega.to_dense(&g);
        assert!(od.unitarity_residual() <= 1e-12);
        for &k in g.k_subgroup() {
            for &k2 in g.k_subgroup() {
                let t = f.rep(k).kron(f.rep(k2));
                assert!(od.matmul(&t).sub(&t.matmul(&od)).frobenius() < 1e-14);
            }
            let twisted = f.twist_coproduct(f.rep(k), &omega).unwrap();
            assert!(twisted.sub(&f.rep(k).kron(f.rep(k))).frobenius() < 1e-14);
        }
    }

    #[test]
    fn twisted_coproduct_matches_dense_conjugation() {
        let (g, f) = setup();
        let omega = f.build_omega(&FiniteBichar::power(&g, 4).unwrap()).unwrap();
        let od = omega.to_dense(&g);
        let x = f.rep(7);
        let dense = od.matmul(&f.coproduct(x).unwrap()).matmul(&od.adjoint());
        assert!(dense.sub(&f.twist_coproduct(x, &omega).unwrap()).frobenius() < 1e-14);
    }

    #[test]
    fn haar_coefficient_route_matches_dense() {
        let (g, f) = setup();
        let omega = f.build_omega(&FiniteBichar::power(&g, 4).unwrap()).unwrap();
        let fast = haar_invariance(&f, &omega, 3, 5).unwrap();
        let slow = haar_invariance_dense(&f, &omega, 3, 5).unwrap();
        assert_eq!(fast.tested, 23);
        assert!(fast.left <= 1e-12 && slow.left <= 1e-12);
        assert!(fast.right <= 1e-12 && slow.right <= 1e-12);
        // a non-invariant functional shows up identically on both routes
        let skew = Omega::identity(&g);
        let x = random_span_coeffs(&f, &mut ChaCha8Rng::seed_from_u64(1));
        let delta = skew.twisted(&x, &g);
        let direct = delta.haar_on_leg(1, &g).l2() * (20f64).sqrt();
        let dense = f
            .coproduct(&x.to_dense(&g))
            .unwrap()
            .normalized_partial_trace(20, 20, 1)
            .frobenius();
        assert!((direct - dense).abs() < 1e-12);
    }

    #[test]
    fn untwisted_w_is_the_left_division_permutation() {
        let (g, f) = setup();
        let w = build_multiplicative_unitary(&f, &Omega::identity(&g));
        let d = 20;
        for a in 0..d {
            for b in 0..d {
                let target = g.mul(g.inv(b), a) * d + b;
                assert_eq!(w.get(target, a * d + b), Complex64::new(1.0, 0.0));
            }
        }
        assert_eq!(w.nnz(), d * d);
    }

    #[test]
    fn corrupted_table_breaks_the_cocycle() {
        let (g, f) = setup();
        let bad = random_unimodular_table(&g, 1).unwrap();
        assert!(bad.defect() > 0.1);
        assert!(matches!(f.build_omega(&bad), Err(Error::NotBicharacter(_))));
        let lifted = f.lift_unchecked(&bad).unwrap();
        assert!(lifted.to_dense(&g).unitarity_residual() < 1e-12);
        assert!(check_2cocycle(&lifted, &g) > 0.1);
    }
}

#[cfg(test)]
mod suite_tests {
    use super::*;

    #[test]
    fn suite_for_n5_with_quarter_turn_bicharacter() {
        let g = FinGroup::new(5).unwrap();
        let psi = FiniteBichar::power(&g, 4).unwrap();
        let r = run_suite(&g, &psi, 42).unwrap();
        eprintln!("{}", serde_json::to_string_pretty(&r).unwrap());
        assert_eq!(r.omega_nnz, 6400);
        assert_eq!(r.w_twisted_nnz, 5200);
        assert!(r.omega_unitarity <= 1e-12);
        assert!(r.cocycle <= 1e-12);
        assert!(r.coassoc <= 1e-12);
        assert!(r.haar_left <= 1e-12 && r.haar_right <= 1e-12);
        assert!(r.pentagon.frobenius <= 1e-12);
        assert!(r.pentagon_twisted.frobenius <= 1e-12);
        assert_eq!(r.pentagon.columns_checked, 8000);
        assert_eq!(r.w_permutation_deviation, 0.0);
        assert!(r.corrupted_cocycle > 1e-2);
        assert!(r.corrupted_pentagon.frobenius > 1e-2);
    }
}
