//! Truncated operator models: the diagonal modular data `A_x`, `B_x`,
//! `δ_x` on winding modes, and a weighted-shift representation of the
//! q-commutation relations on a finite square lattice.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ncpoly::{scalar_ratio, Monomial, NCExpr};
use crate::qgroup::{self, Relation, A, AS, B, BS, M_A, M_B, PH_A, PH_B};

/// Relative tolerance of the spectrum and relation checks.
pub const SPECTRAL_TOLERANCE: f64 = 1e-12;
/// Separations of `q_x`, `q_y` below this get a warning in the witness.
pub const WITNESS_WARNING: f64 = 1e-9;
/// Truncation radii of the exhaustion check.
pub const EXHAUSTION_RADII: [usize; 3] = [10, 25, 50];

/// `q_x = e^{-2x}`.
pub fn q_x(x: f64) -> f64 {
    (-2.0 * x).exp()
}

/// Diagonal modular data on winding modes `n = -N..=N`.
#[derive(Clone, Debug, Serialize)]
pub struct ModularModel {
    pub x: f64,
    pub n: usize,
    pub delta: Vec<f64>,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl ModularModel {
    pub fn modes(&self) -> impl Iterator<Item = i64> {
        let n = self.n as i64;
        -n..=n
    }

    /// Largest relative deviation of `δ` from `A⁻¹B` and from `A⁻²`.
    pub fn factorization_residual(&self) -> f64 {
        self.delta
            .iter()
            .zip(self.a.iter().zip(&self.b))
            .map(|(d, (a, b))| {
                let via_b = (d - b / a).abs() / d;
                let via_a = (d - (a * a).recip()).abs() / d;
                via_b.max(via_a)
            })
            .fold(0.0, f64::max)
    }
}

/// `δ_x^{it}` translates the circle by `e^{-2itx}`, which multiplies
/// winding mode `n` by `e^{-2itxn}`; its analytic generator is the
/// diagonal `e^{-2xn}`. Likewise `A_x = e^{xn}`, `B_x = e^{-xn}`.
pub fn build_modular(x: f64, n: usize) -> Result<ModularModel> {
    if n < 1 {
        return Err(Error::InvalidArgument("truncation radius must be at least 1".into()));
    }
    if !x.is_finite() {
        return Err(Error::InvalidArgument("x must be finite".into()));
    }
    let modes: Vec<f64> = (-(n as i64)..=n as i64).map(|k| k as f64).collect();
    Ok(ModularModel {
        x,
        n,
        delta: modes.iter().map(|k| (-2.0 * x * k).exp()).collect(),
        a: modes.iter().map(|k| (x * k).exp()).collect(),
        b: modes.iter().map(|k| (-x * k).exp()).collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub x: f64,
    pub n: usize,
    /// Eigenvalues of `δ`, largest first.
    pub spectrum: Vec<f64>,
    /// `q_x`.
    pub ratio: f64,
    /// Worst relative deviation of consecutive eigenvalue ratios from
    /// `min(q_x, 1/q_x)`.
    pub ratio_residual: f64,
    /// Worst relative deviation of the eigenvalues from `q_x^n`.
    pub eigenvalue_residual: f64,
    pub factorization_residual: f64,
    /// Smallest eigenvalue for each radius in [`EXHAUSTION_RADII`].
    pub min_eigenvalues: Vec<(usize, f64)>,
    /// Whether those minima decrease strictly (expected for `x ≠ 0`).
    pub strictly_decreasing: bool,
}

pub fn spectrum_report(m: &ModularModel) -> Result<SpectrumReport> {
    let q = q_x(m.x);
    let mut spectrum = m.delta.clone();
    spectrum.sort_by(|a, b| b.total_cmp(a));
    spectrum.dedup();
    let step = q.min(q.recip());
    let ratio_residual = spectrum
        .windows(2)
        .map(|w| ((w[1] / w[0]) - step).abs() / step)
        .fold(0.0, f64::max);
    let eigenvalue_residual = m
        .modes()
        .zip(&m.delta)
        .map(|(k, d)| {
            let expected = q.powi(k as i32);
            (d - expected).abs() / expected
        })
        .fold(0.0, f64::max);
    let mut min_eigenvalues = Vec::new();
    for &radius in &EXHAUSTION_RADII {
        let model = build_modular(m.x, radius)?;
        let min = model.delta.iter().copied().fold(f64::INFINITY, f64::min);
        min_eigenvalues.push((radius, min));
    }
    let strictly_decreasing = min_eigenvalues.windows(2).all(|w| w[1].1 < w[0].1);
    Ok(SpectrumReport {
        x: m.x,
        n: m.n,
        spectrum,
        ratio: q,
        ratio_residual,
        eigenvalue_residual,
        factorization_residual: m.factorization_residual(),
        min_eigenvalues,
        strictly_decreasing,
    })
}

/// Which generating set a word is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Chart {
    /// `b*, b, a, a*` as in [`qgroup::qtriag_presentation`].
    QTriag,
    /// `M_b, M_a, Ph_b, Ph_a` as in [`qgroup::polar_presentation`].
    Polar,
}

pub type Site = (i64, i64);
/// Sparse vector on the lattice.
pub type LatticeVec = BTreeMap<Site, Complex64>;

/// Weighted shifts on `span{e_{j,k} : |j|, |k| ≤ N}` with open boundary:
/// `Ph_a e_{j,k} = e_{j,k-1}`, `Ph_b e_{j,k} = e_{j-1,k}`,
/// `M_a = e^{4xj}`, `M_b = e^{4xk}`, `a = Ph_a M_a`, `b = Ph_b M_b`.
/// Shifting off the lattice gives zero.
#[derive(Clone, Debug, Serialize)]
pub struct TruncModel {
    pub x: f64,
    pub n: usize,
}

pub fn build_qtorus(x: f64, n: usize) -> Result<TruncModel> {
    if n < 2 {
        return Err(Error::InvalidArgument("truncation radius must be at least 2".into()));
    }
    if !x.is_finite() {
        return Err(Error::InvalidArgument("x must be finite".into()));
    }
    Ok(TruncModel { x, n })
}

impl TruncModel {
    pub fn dim(&self) -> usize {
        (2 * self.n + 1).pow(2)
    }

    fn inside(&self, (j, k): Site) -> bool {
        let n = self.n as i64;
        j.abs() <= n && k.abs() <= n
    }

    /// One factor of a generator or its inverse on a basis vector:
    /// returns the weight and the target site, or `None` when it leaves the
    /// lattice.
    fn unit(&self, chart: Chart, gen: usize, inverse: bool, (j, k): Site) -> Result<Option<(f64, Site)>> {
        let w = 4.0 * self.x;
        let (weight, target) = match (chart, gen, inverse) {
            (Chart::QTriag, A, false) => ((w * j as f64).exp(), (j, k - 1)),
            (Chart::QTriag, A, true) => ((-w * j as f64).exp(), (j, k + 1)),
            (Chart::QTriag, AS, false) => ((w * j as f64).exp(), (j, k + 1)),
            (Chart::QTriag, AS, true) => ((-w * j as f64).exp(), (j, k - 1)),
            (Chart::QTriag, B, false) => ((w * k as f64).exp(), (j - 1, k)),
            (Chart::QTriag, BS, false) => ((w * k as f64).exp(), (j + 1, k)),
            (Chart::Polar, M_A, inv) => (((if inv { -w } else { w }) * j as f64).exp(), (j, k)),
            (Chart::Polar, M_B, inv) => (((if inv { -w } else { w }) * k as f64).exp(), (j, k)),
            (Chart::Polar, PH_A, inv) => (1.0, (j, if inv { k + 1 } else { k - 1 })),
            (Chart::Polar, PH_B, inv) => (1.0, (if inv { j + 1 } else { j - 1 }, k)),
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "generator {gen} (inverse: {inverse}) has no action in the {chart:?} chart"
                )))
            }
        };
        Ok(self.inside(target).then_some((weight, target)))
    }

    /// Apply a word to `e_site`; the rightmost letter acts first.
    pub fn apply_word(&self, chart: Chart, word: &Monomial, site: Site) -> Result<Option<(f64, Site)>> {
        let mut weight = 1.0;
        let mut at = site;
        for letter in word.letters().iter().rev() {
            for _ in 0..letter.exp.unsigned_abs() {
                match self.unit(chart, letter.gen, letter.exp < 0, at)? {
                    Some((w, t)) => {
                        weight *= w;
                        at = t;
                    }
                    None => return Ok(None),
                }
            }
        }
        Ok(Some((weight, at)))
    }

    /// Apply an arity-1 expression to `e_site`, with `s = e^x`.
    pub fn apply_expr(&self, chart: Chart, e: &NCExpr, site: Site) -> Result<LatticeVec> {
        if e.arity() != 1 {
            return Err(Error::ArityMismatch { left: e.arity(), right: 1 });
        }
        let mut out = LatticeVec::new();
        for (tm, c) in e.terms() {
            if let Some((w, t)) = self.apply_word(chart, &tm[0], site)? {
                *out.entry(t).or_default() += c.eval(self.x) * w;
            }
        }
        Ok(out)
    }

    /// `‖(lhs - rhs) e_site‖ / max(‖lhs e_site‖, ‖rhs e_site‖)`, or 0 when
    /// both sides vanish.
    pub fn relation_residual_at(&self, chart: Chart, rel: &Relation, site: Site) -> Result<f64> {
        let l = self.apply_expr(chart, &rel.lhs, site)?;
        let r = self.apply_expr(chart, &rel.rhs, site)?;
        let norm = |v: &LatticeVec| v.values().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let scale = norm(&l).max(norm(&r));
        if scale == 0.0 {
            return Ok(0.0);
        }
        let mut diff = l;
        for (s, c) in r {
            *diff.entry(s).or_default() -= c;
        }
        Ok(norm(&diff) / scale)
    }

    pub fn sites(&self) -> impl Iterator<Item = Site> {
        let n = self.n as i64;
        (-n..=n).flat_map(move |j| (-n..=n).map(move |k| (j, k)))
    }
}

/// Interior and boundary-layer residuals of one relation.
#[derive(Clone, Debug, Serialize)]
pub struct RelationResidual {
    pub chart: Chart,
    pub relation: String,
    pub interior: f64,
    pub boundary: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub x: f64,
    pub n: usize,
    pub depth: usize,
    /// `q = e^{8x}`.
    pub q: f64,
    pub relations: Vec<RelationResidual>,
    pub interior_max: f64,
    pub boundary_max: f64,
    pub interior_sites: usize,
}

/// Every relation of both presentations on basis vectors `e_{j,k}` with
/// `max(|j|, |k|) ≤ N - depth` (interior) and on the rest (boundary).
pub fn relation_residuals(model: &TruncModel, depth: usize) -> Result<RelationReport> {
    if depth + 1 > model.n {
        return Err(Error::InvalidArgument(format!(
            "depth {depth} exceeds N - 1 = {}",
            model.n - 1
        )));
    }
    let limit = (model.n - depth) as i64;
    let interior_sites = model.sites().filter(|(j, k)| j.abs().max(k.abs()) <= limit).count();
    let mut relations = Vec::new();
    for (chart, rels) in [(Chart::QTriag, qgroup::qtriag_relations()), (Chart::Polar, qgroup::polar_relations())] {
        for rel in rels {
            let (mut interior, mut boundary) = (0.0f64, 0.0f64);
            for site in model.sites() {
                let r = model.relation_residual_at(chart, &rel, site)?;
                if site.0.abs().max(site.1.abs()) <= limit {
                    interior = interior.max(r);
                } else {
                    boundary = boundary.max(r);
                }
            }
            relations.push(RelationResidual {
                chart,
                relation: rel.name.clone(),
                interior,
                boundary,
            });
        }
    }
    Ok(RelationReport {
        x: model.x,
        n: model.n,
        depth,
        q: (8.0 * model.x).exp(),
        interior_max: relations.iter().map(|r| r.interior).fold(0.0, f64::max),
        boundary_max: relations.iter().map(|r| r.boundary).fold(0.0, f64::max),
        relations,
        interior_sites,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    pub m: u32,
    pub n: u32,
    /// Symbolic coefficient of `(b*)^n a^m` in the normal form of
    /// `a^m (b*)^n`, printed.
    pub symbolic: String,
    pub symbolic_value: f64,
    /// Largest relative deviation of the measured ratio from it.
    pub residual: f64,
}

/// Compare the normal-ordering coefficient of `a^m (b*)^n` with the ratio
/// `⟨w, a^m (b*)^n e⟩ / ⟨w, (b*)^n a^m e⟩` measured on interior basis
/// vectors `e`, where `w` is their common image site.
pub fn cross_validate(model: &TruncModel, max_power: u32) -> Result<Vec<CrossCheck>> {
    let p = qgroup::qtriag_presentation();
    let reach = 2 * max_power as i64;
    let limit = model.n as i64 - reach;
    if limit < 0 {
        return Err(Error::InvalidArgument(format!(
            "N = {} is too small for words of length {reach}",
            model.n
        )));
    }
    let mut out = Vec::new();
    for m in 1..=max_power {
        for n in 1..=max_power {
            let lhs = Monomial::from_pairs(&[(A, m as i32), (BS, n as i32)]);
            let rhs = Monomial::from_pairs(&[(BS, n as i32), (A, m as i32)]);
            let coeff = scalar_ratio(&NCExpr::monomial(lhs.clone()), &NCExpr::monomial(rhs.clone()), &p)?;
            let expected = coeff.eval(model.x);
            let mut residual = 0.0f64;
            for site in model.sites().filter(|(j, k)| j.abs().max(k.abs()) <= limit) {
                let l = model.apply_word(Chart::QTriag, &lhs, site)?;
                let r = model.apply_word(Chart::QTriag, &rhs, site)?;
                let (Some((wl, tl)), Some((wr, tr))) = (l, r) else {
                    return Err(Error::InvalidArgument(format!("interior site {site:?} left the lattice")));
                };
                if tl != tr {
                    return Err(Error::InvalidArgument(format!("words reach different sites from {site:?}")));
                }
                let measured = Complex64::new(wl / wr, 0.0);
                residual = residual.max((measured - expected).norm() / expected.norm());
            }
            out.push(CrossCheck {
                m,
                n,
                symbolic: coeff.to_string(),
                symbolic_value: expected.re,
                residual,
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Equal,
    Distinct,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub x: f64,
    pub y: f64,
    pub q_x: f64,
    pub q_y: f64,
    pub verdict: Verdict,
    /// `|q_x - q_y| / max(q_x, q_y)`.
    pub relative_separation: f64,
    pub warning: Option<String>,
}

/// Compare the point spectra `q_x^Z` and `q_y^Z`. For positive `x`, `y`
/// they agree iff `q_x = q_y`, which is decided exactly on the computed
/// ratios; separations below [`WITNESS_WARNING`] carry a warning.
pub fn nonisomorphism_witness(x: f64, y: f64) -> Result<WitnessReport> {
    if !(x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "deformation parameters must be positive and finite, got {x} and {y}"
        )));
    }
    let (qx, qy) = (q_x(x), q_x(y));
    let relative_separation = (qx - qy).abs() / qx.max(qy);
    let verdict = if x == y || qx == qy {
        Verdict::Equal
    } else {
        Verdict::Distinct
    };
    let warning = (verdict == Verdict::Distinct && relative_separation < WITNESS_WARNING).then(|| {
        format!("ratios differ by only {relative_separation:e} relative; the distinction rests on floating-point resolution")
    });
    Ok(WitnessReport {
        x,
        y,
        q_x: qx,
        q_y: qy,
        verdict,
        relative_separation,
        warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_data_at_zero_is_trivial() {
        let m = build_modular(0.0, 5).unwrap();
        assert!(m.delta.iter().all(|&d| d == 1.0));
        let r = spectrum_report(&m).unwrap();
        assert_eq!(r.spectrum, vec![1.0]);
        assert!(!r.strictly_decreasing);
    }

    #[test]
    fn modular_spectrum_is_geometric() {
        let m = build_modular(0.1, 50).unwrap();
        assert_eq!(m.delta.len(), 101);
        let r = spectrum_report(&m).unwrap();
        assert_eq!(r.spectrum.len(), 101);
        assert!(r.ratio_residual <= SPECTRAL_TOLERANCE);
        assert!(r.eigenvalue_residual <= SPECTRAL_TOLERANCE);
        assert!(r.factorization_residual <= 1e-15);
        assert!((r.ratio - (-0.2f64).exp()).abs() < 1e-16);
        assert!(r.strictly_decreasing);
        assert!((r.min_eigenvalues[2].1 - (-10.0f64).exp()).abs() / (-10.0f64).exp() < 1e-12);
        assert!(build_modular(0.1, 0).is_err());
    }

    #[test]
    fn negative_x_also_exhausts() {
        let r = spectrum_report(&build_modular(-0.3, 10).unwrap()).unwrap();
        assert!(r.strictly_decreasing);
        assert!(r.ratio_residual <= SPECTRAL_TOLERANCE);
    }

    #[test]
    fn qtorus_phase_conjugates_modulus() {
        // Ph_a M_b Ph_a* = e^{4x} M_b on interior vectors
        let t = build_qtorus(0.05, 6).unwrap();
        let w = Monomial::from_pairs(&[(PH_A, 1), (M_B, 1), (PH_A, -1)]);
        for site in [(0, 0), (2, -3), (-4, 4)] {
            let (weight, target) = t.apply_word(Chart::Polar, &w, site).unwrap().unwrap();
            assert_eq!(target, site);
            let expected = (0.2f64).exp() * (0.2 * site.1 as f64).exp();
            assert!((weight - expected).abs() / expected < 1e-14);
        }
        // open boundary kills the shift out of the lattice
        assert_eq!(t.apply_word(Chart::Polar, &Monomial::letter(PH_A, 1), (0, -6)).unwrap(), None);
    }

    #[test]
    fn relations_hold_in_the_interior() {
        let t = build_qtorus(0.05, 12).unwrap();
        let r = relation_residuals(&t, 3).unwrap();
        assert_eq!(r.relations.len(), 14);
        assert!(r.interior_max <= SPECTRAL_TOLERANCE, "{r:?}");
        assert!(r.boundary_max > 0.0);
        assert_eq!(r.interior_sites, 19 * 19);
        assert!(relation_residuals(&t, 12).is_err());
    }

    #[test]
    fn undeformed_model_commutes() {
        let t = build_qtorus(0.0, 4).unwrap();
        let r = relation_residuals(&t, 1).unwrap();
        assert_eq!(r.interior_max, 0.0);
        assert_eq!(r.q, 1.0);
    }

    #[test]
    fn q_ladder_matches_normal_form() {
        let t = build_qtorus(0.05, 10).unwrap();
        let checks = cross_validate(&t, 3).unwrap();
        assert_eq!(checks.len(), 9);
        for c in &checks {
            let expected = (8.0 * 0.05 * (c.m * c.n) as f64).exp();
            assert!((c.symbolic_value - expected).abs() / expected < 1e-12);
            assert!(c.residual <= 1e-10, "{c:?}");
        }
    }

    #[test]
    fn witness_verdicts() {
        assert_eq!(nonisomorphism_witness(0.1, 0.2).unwrap().verdict, Verdict::Distinct);
        let same = nonisomorphism_witness(0.3, 0.3).unwrap();
        assert_eq!(same.verdict, Verdict::Equal);
        assert!(same.warning.is_none());
        let close = nonisomorphism_witness(0.1, 0.1 + 1e-13).unwrap();
        assert_eq!(close.verdict, Verdict::Distinct);
        assert!(close.warning.is_some());
        assert!(nonisomorphism_witness(0.0, 0.1).is_err());
        assert!(nonisomorphism_witness(0.1, -1.0).is_err());
    }
}
