//! Column-sparse operators on `C^d ⊗ C^d` applied to legs of `(C^d)^{⊗3}`,
//! for the pentagon equation without forming `d³ × d³` matrices.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::dense::DenseOp;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Compressed columns of an operator on `C^d ⊗ C^d`.
#[derive(Clone, Debug)]
pub struct SparseOp {
    leg_dim: usize,
    cols: Vec<Vec<(usize, Complex64)>>,
}

impl SparseOp {
    /// Keep every entry that is not exactly zero.
    pub fn from_dense(m: &DenseOp, leg_dim: usize) -> Self {
        assert_eq!(m.dim(), leg_dim * leg_dim, "operator must act on C^d ⊗ C^d");
        let cols = (0..m.dim())
            .map(|c| {
                (0..m.dim())
                    .filter_map(|r| {
                        let v = m.get(r, c);
                        (v != ZERO).then_some((r, v))
                    })
                    .collect()
            })
            .collect();
        Self { leg_dim, cols }
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }
}

/// Dense scratch vector over `(C^d)^{⊗3}` that remembers which entries were
/// touched, so clearing and iterating cost only the support.
struct Scratch {
    values: Vec<Complex64>,
    touched: Vec<usize>,
    marked: Vec<bool>,
}

impl Scratch {
    fn new(len: usize) -> Self {
        Self {
            values: vec![ZERO; len],
            touched: Vec::new(),
            marked: vec![false; len],
        }
    }

    fn add(&mut self, i: usize, v: Complex64) {
        if !self.marked[i] {
            self.marked[i] = true;
            self.touched.push(i);
        }
        self.values[i] += v;
    }

    fn clear(&mut self) {
        for &i in &self.touched {
            self.values[i] = ZERO;
            self.marked[i] = false;
        }
        self.touched.clear();
    }

    fn entries(&self) -> Vec<(usize, Complex64)> {
        self.touched.iter().map(|&i| (i, self.values[i])).collect()
    }
}

/// Apply `w` on legs `(p, q)` (`p` is `w`'s first factor) of the sparse
/// vector `input`, writing into `out`.
fn apply_legs(w: &SparseOp, p: usize, q: usize, input: &[(usize, Complex64)], out: &mut Scratch) {
    let d = w.leg_dim;
    let stride = [d * d, d, 1];
    out.clear();
    for &(idx, v) in input {
        if v == ZERO {
            continue;
        }
        let comps = [idx / (d * d), (idx / d) % d, idx % d];
        let col = comps[p] * d + comps[q];
        let base = idx - comps[p] * stride[p] - comps[q] * stride[q];
        for &(row, wv) in &w.cols[col] {
            let target = base + (row / d) * stride[p] + (row % d) * stride[q];
            out.add(target, wv * v);
        }
    }
}

/// Residual of `W₁₂W₁₃W₂₃ = W₂₃W₁₂` over a set of basis columns.
#[derive(Clone, Debug, Serialize)]
pub struct PentagonResidual {
    /// Frobenius norm of the residual restricted to the checked columns.
    /// Over all columns this bounds the operator norm from above.
    pub frobenius: f64,
    /// Largest residual column norm, a lower bound for the operator norm.
    pub max_column: f64,
    pub columns_checked: usize,
}

fn column_residual(w: &SparseOp, col: usize, bufs: &mut [Scratch; 2]) -> f64 {
    let start = [(col, Complex64::new(1.0, 0.0))];
    let [a, b] = bufs;
    // left side: W₁₂ W₁₃ W₂₃ e_col
    apply_legs(w, 1, 2, &start, a);
    apply_legs(w, 0, 2, &a.entries(), b);
    apply_legs(w, 0, 1, &b.entries(), a);
    let left = a.entries();
    // right side: W₂₃ W₁₂ e_col
    apply_legs(w, 0, 1, &start, b);
    let mid = b.entries();
    apply_legs(w, 1, 2, &mid, b);
    for &(i, v) in &left {
        b.add(i, -v);
    }
    let norm_sqr: f64 = b.entries().iter().map(|(_, v)| v.norm_sqr()).sum();
    a.clear();
    b.clear();
    norm_sqr
}

/// Pentagon residual of `w` on the given columns of `(C^d)^{⊗3}`, or on all
/// of them when `columns` is `None`. Columns are processed in parallel and
/// summed in order, so the result is deterministic.
pub fn pentagon_residual(w: &SparseOp, columns: Option<&[usize]>) -> PentagonResidual {
    let d = w.leg_dim;
    let len = d * d * d;
    let all: Vec<usize>;
    let cols = match columns {
        Some(c) => c,
        None => {
            all = (0..len).collect();
            &all
        }
    };
    let norms: Vec<f64> = cols
        .par_iter()
        .map_init(
            || [Scratch::new(len), Scratch::new(len)],
            |bufs, &c| column_residual(w, c, bufs),
        )
        .collect();
    PentagonResidual {
        frobenius: norms.iter().sum::<f64>().sqrt(),
        max_column: norms.iter().copied().fold(0.0, f64::max).sqrt(),
        columns_checked: cols.len(),
    }
}
