use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOp {
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseOp {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.dim + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.dim + c] += v;
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * self.dim..(r + 1) * self.dim]
    }

    /// Number of entries that are not exactly zero.
    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|v| **v != ZERO).count()
    }

    /// Matrix product; skips zero entries of `self`, which keeps products
    /// of sparse operators (permutations, tensor products) cheap.
    pub fn matmul(&self, other: &DenseOp) -> DenseOp {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            let out_row = &mut out[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for (o, b) in out_row.iter_mut().zip(other.row(k)) {
                    *o += a * b;
                }
            }
        }
        DenseOp { dim: n, data: out }
    }

    pub fn adjoint(&self) -> DenseOp {
        DenseOp::from_fn(self.dim, |r, c| self.get(c, r).conj())
    }

    pub fn add(&self, other: &DenseOp) -> DenseOp {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        DenseOp {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &DenseOp) -> DenseOp {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        DenseOp {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> DenseOp {
        DenseOp {
            dim: self.dim,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// Kronecker product; `(A⊗B)[(i₁,i₂),(j₁,j₂)] = A[i₁,j₁] B[i₂,j₂]` with
    /// pair `(i₁, i₂)` at index `i₁ * dim(B) + i₂`.
    pub fn kron(&self, other: &DenseOp) -> DenseOp {
        let (m, n) = (self.dim, other.dim);
        let mut out = DenseOp::zeros(m * n);
        for i1 in 0..m {
            for j1 in 0..m {
                let a = self.get(i1, j1);
                if a == ZERO {
                    continue;
                }
                for i2 in 0..n {
                    for j2 in 0..n {
                        let b = other.get(i2, j2);
                        if b != ZERO {
                            out.set(i1 * n + i2, j1 * n + j2, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Frobenius norm, an upper bound for the operator norm.
    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `max(‖U*U - I‖, ‖UU* - I‖)` in Frobenius norm.
    pub fn unitarity_residual(&self) -> f64 {
        let id = DenseOp::identity(self.dim);
        let adj = self.adjoint();
        let left = adj.matmul(self).sub(&id).frobenius();
        let right = self.matmul(&adj).sub(&id).frobenius();
        left.max(right)
    }

    /// Trace over one tensor leg of a `d1 * d2` dimensional operator,
    /// normalized by that leg's dimension. `leg` 0 traces out the first
    /// factor, 1 the second.
    pub fn normalized_partial_trace(&self, d1: usize, d2: usize, leg: usize) -> DenseOp {
        assert_eq!(self.dim, d1 * d2, "dimension mismatch");
        match leg {
            0 => DenseOp::from_fn(d2, |r, c| {
                (0..d1).map(|k| self.get(k * d2 + r, k * d2 + c)).sum::<Complex64>() / d1 as f64
            }),
            _ => DenseOp::from_fn(d1, |r, c| {
                (0..d2).map(|k| self.get(r * d2 + k, c * d2 + k)).sum::<Complex64>() / d2 as f64
            }),
        }
    }
}
