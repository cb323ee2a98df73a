//! Minimal n x n complex Hermitian machinery: just enough for embedding a
//! two-level witness into a qudit space. Not a general linear-algebra layer.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// n x n Hermitian matrix, row-major dense storage.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianN {
    dim: usize,
    data: Vec<Complex64>,
}

impl HermitianN {
    /// Validating constructor; entries must satisfy `h[j][i] = conj(h[i][j])`
    /// within 1e-12 and the diagonal must be real.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim < 1 || entries.len() != dim * dim {
            return Err(Error::InvalidDimension {
                reason: format!("expected {} entries for dim {dim}", dim * dim),
            });
        }
        let mut m = Self { dim, data: entries };
        for i in 0..dim {
            for j in i..dim {
                let a = m.data[i * dim + j];
                let b = m.data[j * dim + i];
                let asym = if i == j {
                    a.im.abs()
                } else {
                    (a - b.conj()).norm()
                };
                if asym > 1e-12 {
                    return Err(Error::NotHermitian { max_asym: asym });
                }
            }
            // Symmetrize exactly so downstream arithmetic sees a true
            // Hermitian matrix.
            m.data[i * dim + i] = Complex64::new(m.data[i * dim + i].re, 0.0);
            for j in (i + 1)..dim {
                let avg = (m.data[i * dim + j] + m.data[j * dim + i].conj()) * 0.5;
                m.data[i * dim + j] = avg;
                m.data[j * dim + i] = avg.conj();
            }
        }
        Ok(m)
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let dim = diag.len();
        let mut m = Self::zero(dim);
        for (i, &v) in diag.iter().enumerate() {
            m.data[i * dim + i] = Complex64::new(v, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i).re).sum()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Matrix square; Hermitian by construction (symmetrized exactly).
    pub fn square(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in i..n {
                let mut s = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    s += self.get(i, k) * self.get(k, j);
                }
                if i == j {
                    out.data[i * n + i] = Complex64::new(s.re, 0.0);
                } else {
                    out.data[i * n + j] = s;
                    out.data[j * n + i] = s.conj();
                }
            }
        }
        out
    }

    /// Real trace of the product of two Hermitian matrices.
    pub fn trace_product(&self, other: &Self) -> f64 {
        let n = self.dim;
        let mut t = 0.0;
        for i in 0..n {
            for k in 0..n {
                t += (self.get(i, k) * other.get(k, i)).re;
            }
        }
        t
    }

    /// Full eigendecomposition by cyclic complex Jacobi rotations.
    ///
    /// Returns eigenvalues (unsorted, in final diagonal order) and the
    /// corresponding eigenvectors as kets, `vectors[i]` belonging to
    /// `values[i]`. Intended for the small dimensions a qudit embedding
    /// needs; cost grows as O(n^4) per sweep.
    pub fn eigendecompose(&self) -> (Vec<f64>, Vec<Vec<Complex64>>) {
        let n = self.dim;
        let mut h = self.data.clone();
        // Accumulated rotations: v * h0 * v^dag converges to the diagonal,
        // so the rows of v are eigen-bras.
        let mut v = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            v[i * n + i] = Complex64::new(1.0, 0.0);
        }
        let scale = self
            .data
            .iter()
            .map(|z| z.norm())
            .fold(0.0f64, f64::max)
            .max(1.0);
        for _sweep in 0..100 {
            let mut off = 0.0f64;
            for p in 0..n {
                for q in (p + 1)..n {
                    off = off.max(h[p * n + q].norm());
                }
            }
            if off <= 1e-15 * scale {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let hpq = h[p * n + q];
                    if hpq.norm() <= 1e-18 * scale {
                        continue;
                    }
                    let sub = crate::mat2::Hermitian2::new(h[p * n + p].re, h[q * n + q].re, hpq);
                    let g = sub.eigendecompose().basis.matrix();
                    // Rows p, q of h and v pick up g from the left ...
                    for j in 0..n {
                        let a = h[p * n + j];
                        let b = h[q * n + j];
                        h[p * n + j] = g.e[0][0] * a + g.e[0][1] * b;
                        h[q * n + j] = g.e[1][0] * a + g.e[1][1] * b;
                        let a = v[p * n + j];
                        let b = v[q * n + j];
                        v[p * n + j] = g.e[0][0] * a + g.e[0][1] * b;
                        v[q * n + j] = g.e[1][0] * a + g.e[1][1] * b;
                    }
                    // ... and columns p, q pick up g^dag from the right.
                    for i in 0..n {
                        let a = h[i * n + p];
                        let b = h[i * n + q];
                        h[i * n + p] = a * g.e[0][0].conj() + b * g.e[0][1].conj();
                        h[i * n + q] = a * g.e[1][0].conj() + b * g.e[1][1].conj();
                    }
                }
            }
        }
        let values: Vec<f64> = (0..n).map(|i| h[i * n + i].re).collect();
        let vectors: Vec<Vec<Complex64>> = (0..n)
            .map(|i| (0..n).map(|x| v[i * n + x].conj()).collect())
            .collect();
        (values, vectors)
    }
}
