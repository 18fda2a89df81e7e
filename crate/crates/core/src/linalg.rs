//! Dense symmetric linear algebra used by the matrix model.
//!
//! The eigensolver is a cyclic Jacobi iteration: a sequence of plane rotations
//! `A <- Pᵀ A P`, each annihilating one off-diagonal pair, with the rotations
//! accumulated into the eigenvector matrix. It is slow for large matrices but
//! unconditionally stable for real symmetric input, which is all we need at
//! desk scale (n ≤ 8).

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Eigen-decomposition `a = V diag(values) Vᵀ` with eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct SymEigen {
    pub values: DVector<f64>,
    /// Orthonormal eigenvectors stored as columns, matching `values`.
    pub vectors: DMatrix<f64>,
    /// Number of full sweeps performed.
    pub sweeps: usize,
}

impl SymEigen {
    /// Rebuilds `V f(Λ) Vᵀ`.
    pub fn map<F: Fn(f64) -> f64>(&self, f: F) -> DMatrix<f64> {
        let n = self.values.len();
        let mut out = DMatrix::zeros(n, n);
        for k in 0..n {
            let w = f(self.values[k]);
            if w == 0.0 {
                continue;
            }
            let v = self.vectors.column(k);
            out += w * &v * v.transpose();
        }
        out
    }

    /// Orthogonal projection onto the span of the selected eigenvectors.
    pub fn projection<F: Fn(f64) -> bool>(&self, keep: F) -> DMatrix<f64> {
        self.map(|l| if keep(l) { 1.0 } else { 0.0 })
    }

    pub fn spectral_radius(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

fn off_diagonal_mass(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)] * m[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi diagonalization of a symmetric matrix.
///
/// Stops once the off-diagonal Frobenius mass is at most `1e-12·‖a‖_F`.
/// Only the upper triangle drives the rotations, the input is symmetrized first.
pub fn jacobi_eigen(a: &DMatrix<f64>, max_sweeps: usize) -> Result<SymEigen> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::ShapeMismatch(format!(
            "eigensolver needs a square matrix, got {}x{}",
            n,
            a.ncols()
        )));
    }
    let mut m = (a + a.transpose()) * 0.5;
    let mut v = DMatrix::<f64>::identity(n, n);
    let scale = m.norm();
    let target = f64::EPSILON * scale;
    let mut sweeps = 0;
    let mut previous = f64::INFINITY;

    loop {
        let off = off_diagonal_mass(&m);
        // once past 1e-12 relative, stop at machine precision or when rounding stalls progress
        if off <= target || (off <= 1e-12 * scale && off > 0.5 * previous) {
            break;
        }
        previous = off;
        if sweeps == max_sweeps {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                // columns: M P
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                // rows: Pᵀ (M P)
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                m[(p, q)] = 0.0;
                m[(q, p)] = 0.0;
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].total_cmp(&m[(j, j)]).then(i.cmp(&j)));
    let values = DVector::from_iterator(n, order.iter().map(|&i| m[(i, i)]));
    let mut vectors = DMatrix::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        vectors.set_column(col, &v.column(i));
    }
    Ok(SymEigen {
        values,
        vectors,
        sweeps,
    })
}

pub fn symmetrize(a: &DMatrix<f64>) -> DMatrix<f64> {
    (a + a.transpose()) * 0.5
}

pub fn asymmetry(a: &DMatrix<f64>) -> f64 {
    (a - a.transpose()).amax()
}

/// Orthonormal basis of the numerical null space of `m` (columns), computed
/// from the singular value decomposition with singular values `≤ tol·max(1, σ_max)`
/// counted as zero.
pub fn null_space(m: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    let n = m.ncols();
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }
    // Pad to a square matrix so the SVD exposes a full right basis.
    let rows = m.nrows().max(n);
    let mut padded = DMatrix::zeros(rows, n);
    padded.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
    let svd = padded.svd(false, true);
    let vt = svd.v_t.expect("right singular vectors requested");
    let smax = svd.singular_values.amax();
    let cut = tol * smax.max(1.0);
    let cols: Vec<DVector<f64>> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| **s <= cut)
        .map(|(i, _)| vt.row(i).transpose())
        .collect();
    if cols.is_empty() {
        DMatrix::zeros(n, 0)
    } else {
        DMatrix::from_columns(&cols)
    }
}
