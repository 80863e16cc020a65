//! Small dense linear algebra: cyclic Jacobi diagonalization for symmetric
//! matrices, a least-squares helper, and 3-vector arithmetic.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Off-diagonal Frobenius residual, relative to `‖A‖_F`, at which the Jacobi
/// sweep stops.
pub const JACOBI_TOLERANCE: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigen-decomposition `A = V·diag(values)·Vᵀ` of a symmetric matrix.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Row-major `n×n`; column `k` is the unit eigenvector of `values[k]`.
    pub vectors: Vec<f64>,
    /// Relative off-diagonal residual at exit.
    pub residual: f64,
    pub sweeps: usize,
}

impl SymmetricEigen {
    pub fn vector(&self, k: usize) -> Vec<f64> {
        let n = self.values.len();
        (0..n).map(|i| self.vectors[i * n + k]).collect()
    }
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi rotations on a row-major symmetric `n×n` matrix.
///
/// Rotations are applied until the off-diagonal Frobenius norm falls below
/// `JACOBI_TOLERANCE·‖A‖_F`.
pub fn symmetric_eigen(matrix: &[f64], n: usize) -> Result<SymmetricEigen> {
    assert_eq!(matrix.len(), n * n, "matrix must be n×n");
    let mut a = matrix.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let total: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut sweeps = 0;
    let mut off = off_diagonal_norm(&a, n);
    while total > 0.0 && off > JACOBI_TOLERANCE * total {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::Consistency(format!(
                "Jacobi iteration did not converge after {sweeps} sweeps (residual {:.3e})",
                off / total
            )));
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
        off = off_diagonal_norm(&a, n);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let values = order.iter().map(|&i| a[i * n + i]).collect();
    let mut vectors = vec![0.0; n * n];
    for (new, &old) in order.iter().enumerate() {
        for r in 0..n {
            vectors[r * n + new] = v[r * n + old];
        }
    }
    Ok(SymmetricEigen {
        values,
        vectors,
        residual: if total > 0.0 { off / total } else { 0.0 },
        sweeps,
    })
}

/// Least-squares solution of `A·x ≈ b` for a row-major `rows×cols` matrix.
/// Returns the minimizer and the Euclidean norm of the residual.
pub fn least_squares(a: &[f64], rows: usize, cols: usize, b: &[f64]) -> Result<(Vec<f64>, f64)> {
    let m = DMatrix::from_row_slice(rows, cols, a);
    let rhs = DVector::from_column_slice(b);
    let svd = m.clone().svd(true, true);
    let x = svd
        .solve(&rhs, 1e-13)
        .map_err(|e| Error::Consistency(format!("least squares failed: {e}")))?;
    let residual = (&m * &x - rhs).norm();
    Ok((x.iter().copied().collect(), residual))
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub type Vec3 = [f64; 3];

pub fn dot3(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross3(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn sub3(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn add3(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn scale3(s: f64, a: Vec3) -> Vec3 {
    [s * a[0], s * a[1], s * a[2]]
}

pub fn norm3(a: Vec3) -> f64 {
    dot3(a, a).sqrt()
}

pub fn normalize3(a: Vec3) -> Vec3 {
    scale3(1.0 / norm3(a), a)
}

/// Solves the 3×3 system with rows `r0,r1,r2` by Cramer's rule.
pub fn solve3(rows: [Vec3; 3], rhs: Vec3) -> Option<Vec3> {
    let det = dot3(rows[0], cross3(rows[1], rows[2]));
    if det.abs() < 1e-12 {
        return None;
    }
    let c12 = cross3(rows[1], rows[2]);
    let c20 = cross3(rows[2], rows[0]);
    let c01 = cross3(rows[0], rows[1]);
    // x = (rhs0·c12 + rhs1·c20 + rhs2·c01)/det
    let x = add3(
        add3(scale3(rhs[0], c12), scale3(rhs[1], c20)),
        scale3(rhs[2], c01),
    );
    Some(scale3(1.0 / det, x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_diagonal_is_immediate() {
        let e = symmetric_eigen(&[3.0, 0.0, 0.0, -1.0], 2).unwrap();
        assert_eq!(e.values, vec![-1.0, 3.0]);
        assert_eq!(e.sweeps, 0);
    }

    #[test]
    fn jacobi_two_by_two() {
        // [[2,1],[1,2]] has eigenvalues 1 and 3.
        let e = symmetric_eigen(&[2.0, 1.0, 1.0, 2.0], 2).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-14);
        assert!((e.values[1] - 3.0).abs() < 1e-14);
        let v = e.vector(1);
        assert!((v[0].abs() - v[1].abs()).abs() < 1e-14);
    }

    #[test]
    fn jacobi_reconstructs_matrix() {
        let n = 5;
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                a[i * n + j] = 1.0 / (1.0 + i as f64 + j as f64) + if i == j { i as f64 } else { 0.0 };
            }
        }
        let e = symmetric_eigen(&a, n).unwrap();
        assert!(e.residual < JACOBI_TOLERANCE);
        for i in 0..n {
            for j in 0..n {
                let r: f64 = (0..n)
                    .map(|k| e.vectors[i * n + k] * e.values[k] * e.vectors[j * n + k])
                    .sum();
                assert!((r - a[i * n + j]).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn zero_matrix_has_zero_spectrum() {
        let e = symmetric_eigen(&[0.0; 16], 4).unwrap();
        assert!(e.values.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn least_squares_exact_system() {
        let (x, r) = least_squares(&[1.0, 0.0, 0.0, 1.0, 1.0, 1.0], 3, 2, &[1.0, 2.0, 3.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12 && (x[1] - 2.0).abs() < 1e-12);
        assert!(r < 1e-12);
    }

    #[test]
    fn cramer_solves_axis_system() {
        let x = solve3([[1.0, 0.0, 0.0], [0.0, 2.0, 0.0], [1.0, 1.0, 1.0]], [1.0, 4.0, 6.0]).unwrap();
        assert_eq!(x, [1.0, 2.0, 3.0]);
    }
}
