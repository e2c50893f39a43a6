use num_complex::Complex64;

use super::eigen::{hermitian_eigen, hermitian_eigenvalues};
use super::matrix::{ComplexMatrix, Spectrum};
use crate::error::{Error, Result};

/// Largest supported `min(rows, cols)` for singular values.
pub const MAX_SVD_DIM: usize = 16;
const MAX_SWEEPS: usize = 100;
/// Relative threshold below which an eigenvalue is treated as an exact zero by `psd_sqrt`.
const NUMERICAL_ZERO: f64 = 1e-14;

fn check_svd_dim(a: &ComplexMatrix) -> Result<()> {
    let n = a.rows().min(a.cols());
    if n > MAX_SVD_DIM {
        return Err(Error::DimensionTooLarge {
            dim: n,
            max: MAX_SVD_DIM,
        });
    }
    Ok(())
}

/// Singular values by one-sided (Hestenes) Jacobi on the columns of `A` or `A^H`,
/// whichever has fewer columns. Returns `min(rows, cols)` values, non-increasing.
///
/// Small singular values keep full absolute accuracy here; squaring through a Gram matrix
/// would lose half the digits near zero.
pub fn singular_values(a: &ComplexMatrix) -> Result<Spectrum> {
    check_svd_dim(a)?;
    let m = if a.cols() <= a.rows() {
        a.clone()
    } else {
        a.adjoint()
    };
    let (len, n) = (m.rows(), m.cols());
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|j| (0..len).map(|i| m.get(i, j)).collect())
        .collect();
    // inner products below this are rounding noise relative to the whole matrix
    let floor = f64::EPSILON * m.frobenius_norm().powi(2);

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..n {
            for j in (i + 1)..n {
                let (alpha, beta, gamma) = {
                    let (ci, cj) = (&cols[i], &cols[j]);
                    let alpha: f64 = ci.iter().map(|z| z.norm_sqr()).sum();
                    let beta: f64 = cj.iter().map(|z| z.norm_sqr()).sum();
                    let gamma: Complex64 = ci.iter().zip(cj).map(|(x, y)| x.conj() * y).sum();
                    (alpha, beta, gamma)
                };
                let modulus = gamma.norm();
                if modulus <= floor || modulus <= 1e-15 * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma.conj() / modulus;
                let zeta = (beta - alpha) / (2.0 * modulus);
                let t = if zeta.abs() > 1e150 {
                    0.5 / zeta
                } else {
                    let t = 1.0 / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                    if zeta < 0.0 {
                        -t
                    } else {
                        t
                    }
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (left, right) = cols.split_at_mut(j);
                let (ci, cj) = (&mut left[i], &mut right[0]);
                for (x, y) in ci.iter_mut().zip(cj.iter_mut()) {
                    let yp = *y * phase;
                    let xi = *x;
                    *x = xi * c - yp * s;
                    *y = xi * s + yp * c;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps: MAX_SWEEPS,
            off_norm: f64::NAN,
        });
    }

    Ok(Spectrum::from_unsorted(
        cols.iter()
            .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
            .collect(),
    ))
}

/// Singular values as square roots of the eigenvalues of the smaller Gram matrix,
/// negative Gram eigenvalues clamped to zero. Kept as an independent route for
/// cross-checking [`singular_values`].
pub fn gram_singular_values(a: &ComplexMatrix) -> Result<Spectrum> {
    check_svd_dim(a)?;
    let gram = if a.rows() <= a.cols() {
        a.matmul(&a.adjoint())
    } else {
        a.adjoint().matmul(a)
    };
    let eig = hermitian_eigenvalues(&gram.hermitian_part())?;
    Ok(Spectrum::from_unsorted(
        eig.values().iter().map(|&l| l.max(0.0).sqrt()).collect(),
    ))
}

pub fn trace_norm(a: &ComplexMatrix) -> Result<f64> {
    Ok(singular_values(a)?.sum())
}

/// Principal square root of a Hermitian positive semidefinite matrix.
///
/// Eigenvalues below `-tol` are rejected; the rest are clamped at zero. Eigenvalues within
/// `1e-14` of zero (relative to the largest) are treated as exact zeros.
pub fn psd_sqrt(a: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    let eig = hermitian_eigen(a)?;
    let min = eig.values.min();
    if min < -tol {
        return Err(Error::NegativeEigenvalue { value: min });
    }
    let n = a.rows();
    let cutoff = NUMERICAL_ZERO * eig.values.max().abs().max(1.0);
    let roots: Vec<f64> = eig
        .values
        .values()
        .iter()
        .map(|&l| if l <= cutoff { 0.0 } else { l.sqrt() })
        .collect();
    let v = &eig.vectors;
    let mut out = ComplexMatrix::zeros(n, n);
    for (k, &r) in roots.iter().enumerate() {
        if r == 0.0 {
            continue;
        }
        for i in 0..n {
            let vik = v.get(i, k) * r;
            for j in 0..n {
                out[(i, j)] += vik * v.get(j, k).conj();
            }
        }
    }
    Ok(out.hermitian_part())
}
