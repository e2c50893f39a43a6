//! Cyclic Jacobi eigensolver for Hermitian matrices.
//!
//! Each pivot `(p, q)` is handled in two steps: a diagonal phase on index `q` that makes
//! `A[p][q]` real and non-negative, followed by a real plane rotation that annihilates it.
//! Real symmetric input skips the phase step and runs entirely in `f64`.

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, Spectrum};
use crate::config::HERMITIAN_TOL;
use crate::error::{Error, Result};

pub const MAX_EIGEN_DIM: usize = 64;
const MAX_SWEEPS: usize = 100;
const OFF_DIAGONAL_TOL: f64 = 1e-13;

/// Eigenvalues (non-increasing) and the matching unit eigenvectors stored as columns.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Spectrum,
    pub vectors: ComplexMatrix,
}

fn check_input(a: &ComplexMatrix) -> Result<()> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigensolver needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if a.rows() > MAX_EIGEN_DIM {
        return Err(Error::DimensionTooLarge {
            dim: a.rows(),
            max: MAX_EIGEN_DIM,
        });
    }
    let asymmetry = a.max_asymmetry();
    if asymmetry > HERMITIAN_TOL {
        return Err(Error::NotHermitian { asymmetry });
    }
    Ok(())
}

/// All eigenvalues of a Hermitian matrix, sorted non-increasing.
pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Result<Spectrum> {
    check_input(a)?;
    let (values, _) = if a.is_real() {
        jacobi_real(a, false)?
    } else {
        jacobi_complex(a, false)?
    };
    Ok(Spectrum::from_unsorted(values))
}

/// Eigenvalues together with eigenvectors.
pub fn hermitian_eigen(a: &ComplexMatrix) -> Result<Eigen> {
    check_input(a)?;
    let (values, vectors) = if a.is_real() {
        jacobi_real(a, true)?
    } else {
        jacobi_complex(a, true)?
    };
    let vectors = vectors.expect("vectors requested");
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]));
    let sorted_vectors = ComplexMatrix::from_fn(n, n, |r, c| vectors.get(r, order[c]));
    let sorted_values = order.iter().map(|&i| values[i]).collect();
    Ok(Eigen {
        values: Spectrum::from_unsorted(sorted_values),
        vectors: sorted_vectors,
    })
}

/// Count of eigenvalues with absolute value above `tol`.
pub fn rank_with_tolerance(a: &ComplexMatrix, tol: f64) -> Result<usize> {
    let spectrum = hermitian_eigenvalues(a)?;
    Ok(spectrum.values().iter().filter(|v| v.abs() > tol).count())
}

fn rotation(app: f64, aqq: f64, apq: f64) -> (f64, f64, f64) {
    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let t = 1.0 / (theta.abs() + (theta * theta + 1.0).sqrt());
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    (t, c, t * c)
}

fn jacobi_real(a: &ComplexMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<ComplexMatrix>)> {
    let n = a.rows();
    let mut m: Vec<f64> = a.entries().iter().map(|z| z.re).collect();
    // symmetrize away any rounding asymmetry accepted by the Hermitian check
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (m[i * n + j] + m[j * n + i]);
            m[i * n + j] = avg;
            m[j * n + i] = avg;
        }
    }
    let mut v = if want_vectors {
        let mut v = vec![0.0; n * n];
        for i in 0..n {
            v[i * n + i] = 1.0;
        }
        Some(v)
    } else {
        None
    };
    let scale = m.iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);

    let mut sweeps = 0;
    loop {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i * n + j] * m[i * n + j])
            .sum::<f64>()
            .sqrt();
        if off < OFF_DIAGONAL_TOL * scale {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let (t, c, s) = rotation(app, aqq, apq);
                for r in 0..n {
                    let x = m[r * n + p];
                    let y = m[r * n + q];
                    m[r * n + p] = c * x - s * y;
                    m[r * n + q] = s * x + c * y;
                }
                for r in 0..n {
                    let x = m[p * n + r];
                    let y = m[q * n + r];
                    m[p * n + r] = c * x - s * y;
                    m[q * n + r] = s * x + c * y;
                }
                m[p * n + p] = app - t * apq;
                m[q * n + q] = aqq + t * apq;
                m[p * n + q] = 0.0;
                m[q * n + p] = 0.0;
                if let Some(v) = v.as_mut() {
                    for r in 0..n {
                        let x = v[r * n + p];
                        let y = v[r * n + q];
                        v[r * n + p] = c * x - s * y;
                        v[r * n + q] = s * x + c * y;
                    }
                }
            }
        }
    }

    let values = (0..n).map(|i| m[i * n + i]).collect();
    let vectors = v.map(|v| ComplexMatrix::from_fn(n, n, |i, j| Complex64::new(v[i * n + j], 0.0)));
    Ok((values, vectors))
}

fn jacobi_complex(
    a: &ComplexMatrix,
    want_vectors: bool,
) -> Result<(Vec<f64>, Option<ComplexMatrix>)> {
    let n = a.rows();
    let mut m = a.hermitian_part();
    for i in 0..n {
        m[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
    }
    let mut v = want_vectors.then(|| ComplexMatrix::identity(n));
    let scale = m.frobenius_norm().max(1.0);

    let mut sweeps = 0;
    loop {
        let mut off = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off += m[(i, j)].norm_sqr();
                }
            }
        }
        let off = off.sqrt();
        if off < OFF_DIAGONAL_TOL * scale {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let b = m[(p, q)];
                let modulus = b.norm();
                if modulus == 0.0 {
                    continue;
                }
                // phase on index q: A <- D^H A D with D_qq = conj(b)/|b|
                let phase = b.conj() / modulus;
                if phase != Complex64::new(1.0, 0.0) {
                    for r in 0..n {
                        m[(r, q)] *= phase;
                    }
                    let phase_conj = phase.conj();
                    for r in 0..n {
                        m[(q, r)] *= phase_conj;
                    }
                    if let Some(v) = v.as_mut() {
                        for r in 0..n {
                            v[(r, q)] *= phase;
                        }
                    }
                }
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let (t, c, s) = rotation(app, aqq, modulus);
                for r in 0..n {
                    let x = m[(r, p)];
                    let y = m[(r, q)];
                    m[(r, p)] = x * c - y * s;
                    m[(r, q)] = x * s + y * c;
                }
                for r in 0..n {
                    let x = m[(p, r)];
                    let y = m[(q, r)];
                    m[(p, r)] = x * c - y * s;
                    m[(q, r)] = x * s + y * c;
                }
                m[(p, p)] = Complex64::new(app - t * modulus, 0.0);
                m[(q, q)] = Complex64::new(aqq + t * modulus, 0.0);
                m[(p, q)] = Complex64::new(0.0, 0.0);
                m[(q, p)] = Complex64::new(0.0, 0.0);
                if let Some(v) = v.as_mut() {
                    for r in 0..n {
                        let x = v[(r, p)];
                        let y = v[(r, q)];
                        v[(r, p)] = x * c - y * s;
                        v[(r, q)] = x * s + y * c;
                    }
                }
            }
        }
    }

    let values = (0..n).map(|i| m[(i, i)].re).collect();
    Ok((values, v))
}
