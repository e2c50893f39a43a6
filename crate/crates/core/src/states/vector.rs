use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

const NORM_TOL: f64 = 1e-12;
const PRODUCT_TOL: f64 = 1e-10;

/// Unit-norm pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidArgument(format!(
                "state vector norm {norm} is not 1"
            )));
        }
        Ok(StateVector { amplitudes })
    }

    /// Rescales to unit norm. Panics on the zero vector.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Self {
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert!(norm > 0.0, "cannot normalize the zero vector");
        StateVector {
            amplitudes: amplitudes.into_iter().map(|z| z / norm).collect(),
        }
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amplitudes = vec![re(0.0); dim];
        amplitudes[index] = re(1.0);
        StateVector { amplitudes }
    }

    /// `(|000> + |111>)/√2`
    pub fn ghz() -> Self {
        let mut a = vec![re(0.0); 8];
        a[0] = re(FRAC_1_SQRT_2);
        a[7] = re(FRAC_1_SQRT_2);
        StateVector { amplitudes: a }
    }

    /// `(|001> + |010> + |100>)/√3`
    pub fn w() -> Self {
        let c = re(1.0 / 3f64.sqrt());
        let mut a = vec![re(0.0); 8];
        a[1] = c;
        a[2] = c;
        a[4] = c;
        StateVector { amplitudes: a }
    }

    /// `(|00> + |11>)/√2`
    pub fn bell() -> Self {
        StateVector {
            amplitudes: vec![re(FRAC_1_SQRT_2), re(0.0), re(0.0), re(FRAC_1_SQRT_2)],
        }
    }

    /// Tensor product of single-qubit (or larger) factors, first factor most significant.
    pub fn product(factors: &[StateVector]) -> Self {
        factors
            .iter()
            .skip(1)
            .fold(factors[0].clone(), |acc, f| acc.kron(f))
    }

    pub fn kron(&self, other: &StateVector) -> Self {
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        StateVector { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn projector(&self) -> ComplexMatrix {
        let n = self.dim();
        ComplexMatrix::from_fn(n, n, |i, j| self.amplitudes[i] * self.amplitudes[j].conj())
    }

    pub fn apply(&self, op: &ComplexMatrix) -> Self {
        StateVector {
            amplitudes: op.mul_vec(&self.amplitudes),
        }
    }

    /// Splits a `2^n`-dimensional vector into `n` unit single-qubit factors, or returns `None`
    /// when it is not a product of qubit states.
    pub fn qubit_factors(&self) -> Option<Vec<[Complex64; 2]>> {
        let dim = self.dim();
        if !dim.is_power_of_two() || dim < 2 {
            return None;
        }
        let n = dim.trailing_zeros() as usize;
        let pivot = (0..dim)
            .max_by(|&a, &b| {
                self.amplitudes[a]
                    .norm_sqr()
                    .total_cmp(&self.amplitudes[b].norm_sqr())
            })
            .unwrap();
        let anchor = self.amplitudes[pivot];
        let factors: Vec<[Complex64; 2]> = (0..n)
            .map(|q| {
                let shift = n - 1 - q;
                let f = [
                    self.amplitudes[pivot & !(1 << shift)],
                    self.amplitudes[pivot | (1 << shift)],
                ];
                let norm = (f[0].norm_sqr() + f[1].norm_sqr()).sqrt();
                [f[0] / norm, f[1] / norm]
            })
            .collect();
        let candidate: Vec<Complex64> = (0..dim)
            .map(|idx| {
                (0..n)
                    .map(|q| factors[q][(idx >> (n - 1 - q)) & 1])
                    .product()
            })
            .collect();
        // align the global phase on the pivot entry
        let phase = anchor / candidate[pivot];
        let phase = phase / phase.norm();
        let ok = candidate
            .iter()
            .zip(&self.amplitudes)
            .all(|(c, a)| (c * phase - a).norm() <= PRODUCT_TOL);
        if !ok {
            return None;
        }
        let mut factors = factors;
        factors[0] = [factors[0][0] * phase, factors[0][1] * phase];
        Some(factors)
    }
}

pub fn qubit(alpha: Complex64, beta: Complex64) -> StateVector {
    StateVector::normalized(vec![alpha, beta])
}

/// `|+>` and `|->`.
pub fn plus() -> StateVector {
    StateVector {
        amplitudes: vec![re(FRAC_1_SQRT_2), re(FRAC_1_SQRT_2)],
    }
}

pub fn minus() -> StateVector {
    StateVector {
        amplitudes: vec![re(FRAC_1_SQRT_2), re(-FRAC_1_SQRT_2)],
    }
}
