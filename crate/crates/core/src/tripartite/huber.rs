//! Two-copy swap criterion for k-separability.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::states::{build_rho, minus, plus, SimplexPoint, StateVector};
use crate::verdict::{CriterionId, CriterionVerdict, Detector};

use super::Partition;

const PATH_TOL: f64 = 1e-12;

/// `|000>|111>` or `H^⊗6 |000>|111> = |+++>|--->` on the two-copy space.
pub fn detection_vector(det: Detector) -> Result<StateVector> {
    match det {
        Detector::Ghz => Ok(StateVector::basis(64, 7)),
        Detector::W => {
            let (p, m) = (plus(), minus());
            Ok(StateVector::product(&[
                p.clone(),
                p.clone(),
                p,
                m.clone(),
                m.clone(),
                m,
            ]))
        }
        Detector::Custom => Err(Error::InvalidArgument(
            "custom detectors are passed as vectors".into(),
        )),
    }
}

/// Permutation matrix exchanging the listed qubits (0-based, copy A) with their partners in
/// copy B.
fn swap_operator(qubits: &[usize]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(64, 64);
    for idx in 0..64usize {
        let mut out = idx;
        for &q in qubits {
            let (sa, sb) = (5 - q, 2 - q);
            let (ba, bb) = ((idx >> sa) & 1, (idx >> sb) & 1);
            out &= !((1 << sa) | (1 << sb));
            out |= (bb << sa) | (ba << sb);
        }
        m[(out, idx)] = Complex64::new(1.0, 0.0);
    }
    m
}

fn expectation(op: &ComplexMatrix, v: &[Complex64]) -> Complex64 {
    v.iter().zip(op.mul_vec(v)).map(|(a, b)| a.conj() * b).sum()
}

fn check_k(k: u8) -> Result<()> {
    if !(2..=3).contains(&k) {
        return Err(Error::InvalidArgument(format!("k must be 2 or 3, got {k}")));
    }
    Ok(())
}

fn block_qubits(block: &[usize]) -> Vec<usize> {
    block.iter().map(|l| l - 1).collect()
}

/// Quantities under the roots: `|<Φ|ρ⊗ρ P_tot|Φ>|` and, per split and block,
/// `<Φ|P_S ρ⊗ρ P_S|Φ>`.
struct RawSides {
    left_sq: f64,
    blocks: Vec<Vec<f64>>,
}

impl RawSides {
    fn sides(&self, k: u8) -> (f64, f64) {
        let exponent = 1.0 / (2.0 * k as f64);
        let right = self
            .blocks
            .iter()
            .map(|split| {
                split
                    .iter()
                    .map(|v| v.max(0.0).powf(exponent))
                    .product::<f64>()
            })
            .sum();
        (self.left_sq.sqrt(), right)
    }

    fn max_abs_diff(&self, other: &RawSides) -> f64 {
        let mut diff = (self.left_sq - other.left_sq).abs();
        for (a, b) in self
            .blocks
            .iter()
            .flatten()
            .zip(other.blocks.iter().flatten())
        {
            diff = diff.max((a - b).abs());
        }
        diff
    }
}

fn raw_explicit(rho: &ComplexMatrix, phi: &StateVector, k: u8) -> RawSides {
    let rr = rho.kron(rho);
    let v = phi.amplitudes();
    let total = swap_operator(&[0, 1, 2]);
    let left_sq = v
        .iter()
        .zip(rr.mul_vec(&total.mul_vec(v)))
        .map(|(a, b)| a.conj() * b)
        .sum::<Complex64>()
        .norm();
    let blocks = Partition::k_splits(k as usize)
        .iter()
        .map(|split| {
            split
                .blocks()
                .iter()
                .map(|b| {
                    let ps = swap_operator(&block_qubits(b));
                    expectation(&rr, &ps.mul_vec(v)).re
                })
                .collect()
        })
        .collect();
    RawSides { left_sq, blocks }
}

fn factor_state(factors: &[[Complex64; 2]]) -> StateVector {
    let amps = (0..8)
        .map(|idx| (0..3).map(|q| factors[q][(idx >> (2 - q)) & 1]).product())
        .collect();
    StateVector::normalized(amps)
}

fn bra_rho_ket(rho: &ComplexMatrix, a: &StateVector, b: &StateVector) -> Complex64 {
    a.amplitudes()
        .iter()
        .zip(rho.mul_vec(b.amplitudes()))
        .map(|(x, y)| x.conj() * y)
        .sum()
}

/// Same quantities from the single-qubit factors of `Φ = a ⊗ b`, in 8 dimensions.
fn raw_factorized(rho: &ComplexMatrix, factors: &[[Complex64; 2]], k: u8) -> RawSides {
    let (fa, fb) = factors.split_at(3);
    let left_sq = bra_rho_ket(rho, &factor_state(fa), &factor_state(fb)).norm_sqr();
    let blocks = Partition::k_splits(k as usize)
        .iter()
        .map(|split| {
            split
                .blocks()
                .iter()
                .map(|block| {
                    let (mut fa2, mut fb2) = (fa.to_vec(), fb.to_vec());
                    for q in block_qubits(block) {
                        std::mem::swap(&mut fa2[q], &mut fb2[q]);
                    }
                    let (a2, b2) = (factor_state(&fa2), factor_state(&fb2));
                    bra_rho_ket(rho, &a2, &a2).re * bra_rho_ket(rho, &b2, &b2).re
                })
                .collect()
        })
        .collect();
    RawSides { left_sq, blocks }
}

fn detector_of(phi: &StateVector) -> Detector {
    for det in [Detector::Ghz, Detector::W] {
        if let Ok(v) = detection_vector(det) {
            let same = v
                .amplitudes()
                .iter()
                .zip(phi.amplitudes())
                .all(|(a, b)| (a - b).norm() <= PATH_TOL);
            if same {
                return det;
            }
        }
    }
    Detector::Custom
}

fn product_factors(phi: &StateVector) -> Result<Vec<[Complex64; 2]>> {
    if phi.dim() != 64 {
        return Err(Error::DimensionMismatch(format!(
            "detection vector has dimension {}, expected 64",
            phi.dim()
        )));
    }
    phi.qubit_factors().ok_or_else(|| {
        Error::InvalidArgument("detection vector is not a product of qubit states".into())
    })
}

/// Margin `right − left`, computed on the explicit two-copy space and cross-checked against
/// the factorized evaluation.
pub fn criterion_huber(p: &SimplexPoint, phi: &StateVector, k: u8) -> Result<CriterionVerdict> {
    check_k(k)?;
    let factors = product_factors(phi)?;
    let rho = build_rho(p);
    let explicit = raw_explicit(&rho, phi, k);
    let diff = explicit.max_abs_diff(&raw_factorized(&rho, &factors, k));
    let id = CriterionId::Huber(detector_of(phi), k);
    if diff > PATH_TOL {
        return Err(Error::Consistency {
            criterion: id.to_string(),
            g: p.g(),
            w: p.w(),
            detail: format!("explicit and factorized sides differ by {diff:e}"),
        });
    }
    let (left, right) = explicit.sides(k);
    Ok(CriterionVerdict::new(id, right - left))
}

/// Factorized evaluation only; this is what the grid scans use.
pub fn criterion_huber_factorized(
    p: &SimplexPoint,
    phi: &StateVector,
    k: u8,
) -> Result<CriterionVerdict> {
    check_k(k)?;
    let factors = product_factors(phi)?;
    let (l, r) = raw_factorized(&build_rho(p), &factors, k).sides(k);
    Ok(CriterionVerdict::new(
        CriterionId::Huber(detector_of(phi), k),
        r - l,
    ))
}
