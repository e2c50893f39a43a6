//! Dense complex linear algebra sized for three-qubit operators.

mod eigen;
mod matrix;
mod perm;
mod svd;

pub use eigen::{
    hermitian_eigen, hermitian_eigenvalues, rank_with_tolerance, Eigen, MAX_EIGEN_DIM,
};
pub use matrix::{ComplexMatrix, Spectrum};
pub use perm::{
    compose, permute_indices, qubit_permutation, IndexPermutation, IDENTITY, RESHUFFLE_23,
    TRANSPOSE_FIRST,
};
pub use svd::{gram_singular_values, psd_sqrt, singular_values, trace_norm, MAX_SVD_DIM};

/// Partial trace of a `2^n`-dimensional operator over the qubits listed in `traced`
/// (0 = first qubit, most significant). The remaining qubits keep their order.
pub fn partial_trace(a: &ComplexMatrix, n_qubits: usize, traced: &[usize]) -> ComplexMatrix {
    assert_eq!(a.rows(), 1 << n_qubits);
    assert!(a.is_square());
    let kept: Vec<usize> = (0..n_qubits).filter(|q| !traced.contains(q)).collect();
    let dim_out = 1 << kept.len();
    let dim_tr = 1 << traced.len();
    let compose_index = |out: usize, tr: usize| -> usize {
        let mut idx = 0usize;
        for q in 0..n_qubits {
            let bit = if let Some(pos) = kept.iter().position(|&k| k == q) {
                (out >> (kept.len() - 1 - pos)) & 1
            } else {
                let pos = traced.iter().position(|&t| t == q).unwrap();
                (tr >> (traced.len() - 1 - pos)) & 1
            };
            idx |= bit << (n_qubits - 1 - q);
        }
        idx
    };
    let mut out = ComplexMatrix::zeros(dim_out, dim_out);
    for r in 0..dim_out {
        for c in 0..dim_out {
            for t in 0..dim_tr {
                out[(r, c)] += a.get(compose_index(r, t), compose_index(c, t));
            }
        }
    }
    out
}
