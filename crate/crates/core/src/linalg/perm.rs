use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// A permutation of the six binary indices `(i1, i2, i3, i1', i2', i3')` of an 8×8 matrix
/// `A_{i1 i2 i3, i1' i2' i3'}`.
pub type IndexPermutation = [usize; 6];

pub const IDENTITY: IndexPermutation = [0, 1, 2, 3, 4, 5];
/// Partial transpose on the first qubit: exchanges `i1` and `i1'`.
pub const TRANSPOSE_FIRST: IndexPermutation = [3, 1, 2, 0, 4, 5];
/// Reshuffle of the second and third subsystems: `[R'(A)]_{i j j', i' k k'} = A_{i j k, i' j' k'}`.
pub const RESHUFFLE_23: IndexPermutation = [0, 1, 4, 3, 2, 5];

fn validate(pi: &[usize]) -> Result<()> {
    let mut seen = [false; 6];
    if pi.len() != 6 {
        return Err(Error::InvalidPermutation(pi.to_vec()));
    }
    for &k in pi {
        if k >= 6 || seen[k] {
            return Err(Error::InvalidPermutation(pi.to_vec()));
        }
        seen[k] = true;
    }
    Ok(())
}

/// `Λ_π(A)`: the entry at output bits `b` is `A` at bits `(b[π(0)], …, b[π(5)])`.
/// Bit 0 is the most significant row bit (first qubit), bit 3 the most significant column bit.
pub fn permute_indices(a: &ComplexMatrix, pi: &[usize]) -> Result<ComplexMatrix> {
    validate(pi)?;
    if a.rows() != 8 || a.cols() != 8 {
        return Err(Error::DimensionMismatch(format!(
            "index permutation needs an 8x8 matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let mut out = ComplexMatrix::zeros(8, 8);
    for flat in 0..64usize {
        let bits: [usize; 6] = std::array::from_fn(|m| (flat >> (5 - m)) & 1);
        let src = (0..6).fold(0usize, |acc, m| (acc << 1) | bits[pi[m]]);
        out[(flat >> 3, flat & 7)] = a.get(src >> 3, src & 7);
    }
    Ok(out)
}

/// `π∘σ`, so that `Λ_π(Λ_σ(A)) = Λ_{π∘σ}(A)`.
pub fn compose(pi: &IndexPermutation, sigma: &IndexPermutation) -> IndexPermutation {
    std::array::from_fn(|m| pi[sigma[m]])
}

/// The index permutation that moves input qubit `m` to position `q[m]`, on both the row and
/// the column side.
pub fn qubit_permutation(q: [usize; 3]) -> IndexPermutation {
    [q[0], q[1], q[2], q[0] + 3, q[1] + 3, q[2] + 3]
}
