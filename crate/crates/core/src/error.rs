use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |A - A^H| = {asymmetry:e})")]
    NotHermitian { asymmetry: f64 },

    #[error(
        "Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})"
    )]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("dimension {dim} exceeds the supported maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix has eigenvalue {value:e} below the PSD tolerance")]
    NegativeEigenvalue { value: f64 },

    #[error(
        "invalid simplex point (g = {g}, w = {w}): weights must satisfy g >= 0, w >= 0, g + w <= 1"
    )]
    InvalidPoint { g: f64, w: f64 },

    #[error("invalid index permutation {0:?}")]
    InvalidPermutation(Vec<usize>),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("consistency failure in {criterion} at (g = {g}, w = {w}): {detail}")]
    Consistency {
        criterion: String,
        g: f64,
        w: f64,
        detail: String,
    },

    #[error("criterion verdict is the same at both ends of the bracket")]
    NoSignChange,

    #[error("I/O failure on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
