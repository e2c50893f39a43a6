use serde::{Deserialize, Serialize};

/// Eigenvalues at or above `-PSD_TOL` count as non-negative.
pub const PSD_TOL: f64 = 1e-10;
/// Eigenvalues with magnitude above this count towards the rank.
pub const RANK_TOL: f64 = 1e-10;
/// A criterion whose margin lies within this band of zero is reported as marginal.
pub const MARGINAL_BAND: f64 = 1e-9;
/// Maximum elementwise asymmetry accepted for Hermitian input.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Numerical tolerance policy shared by all criteria.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Config {
    pub psd_tol: f64,
    pub rank_tol: f64,
    pub marginal_band: f64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            psd_tol: PSD_TOL,
            rank_tol: RANK_TOL,
            marginal_band: MARGINAL_BAND,
        }
    }
}

impl Config {
    /// Default policy with `psd_tol` replaced by `QSEP_TOL` when that variable parses as a
    /// positive float.
    pub fn from_env() -> Self {
        let mut cfg = Config::default();
        if let Some(tol) = std::env::var("QSEP_TOL")
            .ok()
            .and_then(|s| s.trim().parse::<f64>().ok())
            .filter(|t| t.is_finite() && *t > 0.0)
        {
            cfg.psd_tol = tol;
        }
        cfg
    }
}
