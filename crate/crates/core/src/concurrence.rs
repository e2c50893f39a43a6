//! Wootters concurrence of two-qubit states and of the family's 2,3 marginal.

use crate::config::PSD_TOL;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, psd_sqrt, singular_values, ComplexMatrix, Spectrum};
use crate::states::{marginals, SimplexPoint};

const CLOSED_FORM_TOL: f64 = 1e-9;
const ROUTE_TOL: f64 = 1e-10;

/// `σ_y ⊗ σ_y`, which is real.
fn sigma_yy() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ])
}

fn check_two_qubit(omega: &ComplexMatrix) -> Result<()> {
    if omega.rows() != 4 || omega.cols() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "two-qubit state must be 4x4, got {}x{}",
            omega.rows(),
            omega.cols()
        )));
    }
    Ok(())
}

/// `(σ_y ⊗ σ_y) ω* (σ_y ⊗ σ_y)`.
pub fn spin_flip(omega: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_two_qubit(omega)?;
    let s = sigma_yy();
    Ok(s.matmul(&omega.conj()).matmul(&s))
}

/// The `λ_i`, non-increasing: singular values of `(√ω)^T (σ_y⊗σ_y) √ω`, whose squares are
/// the eigenvalues of `ω̃ ω`. The Hermitian form `√ω ω̃ √ω` is checked for negative
/// eigenvalues and for agreement with the squared values.
pub fn wootters_lambdas(omega: &ComplexMatrix) -> Result<Spectrum> {
    check_two_qubit(omega)?;
    let root = psd_sqrt(omega, PSD_TOL)?;
    let a = root.transpose().matmul(&sigma_yy()).matmul(&root);
    let lambdas = singular_values(&a)?;

    let hermitian = root
        .matmul(&spin_flip(omega)?)
        .matmul(&root)
        .hermitian_part();
    let eig = hermitian_eigenvalues(&hermitian)?;
    if eig.min() < -PSD_TOL {
        return Err(Error::NegativeEigenvalue { value: eig.min() });
    }
    let squared = Spectrum::from_unsorted(lambdas.values().iter().map(|l| l * l).collect());
    let diff = squared.max_abs_diff(&eig);
    if diff > ROUTE_TOL {
        return Err(Error::Consistency {
            criterion: "concurrence".into(),
            g: f64::NAN,
            w: f64::NAN,
            detail: format!("squared singular values differ from the Hermitian form by {diff:e}"),
        });
    }
    Ok(lambdas)
}

/// Spectrum of `ω̃ ω`, non-increasing.
pub fn flip_product_spectrum(omega: &ComplexMatrix) -> Result<Spectrum> {
    let l = wootters_lambdas(omega)?;
    Ok(Spectrum::from_unsorted(
        l.values().iter().map(|x| x * x).collect(),
    ))
}

/// `max{0, λ₁ − λ₂ − λ₃ − λ₄}`.
pub fn wootters_concurrence(omega: &ComplexMatrix) -> Result<f64> {
    let l = wootters_lambdas(omega)?;
    let v = l.values();
    Ok((v[0] - v[1] - v[2] - v[3]).max(0.0))
}

/// `−9g² + 19w² + 6gw − 18g + 6w − 9`; the marginal is entangled only where this is positive.
pub fn concurrence_gate(g: f64, w: f64) -> f64 {
    -9.0 * g * g + 19.0 * w * w + 6.0 * g * w - 18.0 * g + 6.0 * w - 9.0
}

/// `2w̃ − 2√((2d̃+g̃)(2d̃+g̃+w̃))` where the gate is non-negative, else 0.
pub fn concurrence_23_formula(p: &SimplexPoint) -> f64 {
    if concurrence_gate(p.g(), p.w()) < 0.0 {
        return 0.0;
    }
    let (d, g, w) = (p.dt(), p.gt(), p.wt());
    (2.0 * w - 2.0 * ((2.0 * d + g) * (2.0 * d + g + w)).sqrt()).max(0.0)
}

/// Closed-form concurrence of `ρ²³`, checked against the numeric value.
pub fn concurrence_23_closed_form(p: &SimplexPoint) -> Result<f64> {
    let closed = concurrence_23_formula(p);
    let (r23, _) = marginals(p)?;
    let numeric = wootters_concurrence(&r23)?;
    if (closed - numeric).abs() > CLOSED_FORM_TOL {
        return Err(Error::Consistency {
            criterion: "concurrence".into(),
            g: p.g(),
            w: p.w(),
            detail: format!("closed form {closed} differs from numeric {numeric}"),
        });
    }
    Ok(closed)
}
