//! Criteria for the cut between qubit 1 and qubits 2,3.

use std::f64::consts::SQRT_2;

use crate::config::RANK_TOL;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, singular_values, Spectrum};
use crate::states::{
    build_rho, closed_form_spectra, marginals, partial_transpose_1, reduction_matrices,
    reshuffle_24, SimplexPoint, SpectrumLabel,
};
use crate::verdict::{
    closed_form_status, statuses_conflict, Alpha, Component, CriterionId, CriterionVerdict,
    Marginal, Status,
};

const DISTRIBUTION_TOL: f64 = 1e-9;
const PARTIAL_SUM_SLACK: f64 = 1e-12;
const SINGULAR_VALUE_TOL: f64 = 1e-10;

fn consistency(id: &str, p: &SimplexPoint, detail: String) -> Error {
    Error::Consistency {
        criterion: id.to_string(),
        g: p.g(),
        w: p.w(),
        detail,
    }
}

fn check_distribution(p: &[f64]) -> Result<()> {
    if let Some(&bad) = p.iter().find(|&&x| x < -DISTRIBUTION_TOL || !x.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "probability entry {bad} is negative"
        )));
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > DISTRIBUTION_TOL {
        return Err(Error::InvalidArgument(format!(
            "probabilities sum to {sum}, not 1"
        )));
    }
    Ok(())
}

fn sorted_padded(p: &[f64], n: usize) -> Vec<f64> {
    let mut v = p.to_vec();
    v.sort_by(|a, b| b.total_cmp(a));
    v.resize(n, 0.0);
    v
}

/// Smallest slack `Q_k − P_k` of the partial sums of `p ≺ q`, over the `k` at which `q`
/// has not yet exhausted its mass (all `k < n` if it does so immediately).
pub fn majorization_margin(p: &[f64], q: &[f64]) -> Result<f64> {
    check_distribution(p)?;
    check_distribution(q)?;
    let n = p.len().max(q.len());
    let (p, q) = (sorted_padded(p, n), sorted_padded(q, n));
    let (mut sp, mut sq) = (0.0, 0.0);
    let mut restricted = f64::INFINITY;
    let mut all = f64::INFINITY;
    for k in 0..n.saturating_sub(1) {
        sp += p[k];
        sq += q[k];
        let slack = sq - sp;
        all = all.min(slack);
        if sq < 1.0 - PARTIAL_SUM_SLACK {
            restricted = restricted.min(slack);
        }
    }
    Ok(if restricted.is_finite() {
        restricted
    } else if all.is_finite() {
        all
    } else {
        0.0
    })
}

/// `p ≺ q`: every partial sum of `p` sorted descending is at most that of `q`.
pub fn majorizes(p: &[f64], q: &[f64]) -> Result<bool> {
    check_distribution(p)?;
    check_distribution(q)?;
    let n = p.len().max(q.len());
    let (p, q) = (sorted_padded(p, n), sorted_padded(q, n));
    let (mut sp, mut sq) = (0.0, 0.0);
    for k in 0..n {
        sp += p[k];
        sq += q[k];
        if sp > sq + PARTIAL_SUM_SLACK {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Slacks of the three closed-form inequalities for every case row containing `(g, w)`:
/// `[(i), (ii)]` bound `ρ ≺ ρ²³` and `(iii)` bounds `ρ ≺ ρ¹`.
pub fn majorization_table(g: f64, w: f64) -> Vec<[f64; 3]> {
    const EDGE: f64 = 1e-12;
    let mut rows = Vec::new();
    if g <= 2.0 * w / 3.0 + EDGE {
        rows.push([
            3.0 / 11.0 - 3.0 * g / 11.0 - w,
            1.0 - 3.0 * g - w,
            9.0 / 17.0 + 3.0 * g / 17.0 - w,
        ]);
    }
    if g >= 2.0 * w / 3.0 - EDGE && g <= w + EDGE {
        rows.push([
            3.0 / 19.0 + 9.0 * g / 19.0 - w,
            1.0 - 3.0 * g - w,
            9.0 / 17.0 + 3.0 * g / 17.0 - w,
        ]);
    }
    if g >= w - EDGE && g <= 4.0 * w / 3.0 + EDGE {
        rows.push([
            w - 3.0 * g + 3.0 / 5.0,
            1.0 - 3.0 * g - w,
            w - 3.0 * g + 9.0 / 7.0,
        ]);
    }
    if g >= 4.0 * w / 3.0 - EDGE {
        rows.push([
            w - 3.0 * g + 3.0 / 5.0,
            3.0 / 11.0 - 3.0 * g / 11.0 - w,
            w - 3.0 * g + 9.0 / 7.0,
        ]);
    }
    rows
}

/// Numeric spectra of `ρ`, `ρ²³` and `ρ¹`.
#[derive(Debug, Clone)]
pub struct FamilySpectra {
    pub rho: Spectrum,
    pub rho23: Spectrum,
    pub rho1: Spectrum,
}

impl FamilySpectra {
    pub fn compute(p: &SimplexPoint) -> Result<Self> {
        let (r23, r1) = marginals(p)?;
        Ok(FamilySpectra {
            rho: hermitian_eigenvalues(&build_rho(p))?,
            rho23: hermitian_eigenvalues(&r23)?,
            rho1: hermitian_eigenvalues(&r1)?,
        })
    }
}

/// `(ρ ≺ ρ¹, ρ ≺ ρ²³)`, cross-checked against the case-row table.
pub fn criterion_majorization(p: &SimplexPoint) -> Result<(CriterionVerdict, CriterionVerdict)> {
    criterion_majorization_with(p, &FamilySpectra::compute(p)?)
}

pub fn criterion_majorization_with(
    p: &SimplexPoint,
    spectra: &FamilySpectra,
) -> Result<(CriterionVerdict, CriterionVerdict)> {
    let rho = spectra.rho.values();
    let v1 = CriterionVerdict::new(
        CriterionId::Majorization(Marginal::Rho1),
        majorization_margin(rho, spectra.rho1.values())?,
    );
    let v23 = CriterionVerdict::new(
        CriterionId::Majorization(Marginal::Rho23),
        majorization_margin(rho, spectra.rho23.values())?,
    );
    for row in majorization_table(p.g(), p.w()) {
        let s23 = closed_form_status(row[0].min(row[1]));
        let s1 = closed_form_status(row[2]);
        if statuses_conflict(s23, v23.status) {
            return Err(consistency(
                "majorization_rho23",
                p,
                format!(
                    "table row gives {s23}, spectra give {} (margin {:e})",
                    v23.status, v23.margin
                ),
            ));
        }
        if statuses_conflict(s1, v1.status) {
            return Err(consistency(
                "majorization_rho1",
                p,
                format!(
                    "table row gives {s1}, spectra give {} (margin {:e})",
                    v1.status, v1.margin
                ),
            ));
        }
    }
    Ok((v1, v23))
}

/// Rényi entropy `H_α` in nats. Entries below zero are treated as zero.
pub fn renyi_entropy(p: &[f64], alpha: f64) -> Result<f64> {
    if alpha.is_nan() || alpha < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "Renyi order must be >= 0, got {alpha}"
        )));
    }
    check_distribution(p)?;
    let p: Vec<f64> = p.iter().map(|&x| x.max(0.0)).collect();
    let h = if alpha == 0.0 {
        (p.iter().filter(|&&x| x > RANK_TOL).count() as f64).ln()
    } else if alpha == 1.0 {
        -p.iter()
            .filter(|&&x| x > 0.0)
            .map(|&x| x * x.ln())
            .sum::<f64>()
    } else if alpha.is_infinite() {
        -p.iter().cloned().fold(0.0, f64::max).ln()
    } else {
        p.iter()
            .filter(|&&x| x > 0.0)
            .map(|&x| x.powf(alpha))
            .sum::<f64>()
            .ln()
            / (1.0 - alpha)
    };
    Ok(h)
}

/// `(S_α(ρ) ≥ S_α(ρ¹), S_α(ρ) ≥ S_α(ρ²³))` on the closed-form spectra.
pub fn criterion_entropy(
    p: &SimplexPoint,
    alpha: Alpha,
) -> Result<(CriterionVerdict, CriterionVerdict)> {
    let spectra = closed_form_spectra(p);
    let a = alpha.value();
    let s = renyi_entropy(spectra[&SpectrumLabel::Rho].values(), a)?;
    let s1 = renyi_entropy(spectra[&SpectrumLabel::Rho1].values(), a)?;
    let s23 = renyi_entropy(spectra[&SpectrumLabel::Rho23].values(), a)?;
    Ok((
        CriterionVerdict::new(CriterionId::Entropy(Marginal::Rho1, alpha), s - s1),
        CriterionVerdict::new(CriterionId::Entropy(Marginal::Rho23, alpha), s - s23),
    ))
}

/// The two quadratics whose non-negativity is equivalent to `ρ^{T1} ≥ 0`.
pub fn ppt_closed_forms(g: f64, w: f64) -> [f64; 2] {
    [
        -135.0 * g * g - 15.0 * w * w - 6.0 * g * w - 18.0 * g + 6.0 * w + 9.0,
        -27.0 * g * g - 119.0 * w * w - 18.0 * g * w + 18.0 * g - 18.0 * w + 9.0,
    ]
}

/// The two inequalities equivalent to `ρ¹ ⊗ I − ρ ≥ 0`.
pub fn reduction_closed_forms(g: f64, w: f64) -> [f64; 2] {
    [
        -63.0 * g * g - 7.0 * w * w - 54.0 * g * w - 162.0 * g + 54.0 * w + 81.0,
        3.0 * g - (9.0 + 8.0 * SQRT_2) * w + 9.0,
    ]
}

/// Margin is the smallest eigenvalue of `ρ^{T1}`.
pub fn criterion_ppt(p: &SimplexPoint) -> Result<CriterionVerdict> {
    let spectrum = hermitian_eigenvalues(&partial_transpose_1(p)?)?;
    let verdict = CriterionVerdict::new(CriterionId::Ppt, spectrum.min());
    let closed = ppt_closed_forms(p.g(), p.w());
    let s = closed_form_status(closed[0].min(closed[1]));
    if statuses_conflict(s, verdict.status) {
        return Err(consistency(
            "ppt",
            p,
            format!(
                "closed forms {closed:?} disagree with min eigenvalue {:e}",
                verdict.margin
            ),
        ));
    }
    Ok(verdict)
}

/// Margin is the smallest eigenvalue over `I ⊗ ρ²³ − ρ` and `ρ¹ ⊗ I − ρ`.
pub fn criterion_reduction(p: &SimplexPoint) -> Result<CriterionVerdict> {
    let (a, b) = reduction_matrices(p)?;
    let ma = hermitian_eigenvalues(&a)?.min();
    let mb = hermitian_eigenvalues(&b)?.min();
    let verdict = CriterionVerdict::from_components(
        CriterionId::Reduction,
        vec![
            Component {
                label: "i_rho23".into(),
                margin: ma,
            },
            Component {
                label: "rho1_i".into(),
                margin: mb,
            },
        ],
    );
    let ppt = ppt_closed_forms(p.g(), p.w());
    let red = reduction_closed_forms(p.g(), p.w());
    let s = closed_form_status(
        ppt.iter()
            .chain(&red)
            .cloned()
            .fold(f64::INFINITY, f64::min),
    );
    if statuses_conflict(s, verdict.status) {
        return Err(consistency(
            "reduction",
            p,
            format!(
                "closed forms {ppt:?} {red:?} disagree with min eigenvalue {:e}",
                verdict.margin
            ),
        ));
    }
    Ok(verdict)
}

/// The four singular values of `R(ρ)` from the closed form, sorted non-increasing.
pub fn reshuffle_singular_values_closed_form(p: &SimplexPoint) -> Spectrum {
    let (d, g, w) = (p.dt(), p.gt(), p.wt());
    let p1 = 16.0 * d * d + 4.0 * g * g + 10.0 * w * w + 8.0 * d * g + 12.0 * d * w;
    let p2 = 64.0 * d.powi(4)
        + 9.0 * w.powi(4)
        + 64.0 * d.powi(3) * g
        + 96.0 * d.powi(3) * w
        + 12.0 * d * w.powi(3)
        + 16.0 * d * d * g * g
        + 40.0 * d * d * w * w
        + 4.0 * g * g * w * w
        + 80.0 * d * d * g * w
        + 16.0 * d * g * g * w
        + 24.0 * d * g * w * w;
    // p1² − 4 p2 = 16 q; the smaller root is taken as √q / σ₊ to avoid cancellation
    let q = 8.0 * d * d * g * g - 8.0 * d * d * g * w
        + 19.0 * d * d * w * w
        + 4.0 * d * g.powi(3)
        + 2.0 * d * g * g * w
        + 4.0 * d * g * w * w
        + 12.0 * d * w.powi(3)
        + g.powi(4)
        + 4.0 * g * g * w * w
        + 4.0 * w.powi(4);
    let plus = (p1 + 2.0 * p2.max(0.0).sqrt()).max(0.0).sqrt() / 2.0;
    let minus = if plus > 0.0 {
        q.max(0.0).sqrt() / plus
    } else {
        0.0
    };
    let side = (g * g + 2.0 * w * w).sqrt();
    Spectrum::from_unsorted(vec![plus, minus, side, side])
}

/// Margin is `1 − ‖R(ρ)‖₁`.
pub fn criterion_reshuffling_24(p: &SimplexPoint) -> Result<CriterionVerdict> {
    let numeric = singular_values(&reshuffle_24(p)?)?;
    let closed = reshuffle_singular_values_closed_form(p);
    let diff = numeric.max_abs_diff(&closed);
    if diff > SINGULAR_VALUE_TOL {
        return Err(consistency(
            "reshuffling_24",
            p,
            format!("singular values differ from the closed form by {diff:e}"),
        ));
    }
    Ok(CriterionVerdict::new(
        CriterionId::Reshuffling24,
        1.0 - numeric.sum(),
    ))
}

/// Convenience for callers that only need the status of a closed-form check.
pub fn ppt_closed_form_status(p: &SimplexPoint) -> Status {
    let c = ppt_closed_forms(p.g(), p.w());
    closed_form_status(c[0].min(c[1]))
}
