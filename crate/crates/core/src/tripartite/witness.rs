//! Fidelity witnesses and the GHZ-class bounds.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::states::{build_rho, SimplexPoint, StateVector};
use crate::verdict::{CriterionId, CriterionVerdict};

const WITNESS_TOL: f64 = 1e-12;

/// A Hermitian 8×8 operator with a name.
#[derive(Debug, Clone)]
pub struct Witness {
    name: &'static str,
    matrix: ComplexMatrix,
}

impl Witness {
    pub fn new(name: &'static str, matrix: ComplexMatrix) -> Result<Self> {
        if matrix.rows() != 8 || matrix.cols() != 8 {
            return Err(Error::DimensionMismatch(format!(
                "witness must be 8x8, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let asymmetry = matrix.max_asymmetry();
        if asymmetry > WITNESS_TOL {
            return Err(Error::NotHermitian { asymmetry });
        }
        Ok(Witness { name, matrix })
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn expectation(&self, rho: &ComplexMatrix) -> f64 {
        rho.trace_product(&self.matrix).re
    }
}

fn fidelity_witness(name: &'static str, level: f64, state: &StateVector) -> Witness {
    let m = &ComplexMatrix::identity(8).scale(level) - &state.projector();
    Witness::new(name, m).expect("fidelity witnesses are Hermitian")
}

/// `W_GHZ = 3/4 − |GHZ><GHZ|`, `W_W1 = 2/3 − |W><W|`, `W_W2 = 1/2 − |GHZ><GHZ|`.
pub fn witnesses() -> [Witness; 3] {
    [
        fidelity_witness("w_ghz", 0.75, &StateVector::ghz()),
        fidelity_witness("w_w1", 2.0 / 3.0, &StateVector::w()),
        fidelity_witness("w_w2", 0.5, &StateVector::ghz()),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessValues {
    pub w_ghz: f64,
    pub w_w1: f64,
    pub w_w2: f64,
}

pub fn witness_closed_forms(g: f64, w: f64) -> WitnessValues {
    WitnessValues {
        w_ghz: (5.0 - 7.0 * g + w) / 8.0,
        w_w1: (13.0 + 3.0 * g - 21.0 * w) / 24.0,
        w_w2: (3.0 - 7.0 * g + w) / 8.0,
    }
}

/// `Tr(W ρ)` for the three witnesses, checked against the closed forms.
pub fn witness_expectations(p: &SimplexPoint) -> Result<WitnessValues> {
    let rho = build_rho(p);
    let [a, b, c] = witnesses().map(|wt| wt.expectation(&rho));
    let numeric = WitnessValues {
        w_ghz: a,
        w_w1: b,
        w_w2: c,
    };
    let closed = witness_closed_forms(p.g(), p.w());
    for (name, x, y) in [
        ("witness_ghz", numeric.w_ghz, closed.w_ghz),
        ("witness_w1", numeric.w_w1, closed.w_w1),
        ("witness_w2", numeric.w_w2, closed.w_w2),
    ] {
        if (x - y).abs() > WITNESS_TOL {
            return Err(Error::Consistency {
                criterion: name.into(),
                g: p.g(),
                w: p.w(),
                detail: format!("trace {x} differs from closed form {y}"),
            });
        }
    }
    Ok(numeric)
}

/// Verdicts for `W_GHZ`, `W_W1`, `W_W2`; holds means `Tr(W ρ) ≥ 0`.
pub fn witness_verdicts(p: &SimplexPoint) -> Result<[CriterionVerdict; 3]> {
    let v = witness_expectations(p)?;
    Ok([
        CriterionVerdict::new(CriterionId::WitnessGhz, v.w_ghz),
        CriterionVerdict::new(CriterionId::WitnessW1, v.w_w1),
        CriterionVerdict::new(CriterionId::WitnessW2, v.w_w2),
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SloccBound {
    GhzType,
    NotGhzType,
    Undetermined,
}

impl SloccBound {
    pub fn as_str(&self) -> &'static str {
        match self {
            SloccBound::GhzType => "ghz_type",
            SloccBound::NotGhzType => "not_ghz_type",
            SloccBound::Undetermined => "undetermined",
        }
    }
}

/// `g₀ = 4·2^{1/3} / (3 + 4·2^{1/3})`, where the vanishing-tangle line meets `d = 0`.
pub fn ghz_vertex() -> f64 {
    let c = 4.0 * 2f64.cbrt();
    c / (3.0 + c)
}

/// Below this line `w ≥ 3/(4·2^{1/3}) g` every point is a mixture of vanishing-tangle states.
fn below_tangle_line(g: f64, w: f64) -> bool {
    w >= 3.0 / (4.0 * 2f64.cbrt()) * g
}

/// Strictly on the origin side of the edge from `(3/7, 0)` to `(g₀, 1 − g₀)`.
fn outside_triangle(g: f64, w: f64) -> bool {
    let g0 = ghz_vertex();
    let (ax, ay) = (3.0 / 7.0, 0.0);
    (g0 - ax) * (w - ay) - (1.0 - g0) * (g - ax) > 0.0
}

pub fn ghz_class_bounds(p: &SimplexPoint) -> Result<SloccBound> {
    let (g, w) = (p.g(), p.w());
    let ghz = witness_closed_forms(g, w).w_ghz < -crate::config::MARGINAL_BAND;
    let not_ghz = below_tangle_line(g, w) || outside_triangle(g, w);
    match (ghz, not_ghz) {
        (true, true) => Err(Error::Consistency {
            criterion: "witness_ghz".into(),
            g,
            w,
            detail: "witness detects GHZ type outside the GHZ region".into(),
        }),
        (true, false) => Ok(SloccBound::GhzType),
        (false, true) => Ok(SloccBound::NotGhzType),
        (false, false) => Ok(SloccBound::Undetermined),
    }
}
