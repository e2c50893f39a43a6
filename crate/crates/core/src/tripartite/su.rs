//! Spin-observable criteria at the 2sep, 28cap3 and 3sep levels.

use crate::error::{Error, Result};
use crate::states::{build_rho, SimplexPoint};
use crate::verdict::{
    closed_form_status, statuses_conflict, Component, CriterionId, CriterionVerdict, Setting,
    SuLevel,
};

use super::spin::{published_observables, spin_quantities, SpinObservables};

/// Both printed lines of a published closed form; each is non-negative iff the criterion holds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuClosedForm {
    pub root_form: f64,
    pub polynomial: f64,
}

impl SuClosedForm {
    pub fn min(&self) -> f64 {
        self.root_form.min(self.polynomial)
    }
}

fn cap(level: SuLevel) -> Option<f64> {
    match level {
        SuLevel::TwoSep => None,
        SuLevel::TwoEightCapThree => Some(0.25),
        SuLevel::ThreeSep => Some(1.0 / 16.0),
    }
}

/// Closed forms for Settings I–III on the family. The 3sep level shares the 28cap3 forms
/// because its extra cap holds on the whole simplex. `None` for custom settings.
pub fn su_closed_form(setting: Setting, level: SuLevel, p: &SimplexPoint) -> Option<SuClosedForm> {
    let (d, gt, wt) = (p.dt(), p.gt(), p.wt());
    let (g, w) = (p.g(), p.w());
    let f = |root_form: f64, polynomial: f64| SuClosedForm {
        root_form,
        polynomial,
    };
    let form = match (level, setting) {
        (_, Setting::Custom) => return None,
        (SuLevel::TwoSep, Setting::I) => f(
            3.0 * (d * (d + wt)).sqrt() - gt,
            -7.0 * g * g - 6.0 * g * w - 15.0 * w * w - 18.0 * g + 6.0 * w + 9.0,
        ),
        (SuLevel::TwoSep, Setting::II) => f(
            ((8.0 * d + wt) * (8.0 * d + 4.0 * gt + wt)).sqrt() - 3.0 * wt,
            -9.0 * g * g - 5.0 * w * w - 12.0 * w + 9.0,
        ),
        (SuLevel::TwoSep, Setting::III) => f(
            3.0 * (8.0 * d + 2.0 * gt + wt) - (4.0 * gt * gt + 81.0 * wt * wt).sqrt(),
            -g * g - 5.0 * w * w - 12.0 * w + 9.0,
        ),
        (_, Setting::I) => f(
            d * (d + wt) - gt * gt,
            -45.0 * g * g - 2.0 * g * w - 5.0 * w * w - 6.0 * g + 2.0 * w + 3.0,
        ),
        (_, Setting::II) => f(
            (8.0 * d + wt) * (8.0 * d + 4.0 * gt + wt) - 81.0 * wt * wt,
            -9.0 * g * g - 77.0 * w * w - 12.0 * w + 9.0,
        ),
        (_, Setting::III) => f(
            (8.0 * d + 2.0 * gt + wt).powi(2) - 4.0 * gt * gt - 81.0 * wt * wt,
            -9.0 * g * g - 77.0 * w * w - 12.0 * w + 9.0,
        ),
    };
    Some(form)
}

/// Evaluates one level of the spin criteria for arbitrary observables on `ρ(g, w)`.
/// The verdict carries `Setting::Custom`.
pub fn criterion_su_with(
    p: &SimplexPoint,
    obs: &SpinObservables,
    level: SuLevel,
) -> Result<CriterionVerdict> {
    evaluate(p, obs, level, Setting::Custom)
}

/// Evaluates a published setting and checks the sign of both closed-form lines.
pub fn criterion_su(
    p: &SimplexPoint,
    setting: Setting,
    level: SuLevel,
) -> Result<CriterionVerdict> {
    if setting == Setting::Custom {
        return Err(Error::InvalidArgument(
            "custom settings need explicit observables".into(),
        ));
    }
    let verdict = evaluate(p, published_observables(setting), level, setting)?;
    let closed = su_closed_form(setting, level, p).expect("published setting");
    for (line, value) in [
        ("root form", closed.root_form),
        ("polynomial", closed.polynomial),
    ] {
        if statuses_conflict(closed_form_status(value), verdict.status) {
            return Err(Error::Consistency {
                criterion: verdict.id.to_string(),
                g: p.g(),
                w: p.w(),
                detail: format!(
                    "closed-form {line} {value:e} disagrees with numeric margin {:e}",
                    verdict.margin
                ),
            });
        }
    }
    Ok(verdict)
}

fn evaluate(
    p: &SimplexPoint,
    obs: &SpinObservables,
    level: SuLevel,
    setting: Setting,
) -> Result<CriterionVerdict> {
    let id = CriterionId::Su(level, setting);
    let (e, iz) = spin_quantities(obs, &build_rho(p));
    let s = iz.map(|v| v.max(0.0));
    match cap(level) {
        None => {
            let components = (0..4)
                .map(|x| Component {
                    label: format!("x{x}"),
                    margin: (0..4).filter(|&y| y != x).map(|y| s[y].sqrt()).sum::<f64>()
                        - e[x].sqrt(),
                })
                .collect();
            Ok(CriterionVerdict::from_components(id, components))
        }
        Some(cap) => {
            let min_s = s.iter().cloned().fold(f64::INFINITY, f64::min);
            let max_e = e.iter().cloned().fold(0.0, f64::max);
            let main = min_s - max_e;
            let cap_margin = cap - min_s;
            // the I_x sum to the identity, so min_s <= 1/16 for every state
            if cap_margin < -crate::config::MARGINAL_BAND {
                return Err(Error::Consistency {
                    criterion: id.to_string(),
                    g: p.g(),
                    w: p.w(),
                    detail: format!("cap exceeded by {:e}", -cap_margin),
                });
            }
            let mut verdict = CriterionVerdict::new(id, main);
            verdict.components = vec![
                Component {
                    label: "spread".into(),
                    margin: main,
                },
                Component {
                    label: "cap".into(),
                    margin: cap_margin,
                },
            ];
            Ok(verdict)
        }
    }
}
