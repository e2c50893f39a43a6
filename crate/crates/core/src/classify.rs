//! Fusing criterion verdicts into constraints on the separability class.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bipartite::{
    criterion_entropy, criterion_majorization, criterion_ppt, criterion_reduction,
    criterion_reshuffling_24,
};
use crate::error::{Error, Result};
use crate::states::SimplexPoint;
use crate::tripartite::{
    criterion_gs_biseparable, criterion_gs_fullsep, criterion_huber_factorized,
    criterion_permutation_222, criterion_su, detection_vector, ghz_class_bounds, witness_verdicts,
    SloccBound,
};
use crate::verdict::{
    Alpha, CriterionId, CriterionVerdict, Detector, Marginal, Scope, Setting, Status, SuLevel,
};

/// Classes of the lattice that a permutation-invariant state can belong to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SepClass {
    /// Fully separable.
    Three,
    /// Separable under every bipartition, not fully separable.
    TwoEight,
    /// Biseparable, separable under no single bipartition.
    TwoOne,
    /// Fully entangled.
    One,
}

impl SepClass {
    pub const ALL: [SepClass; 4] = [
        SepClass::Three,
        SepClass::TwoEight,
        SepClass::TwoOne,
        SepClass::One,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SepClass::Three => "3",
            SepClass::TwoEight => "2.8",
            SepClass::TwoOne => "2.1",
            SepClass::One => "1",
        }
    }
}

impl fmt::Display for SepClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SepClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SepClass::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown class {s:?}")))
    }
}

impl Serialize for SepClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for SepClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Classes ruled out by a violation at the given scope.
pub fn excluded_by(scope: Scope) -> &'static [SepClass] {
    match scope {
        Scope::FullSeparability => &[SepClass::Three],
        Scope::BipartitionSeparability => &[SepClass::Three, SepClass::TwoEight],
        // a GHZ-type state is not in the W class, which contains every biseparable state
        Scope::Biseparability | Scope::Slocc => {
            &[SepClass::Three, SepClass::TwoEight, SepClass::TwoOne]
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exclusion {
    pub class: SepClass,
    pub criterion: CriterionId,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub point: SimplexPoint,
    pub possible_classes: BTreeSet<SepClass>,
    pub slocc: SloccBound,
    pub exclusions: Vec<Exclusion>,
    /// True only on `w = 0`, where the classification is known exactly.
    pub exact: bool,
    /// PPT holds and some criterion is violated.
    pub pptes_certified: bool,
    /// Criteria whose margin fell inside the marginal band.
    pub marginal: Vec<CriterionId>,
}

/// The classification on the GHZ–white-noise line.
pub fn exact_w0_classification(g: f64) -> Result<SepClass> {
    if !(0.0..=1.0).contains(&g) {
        return Err(Error::InvalidArgument(format!("g = {g} is outside [0, 1]")));
    }
    Ok(if g <= 0.2 {
        SepClass::Three
    } else if g <= 3.0 / 7.0 {
        SepClass::TwoOne
    } else {
        SepClass::One
    })
}

/// Every criterion the classifier knows, in a fixed order.
pub fn all_criteria() -> Vec<CriterionId> {
    let mut ids = vec![
        CriterionId::Majorization(Marginal::Rho1),
        CriterionId::Majorization(Marginal::Rho23),
    ];
    for m in [Marginal::Rho1, Marginal::Rho23] {
        ids.extend(
            Alpha::sweep()
                .into_iter()
                .map(|a| CriterionId::Entropy(m, a)),
        );
    }
    ids.extend([
        CriterionId::Ppt,
        CriterionId::Reduction,
        CriterionId::Reshuffling24,
        CriterionId::Permutation222,
    ]);
    for level in SuLevel::ALL {
        ids.extend(Setting::PUBLISHED.map(|s| CriterionId::Su(level, s)));
    }
    for det in [Detector::Ghz, Detector::W] {
        ids.extend([CriterionId::Huber(det, 2), CriterionId::Huber(det, 3)]);
    }
    ids.extend([
        CriterionId::Gs2,
        CriterionId::Gs3,
        CriterionId::WitnessGhz,
        CriterionId::WitnessW1,
        CriterionId::WitnessW2,
    ]);
    ids
}

/// Evaluates the listed criteria at `p`, sharing work between criteria computed together.
pub fn evaluate_criteria(p: &SimplexPoint, ids: &[CriterionId]) -> Result<Vec<CriterionVerdict>> {
    let mut majorization = None;
    let mut entropy: BTreeMap<Alpha, (CriterionVerdict, CriterionVerdict)> = BTreeMap::new();
    let mut witnesses = None;
    let mut out = Vec::with_capacity(ids.len());
    for &id in ids {
        let v = match id {
            CriterionId::Majorization(m) => {
                if majorization.is_none() {
                    majorization = Some(criterion_majorization(p)?);
                }
                let (a, b) = majorization.as_ref().expect("computed");
                pick(m, a, b)
            }
            CriterionId::Entropy(m, alpha) => {
                let (a, b) = match entropy.entry(alpha) {
                    Entry::Occupied(e) => e.into_mut(),
                    Entry::Vacant(e) => e.insert(criterion_entropy(p, alpha)?),
                };
                pick(m, a, b)
            }
            CriterionId::Ppt => criterion_ppt(p)?,
            CriterionId::Reduction => criterion_reduction(p)?,
            CriterionId::Reshuffling24 => criterion_reshuffling_24(p)?,
            CriterionId::Permutation222 => criterion_permutation_222(p)?,
            CriterionId::Su(level, setting) => criterion_su(p, setting, level)?,
            CriterionId::Huber(det, k) => {
                criterion_huber_factorized(p, &detection_vector(det)?, k)?
            }
            CriterionId::Gs2 => criterion_gs_biseparable(p)?,
            CriterionId::Gs3 => criterion_gs_fullsep(p)?,
            CriterionId::WitnessGhz | CriterionId::WitnessW1 | CriterionId::WitnessW2 => {
                if witnesses.is_none() {
                    witnesses = Some(witness_verdicts(p)?);
                }
                let [a, b, c] = witnesses.as_ref().expect("computed");
                match id {
                    CriterionId::WitnessGhz => a.clone(),
                    CriterionId::WitnessW1 => b.clone(),
                    _ => c.clone(),
                }
            }
        };
        out.push(v);
    }
    Ok(out)
}

fn pick(m: Marginal, rho1: &CriterionVerdict, rho23: &CriterionVerdict) -> CriterionVerdict {
    match m {
        Marginal::Rho1 => rho1.clone(),
        Marginal::Rho23 => rho23.clone(),
    }
}

/// Builds the report from verdicts already evaluated at `p`.
pub fn classify_verdicts(p: &SimplexPoint, verdicts: &[CriterionVerdict]) -> Result<ClassReport> {
    let mut possible: BTreeSet<SepClass> = SepClass::ALL.into_iter().collect();
    let mut exclusions = Vec::new();
    let mut marginal = Vec::new();
    for v in verdicts {
        match v.status {
            Status::Violated => {
                for &class in excluded_by(v.id.scope()) {
                    possible.remove(&class);
                    exclusions.push(Exclusion {
                        class,
                        criterion: v.id,
                    });
                }
            }
            Status::Marginal => marginal.push(v.id),
            Status::Holds => {}
        }
    }
    if possible.is_empty() {
        return Err(Error::Consistency {
            criterion: "classify".into(),
            g: p.g(),
            w: p.w(),
            detail: "every class excluded".into(),
        });
    }

    let exact = p.w() == 0.0;
    if exact {
        let truth = exact_w0_classification(p.g())?;
        if !possible.contains(&truth) {
            let culprits: Vec<String> = exclusions
                .iter()
                .filter(|e| e.class == truth)
                .map(|e| e.criterion.to_string())
                .collect();
            return Err(Error::Consistency {
                criterion: culprits.join(","),
                g: p.g(),
                w: p.w(),
                detail: format!("criteria exclude the known class {truth}"),
            });
        }
        possible = BTreeSet::from([truth]);
    }

    let slocc = ghz_class_bounds(p)?;

    let ppt_holds = verdicts
        .iter()
        .any(|v| v.id == CriterionId::Ppt && v.status == Status::Holds);
    let pptes_certified = ppt_holds && verdicts.iter().any(|v| v.violated());

    Ok(ClassReport {
        point: *p,
        possible_classes: possible,
        slocc,
        exclusions,
        exact,
        pptes_certified,
        marginal,
    })
}

/// Evaluates `ids` and classifies.
pub fn classify_with(
    p: &SimplexPoint,
    ids: &[CriterionId],
) -> Result<(ClassReport, Vec<CriterionVerdict>)> {
    let verdicts = evaluate_criteria(p, ids)?;
    let report = classify_verdicts(p, &verdicts)?;
    Ok((report, verdicts))
}

/// Classification using every criterion.
pub fn classify_point(p: &SimplexPoint) -> Result<ClassReport> {
    Ok(classify_with(p, &all_criteria())?.0)
}
