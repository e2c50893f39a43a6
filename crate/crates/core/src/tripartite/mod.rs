//! Criteria that see all three qubits at once.

mod gs;
mod huber;
mod search;
mod spin;
mod su;
mod witness;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::trace_norm;
use crate::states::{reshuffle_222, SimplexPoint};
use crate::verdict::{CriterionId, CriterionVerdict};

pub use gs::{
    balanced_monomials, class_signature, criterion_gs_biseparable, criterion_gs_fullsep,
    distinct_signatures, FOURTH_ORDER_FORMS, SIXTH_ORDER_FORMS,
};
pub use huber::{criterion_huber, criterion_huber_factorized, detection_vector};
pub use search::{random_setting_search, Frames, SearchResult};
pub use spin::{
    build_spin_observables, hadamard, published_observables, sigma_x, sigma_y, sigma_z, spin_along,
    spin_quantities, SettingTriad, SpinObservables,
};
pub use su::{criterion_su, criterion_su_with, su_closed_form, SuClosedForm};
pub use witness::{
    ghz_class_bounds, ghz_vertex, witness_closed_forms, witness_expectations, witness_verdicts,
    witnesses, SloccBound, Witness, WitnessValues,
};

/// Margin is `1 − ‖R′(ρ)‖₁` for the qubit-wise reshuffle. Numeric only.
pub fn criterion_permutation_222(p: &SimplexPoint) -> Result<CriterionVerdict> {
    let norm = trace_norm(&reshuffle_222(p)?)?;
    Ok(CriterionVerdict::new(
        CriterionId::Permutation222,
        1.0 - norm,
    ))
}

/// Split of the labels `1, 2, 3` into disjoint nonempty blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = [false; 3];
        for b in &mut blocks {
            if b.is_empty() {
                return Err(Error::InvalidArgument("empty block".into()));
            }
            b.sort_unstable();
            for &l in b.iter() {
                if !(1..=3).contains(&l) || seen[l - 1] {
                    return Err(Error::InvalidArgument(format!(
                        "label {l} is out of range or repeated"
                    )));
                }
                seen[l - 1] = true;
            }
        }
        if !seen.iter().all(|&s| s) {
            return Err(Error::InvalidArgument("blocks do not cover 1, 2, 3".into()));
        }
        blocks.sort();
        Ok(Partition { blocks })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    /// All partitions into exactly `k` blocks.
    pub fn k_splits(k: usize) -> Vec<Partition> {
        let raw: Vec<Vec<Vec<usize>>> = match k {
            1 => vec![vec![vec![1, 2, 3]]],
            2 => vec![
                vec![vec![1], vec![2, 3]],
                vec![vec![2], vec![1, 3]],
                vec![vec![3], vec![1, 2]],
            ],
            3 => vec![vec![vec![1], vec![2], vec![3]]],
            _ => vec![],
        };
        raw.into_iter()
            .map(|b| Partition::new(b).expect("valid split"))
            .collect()
    }
}
