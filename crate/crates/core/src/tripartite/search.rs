//! Random search over local spin settings.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::states::SimplexPoint;
use crate::verdict::{CriterionVerdict, Setting, SuLevel};

use super::spin::{build_spin_observables, SettingTriad};
use super::su::{criterion_su, criterion_su_with};

/// One orthonormal frame per qubit; row `k` is the direction of the `k`-th observable.
pub type Frames = [[[f64; 3]; 3]; 3];

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchResult {
    pub seed: u64,
    pub samples: usize,
    pub best: CriterionVerdict,
    pub frames: Frames,
    /// Smallest margin among Settings I–III at the same level.
    pub reference_margin: f64,
    pub beats_reference: bool,
    /// True on the `w = 0` or `g = 0` axis.
    pub on_axis: bool,
}

impl SearchResult {
    /// A sampled setting stronger than the published ones on an axis.
    pub fn flagged(&self) -> bool {
        self.beats_reference && self.on_axis
    }
}

fn normalize(v: [f64; 3]) -> [f64; 3] {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.map(|x| x / n)
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Right-handed orthonormal frame from Gaussian vectors by Gram–Schmidt.
fn random_frame(rng: &mut ChaCha8Rng) -> [[f64; 3]; 3] {
    let mut draw = || -> [f64; 3] { std::array::from_fn(|_| StandardNormal.sample(rng)) };
    loop {
        let a = draw();
        let b = draw();
        if a.iter().all(|x| x.abs() < 1e-12) {
            continue;
        }
        let e1 = normalize(a);
        let proj = dot(b, e1);
        let r = [
            b[0] - proj * e1[0],
            b[1] - proj * e1[1],
            b[2] - proj * e1[2],
        ];
        if r.iter().map(|x| x * x).sum::<f64>() < 1e-20 {
            continue;
        }
        let e2 = normalize(r);
        return [e1, e2, cross(e1, e2)];
    }
}

/// Samples independent frames for the three qubits and keeps the assignment with the
/// smallest margin. Ties keep the earlier sample.
pub fn random_setting_search(
    p: &SimplexPoint,
    level: SuLevel,
    samples: usize,
    seed: u64,
) -> Result<SearchResult> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(CriterionVerdict, Frames)> = None;
    for _ in 0..samples {
        let frames: Frames = [
            random_frame(&mut rng),
            random_frame(&mut rng),
            random_frame(&mut rng),
        ];
        let [t1, t2, t3] = frames.map(SettingTriad::from_frame);
        let obs = build_spin_observables(&t1?, &t2?, &t3?)?;
        let v = criterion_su_with(p, &obs, level)?;
        if best.as_ref().is_none_or(|(b, _)| v.margin < b.margin) {
            best = Some((v, frames));
        }
    }
    let (best, frames) = best.expect("at least one sample");
    let mut reference_margin = f64::INFINITY;
    for s in Setting::PUBLISHED {
        reference_margin = reference_margin.min(criterion_su(p, s, level)?.margin);
    }
    Ok(SearchResult {
        seed,
        samples,
        beats_reference: best.margin < reference_margin - 1e-12,
        reference_margin,
        best,
        frames,
        on_axis: p.g() == 0.0 || p.w() == 0.0,
    })
}
