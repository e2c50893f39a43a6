//! Simplex sweeps, boundary location and export.

mod export;
mod svg;

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{all_criteria, classify_with, evaluate_criteria, ClassReport};
use crate::error::{Error, Result};
use crate::states::SimplexPoint;
use crate::verdict::{CriterionId, CriterionVerdict, SuLevel};

pub use export::{export_csv, export_json, import_json, write_csv, ScanJson, SCHEMA_VERSION};
pub use svg::{export_svg, isolines, render_svg, Polyline};

pub const DEFAULT_RESOLUTION: usize = 400;
pub const DEFAULT_BISECT_TOL: f64 = 1e-10;

/// One lattice point `(g, w) = (i/N, j/N)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub i: usize,
    pub j: usize,
    pub report: ClassReport,
    pub verdicts: Vec<CriterionVerdict>,
}

/// Every admissible lattice point at one resolution, ordered by `i` then `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionGrid {
    resolution: usize,
    criteria: Vec<CriterionId>,
    cells: Vec<Cell>,
}

impl RegionGrid {
    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn criteria(&self) -> &[CriterionId] {
        &self.criteria
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// Position of `(i, j)` in the row-by-row layout.
    fn offset(&self, i: usize, j: usize) -> usize {
        let n = self.resolution;
        // rows 0..i hold (n + 1) + n + ... + (n + 2 - i) cells
        i * (n + 1) - i * (i.saturating_sub(1)) / 2 + j
    }

    pub fn cell(&self, i: usize, j: usize) -> Option<&Cell> {
        if i + j > self.resolution {
            return None;
        }
        self.cells.get(self.offset(i, j))
    }

    /// Margin of the `k`-th selected criterion at `(i, j)`.
    pub fn margin(&self, i: usize, j: usize, k: usize) -> Option<f64> {
        self.cell(i, j).map(|c| c.verdicts[k].margin)
    }

    pub fn pptes_cells(&self) -> Vec<(usize, usize)> {
        self.cells
            .iter()
            .filter(|c| c.report.pptes_certified)
            .map(|c| (c.i, c.j))
            .collect()
    }

    pub fn reports(&self) -> Vec<ClassReport> {
        self.cells.iter().map(|c| c.report.clone()).collect()
    }
}

/// `(i, j)` with `i + j <= n`, row by row.
pub fn lattice_indices(n: usize) -> Vec<(usize, usize)> {
    (0..=n)
        .flat_map(|i| (0..=(n - i)).map(move |j| (i, j)))
        .collect()
}

fn lattice_point(n: usize, i: usize, j: usize) -> Result<SimplexPoint> {
    SimplexPoint::new(i as f64 / n as f64, j as f64 / n as f64)
}

fn check_resolution(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "resolution must be at least 2, got {n}"
        )));
    }
    Ok(())
}

fn scan_cell(n: usize, ids: &[CriterionId], (i, j): (usize, usize)) -> Result<Cell> {
    let p = lattice_point(n, i, j)?;
    let (report, mut verdicts) = classify_with(&p, ids)?;
    // exports only use the aggregate margin, and components dominate memory on large grids
    for v in &mut verdicts {
        v.components = Vec::new();
    }
    Ok(Cell {
        i,
        j,
        report,
        verdicts,
    })
}

/// Parallel scan; the result does not depend on the number of worker threads.
pub fn grid_scan(resolution: usize, ids: &[CriterionId]) -> Result<RegionGrid> {
    check_resolution(resolution)?;
    let cells = lattice_indices(resolution)
        .into_par_iter()
        .map(|ij| scan_cell(resolution, ids, ij))
        .collect::<Result<Vec<_>>>()?;
    Ok(RegionGrid {
        resolution,
        criteria: ids.to_vec(),
        cells,
    })
}

pub fn grid_scan_sequential(resolution: usize, ids: &[CriterionId]) -> Result<RegionGrid> {
    check_resolution(resolution)?;
    let cells = lattice_indices(resolution)
        .into_iter()
        .map(|ij| scan_cell(resolution, ids, ij))
        .collect::<Result<Vec<_>>>()?;
    Ok(RegionGrid {
        resolution,
        criteria: ids.to_vec(),
        cells,
    })
}

fn family(token: &str) -> Option<Vec<CriterionId>> {
    let all = all_criteria();
    let keep = |f: &dyn Fn(&CriterionId) -> bool| all.iter().copied().filter(|id| f(id)).collect();
    Some(match token {
        "all" => all.clone(),
        "none" => Vec::new(),
        "majorization" => keep(&|id| matches!(id, CriterionId::Majorization(_))),
        "entropy" => keep(&|id| matches!(id, CriterionId::Entropy(..))),
        "reshuffling" => vec![CriterionId::Reshuffling24],
        "permutation" => vec![CriterionId::Permutation222],
        "su" => keep(&|id| matches!(id, CriterionId::Su(..))),
        "su_2sep" => keep(&|id| matches!(id, CriterionId::Su(SuLevel::TwoSep, _))),
        "su_28cap3" => keep(&|id| matches!(id, CriterionId::Su(SuLevel::TwoEightCapThree, _))),
        "su_3sep" => keep(&|id| matches!(id, CriterionId::Su(SuLevel::ThreeSep, _))),
        "huber" => keep(&|id| matches!(id, CriterionId::Huber(..))),
        "gs" => vec![CriterionId::Gs2, CriterionId::Gs3],
        "witness" => keep(&|id| {
            matches!(
                id,
                CriterionId::WitnessGhz | CriterionId::WitnessW1 | CriterionId::WitnessW2
            )
        }),
        _ => return None,
    })
}

/// Parses a comma-separated list of family names (`all`, `ppt`, `su`, `huber`, ...) or
/// criterion ids. Known criteria keep the canonical order; other ids follow as given.
pub fn parse_selection(selection: &str) -> Result<Vec<CriterionId>> {
    let mut chosen: Vec<CriterionId> = Vec::new();
    for token in selection
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
    {
        let ids = match family(token) {
            Some(ids) => ids,
            None => vec![token.parse::<CriterionId>()?],
        };
        chosen.extend(ids);
    }
    let set: BTreeSet<CriterionId> = chosen.iter().copied().collect();
    let canonical = all_criteria();
    let mut out: Vec<CriterionId> = canonical
        .iter()
        .copied()
        .filter(|id| set.contains(id))
        .collect();
    let mut seen: BTreeSet<CriterionId> = out.iter().copied().collect();
    for id in chosen {
        if seen.insert(id) {
            out.push(id);
        }
    }
    Ok(out)
}

/// Bisects `f ≥ 0` along the segment from `start` to `end` until the bracket is shorter
/// than `tol`, and returns its midpoint.
pub fn boundary_bisect_by(
    start: SimplexPoint,
    end: SimplexPoint,
    tol: f64,
    f: impl Fn(&SimplexPoint) -> Result<f64>,
) -> Result<SimplexPoint> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let length = (end.g() - start.g()).hypot(end.w() - start.w());
    let side = |t: f64| -> Result<bool> { Ok(f(&SimplexPoint::lerp(start, end, t))? >= 0.0) };
    let at_start = side(0.0)?;
    if at_start == side(1.0)? {
        return Err(Error::NoSignChange);
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while (hi - lo) * length >= tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if side(mid)? == at_start {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(SimplexPoint::lerp(start, end, 0.5 * (lo + hi)))
}

/// Crossing point of one criterion's margin along a segment.
pub fn boundary_bisect(
    criterion: CriterionId,
    start: SimplexPoint,
    end: SimplexPoint,
    tol: f64,
) -> Result<SimplexPoint> {
    boundary_bisect_by(start, end, tol, |p| {
        Ok(evaluate_criteria(p, &[criterion])?[0].margin)
    })
}

/// `count` points uniform on the simplex, reproducible from `seed`.
pub fn uniform_points(count: usize, seed: u64) -> Vec<SimplexPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (a, b): (f64, f64) = (rng.gen(), rng.gen());
            let (g, w) = if a + b > 1.0 {
                (1.0 - a, 1.0 - b)
            } else {
                (a, b)
            };
            SimplexPoint::new(g, w).expect("reflected point lies in the simplex")
        })
        .collect()
}
