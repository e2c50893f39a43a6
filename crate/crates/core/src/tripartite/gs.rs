//! Matrix-element criteria for biseparability and full separability.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::states::{build_rho, SimplexPoint};
use crate::verdict::{
    closed_form_status, statuses_conflict, Component, CriterionId, CriterionVerdict,
};

/// Diagonal indices whose product, to the 1/6 power, bounds `|ρ₀₇|`.
pub const SIXTH_ORDER_FORMS: [[usize; 6]; 8] = [
    [0, 0, 0, 7, 7, 7],
    [1, 2, 3, 4, 5, 6],
    [0, 1, 2, 4, 7, 7],
    [0, 0, 3, 5, 6, 7],
    [0, 1, 1, 6, 6, 7],
    [0, 0, 1, 6, 7, 7],
    [1, 1, 2, 4, 6, 7],
    [0, 1, 3, 5, 6, 6],
];

/// Diagonal indices whose product, to the 1/4 power, bounds `|ρ₀₇|`.
pub const FOURTH_ORDER_FORMS: [[usize; 4]; 5] = [
    [0, 0, 7, 7],
    [2, 3, 4, 5],
    [0, 1, 6, 7],
    [1, 2, 4, 7],
    [0, 3, 5, 6],
];

fn diag(rho: &ComplexMatrix, i: usize) -> f64 {
    rho.get(i, i).re.max(0.0)
}

fn label(indices: &[usize]) -> String {
    let digits: String = indices
        .iter()
        .map(|i| char::from(b'0' + *i as u8))
        .collect();
    format!("rhs{}_{digits}", indices.len())
}

/// Index class under the family's symmetry: `0`/`7`, weight-one, weight-two.
fn class_of(i: usize) -> u8 {
    match i.count_ones() {
        0 | 3 => b'C',
        1 => b'A',
        _ => b'B',
    }
}

/// Sorted class letters of a monomial, e.g. `"AAACCC"`.
pub fn class_signature(indices: &[usize]) -> String {
    let mut s: Vec<u8> = indices.iter().map(|&i| class_of(i)).collect();
    s.sort_unstable();
    String::from_utf8(s).expect("ascii")
}

fn multisets(order: usize, start: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if prefix.len() == order {
        out.push(prefix.clone());
        return;
    }
    for i in start..8 {
        prefix.push(i);
        multisets(order, i, prefix, out);
        prefix.pop();
    }
}

/// All multisets of `order` basis indices in which every qubit is 1 in exactly half the
/// factors. These are the admissible right-hand sides before symmetry reduction.
pub fn balanced_monomials(order: usize) -> Vec<Vec<usize>> {
    let mut all = Vec::new();
    multisets(order, 0, &mut Vec::new(), &mut all);
    all.into_iter()
        .filter(|m| {
            (0..3).all(|bit| m.iter().filter(|&&i| (i >> bit) & 1 == 1).count() * 2 == order)
        })
        .collect()
}

/// Class signatures of the balanced monomials of one order, after merging those the
/// family's symmetry makes equal.
pub fn distinct_signatures(order: usize) -> BTreeSet<String> {
    balanced_monomials(order)
        .iter()
        .map(|m| class_signature(m))
        .collect()
}

fn consistency(id: CriterionId, p: &SimplexPoint, detail: String) -> Error {
    Error::Consistency {
        criterion: id.to_string(),
        g: p.g(),
        w: p.w(),
        detail,
    }
}

fn check_reduced(
    id: CriterionId,
    p: &SimplexPoint,
    name: &str,
    reduced: f64,
    component: f64,
) -> Result<()> {
    if statuses_conflict(closed_form_status(reduced), closed_form_status(component)) {
        return Err(consistency(
            id,
            p,
            format!("reduced form {name} = {reduced:e} disagrees with matrix-element margin {component:e}"),
        ));
    }
    Ok(())
}

/// The two biseparability inequalities on the entries of `ρ(g, w)`.
pub fn criterion_gs_biseparable(p: &SimplexPoint) -> Result<CriterionVerdict> {
    let rho = build_rho(p);
    let r = |i| diag(&rho, i);
    let a =
        (r(6) * r(1)).sqrt() + (r(5) * r(2)).sqrt() + (r(3) * r(4)).sqrt() - rho.get(0, 7).norm();
    let b = (r(0) * r(3)).sqrt()
        + (r(0) * r(5)).sqrt()
        + (r(0) * r(6)).sqrt()
        + (r(1) + r(2) + r(4)) / 2.0
        - (rho.get(1, 2).norm() + rho.get(1, 4).norm() + rho.get(2, 4).norm());
    let id = CriterionId::Gs2;
    let (d, g, w) = (p.dt(), p.gt(), p.wt());
    check_reduced(id, p, "ghz_bound", 3.0 * (d * (d + w)).sqrt() - g, a)?;
    check_reduced(
        id,
        p,
        "w_bound",
        ((d + g) * d).sqrt() + (d + w) / 2.0 - w,
        b,
    )?;
    Ok(CriterionVerdict::from_components(
        id,
        vec![
            Component {
                label: "ghz".into(),
                margin: a,
            },
            Component {
                label: "w".into(),
                margin: b,
            },
        ],
    ))
}

/// The full-separability family: the 13 right-hand sides for `|ρ₀₇|` and the W-type form.
pub fn criterion_gs_fullsep(p: &SimplexPoint) -> Result<CriterionVerdict> {
    let rho = build_rho(p);
    let r = |i| diag(&rho, i);
    let lhs = rho.get(0, 7).norm();
    let mut components = Vec::with_capacity(14);
    for form in SIXTH_ORDER_FORMS {
        let prod: f64 = form.iter().map(|&i| r(i)).product();
        components.push(Component {
            label: label(&form),
            margin: prod.powf(1.0 / 6.0) - lhs,
        });
    }
    for form in FOURTH_ORDER_FORMS {
        let prod: f64 = form.iter().map(|&i| r(i)).product();
        components.push(Component {
            label: label(&form),
            margin: prod.powf(0.25) - lhs,
        });
    }
    let w_form = (r(0) * r(3)).sqrt() + (r(0) * r(5)).sqrt() + (r(0) * r(6)).sqrt()
        - (rho.get(1, 2).norm() + rho.get(1, 4).norm() + rho.get(2, 4).norm());
    components.push(Component {
        label: "w_form".into(),
        margin: w_form,
    });

    let id = CriterionId::Gs3;
    let (d, g, w) = (p.dt(), p.gt(), p.wt());
    let find = |l: &str| {
        components
            .iter()
            .find(|c| c.label == l)
            .expect("component")
            .margin
    };
    check_reduced(
        id,
        p,
        "rhs6_123456",
        ((d + w) * d).sqrt() - g,
        find("rhs6_123456"),
    )?;
    check_reduced(
        id,
        p,
        "rhs4_0356",
        ((d + g) * d.powi(3)).powf(0.25) - g,
        find("rhs4_0356"),
    )?;
    check_reduced(id, p, "w_form", ((d + g) * d).sqrt() - w, w_form)?;
    Ok(CriterionVerdict::from_components(id, components))
}
