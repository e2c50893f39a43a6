//! Entry patterns of the family and its derived matrices, written out by hand in terms of
//! `d̃ = d/8`, `g̃ = g/2`, `w̃ = w/3`. The generic tensor code paths are checked against these.

use crate::linalg::ComplexMatrix;

use super::SimplexPoint;

fn sym(rows: usize, cols: usize, entries: &[(usize, usize, f64)]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(rows, cols);
    for &(i, j, v) in entries {
        m[(i, j)].re = v;
        if i != j && rows == cols {
            m[(j, i)].re = v;
        }
    }
    m
}

fn sparse(rows: usize, cols: usize, entries: &[(usize, usize, f64)]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(rows, cols);
    for &(i, j, v) in entries {
        m[(i, j)].re = v;
    }
    m
}

pub fn rho(p: &SimplexPoint) -> ComplexMatrix {
    let (d, g, w) = (p.dt(), p.gt(), p.wt());
    sym(
        8,
        8,
        &[
            (0, 0, d + g),
            (1, 1, d + w),
            (2, 2, d + w),
            (3, 3, d),
            (4, 4, d + w),
            (5, 5, d),
            (6, 6, d),
            (7, 7, d + g),
            (0, 7, g),
            (1, 2, w),
            (1, 4, w),
            (2, 4, w),
        ],
    )
}

pub fn rho_pt1(p: &SimplexPoint) -> ComplexMatrix {
    let (d, g, w) = (p.dt(), p.gt(), p.wt());
    sym(
        8,
        8,
        &[
            (0, 0, d + g),
            (1, 1, d + w),
            (2, 2, d + w),
            (3, 3, d),
            (4, 4, d + w),
            (5, 5, d),
            (6, 6, d),
            (7, 7, d + g),
            (0, 5, w),
            (0, 6, w),
            (1, 2, w),
            (3, 4, g),
        ],
    )
}

pub fn rho23(p: &SimplexPoint) -> ComplexMatrix {
    let (d, g, w) = (p.dt(), p.gt(), p.wt());
    sym(
        4,
        4,
        &[
            (0, 0, 2.0 * d + g + w),
            (1, 1, 2.0 * d + w),
            (2, 2, 2.0 * d + w),
            (3, 3, 2.0 * d + g),
            (1, 2, w),
        ],
    )
}

pub fn rho1(p: &SimplexPoint) -> ComplexMatrix {
    let (d, g, w) = (p.dt(), p.gt(), p.wt());
    ComplexMatrix::diagonal(&[4.0 * d + g + 2.0 * w, 4.0 * d + g + w])
}

/// `I ⊗ ρ²³ − ρ`
pub fn reduction_i_rho23(p: &SimplexPoint) -> ComplexMatrix {
    let (d, g, w) = (p.dt(), p.gt(), p.wt());
    sym(
        8,
        8,
        &[
            (0, 0, d + w),
            (1, 1, d),
            (2, 2, d),
            (3, 3, d + g),
            (4, 4, d + g),
            (5, 5, d + w),
            (6, 6, d + w),
            (7, 7, d),
            (0, 7, -g),
            (1, 4, -w),
            (2, 4, -w),
            (5, 6, w),
        ],
    )
}

/// `ρ¹ ⊗ I − ρ`
pub fn reduction_rho1_i(p: &SimplexPoint) -> ComplexMatrix {
    let (d, g, w) = (p.dt(), p.gt(), p.wt());
    sym(
        8,
        8,
        &[
            (0, 0, 3.0 * d + 2.0 * w),
            (1, 1, 3.0 * d + g + w),
            (2, 2, 3.0 * d + g + w),
            (3, 3, 3.0 * d + g + 2.0 * w),
            (4, 4, 3.0 * d + g),
            (5, 5, 3.0 * d + g + w),
            (6, 6, 3.0 * d + g + w),
            (7, 7, 3.0 * d + w),
            (0, 7, -g),
            (1, 2, -w),
            (1, 4, -w),
            (2, 4, -w),
        ],
    )
}

/// 4×16 realignment across the first-qubit cut.
pub fn reshuffle_24(p: &SimplexPoint) -> ComplexMatrix {
    let (d, g, w) = (p.dt(), p.gt(), p.wt());
    sparse(
        4,
        16,
        &[
            (0, 0, d + g),
            (0, 5, d + w),
            (0, 6, w),
            (0, 9, w),
            (0, 10, d + w),
            (0, 15, d),
            (1, 3, g),
            (1, 4, w),
            (1, 8, w),
            (2, 1, w),
            (2, 2, w),
            (2, 12, g),
            (3, 0, d + w),
            (3, 5, d),
            (3, 10, d),
            (3, 15, d + g),
        ],
    )
}

/// 8×8 reshuffle of the second and third subsystems.
pub fn reshuffle_222(p: &SimplexPoint) -> ComplexMatrix {
    let (d, g, w) = (p.dt(), p.gt(), p.wt());
    sparse(
        8,
        8,
        &[
            (0, 0, d + g),
            (0, 3, d + w),
            (0, 6, w),
            (1, 2, w),
            (1, 5, g),
            (2, 1, w),
            (2, 4, w),
            (3, 0, d + w),
            (3, 3, d),
            (4, 1, w),
            (4, 4, d + w),
            (4, 7, d),
            (5, 0, w),
            (6, 2, g),
            (7, 4, d),
            (7, 7, d + g),
        ],
    )
}
