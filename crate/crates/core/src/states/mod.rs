//! The GHZ–W–white-noise family, its derived matrices and the fixed example states.

mod point;
pub mod templates;
mod vector;

use std::collections::BTreeMap;
use std::f64::consts::SQRT_2;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    partial_trace, permute_indices, qubit_permutation, ComplexMatrix, Spectrum, RESHUFFLE_23,
    TRANSPOSE_FIRST,
};

pub use point::SimplexPoint;
pub use vector::{minus, plus, qubit, StateVector};

/// Density matrices are plain complex matrices; the constructors here guarantee the invariants.
pub type DensityMatrix = ComplexMatrix;

const TEMPLATE_TOL: f64 = 1e-14;

/// `ρ(g, w)` in the computational basis `|ijk>` with index `4i + 2j + k`.
pub fn build_rho(p: &SimplexPoint) -> DensityMatrix {
    templates::rho(p)
}

/// `d/8 · I + g |GHZ><GHZ| + w |W><W|`, assembled from the state vectors.
pub fn mixture_rho(p: &SimplexPoint) -> DensityMatrix {
    let noise = ComplexMatrix::identity(8).scale(p.d() / 8.0);
    let ghz = StateVector::ghz().projector().scale(p.g());
    let w = StateVector::w().projector().scale(p.w());
    &(&noise + &ghz) + &w
}

fn check_template(
    label: &str,
    p: &SimplexPoint,
    generic: &ComplexMatrix,
    template: &ComplexMatrix,
) -> Result<()> {
    let diff = generic.max_abs_diff(template);
    if diff > TEMPLATE_TOL {
        return Err(Error::Consistency {
            criterion: label.to_string(),
            g: p.g(),
            w: p.w(),
            detail: format!("generic construction differs from the entry pattern by {diff:e}"),
        });
    }
    Ok(())
}

/// `(ρ²³, ρ¹)`: the reduced states of qubits 2,3 and of qubit 1.
pub fn marginals(p: &SimplexPoint) -> Result<(DensityMatrix, DensityMatrix)> {
    let rho = build_rho(p);
    let r23 = partial_trace(&rho, 3, &[0]);
    let r1 = partial_trace(&rho, 3, &[1, 2]);
    check_template("rho23", p, &r23, &templates::rho23(p))?;
    check_template("rho1", p, &r1, &templates::rho1(p))?;
    Ok((r23, r1))
}

/// `ρ^{T1}`, obtained by index permutation.
pub fn partial_transpose_1(p: &SimplexPoint) -> Result<ComplexMatrix> {
    let pt = permute_indices(&build_rho(p), &TRANSPOSE_FIRST)?;
    check_template("rho_t1", p, &pt, &templates::rho_pt1(p))?;
    Ok(pt)
}

/// Partial transpose of an arbitrary three-qubit operator on the first qubit.
pub fn partial_transpose_first(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    permute_indices(a, &TRANSPOSE_FIRST)
}

/// `(I¹ ⊗ ρ²³ − ρ, ρ¹ ⊗ I²³ − ρ)`.
pub fn reduction_matrices(p: &SimplexPoint) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let rho = build_rho(p);
    let (r23, r1) = marginals(p)?;
    let a = &ComplexMatrix::identity(2).kron(&r23) - &rho;
    let b = &r1.kron(&ComplexMatrix::identity(4)) - &rho;
    check_template("reduction_i_rho23", p, &a, &templates::reduction_i_rho23(p))?;
    check_template("reduction_rho1_i", p, &b, &templates::reduction_rho1_i(p))?;
    Ok((a, b))
}

/// Realignment of an operator on `C^da ⊗ C^db`: `[R]_{(i,i'),(j,j')} = A_{(i,j),(i',j')}`.
pub fn realign(a: &ComplexMatrix, da: usize, db: usize) -> ComplexMatrix {
    assert_eq!(a.rows(), da * db);
    assert_eq!(a.cols(), da * db);
    let mut out = ComplexMatrix::zeros(da * da, db * db);
    for i in 0..da {
        for ip in 0..da {
            for j in 0..db {
                for jp in 0..db {
                    out[(i * da + ip, j * db + jp)] = a.get(i * db + j, ip * db + jp);
                }
            }
        }
    }
    out
}

/// `R(ρ)`, 4×16, for the cut between qubit 1 and qubits 2,3.
pub fn reshuffle_24(p: &SimplexPoint) -> Result<ComplexMatrix> {
    let r = realign(&build_rho(p), 2, 4);
    check_template("reshuffle_24", p, &r, &templates::reshuffle_24(p))?;
    Ok(r)
}

/// `R′(ρ)`, 8×8, reshuffling subsystems 2 and 3.
pub fn reshuffle_222(p: &SimplexPoint) -> Result<ComplexMatrix> {
    let r = permute_indices(&build_rho(p), &RESHUFFLE_23)?;
    check_template("reshuffle_222", p, &r, &templates::reshuffle_222(p))?;
    Ok(r)
}

/// Conjugation by a qubit relabelling that moves qubit `m` to position `q[m]`.
pub fn permute_qubits(a: &ComplexMatrix, q: [usize; 3]) -> Result<ComplexMatrix> {
    permute_indices(a, &qubit_permutation(q))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumLabel {
    Rho,
    Rho23,
    Rho1,
    RhoT1,
    Rho1I23,
    /// `ρ̃²³ ρ²³`, the product with the spin-flipped marginal.
    FlipProduct23,
}

impl SpectrumLabel {
    pub const ALL: [SpectrumLabel; 6] = [
        SpectrumLabel::Rho,
        SpectrumLabel::Rho23,
        SpectrumLabel::Rho1,
        SpectrumLabel::RhoT1,
        SpectrumLabel::Rho1I23,
        SpectrumLabel::FlipProduct23,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SpectrumLabel::Rho => "rho",
            SpectrumLabel::Rho23 => "rho23",
            SpectrumLabel::Rho1 => "rho1",
            SpectrumLabel::RhoT1 => "rho_t1",
            SpectrumLabel::Rho1I23 => "rho1_i23",
            SpectrumLabel::FlipProduct23 => "flip_product_23",
        }
    }
}

impl fmt::Display for SpectrumLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The analytic spectra, each sorted non-increasing.
pub fn closed_form_spectra(p: &SimplexPoint) -> BTreeMap<SpectrumLabel, Spectrum> {
    let (g, w) = (p.g(), p.w());
    let s = |v: Vec<f64>| Spectrum::from_unsorted(v.into_iter().map(|x| x / 24.0).collect());
    let mut out = BTreeMap::new();

    let mut rho = vec![3.0 + 21.0 * g - 3.0 * w, 3.0 - 3.0 * g + 21.0 * w];
    rho.extend([3.0 - 3.0 * g - 3.0 * w; 6]);
    out.insert(SpectrumLabel::Rho, s(rho));

    out.insert(
        SpectrumLabel::Rho23,
        s(vec![
            6.0 - 6.0 * g + 10.0 * w,
            6.0 + 6.0 * g + 2.0 * w,
            6.0 + 6.0 * g - 6.0 * w,
            6.0 - 6.0 * g - 6.0 * w,
        ]),
    );
    out.insert(SpectrumLabel::Rho1, s(vec![12.0 + 4.0 * w, 12.0 - 4.0 * w]));

    let r1 = 4.0 * (9.0 * g * g + w * w).sqrt();
    let r2 = 2.0 * (9.0 * g * g + 32.0 * w * w).sqrt();
    out.insert(
        SpectrumLabel::RhoT1,
        s(vec![
            3.0 - 3.0 * g + w + r1,
            3.0 - 3.0 * g + w - r1,
            3.0 + 3.0 * g - 3.0 * w + r2,
            3.0 + 3.0 * g - 3.0 * w - r2,
            3.0 + 9.0 * g - 3.0 * w,
            3.0 - 3.0 * g + 13.0 * w,
            3.0 - 3.0 * g - 3.0 * w,
            3.0 - 3.0 * g - 3.0 * w,
        ]),
    );

    let q = 8.0 * SQRT_2 * w;
    out.insert(
        SpectrumLabel::Rho1I23,
        s(vec![
            9.0 - 9.0 * g + 3.0 * w + r1,
            9.0 - 9.0 * g + 3.0 * w - r1,
            9.0 + 3.0 * g - 9.0 * w + q,
            9.0 + 3.0 * g - 9.0 * w - q,
            9.0 + 3.0 * g + 7.0 * w,
            9.0 + 3.0 * g + 7.0 * w,
            9.0 + 3.0 * g - w,
            9.0 + 3.0 * g - w,
        ]),
    );

    let (dt, gt, wt) = (p.dt(), p.gt(), p.wt());
    let x = (2.0 * dt + gt) * (2.0 * dt + gt + wt);
    out.insert(
        SpectrumLabel::FlipProduct23,
        Spectrum::from_unsorted(vec![4.0 * (dt + wt).powi(2), x, x, 4.0 * dt * dt]),
    );
    out
}

/// The fixed example matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExampleState {
    /// Permutation-invariant biseparable state that is inseparable under every bipartition.
    Class21,
    /// Diagonal-plus-coherence family, entangled iff `a != 1`.
    Class28 { a: f64 },
    /// The family member at `g = w = 1/5`.
    Pptes,
}

pub fn example_state(which: ExampleState) -> Result<DensityMatrix> {
    match which {
        ExampleState::Class21 => {
            let mut m = ComplexMatrix::zeros(8, 8);
            m[(0, 0)] = Complex64::new(3.0, 0.0);
            for k in [3, 5, 6] {
                m[(0, k)] = Complex64::new(1.0, 0.0);
                m[(k, 0)] = Complex64::new(1.0, 0.0);
                m[(k, k)] = Complex64::new(1.0, 0.0);
            }
            Ok(m.scale(1.0 / 6.0))
        }
        ExampleState::Class28 { a } => {
            if !(a.is_finite() && a > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "class 2.8 example needs a > 0, got {a}"
                )));
            }
            let inv = 1.0 / a;
            let mut m = ComplexMatrix::diagonal(&[1.0, a, a, inv, a, inv, inv, 1.0]);
            m[(0, 7)] = Complex64::new(1.0, 0.0);
            m[(7, 0)] = Complex64::new(1.0, 0.0);
            Ok(m.scale(1.0 / (2.0 + 3.0 * (a + inv))))
        }
        ExampleState::Pptes => Ok(pptes_integer_matrix().scale(1.0 / 120.0)),
    }
}

/// `120 · ρ(1/5, 1/5)` as an integer matrix.
pub fn pptes_integer_matrix() -> ComplexMatrix {
    let mut m = ComplexMatrix::diagonal(&[21.0, 17.0, 17.0, 9.0, 17.0, 9.0, 9.0, 21.0]);
    let mut set = |i: usize, j: usize, v: f64| {
        m[(i, j)] = Complex64::new(v, 0.0);
        m[(j, i)] = Complex64::new(v, 0.0);
    };
    set(0, 7, 12.0);
    set(1, 2, 8.0);
    set(1, 4, 8.0);
    set(2, 4, 8.0);
    m
}
