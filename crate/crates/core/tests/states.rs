use std::f64::consts::SQRT_2;

use approx::assert_abs_diff_eq;
use proptest::prelude::*;
use qsep_core::linalg::{hermitian_eigenvalues, singular_values, ComplexMatrix, Spectrum};
use qsep_core::states::*;
use qsep_core::SimplexPoint;

fn pt(g: f64, w: f64) -> SimplexPoint {
    SimplexPoint::new(g, w).unwrap()
}

fn simplex() -> impl Strategy<Value = SimplexPoint> {
    (0.0f64..=1.0, 0.0f64..=1.0).prop_map(|(a, b)| {
        let (g, w) = if a + b > 1.0 {
            (1.0 - a, 1.0 - b)
        } else {
            (a, b)
        };
        SimplexPoint::new(g, w).unwrap()
    })
}

#[test]
fn invalid_points_rejected() {
    assert!(SimplexPoint::new(-0.1, 0.2).is_err());
    assert!(SimplexPoint::new(0.6, 0.6).is_err());
    assert!(SimplexPoint::new(f64::NAN, 0.0).is_err());
    assert!(SimplexPoint::new(1.0 / 3.0, 2.0 / 3.0).is_ok());
}

#[test]
fn point_deserialization_validates() {
    assert!(serde_json::from_str::<SimplexPoint>(r#"{"g":0.7,"w":0.7}"#).is_err());
    let p: SimplexPoint = serde_json::from_str(r#"{"g":0.25,"w":0.5}"#).unwrap();
    assert_eq!(p, pt(0.25, 0.5));
}

#[test]
fn renormalized_weights() {
    let p = pt(0.2, 0.2);
    assert_abs_diff_eq!(p.d(), 0.6, epsilon = 1e-15);
    assert_abs_diff_eq!(p.dt(), 0.075, epsilon = 1e-15);
    assert_abs_diff_eq!(p.gt(), 0.1, epsilon = 1e-15);
    assert_abs_diff_eq!(p.wt(), 0.2 / 3.0, epsilon = 1e-15);
}

#[test]
fn white_noise_and_ghz_limits() {
    let noise = build_rho(&pt(0.0, 0.0));
    assert!(noise.max_abs_diff(&ComplexMatrix::identity(8).scale(0.125)) < 1e-16);
    let ghz = build_rho(&pt(1.0, 0.0));
    assert!(ghz.max_abs_diff(&StateVector::ghz().projector()) < 1e-15);
}

#[test]
fn pptes_point_matches_integer_matrix() {
    let scaled = build_rho(&pt(0.2, 0.2)).scale(120.0);
    assert!(scaled.max_abs_diff(&pptes_integer_matrix()) <= 1e-13);
}

#[test]
fn marginal_examples() {
    let (r23, r1) = marginals(&pt(0.0, 0.0)).unwrap();
    assert!(r23.max_abs_diff(&ComplexMatrix::identity(4).scale(0.25)) < 1e-16);
    assert!(r1.max_abs_diff(&ComplexMatrix::identity(2).scale(0.5)) < 1e-16);

    let (r23, _) = marginals(&pt(1.0, 0.0)).unwrap();
    assert!(r23.max_abs_diff(&ComplexMatrix::diagonal(&[0.5, 0.0, 0.0, 0.5])) < 1e-16);

    let (_, r1) = marginals(&pt(0.0, 1.0)).unwrap();
    assert!(r1.max_abs_diff(&ComplexMatrix::diagonal(&[2.0 / 3.0, 1.0 / 3.0])) < 1e-15);
}

#[test]
fn partial_transpose_examples() {
    let pt0 = partial_transpose_1(&pt(0.0, 0.0)).unwrap();
    assert!(pt0.max_abs_diff(&ComplexMatrix::identity(8).scale(0.125)) < 1e-16);
    let ghz = hermitian_eigenvalues(&partial_transpose_1(&pt(1.0, 0.0)).unwrap()).unwrap();
    assert_abs_diff_eq!(ghz.min(), -0.5, epsilon = 1e-14);
    let pptes = hermitian_eigenvalues(&partial_transpose_1(&pt(0.2, 0.2)).unwrap()).unwrap();
    assert!(pptes.min() >= 0.0);
}

#[test]
fn reduction_examples() {
    let (a, b) = reduction_matrices(&pt(0.0, 0.0)).unwrap();
    assert!(a.max_abs_diff(&ComplexMatrix::identity(8).scale(0.125)) < 1e-16);
    assert!(b.max_abs_diff(&ComplexMatrix::identity(8).scale(0.375)) < 1e-16);

    let p = pt(0.3, 0.3);
    let (a, _) = reduction_matrices(&p).unwrap();
    let sa = hermitian_eigenvalues(&a).unwrap();
    let st = hermitian_eigenvalues(&partial_transpose_1(&p).unwrap()).unwrap();
    assert!(sa.max_abs_diff(&st) < 1e-12);

    let (_, b) = reduction_matrices(&pt(0.0, 1.0)).unwrap();
    let sb = hermitian_eigenvalues(&b).unwrap();
    assert_abs_diff_eq!(sb.min(), -8.0 * SQRT_2 / 24.0, epsilon = 1e-14);
}

#[test]
fn reshuffle_24_examples() {
    let r = reshuffle_24(&pt(0.0, 0.0)).unwrap();
    for row in 0..4 {
        for col in 0..16 {
            let expected = if (row == 0 || row == 3) && [0, 5, 10, 15].contains(&col) {
                0.125
            } else {
                0.0
            };
            assert_abs_diff_eq!(r.get(row, col).re, expected, epsilon = 1e-16);
        }
    }
    let r = reshuffle_24(&pt(1.0, 0.0)).unwrap();
    let big: Vec<_> = r
        .entries()
        .iter()
        .filter(|z| (z.norm() - 0.5).abs() < 1e-15)
        .collect();
    assert_eq!(big.len(), 4);
    assert_eq!(r.entries().iter().filter(|z| z.norm() > 1e-15).count(), 4);
}

#[test]
fn reshuffle_222_examples() {
    let r = reshuffle_222(&pt(0.0, 0.0)).unwrap();
    let mut expected = ComplexMatrix::zeros(8, 8);
    for (i, j) in [
        (0, 0),
        (0, 3),
        (3, 0),
        (3, 3),
        (4, 4),
        (4, 7),
        (7, 4),
        (7, 7),
    ] {
        expected[(i, j)].re = 0.125;
    }
    assert!(r.max_abs_diff(&expected) < 1e-16);
    let r = reshuffle_222(&pt(1.0, 0.0)).unwrap();
    assert_eq!(
        r.entries()
            .iter()
            .filter(|z| (z.re - 0.5).abs() < 1e-15)
            .count(),
        4
    );
    assert_eq!(r.entries().iter().filter(|z| z.norm() > 1e-15).count(), 4);
}

#[test]
fn closed_form_spectrum_examples() {
    let s = closed_form_spectra(&pt(0.0, 0.0));
    assert!(s[&SpectrumLabel::Rho].max_abs_diff(&Spectrum::from_unsorted(vec![0.125; 8])) < 1e-16);

    let w = (24.0 * SQRT_2 - 9.0) / 119.0;
    let s = closed_form_spectra(&pt(0.0, w));
    assert_abs_diff_eq!(s[&SpectrumLabel::RhoT1].min(), 0.0, epsilon = 1e-15);

    let s = closed_form_spectra(&pt(0.0, 1.0));
    let expected = Spectrum::from_unsorted(vec![4.0 / 9.0, 0.0, 0.0, 0.0]);
    assert!(s[&SpectrumLabel::FlipProduct23].max_abs_diff(&expected) < 1e-15);
}

#[test]
fn example_state_matrices() {
    let c21 = example_state(ExampleState::Class21).unwrap();
    assert_abs_diff_eq!(c21.trace().re, 1.0, epsilon = 1e-15);
    // uniform mixture of |0>|Bell> on each qubit position
    let zero = StateVector::basis(2, 0);
    let bell = StateVector::bell();
    let a = zero.kron(&bell).projector();
    let b = permute_qubits(&a, [1, 0, 2]).unwrap();
    let c = permute_qubits(&a, [2, 0, 1]).unwrap();
    let mix = (&(&a + &b) + &c).scale(1.0 / 3.0);
    assert!(mix.max_abs_diff(&c21) < 1e-15);
    let pt = partial_transpose_first(&c21).unwrap();
    assert!(hermitian_eigenvalues(&pt).unwrap().min() < -1e-6);

    let c28 = example_state(ExampleState::Class28 { a: 2.0 }).unwrap();
    assert_abs_diff_eq!(c28.trace().re, 1.0, epsilon = 1e-15);
    assert!(
        hermitian_eigenvalues(&partial_transpose_first(&c28).unwrap())
            .unwrap()
            .min()
            >= -1e-10
    );
    assert!(example_state(ExampleState::Class28 { a: 0.0 }).is_err());
    assert!(example_state(ExampleState::Class28 { a: -1.0 }).is_err());

    let p = example_state(ExampleState::Pptes).unwrap();
    assert!(p.max_abs_diff(&build_rho(&SimplexPoint::new(0.2, 0.2).unwrap())) < 1e-16);
}

#[test]
fn product_vectors_factor() {
    let phi = StateVector::product(&[plus(), plus(), plus(), minus(), minus(), minus()]);
    let f = phi.qubit_factors().unwrap();
    assert_eq!(f.len(), 6);
    assert!(StateVector::ghz().qubit_factors().is_none());
    assert!(StateVector::w().qubit_factors().is_none());
}

proptest! {
    #[test]
    fn template_matches_mixture(p in simplex()) {
        prop_assert!(build_rho(&p).max_abs_diff(&mixture_rho(&p)) <= 1e-15);
    }

    #[test]
    fn invariant_under_qubit_permutations(p in simplex()) {
        let rho = build_rho(&p);
        for q in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            prop_assert!(permute_qubits(&rho, q).unwrap().max_abs_diff(&rho) < 1e-16);
        }
    }

    #[test]
    fn traces_are_one(p in simplex()) {
        let (r23, r1) = marginals(&p).unwrap();
        for m in [build_rho(&p), r23, r1] {
            prop_assert!((m.trace().re - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn numeric_spectra_match_closed_forms(p in simplex()) {
        let cf = closed_form_spectra(&p);
        let (r23, r1) = marginals(&p).unwrap();
        let (_, b) = reduction_matrices(&p).unwrap();
        let checks = [
            (SpectrumLabel::Rho, build_rho(&p)),
            (SpectrumLabel::Rho23, r23),
            (SpectrumLabel::Rho1, r1),
            (SpectrumLabel::RhoT1, partial_transpose_1(&p).unwrap()),
            (SpectrumLabel::Rho1I23, b),
        ];
        for (label, m) in checks {
            let s = hermitian_eigenvalues(&m).unwrap();
            prop_assert!(s.max_abs_diff(&cf[&label]) <= 1e-10, "{label}");
        }
    }

    #[test]
    fn reshuffles_permute_entries(p in simplex()) {
        let rho = build_rho(&p);
        let purity = rho.trace_product(&rho).re;
        let r = reshuffle_24(&p).unwrap();
        prop_assert!((r.frobenius_norm().powi(2) - purity).abs() < 1e-14);
        let sorted = |m: &ComplexMatrix| {
            let mut v: Vec<f64> = m.entries().iter().map(|z| z.re).collect();
            v.sort_by(f64::total_cmp);
            v
        };
        prop_assert_eq!(sorted(&reshuffle_222(&p).unwrap()), sorted(&rho));
        prop_assert!(singular_values(&r).unwrap().len() == 4);
    }
}
