use approx::assert_abs_diff_eq;
use num_complex::Complex64;
use proptest::prelude::*;
use qsep_core::linalg::*;
use qsep_core::states::{build_rho, marginals, reshuffle_222, reshuffle_24};
use qsep_core::SimplexPoint;

fn pt(g: f64, w: f64) -> SimplexPoint {
    SimplexPoint::new(g, w).unwrap()
}

fn random_matrix(rows: usize, cols: usize, seed: &[f64]) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |i, j| {
        let k = 2 * (i * cols + j);
        Complex64::new(seed[k % seed.len()], seed[(k + 1) % seed.len()])
    })
}

fn random_hermitian(n: usize, seed: &[f64]) -> ComplexMatrix {
    let a = random_matrix(n, n, seed);
    (&a + &a.adjoint()).scale(0.5)
}

#[test]
fn identity_over_eight_has_uniform_spectrum() {
    let spectrum = hermitian_eigenvalues(&ComplexMatrix::identity(8).scale(0.125)).unwrap();
    assert_eq!(spectrum.len(), 8);
    for v in spectrum.values() {
        assert_abs_diff_eq!(*v, 0.125, epsilon = 1e-15);
    }
}

#[test]
fn pure_ghz_spectrum() {
    let spectrum = hermitian_eigenvalues(&build_rho(&pt(1.0, 0.0))).unwrap();
    assert_abs_diff_eq!(spectrum.values()[0], 1.0, epsilon = 1e-12);
    for v in &spectrum.values()[1..] {
        assert_abs_diff_eq!(*v, 0.0, epsilon = 1e-12);
    }
}

#[test]
fn spectrum_at_interior_point_matches_linear_forms() {
    let (g, w) = (0.3, 0.4);
    let mut expected = vec![
        (3.0 + 21.0 * g - 3.0 * w) / 24.0,
        (3.0 - 3.0 * g + 21.0 * w) / 24.0,
    ];
    expected.extend([(3.0 - 3.0 * g - 3.0 * w) / 24.0; 6]);
    let expected = Spectrum::from_unsorted(expected);
    let spectrum = hermitian_eigenvalues(&build_rho(&pt(g, w))).unwrap();
    assert!(spectrum.max_abs_diff(&expected) < 1e-12);
}

#[test]
fn complex_hermitian_eigenvalues() {
    // [[2, i], [-i, 2]] has eigenvalues 3 and 1
    let mut a = ComplexMatrix::identity(2).scale(2.0);
    a[(0, 1)] = Complex64::new(0.0, 1.0);
    a[(1, 0)] = Complex64::new(0.0, -1.0);
    let spectrum = hermitian_eigenvalues(&a).unwrap();
    assert_abs_diff_eq!(spectrum.values()[0], 3.0, epsilon = 1e-14);
    assert_abs_diff_eq!(spectrum.values()[1], 1.0, epsilon = 1e-14);
}

#[test]
fn rejects_non_hermitian() {
    let mut a = ComplexMatrix::identity(3);
    a[(0, 2)] = Complex64::new(1e-6, 0.0);
    match hermitian_eigenvalues(&a) {
        Err(qsep_core::Error::NotHermitian { asymmetry }) => assert!(asymmetry >= 1e-6),
        other => panic!("expected rejection, got {other:?}"),
    }
}

#[test]
fn rejects_oversized() {
    assert!(hermitian_eigenvalues(&ComplexMatrix::identity(65)).is_err());
    assert!(singular_values(&ComplexMatrix::zeros(17, 17)).is_err());
}

#[test]
fn zero_matrix_singular_values() {
    let s = singular_values(&ComplexMatrix::zeros(4, 16)).unwrap();
    assert_eq!(s.values(), &[0.0; 4]);
}

#[test]
fn white_noise_reshuffle_singular_values() {
    let s = singular_values(&reshuffle_24(&pt(0.0, 0.0)).unwrap()).unwrap();
    let expected = [0.5 / 2f64.sqrt(), 0.0, 0.0, 0.0];
    for (a, b) in s.values().iter().zip(expected) {
        assert_abs_diff_eq!(*a, b, epsilon = 1e-15);
    }
}

#[test]
fn ghz_reshuffle_singular_values() {
    let s = singular_values(&reshuffle_24(&pt(1.0, 0.0)).unwrap()).unwrap();
    for v in s.values() {
        assert_abs_diff_eq!(*v, 0.5, epsilon = 1e-15);
    }
}

#[test]
fn gram_route_agrees_away_from_zero() {
    let r = reshuffle_24(&pt(0.3, 0.3)).unwrap();
    let a = singular_values(&r).unwrap();
    let b = gram_singular_values(&r).unwrap();
    assert!(a.max_abs_diff(&b) < 1e-8);
}

#[test]
fn density_matrices_have_unit_trace_norm() {
    for (g, w) in [(0.0, 0.0), (0.2, 0.7), (1.0, 0.0), (0.0, 1.0)] {
        assert_abs_diff_eq!(
            trace_norm(&build_rho(&pt(g, w))).unwrap(),
            1.0,
            epsilon = 1e-12
        );
    }
}

#[test]
fn reshuffle_222_trace_norms() {
    assert_abs_diff_eq!(
        trace_norm(&reshuffle_222(&pt(0.0, 0.0)).unwrap()).unwrap(),
        0.5,
        epsilon = 1e-14
    );
    assert_abs_diff_eq!(
        trace_norm(&reshuffle_222(&pt(1.0, 0.0)).unwrap()).unwrap(),
        2.0,
        epsilon = 1e-14
    );
}

#[test]
fn psd_sqrt_examples() {
    let id = ComplexMatrix::identity(4);
    assert!(psd_sqrt(&id, 1e-10).unwrap().max_abs_diff(&id) < 1e-14);

    let b = psd_sqrt(&ComplexMatrix::diagonal(&[4.0, 1.0, 0.0, 0.0]), 1e-10).unwrap();
    assert!(b.max_abs_diff(&ComplexMatrix::diagonal(&[2.0, 1.0, 0.0, 0.0])) < 1e-14);

    let (r23, _) = marginals(&pt(0.0, 1.0)).unwrap();
    let s = psd_sqrt(&r23, 1e-10).unwrap();
    assert!(s.matmul(&s).max_abs_diff(&r23) < 1e-9);
    assert!(s.is_hermitian());
}

#[test]
fn psd_sqrt_rejects_negative() {
    match psd_sqrt(&ComplexMatrix::diagonal(&[1.0, -1e-6]), 1e-10) {
        Err(qsep_core::Error::NegativeEigenvalue { value }) => {
            assert_abs_diff_eq!(value, -1e-6, epsilon = 1e-18)
        }
        other => panic!("expected rejection, got {other:?}"),
    }
}

#[test]
fn ranks_of_family_members() {
    assert_eq!(
        rank_with_tolerance(&build_rho(&pt(0.3, 0.3)), 1e-10).unwrap(),
        8
    );
    assert_eq!(
        rank_with_tolerance(&build_rho(&pt(1.0, 0.0)), 1e-10).unwrap(),
        1
    );
    assert_eq!(
        rank_with_tolerance(&build_rho(&pt(0.5, 0.5)), 1e-10).unwrap(),
        2
    );
}

#[test]
fn identity_permutation_is_noop() {
    let rho = build_rho(&pt(0.2, 0.2));
    assert_eq!(permute_indices(&rho, &IDENTITY).unwrap(), rho);
}

#[test]
fn malformed_permutations_rejected() {
    let rho = build_rho(&pt(0.2, 0.2));
    assert!(permute_indices(&rho, &[0, 1, 2, 3, 4, 4]).is_err());
    assert!(permute_indices(&rho, &[0, 1, 2, 3, 4]).is_err());
    assert!(permute_indices(&rho, &[0, 1, 2, 3, 4, 6]).is_err());
}

#[test]
fn partial_trace_of_product() {
    let a = ComplexMatrix::diagonal(&[0.25, 0.75]);
    let b = ComplexMatrix::diagonal(&[0.5, 0.5, 0.0, 0.0]);
    let ab = a.kron(&b);
    assert!(partial_trace(&ab, 3, &[1, 2]).max_abs_diff(&a) < 1e-15);
    assert!(partial_trace(&ab, 3, &[0]).max_abs_diff(&b) < 1e-15);
}

fn perm6() -> impl Strategy<Value = [usize; 6]> {
    Just([0usize, 1, 2, 3, 4, 5])
        .prop_shuffle()
        .prop_map(|v| [v[0], v[1], v[2], v[3], v[4], v[5]])
}

fn perm_matrix(n: usize, perm: &[usize]) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |i, j| {
        Complex64::new(if perm[i] == j { 1.0 } else { 0.0 }, 0.0)
    })
}

proptest! {
    #[test]
    fn eigenvalue_sum_equals_trace(seed in prop::collection::vec(-1.0f64..1.0, 16..64), n in 1usize..9) {
        let a = random_hermitian(n, &seed);
        let spectrum = hermitian_eigenvalues(&a).unwrap();
        prop_assert!((spectrum.sum() - a.trace().re).abs() < 1e-10);
        prop_assert!(spectrum.values().windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn eigenvectors_reconstruct(seed in prop::collection::vec(-1.0f64..1.0, 16..64), n in 1usize..9) {
        let a = random_hermitian(n, &seed);
        let e = hermitian_eigen(&a).unwrap();
        let d = ComplexMatrix::diagonal(e.values.values());
        let back = e.vectors.matmul(&d).matmul(&e.vectors.adjoint());
        prop_assert!(back.max_abs_diff(&a) < 1e-10);
    }

    #[test]
    fn singular_values_of_adjoint(seed in prop::collection::vec(-1.0f64..1.0, 16..64), r in 1usize..9, c in 1usize..9) {
        let a = random_matrix(r, c, &seed);
        let s = singular_values(&a).unwrap();
        let t = singular_values(&a.adjoint()).unwrap();
        prop_assert!(s.max_abs_diff(&t) < 1e-12);
    }

    #[test]
    fn trace_norm_permutation_invariant(
        seed in prop::collection::vec(-1.0f64..1.0, 16..64),
        u in Just((0..8).collect::<Vec<usize>>()).prop_shuffle(),
        v in Just((0..8).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let a = random_matrix(8, 8, &seed);
        let pa = perm_matrix(8, &u).matmul(&a).matmul(&perm_matrix(8, &v));
        prop_assert!((trace_norm(&a).unwrap() - trace_norm(&pa).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn psd_sqrt_round_trip(seed in prop::collection::vec(-1.0f64..1.0, 16..64), n in 1usize..9) {
        let b = random_matrix(n, n, &seed);
        let a = b.matmul(&b.adjoint()).hermitian_part();
        let s = psd_sqrt(&a, 1e-10).unwrap();
        prop_assert!(s.matmul(&s).max_abs_diff(&a) < 1e-9);
    }

    #[test]
    fn permutation_composition(seed in prop::collection::vec(-1.0f64..1.0, 16..64), pi in perm6(), sigma in perm6()) {
        let a = random_matrix(8, 8, &seed);
        let lhs = permute_indices(&permute_indices(&a, &sigma).unwrap(), &pi).unwrap();
        let rhs = permute_indices(&a, &compose(&pi, &sigma)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
