use std::sync::Arc;

use fredholm_chern::cyclic::{b0_op, big_b_op, cyclic_symmetrize, hochschild_b, lambda_op};
use fredholm_chern::fixtures::{
    random_cochain, random_graded_operator, random_instance, BaseAlgebra,
};
use fredholm_chern::fredholm::{GradedOperator, Parity};
use fredholm_chern::linalg::{schatten_norm, singular_values};
use fredholm_chern::omega::{d_op, supertrace};
use fredholm_chern::scenario::{CochainFile, Scenario};
use fredholm_chern::{c64, ComplexMatrix, CyclicCochain};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrix(max: usize) -> impl Strategy<Value = ComplexMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec((-5.0..5.0f64, -5.0..5.0f64), r * c).prop_map(move |v| {
            ComplexMatrix::from_row_major(r, c, v.into_iter().map(|(a, b)| c64(a, b)).collect())
                .unwrap()
        })
    })
}

fn base() -> impl Strategy<Value = BaseAlgebra> {
    prop::sample::select(BaseAlgebra::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn schatten_norms_decrease_in_p(m in matrix(5), p in 1.0..8.0f64, dq in 0.0..8.0f64) {
        let a = schatten_norm(&m, p).unwrap();
        let b = schatten_norm(&m, p + dq).unwrap();
        prop_assert!(b <= a * (1.0 + 1e-12));
        prop_assert!(schatten_norm(&m, f64::INFINITY).unwrap() <= b * (1.0 + 1e-12));
    }

    #[test]
    fn two_norm_is_frobenius(m in matrix(5)) {
        let frob: f64 = m.to_row_major().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        prop_assert!((schatten_norm(&m, 2.0).unwrap() - frob).abs() <= 1e-12 * frob.max(1.0));
    }

    #[test]
    fn adjoint_has_the_same_spectrum(m in matrix(5)) {
        let a = singular_values(&m).unwrap();
        let b = singular_values(&m.adjoint()).unwrap();
        for (x, y) in a.values().iter().zip(b.values()) {
            prop_assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn calculus_identities(seed in any::<u64>(), kind in 0usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fm = random_instance(&mut rng, kind);
        let even = random_graded_operator(&mut rng, fm.space(), Parity::Even);
        let odd = random_graded_operator(&mut rng, fm.space(), Parity::Odd);
        let d = |x: &GradedOperator| d_op(&fm, x).unwrap();
        prop_assert!(d(&d(&even)).max_abs() < 1e-12);
        prop_assert!(d(&d(&odd)).max_abs() < 1e-12);
        // d(θ₁θ₂) with θ₁ odd
        let lhs = d(&(&odd * &even));
        let rhs = &(&d(&odd) * &even) - &(&odd * &d(&even));
        prop_assert!((&lhs - &rhs).max_abs() < 1e-12);
        prop_assert!(supertrace(&fm, &d(&odd)).unwrap().norm() < 1e-12);
    }

    #[test]
    fn b_squares_to_zero(seed in any::<u64>(), kind in base(), n in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = Arc::new(kind.algebra());
        let psi = random_cochain(&mut rng, &alg, n);
        prop_assert!(hochschild_b(&hochschild_b(&psi)).max_abs() < 1e-12);
    }

    #[test]
    fn lambda_is_an_isometry_of_finite_order(seed in any::<u64>(), kind in base(), n in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = Arc::new(kind.algebra());
        let psi = random_cochain(&mut rng, &alg, n);
        let mut rotated = lambda_op(&psi);
        prop_assert_eq!(rotated.max_abs(), psi.max_abs());
        for _ in 0..n {
            rotated = lambda_op(&rotated);
        }
        prop_assert_eq!(rotated, psi.clone());
        let sym = cyclic_symmetrize(&psi);
        prop_assert!(lambda_op(&sym).sup_distance(&sym).unwrap() < 1e-12);
        let again = cyclic_symmetrize(&sym);
        let expect = sym.scaled(c64(n as f64 + 1.0, 0.0));
        prop_assert!(again.sup_distance(&expect).unwrap() < 1e-12 * expect.scale());
    }

    #[test]
    fn big_b_lands_in_cyclic_cochains(seed in any::<u64>(), kind in base(), n in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = Arc::new(kind.algebra().unitalize());
        let psi = random_cochain(&mut rng, &alg, n);
        let b = big_b_op(&psi).unwrap();
        prop_assert_eq!(b.degree(), n - 1);
        prop_assert!(lambda_op(&b).sup_distance(&b).unwrap() < 1e-12);
        prop_assert_eq!(b0_op(&psi).unwrap().degree(), n - 1);
    }

    #[test]
    fn cochain_files_round_trip_exactly(seed in any::<u64>(), kind in base(), n in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = Arc::new(kind.algebra());
        let psi: CyclicCochain = random_cochain(&mut rng, &alg, n)
            .scaled(c64(1.0 / 3.0, std::f64::consts::E));
        let text = CochainFile::from_cochain(&psi).to_json_string();
        let back = CochainFile::from_json_str(&text, "prop").unwrap().to_cochain(&alg, "prop").unwrap();
        prop_assert_eq!(back, psi);
    }

    #[test]
    fn scenario_files_round_trip_exactly(seed in any::<u64>(), kind in 0usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fm = random_instance(&mut rng, kind);
        let text = Scenario::to_file(&fm, None).to_json_string();
        let back = fredholm_chern::scenario::ScenarioFile::from_json_str(&text, "prop")
            .unwrap()
            .build()
            .unwrap();
        prop_assert_eq!(back.module, fm);
    }
}
