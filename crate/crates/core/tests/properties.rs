use comrade_core::experiments::{classify, solve, Algorithm, SolveOptions};
use comrade_core::*;
use proptest::prelude::*;

fn params() -> impl Strategy<Value = Parameters> {
    (1usize..40, -0.95f64..3.0, -0.95f64..3.0).prop_map(|(n, a, k)| Parameters::new(n, a, k).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn structured_matches_dense_oracle(p in params()) {
        let fast = solve(&p, Algorithm::Fast, SolveOptions::default()).unwrap();
        let oracle = solve(&p, Algorithm::DenseDd, SolveOptions::default()).unwrap();
        let scale = oracle.max_abs().max(1.0);
        prop_assert!(matched_distance(&fast.eigenvalues, &oracle.eigenvalues) <= 1e-11 * scale);
    }

    #[test]
    fn zeros_certified_by_recurrence(p in params()) {
        let s = solve(&p, Algorithm::Fast, SolveOptions::default()).unwrap();
        for z in &s.eigenvalues {
            prop_assert!(scaled_residual(&p, *z).unwrap() <= 1e-8, "{z}");
        }
    }

    #[test]
    fn trace_and_sum_of_zeros(p in params()) {
        let c = comrade_direct(&p).unwrap();
        let s = eigenvalues_default(&c).unwrap();
        let sum: Complex64 = s.eigenvalues.iter().sum();
        let scale = c.diag.iter().map(|d| d.abs()).sum::<f64>().max(1.0);
        prop_assert!((sum.re - c.trace()).abs() <= 1e-12 * scale);
    }

    #[test]
    fn direct_and_symmetrized_comrade_agree(p in params()) {
        let a = symmetrize(&build_x(&p).unwrap(), &p).unwrap();
        let b = comrade_direct(&p).unwrap();
        for (x, y) in a.spike.iter().zip(&b.spike).chain(a.offdiag.iter().zip(&b.offdiag)) {
            prop_assert!((x - y).abs() <= 1e-13 * x.abs().max(y.abs()).max(1.0));
        }
    }

    #[test]
    fn axes_give_real_zeros(n in 1usize..80, a in -1.0f64..5.0, zero_alpha in any::<bool>()) {
        let (alpha, kappa) = if zero_alpha { (0.0, a) } else { (a, 0.0) };
        let s = solve(&Parameters::new(n, alpha, kappa).unwrap(), Algorithm::Fast, SolveOptions::default()).unwrap();
        prop_assert!(classify(s).all_real);
    }

    #[test]
    fn series_and_recurrence_agree(
        n in 1usize..30,
        a in -0.9f64..3.0,
        k in -0.9f64..3.0,
        re in -20.0f64..20.0,
        im in -20.0f64..20.0,
    ) {
        let p = Parameters::new(n, a, k).unwrap();
        let x = Complex64::new(re, im);
        let rec = eval_recurrence(&p, x, Precision::DoubleDouble).unwrap();
        let ser = eval_series(&p, x, Precision::DoubleDouble).unwrap();
        let value = rec.value * 2f64.powi(rec.exponent);
        prop_assert!((value - ser).norm() <= 1e-20 * rec.scale * 2f64.powi(rec.exponent));
    }

    #[test]
    fn double_double_round_trips(a in -1e10f64..1e10, b in -1e10f64..1e10) {
        let x = DoubleDouble::from_f64(a);
        let y = DoubleDouble::from_f64(b);
        prop_assert_eq!(((x + y) - y).to_f64(), a);
        prop_assume!(b != 0.0);
        let q = (x / y) * y - x;
        prop_assert!(q.to_f64().abs() <= 1e-30 * a.abs().max(1e-300));
    }

    #[test]
    fn hessenberg_reduction_preserves_trace(n in 3usize..25, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let m = DenseMatrix::from_fn(n, |_, _| rng.gen_range(-1.0..1.0));
        let h = hessenberg_reduce(&m, false);
        prop_assert!((h.trace() - m.trace()).abs() <= 1e-12 * m.frobenius_norm());
        for i in 2..n {
            for j in 0..i - 1 {
                prop_assert_eq!(h[(i, j)], 0.0);
            }
        }
    }
}
