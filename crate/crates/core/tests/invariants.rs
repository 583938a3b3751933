use comrade_core::dense::{dense_eigenvalues_in, symmetric_tridiagonal_eigenvalues};
use comrade_core::experiments::{
    accuracy_row, all_real, classify, growth_row, loglog_slope, separation_row, solve, Algorithm,
    SeparationSettings, SolveOptions,
};
use comrade_core::structured_qr::eigenvalues_with_stats;
use comrade_core::*;

fn p(n: usize, a: f64, k: f64) -> Parameters {
    Parameters::new(n, a, k).unwrap()
}

fn fast(n: usize, a: f64, k: f64) -> Spectrum {
    eigenvalues_default(&comrade_direct(&p(n, a, k)).unwrap()).unwrap()
}

#[test]
fn generators_track_dense_shadow_for_fifty_steps() {
    let c = comrade_direct(&p(25, 1.3, 0.6)).unwrap();
    let mut h = GeneratorHessenberg::from_comrade(&c);
    let mut shadow = h.to_dense();
    assert_eq!(shadow.max_abs_diff_c(&c.to_dense().transpose().to_complex()), 0.0);
    let norm = shadow.frobenius_norm_c();
    for step in 0..50 {
        let shift = h.wilkinson_shift();
        let rotations = h.qr_step_recorded(shift);
        assert_eq!(rotations.len(), 24);
        for g in &rotations {
            for j in 0..25 {
                let (a, b) = g.apply_left(shadow[(g.k, j)], shadow[(g.k + 1, j)]);
                shadow[(g.k, j)] = a;
                shadow[(g.k + 1, j)] = b;
            }
        }
        for g in &rotations {
            for i in 0..25 {
                let (a, b) = g.apply_right(shadow[(i, g.k)], shadow[(i, g.k + 1)]);
                shadow[(i, g.k)] = a;
                shadow[(i, g.k + 1)] = b;
            }
        }
        let diff = h.to_dense().max_abs_diff_c(&shadow);
        assert!(diff <= 1e-13 * norm, "step {step}: {diff:e}");
        // the shadow stays Hessenberg up to rounding
        for i in 2..25 {
            for j in 0..i - 1 {
                assert!(shadow[(i, j)].norm() <= 1e-13 * norm);
            }
        }
    }
}

#[test]
fn trace_is_conserved() {
    for (n, a, k) in [(80, 0.5, 0.5), (150, 2.5, 1.0), (60, -0.9, 3.0)] {
        let c = comrade_direct(&p(n, a, k)).unwrap();
        let s = eigenvalues_default(&c).unwrap();
        let sum: Complex64 = s.eigenvalues.iter().sum();
        assert!((sum.re - c.trace()).abs() <= 1e-12 * c.trace().abs(), "{n} {a} {k}");
        assert!(sum.im.abs() <= 1e-12 * c.trace().abs());
    }
}

#[test]
fn spectra_are_closed_under_conjugation() {
    for (a, k) in [(3.0, 3.0), (4.0, 1.5), (2.5, 5.0)] {
        let s = fast(90, a, k);
        assert!(s.max_abs_imag() > 1e-3, "expected complex zeros at {a} {k}");
        assert!(s.conjugate_defect() <= 1e-10 * s.max_abs(), "{a} {k}");
    }
}

#[test]
fn x_and_c_share_their_spectrum() {
    for (n, a, k) in [(40, 0.3, 2.0), (120, 1.7, 0.8), (200, 2.0, 2.0)] {
        let params = p(n, a, k);
        let x = build_x(&params).unwrap().to_dense();
        let c = comrade_direct(&params).unwrap().to_dense();
        let sx = dense_qr_eigenvalues(&x, Precision::Double, false).unwrap();
        let sc = dense_qr_eigenvalues(&c, Precision::Double, false).unwrap();
        let d = matched_distance(&sx.eigenvalues, &sc.eigenvalues);
        assert!(d <= 1e-10 * x.frobenius_norm(), "{n}: {d:e}");
    }
}

#[test]
fn b_times_b_inverse_is_identity() {
    for n in [1, 7, 64] {
        let pen = build_pencil(&p(n, 0.4, 1.9)).unwrap();
        for j in 0..n {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            let back = pen.mul_b(&apply_b_inverse(&e));
            for (i, v) in back.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((v - expect).abs() <= 1e-14, "n={n} ({i},{j})");
            }
        }
    }
}

#[test]
fn interior_columns_of_a_sum_to_zero_exactly() {
    for a in [-1.0, -0.5, 0.0, 0.5, 1.0, 2.5, 4.0] {
        for k in [-0.5, 0.0, 1.5, 3.0] {
            let m = build_pencil(&p(30, a, k)).unwrap().a_dense();
            for j in 1..28 {
                let s: f64 = (0..30).map(|i| m[(i, j)]).sum();
                assert_eq!(s, 0.0, "alpha={a} kappa={k} column {j}");
            }
        }
    }
}

#[test]
fn structured_and_dense_agree() {
    let s = fast(50, 1.0, 1.0);
    let c = comrade_direct(&p(50, 1.0, 1.0)).unwrap().to_dense();
    let d = dense_qr_eigenvalues(&c, Precision::Double, false).unwrap();
    assert!(matched_distance(&s.eigenvalues, &d.eigenvalues) <= 1e-11);
}

#[test]
fn work_is_linear_per_step() {
    let c = comrade_direct(&p(300, 0.5, 0.5)).unwrap();
    let (_, stats) = eigenvalues_with_stats(&c, 1e-15, 30).unwrap();
    assert!(stats.qr_steps < 6 * 300, "{stats:?}");
    assert!(stats.rotations < 300 * 300 * 3);
}

#[test]
fn ill_conditioned_upper_triangular() {
    let m = DenseMatrix::from_rows(&[vec![1.0, 1e6], vec![0.0, 2.0]]);
    let s = dense_qr_eigenvalues(&m, Precision::Double, false).unwrap();
    for k in condition_numbers(&m, &s) {
        assert!(k > 1e5, "{k}");
    }
}

#[test]
fn conditioning_grows_with_parameters() {
    let worst = |a: f64| {
        let c = comrade_direct(&p(100, a, a)).unwrap().to_dense();
        let s = dense_qr_eigenvalues(&c, Precision::DoubleDouble, false).unwrap();
        condition_numbers(&c, &s).into_iter().fold(0.0, f64::max)
    };
    let (low, high) = (worst(0.0), worst(5.0));
    assert!(high >= 1e3 * low, "{low:e} {high:e}");
}

#[test]
fn bounds_dominate_measured_errors() {
    let opts = SolveOptions::default();
    for a in [0.0, 1.0, 2.5, 4.0] {
        let r = accuracy_row(60, a, opts).unwrap();
        assert!(r.err_fast <= 100.0 * r.bound_sym, "{r:?}");
        assert!(r.err_dense <= 100.0 * r.bound_unsym, "{r:?}");
    }
    let lo = accuracy_row(100, 0.0, opts).unwrap();
    let hi = accuracy_row(100, 5.0, opts).unwrap();
    assert!(lo.err_fast <= 1e-11, "{lo:?}");
    assert!(hi.bound_sym >= 1e6 * lo.bound_sym, "{lo:?} {hi:?}");
    assert!(hi.err_dense > 10.0 * lo.err_dense, "{lo:?} {hi:?}");
}

/// Roots of a cubic with three sign changes on a grid, by bisection.
fn cubic_roots(coef: [f64; 4], lo: f64, hi: f64) -> Vec<f64> {
    let f = |x: f64| ((coef[0] * x + coef[1]) * x + coef[2]) * x + coef[3];
    let mut roots = Vec::new();
    let steps = 4000;
    for s in 0..steps {
        let (mut a, mut b) = (
            lo + (hi - lo) * s as f64 / steps as f64,
            lo + (hi - lo) * (s + 1) as f64 / steps as f64,
        );
        if f(a) == 0.0 {
            roots.push(a);
            continue;
        }
        if f(a).signum() == f(b).signum() {
            continue;
        }
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if f(a).signum() == f(m).signum() {
                a = m;
            } else {
                b = m;
            }
        }
        roots.push(0.5 * (a + b));
    }
    roots
}

#[test]
fn laguerre_oracle_small_cases() {
    for alpha in [-0.5, 0.0, 3.25] {
        assert_eq!(laguerre_nodes(1, alpha).unwrap(), vec![alpha + 1.0]);
    }
    let nodes = laguerre_nodes(3, 0.0).unwrap();
    let roots = cubic_roots([1.0, -9.0, 18.0, -6.0], 0.0, 10.0);
    assert_eq!(roots.len(), 3);
    for (x, r) in nodes.iter().zip(&roots) {
        assert!((x - r).abs() < 1e-13);
    }
    let sym = symmetric_tridiagonal_eigenvalues(&[2.0, 2.0], &[1.0]).unwrap();
    assert_eq!(sym, vec![1.0, 3.0]);
}

#[test]
fn laguerre_nodes_are_positive_and_increasing() {
    for alpha in [-0.9, 0.0, 4.0] {
        let x = laguerre_nodes(120, alpha).unwrap();
        assert!(x[0] > 0.0);
        assert!(x.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn dense_double_double_matches_laguerre() {
    let params = p(40, 1.5, 0.0);
    let x = pencil::build_x_in::<DoubleDouble>(&params).unwrap().to_dense();
    let s = dense_eigenvalues_in(&x, false).unwrap();
    let nodes = laguerre_nodes(40, 1.5).unwrap();
    for (z, x) in s.eigenvalues.iter().zip(&nodes) {
        assert!((z.re - x).abs() <= 1e-13 * x);
    }
}

#[test]
fn separation_respects_parameter_symmetry() {
    let opts = SolveOptions::default();
    let n = 12;
    let row = separation_row(n, 3.0, SeparationSettings::default(), opts).unwrap();
    let b = row.kappa_boundary.expect("a transition inside the bracket");
    // swapping the roles of alpha and kappa leaves the polynomial unchanged
    for (a, k) in [(3.0, b - 0.01), (3.0, b + 0.01)] {
        assert_eq!(all_real(n, a, k, opts).unwrap(), all_real(n, k, a, opts).unwrap());
    }
    let below = all_real(n, b - 2e-3, 3.0, opts).unwrap();
    let above = all_real(n, b + 2e-3, 3.0, opts).unwrap();
    assert!(below && !above, "boundary {b}");
}

#[test]
fn separation_depends_on_degree() {
    let opts = SolveOptions::default();
    let s = SeparationSettings::default();
    let small = separation_row(10, 0.5, s, opts).unwrap().kappa_boundary.unwrap();
    let large = separation_row(200, 0.5, s, opts).unwrap().kappa_boundary.unwrap();
    assert!((small - large).abs() > 1e-2, "{small} {large}");
}

#[test]
fn growth_is_nearly_linear() {
    let ns = [50.0, 100.0, 200.0, 400.0];
    let opts = SolveOptions::default();
    for (a, k) in [(-1.0, -1.0), (0.0, 0.0), (2.0, 3.0), (5.0, 5.0), (-1.0, 5.0)] {
        let maxes: Vec<f64> = ns
            .iter()
            .map(|&n| growth_row(n as usize, a, k, opts).unwrap().max_real)
            .collect();
        let slope = loglog_slope(&ns, &maxes);
        assert!((slope - 1.0).abs() <= 0.15, "{a} {k}: {slope}");
    }
    for n in [50, 200, 800] {
        let g = growth_row(n, 2.5, 0.0, opts).unwrap();
        assert!(g.max_abs_imag <= 1e-10 * g.max_real.max(1.0));
    }
}

#[test]
fn classification_is_recomputable_from_rows() {
    let s = solve(&p(70, 3.0, 2.0), Algorithm::Fast, SolveOptions::default()).unwrap();
    let c = classify(s.clone());
    let tol = 1e-10 * s.eigenvalues.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let recomputed = s.eigenvalues.iter().all(|z| z.im.abs() <= tol);
    assert_eq!(c.all_real, recomputed);
}
