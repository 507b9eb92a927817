use proptest::prelude::*;
use reskrylov::operators::{assemble_fd_laplacian_1d, DiagonalOperator};
use reskrylov::smoothing::{
    apply_smoother, h_coefficients, h_coefficients_alternating_sum, smoother_norm_estimate,
    smoothing_rate_study, MAX_Q,
};
use reskrylov::{Complex64, LinearOperator, SolverConfig};

const NS: [usize; 5] = [4, 16, 64, 256, 1024];

fn profile(q: usize) -> Vec<f64> {
    let h = 1.0 / 256.0;
    (1..=255)
        .map(|i| {
            let x = i as f64 * h;
            (x * (1.0 - x)).powi(2 * q as i32)
        })
        .collect()
}

/// `Σ h_k (√n/(√n - a))^k` for a scalar `a`.
fn scalar_smoother(a: Complex64, n: usize, q: usize) -> Complex64 {
    let r = (n as f64).sqrt();
    let z = r / (r - a);
    h_coefficients(q)
        .unwrap()
        .iter()
        .map(|(k, h)| z.powi(k as i32) * h as f64)
        .sum()
}

#[test]
fn coefficients_are_exact_for_all_q() {
    for q in 1..=MAX_Q {
        let c = h_coefficients(q).unwrap();
        assert_eq!(c.sum(), 1, "q={q}");
        assert!(c.is_holomorphic(), "q={q}");
        assert_eq!(c, h_coefficients_alternating_sum(q).unwrap());
        let t = c.defect_taylor(q + 1);
        assert!(t[..q].iter().all(|&x| x == 0));
        assert_ne!(t[q], 0);
    }
    assert!(h_coefficients(0).is_err());
    assert!(h_coefficients(MAX_Q + 1).is_err());
}

#[test]
fn kernel_vector_is_fixed() {
    let op = DiagonalOperator::new(vec![Complex64::new(0.0, 0.0), Complex64::new(-3.0, 1.0)]);
    let v = [Complex64::new(1.0, 2.0), Complex64::new(0.0, 0.0)];
    for q in 1..=6 {
        let out = apply_smoother(&op, &v, 9, q, &SolverConfig::default()).unwrap();
        assert_eq!(out[1], Complex64::new(0.0, 0.0));
        assert!((out[0] - v[0]).norm() < 1e-13);
    }
}

#[test]
fn scaled_error_is_bounded_by_leading_defect() {
    // the scaled error tends to the q-th defect coefficient from below
    let lap = assemble_fd_laplacian_1d(255).unwrap();
    let space = LinearOperator::<f64>::designated_space(&lap);
    for q in 1..=3 {
        let lead = h_coefficients(q).unwrap().defect_taylor(q + 1)[q].unsigned_abs() as f64;
        let study =
            smoothing_rate_study(&lap, &space, &profile(q), q, &NS, &SolverConfig::default())
                .unwrap();
        assert!(
            study
                .iter()
                .all(|s| s.scaled_error > 0.0 && s.scaled_error <= lead),
            "q={q} {study:?}"
        );
        if q == 1 {
            let max = study.iter().map(|s| s.scaled_error).fold(0.0, f64::max);
            let min = study
                .iter()
                .map(|s| s.scaled_error)
                .fold(f64::INFINITY, f64::min);
            assert!(max <= 10.0 * min);
        }
    }
}

#[test]
fn smoother_norm_is_bounded() {
    let lap = assemble_fd_laplacian_1d(255).unwrap();
    let space = LinearOperator::<f64>::designated_space(&lap);
    let start = vec![1.0; 255];
    for q in 1..=3 {
        let norms: Vec<f64> = NS
            .iter()
            .map(|&n| {
                smoother_norm_estimate(&lap, &space, &start, n, q, 50, &SolverConfig::default())
                    .unwrap()
            })
            .collect();
        assert!(
            norms.iter().all(|&x| x > 0.0 && x <= 1.0 + 1e-12),
            "q={q} {norms:?}"
        );
        if q == 1 {
            let max = norms.iter().cloned().fold(0.0, f64::max);
            let min = norms.iter().cloned().fold(f64::INFINITY, f64::min);
            assert!(max <= 10.0 * min, "{norms:?}");
        }
    }
}

#[test]
fn degenerate_study_is_rejected() {
    let op = DiagonalOperator::new(vec![Complex64::new(0.0, 0.0); 3]);
    let v = vec![Complex64::new(1.0, 0.0); 3];
    let space = op.designated_space();
    assert!(smoothing_rate_study(&op, &space, &v, 2, &[4], &SolverConfig::default()).is_err());
    assert!(apply_smoother(&op, &v, 0, 2, &SolverConfig::default()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matches_scalar_rational_function(re in -50.0f64..0.0, im in -50.0f64..50.0, n in 1usize..2000, q in 1usize..=6) {
        let a = Complex64::new(re, im);
        let op = DiagonalOperator::new(vec![a]);
        let v = [Complex64::new(0.6, -0.8)];
        let got = apply_smoother(&op, &v, n, q, &SolverConfig::default()).unwrap()[0];
        let want = scalar_smoother(a, n, q) * v[0];
        // the alternating sum amplifies rounding by Σ|h_k|
        let cond: f64 = h_coefficients(q).unwrap().iter().map(|(_, h)| h.unsigned_abs() as f64).sum();
        prop_assert!((got - want).norm() <= 1e-14 * cond * want.norm().max(1.0), "{got} {want}");
    }

    #[test]
    fn real_negative_spectrum_stays_in_unit_interval(lambda in 0.0f64..1e6, n in 1usize..5000, q in 1usize..=3) {
        let h = scalar_smoother(Complex64::new(-lambda, 0.0), n, q);
        prop_assert!(h.im.abs() < 1e-15);
        prop_assert!(h.re >= -1e-14 && h.re <= 1.0 + 1e-14);
    }
}
