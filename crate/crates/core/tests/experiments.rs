use proptest::prelude::*;
use reskrylov::experiments::{
    estimate_rate, grid_independence_ratio, run_convergence, schrodinger_initial_data,
    wave_initial_data, wave_profile, wave_profile_samples, ConvergenceRecord, Method, ProblemKind,
    ProblemSetup,
};
use reskrylov::{Error, SolverConfig};

fn synthetic(
    errors: impl Fn(usize) -> f64,
    ns: std::ops::RangeInclusive<usize>,
) -> Vec<ConvergenceRecord> {
    ns.map(|n| ConvergenceRecord {
        method: Method::ResolventKrylov,
        problem: ProblemKind::Schrodinger,
        dim: 8,
        size: 8,
        tau: 1.0,
        gamma: 1.0,
        q: 1,
        n,
        error: errors(n),
    })
    .collect()
}

#[test]
fn schrodinger_coefficients_decay() {
    // sizes keep |ψ_k| above the rounding floor over the fitted window
    for (q, n) in [(1, 4096), (2, 1024), (3, 256)] {
        let psi = schrodinger_initial_data(n, q).unwrap();
        // the profile has period π, so odd wave numbers vanish
        let pts: Vec<(f64, f64)> = (n / 8..n / 2)
            .step_by(2)
            .map(|k| ((k as f64).ln(), psi[n / 2 + k].norm().ln()))
            .collect();
        let m = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
        let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
            / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
        assert!(slope <= -(2.0 * q as f64 + 1.0), "q={q} slope {slope}");
    }
}

#[test]
fn wave_data_is_normalized() {
    let g = wave_profile_samples(3, 1);
    assert!((g[0] - (3.0f64 / 16.0).powi(4)).abs() < 1e-16);
    assert_eq!(wave_profile(0.0, 0.3, 2), 0.0);
    let y = wave_initial_data(31, 2).unwrap();
    let op = reskrylov::experiments::wave_operator(31).unwrap();
    let space = reskrylov::LinearOperator::<f64>::designated_space(&op);
    assert!((space.norm(&y) - 1.0).abs() < 1e-10);
    assert!(wave_initial_data(1, 2).is_err());
}

#[test]
fn smallest_wave_grid_is_monotone_after_five() {
    let ns: Vec<usize> = (1..=40).collect();
    let recs =
        run_convergence(&ProblemSetup::wave_fd(15, 2), &ns, Method::ResolventKrylov).unwrap();
    for w in recs.windows(2).filter(|w| w[0].n >= 5) {
        assert!(
            w[1].error <= w[0].error,
            "n={} {} -> {}",
            w[1].n,
            w[0].error,
            w[1].error
        );
    }
}

#[test]
fn krylov_rates_follow_smoothness() {
    for q in [2usize, 4] {
        let schr = run_convergence(
            &ProblemSetup::schrodinger(4096, q),
            &(1..=60).collect::<Vec<_>>(),
            Method::ResolventKrylov,
        )
        .unwrap();
        let s = estimate_rate(&schr, (10, 60)).unwrap().slope;
        assert!(s <= -(q as f64) / 2.0 + 0.3, "schrodinger q={q} slope {s}");
        let wave = run_convergence(
            &ProblemSetup::wave_fd(31, q),
            &(1..=40).collect::<Vec<_>>(),
            Method::ResolventKrylov,
        )
        .unwrap();
        let s = estimate_rate(&wave, (10, 40)).unwrap().slope;
        assert!(s <= -(q as f64) / 2.0 + 0.3, "wave q={q} slope {s}");
    }
}

#[test]
fn smoothness_ordering_and_euler_comparison() {
    let at40: Vec<f64> = [2, 4, 6, 8]
        .iter()
        .map(|&q| {
            run_convergence(
                &ProblemSetup::schrodinger(4096, q),
                &[40],
                Method::ResolventKrylov,
            )
            .unwrap()[0]
                .error
        })
        .collect();
    assert!(at40.windows(2).all(|w| w[1] <= w[0]), "{at40:?}");

    let setup = ProblemSetup::schrodinger(4096, 4);
    let ns: Vec<usize> = (20..=60).step_by(5).collect();
    let k = run_convergence(&setup, &ns, Method::ResolventKrylov).unwrap();
    let e = run_convergence(&setup, &ns, Method::ImplicitEuler).unwrap();
    for (a, b) in k.iter().zip(&e) {
        assert!(a.error < b.error, "n={}", a.n);
    }
}

#[test]
fn dst_and_cg_agree_on_wave() {
    let ns: Vec<usize> = (1..=20).collect();
    let dst = run_convergence(&ProblemSetup::wave_fd(15, 2), &ns, Method::ResolventKrylov).unwrap();
    let mut cg = ProblemSetup::wave_fd(15, 2);
    cg.solver = SolverConfig::cg(1e-12, 10_000);
    let cg = run_convergence(&cg, &ns, Method::ResolventKrylov).unwrap();
    for (a, b) in dst.iter().zip(&cg) {
        assert!((a.error - b.error).abs() <= 1e-8, "n={}", a.n);
    }
}

#[test]
fn reruns_are_bit_identical() {
    let ns: Vec<usize> = (1..=30).collect();
    let a = run_convergence(&ProblemSetup::wave_fd(31, 2), &ns, Method::ResolventKrylov).unwrap();
    let b = run_convergence(&ProblemSetup::wave_fd(31, 2), &ns, Method::ResolventKrylov).unwrap();
    assert!(a
        .iter()
        .zip(&b)
        .all(|(x, y)| x.error.to_bits() == y.error.to_bits()));
}

#[test]
fn rate_fit_error_paths() {
    let short = synthetic(|n| 1.0 / n as f64, 1..=3);
    assert!(matches!(
        estimate_rate(&short, (1, 3)),
        Err(Error::InsufficientPoints { .. })
    ));
    let flat = synthetic(|_| 1e-17, 1..=10);
    assert!(matches!(
        estimate_rate(&flat, (1, 10)),
        Err(Error::DegenerateInput(_))
    ));
    let constant = synthetic(|_| 0.3, 1..=10);
    assert!(estimate_rate(&constant, (1, 10)).unwrap().slope.abs() < 1e-12);
}

#[test]
fn ratio_ignores_rounding_level_errors() {
    let a = synthetic(|n| 1.0 / n as f64, 1..=10);
    let b = synthetic(|n| if n > 5 { 1e-14 } else { 2.0 / n as f64 }, 1..=10);
    assert_eq!(grid_independence_ratio(&[a, b]), 2.0);
}

proptest! {
    #[test]
    fn power_law_slope_is_recovered(p in 0.1f64..6.0, c in 1e-6f64..1e3, lo in 2usize..20) {
        let recs = synthetic(|n| c * (n as f64).powf(-p), lo..=lo + 30);
        let est = estimate_rate(&recs, (lo, lo + 30)).unwrap();
        prop_assert!((est.slope + p).abs() < 1e-10);
        prop_assert!(est.residual < 1e-10);
    }
}
