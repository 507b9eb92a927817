use std::sync::Arc;

use nalgebra::DMatrix;
use proptest::prelude::*;
use reskrylov::experiments::{
    run_convergence, schrodinger_initial_data, schrodinger_operator, Method, ProblemSetup,
};
use reskrylov::matfun::phi_scalar;
use reskrylov::operators::{assemble_fd_laplacian, DiagonalOperator, InnerProductSpace};
use reskrylov::reference::{exact_diagonal_phi, exact_wave_dst, implicit_euler};
use reskrylov::{linalg, Complex64, LinearOperator, SolverConfig};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn wave_propagation_conserves_energy(y0 in prop::collection::vec(-1.0f64..1.0, 2 * 15 * 15), tau in 0.0f64..20.0) {
        let space = InnerProductSpace::wave_energy(Arc::new(assemble_fd_laplacian(15).unwrap()));
        let y = exact_wave_dst(15, tau, &y0).unwrap().vector;
        let (a, b) = (space.norm(&y0), space.norm(&y));
        prop_assert!((a - b).abs() <= 1e-11 * a.max(1e-300));
    }

    #[test]
    fn diagonal_phi_is_componentwise(tau in 0.0f64..3.0, j in 0usize..4) {
        let entries: Vec<Complex64> = (0..12).map(|k| Complex64::new(-(k as f64), 2.0 * k as f64)).collect();
        let v: Vec<Complex64> = (0..12).map(|k| Complex64::new(1.0, k as f64 * 0.1)).collect();
        let out = exact_diagonal_phi(&entries, tau, &v, j).unwrap().vector;
        for ((&a, &x), &y) in entries.iter().zip(&v).zip(&out) {
            let want = phi_scalar(a * tau, j) * x;
            prop_assert!((y - want).norm() <= 1e-14 * want.norm().max(1.0));
        }
    }
}

#[test]
fn unitary_flow_preserves_norm() {
    let op = schrodinger_operator(64).unwrap();
    let v = schrodinger_initial_data(64, 2).unwrap();
    let out = exact_diagonal_phi(op.entries(), 0.7, &v, 0).unwrap().vector;
    assert!((linalg::norm2(&out) - linalg::norm2(&v)).abs() <= 1e-13);
}

#[test]
fn zero_time_returns_scaled_input() {
    let v = vec![Complex64::new(2.0, -1.0); 3];
    let entries = vec![Complex64::new(-1.0, 0.0); 3];
    let out = exact_diagonal_phi(&entries, 0.0, &v, 2).unwrap().vector;
    assert!(out.iter().all(|&x| (x - v[0] / 2.0).norm() < 1e-15));
    let y0: Vec<f64> = (0..32).map(|i| i as f64).collect();
    assert_eq!(exact_wave_dst(4, 0.0, &y0).unwrap().vector, y0);
}

#[test]
fn wave_dst_matches_dense_exponential() {
    let lap = assemble_fd_laplacian(4).unwrap();
    let d = lap.matrix().to_dense();
    let mut block = DMatrix::<f64>::zeros(32, 32);
    block.view_mut((0, 16), (16, 16)).fill_with_identity();
    block.view_mut((16, 0), (16, 16)).copy_from(&d);
    let y0: Vec<f64> = (0..32).map(|i| ((i * 7 % 11) as f64 - 5.0) / 5.0).collect();
    let want = reskrylov::matfun::expm_dense(&block.scale(0.3)).unwrap()
        * nalgebra::DVector::from_vec(y0.clone());
    let got = exact_wave_dst(4, 0.3, &y0).unwrap().vector;
    let err = got
        .iter()
        .zip(want.iter())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    assert!(err <= 1e-10 * want.amax(), "{err}");
}

#[test]
fn euler_converges_on_every_problem() {
    let cfg = SolverConfig::default();
    let op = schrodinger_operator(64).unwrap();
    let v = schrodinger_initial_data(64, 2).unwrap();
    let exact = exact_diagonal_phi(op.entries(), 0.02, &v, 0)
        .unwrap()
        .vector;
    let err = |n| {
        linalg::norm2(&linalg::sub(
            &exact,
            &implicit_euler(&op, &v, 0.02, n, &cfg).unwrap(),
        ))
    };
    assert!(err(1024) <= err(16));

    let wave = run_convergence(
        &ProblemSetup::wave_fd(15, 2),
        &[16, 1024],
        Method::ImplicitEuler,
    )
    .unwrap();
    assert!(wave[1].error <= wave[0].error);

    let zero = DiagonalOperator::new(vec![Complex64::new(0.0, 0.0); 4]);
    let v = vec![Complex64::new(1.0, 1.0); 4];
    assert_eq!(implicit_euler(&zero, &v, 1.0, 7, &cfg).unwrap(), v);
    assert!(implicit_euler(&zero, &v, 1.0, 0, &cfg).is_err());
    assert_eq!(zero.dim(), 4);
}
