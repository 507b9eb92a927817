//! Seeded property suites: rational exactness, φ identities, smoothing
//! coefficients and dissipativity of the projected matrices.
//!
//! Every property yields a [`PropertyReport`] with the measured quantity and
//! the tolerance it is held to. A suite never stops at the first failure.

use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::experiments::{schrodinger_initial_data, schrodinger_operator, wave_initial_data};
use crate::krylov::{check_rational_exactness, rational_arnoldi, RationalKrylovDecomposition};
use crate::matfun::{factorial, norm2, phi_dense, phi_dense_apply, phi_series_oracle, PhiIndex};
use crate::operators::{
    assemble_fd_laplacian, make_wave_block_operator, DenseOperator, DiagonalOperator,
    InnerProductSpace, LinearOperator, SolverConfig,
};
use crate::scalar::Scalar;
use crate::smoothing::{apply_smoother, h_coefficients, h_coefficients_alternating_sum, MAX_Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Exactness,
    Phi,
    Smoothing,
    Dissipativity,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Exactness => "exactness",
            Suite::Phi => "phi",
            Suite::Smoothing => "smoothing",
            Suite::Dissipativity => "dissipativity",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub suite: Suite,
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl PropertyReport {
    /// Passes when `measured ≤ tolerance` (NaN fails).
    fn at_most(suite: Suite, name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Self {
            suite,
            name: name.into(),
            measured,
            tolerance,
            passed: measured <= tolerance,
        }
    }

    fn exact(suite: Suite, name: impl Into<String>, ok: bool) -> Self {
        Self {
            suite,
            name: name.into(),
            measured: if ok { 0.0 } else { 1.0 },
            tolerance: 0.0,
            passed: ok,
        }
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}] {}: {:e} (tol {:e})",
            if self.passed { "PASS" } else { "FAIL" },
            self.suite,
            self.name,
            self.measured,
            self.tolerance
        )
    }
}

pub const EXACTNESS_TOL: f64 = 1e-10;
pub const PHI_IDENTITY_TOL: f64 = 1e-11;
pub const PHI_ORACLE_TOL: f64 = 1e-13;
pub const STRUCTURE_TOL: f64 = 1e-12;
pub const PHI_BOUND_TOL: f64 = 1e-10;

/// Runs `suite` with every random choice drawn from `seed`.
pub fn run_suite(suite: Suite, seed: u64) -> Result<Vec<PropertyReport>> {
    match suite {
        Suite::Exactness => exactness_suite(seed, 20),
        Suite::Phi => phi_suite(seed),
        Suite::Smoothing => smoothing_suite(),
        Suite::Dissipativity => dissipativity_suite(seed),
        Suite::All => {
            let mut out = exactness_suite(seed, 20)?;
            out.extend(phi_suite(seed)?);
            out.extend(smoothing_suite()?);
            out.extend(dissipativity_suite(seed)?);
            Ok(out)
        }
    }
}

fn gaussian_vec<T: Scalar, R: Rng>(len: usize, rng: &mut R) -> Vec<T> {
    (0..len)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            T::from_parts(re, im)
        })
        .collect()
}

/// Gaussian complex matrix rescaled to spectral norm `target`.
pub fn random_matrix_with_norm<R: Rng>(m: usize, target: f64, rng: &mut R) -> DMatrix<Complex64> {
    let h = DMatrix::from_vec(m, m, gaussian_vec::<Complex64, _>(m * m, rng));
    let s = target / norm2(&h);
    h.map(|x| x * s)
}

/// `max_{k ≤ m-1} ‖(γ - τA)^{-k} v - β V (γ - H)^{-k} e_1‖ / ‖(γ - τA)^{-k} v‖`
/// for `count` random dissipative matrices of dimension 13..=100, `n = 12`.
pub fn exactness_suite(seed: u64, count: usize) -> Result<Vec<PropertyReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = SolverConfig::default();
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let dim = rng.random_range(13..=100);
        let op = DenseOperator::<Complex64>::random_dissipative(dim, &mut rng);
        let v = gaussian_vec::<Complex64, _>(dim, &mut rng);
        let gamma = rng.random_range(0.5..2.0);
        let tau = rng.random_range(0.1..1.0);
        let space = op.designated_space();
        let dec = rational_arnoldi(&op, &space, &v, 12, gamma, tau, &cfg)?;
        let mut worst: f64 = 0.0;
        for k in 1..dec.dim() {
            worst = worst.max(check_rational_exactness(&dec, &op, k)?);
        }
        out.push(PropertyReport::at_most(
            Suite::Exactness,
            format!("matrix {i} (dim {dim}) resolvent powers k < {}", dec.dim()),
            worst,
            EXACTNESS_TOL,
        ));
    }
    Ok(out)
}

fn rel(diff: &DMatrix<Complex64>, scale: &DMatrix<Complex64>) -> f64 {
    norm2(diff) / norm2(scale).max(1.0)
}

fn taylor_head(h: &DMatrix<Complex64>, j: usize, q: usize) -> DMatrix<Complex64> {
    let m = h.nrows();
    let mut power = DMatrix::<Complex64>::identity(m, m);
    let mut sum = DMatrix::<Complex64>::zeros(m, m);
    for k in 0..q {
        sum += power.map(|x| x / factorial(j + k));
        power = &power * h;
    }
    sum
}

/// Recurrence, Taylor-remainder and series-oracle checks on random 8×8
/// complex matrices.
pub fn phi_suite(seed: u64) -> Result<Vec<PropertyReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let m = 8;
    let ident = DMatrix::<Complex64>::identity(m, m);

    for &target in &[0.3, 1.0, 2.5, 5.0] {
        let h = random_matrix_with_norm(m, target, &mut rng);
        let phis: Vec<DMatrix<Complex64>> = (0..=10)
            .map(|j| phi_dense(&h, PhiIndex::new(j)?))
            .collect::<Result<_>>()?;

        let mut worst: f64 = 0.0;
        for k in 0..=6 {
            let lhs = &h * &phis[k + 1];
            let rhs = &phis[k] - ident.map(|x| x / factorial(k));
            worst = worst.max(rel(&(lhs - rhs), &phis[k]));
        }
        out.push(PropertyReport::at_most(
            Suite::Phi,
            format!("recurrence H phi_(k+1) = phi_k - I/k!, k <= 6, |H| = {target}"),
            worst,
            PHI_IDENTITY_TOL,
        ));

        let mut worst: f64 = 0.0;
        for j in 0..=6 {
            let mut hq = ident.clone();
            for q in 1..=4 {
                hq = &hq * &h;
                let lhs = &phis[j] - taylor_head(&h, j, q);
                let rhs = &hq * &phis[j + q];
                worst = worst.max(rel(&(lhs - rhs), &phis[j]));
            }
        }
        out.push(PropertyReport::at_most(
            Suite::Phi,
            format!("Taylor remainder H^q phi_(j+q), j <= 6, q <= 4, |H| = {target}"),
            worst,
            PHI_IDENTITY_TOL,
        ));

        let b = DVector::from_vec(gaussian_vec::<Complex64, _>(m, &mut rng));
        let mut worst: f64 = 0.0;
        for (j, phi) in phis.iter().enumerate().take(7) {
            let direct = phi_dense_apply(&h, PhiIndex::new(j)?, &b)?;
            let full = phi * &b;
            worst = worst.max((direct - &full).norm() / full.norm().max(1.0));
        }
        out.push(PropertyReport::at_most(
            Suite::Phi,
            format!("vector action matches full phi_j, j <= 6, |H| = {target}"),
            worst,
            PHI_IDENTITY_TOL,
        ));

        if target <= 1.0 {
            let mut worst: f64 = 0.0;
            for (j, phi) in phis.iter().enumerate().take(7) {
                let oracle = phi_series_oracle(&h, j, 60)?;
                worst = worst.max(norm2(&(phi - &oracle)) / norm2(&oracle));
            }
            out.push(PropertyReport::at_most(
                Suite::Phi,
                format!("series oracle agreement, j <= 6, |H| = {target}"),
                worst,
                PHI_ORACLE_TOL,
            ));
        }
    }
    Ok(out)
}

/// Exact coefficient properties for `q ≤ 12` and one scalar evaluation.
pub fn smoothing_suite() -> Result<Vec<PropertyReport>> {
    let mut out = Vec::new();
    let mut sums = true;
    let mut holo = true;
    let mut agree = true;
    for q in 1..=MAX_Q {
        let c = h_coefficients(q)?;
        sums &= c.sum() == 1;
        holo &= c.is_holomorphic();
        agree &= c == h_coefficients_alternating_sum(q)?;
    }
    out.push(PropertyReport::exact(
        Suite::Smoothing,
        format!("coefficients sum to 1, q <= {MAX_Q}"),
        sums,
    ));
    out.push(PropertyReport::exact(
        Suite::Smoothing,
        format!("defect vanishes to order exactly q, q <= {MAX_Q}"),
        holo,
    ));
    out.push(PropertyReport::exact(
        Suite::Smoothing,
        format!("closed and alternating-sum formulas agree, q <= {MAX_Q}"),
        agree,
    ));

    // a = -1, n = 4: 3(2/3)² - 2(2/3)³ = 20/27
    let op = DiagonalOperator::new(vec![Complex64::new(-1.0, 0.0)]);
    let v = [Complex64::new(1.0, 0.0)];
    let got = apply_smoother(&op, &v, 4, 2, &SolverConfig::default())?;
    out.push(PropertyReport::at_most(
        Suite::Smoothing,
        "scalar H_(4,2) at a = -1 equals 20/27",
        (got[0] - 20.0 / 27.0).norm(),
        1e-14,
    ));
    Ok(out)
}

/// Largest eigenvalue of the Hermitian part `(H + Hᴴ)/2`.
pub fn numerical_abscissa<T: Scalar>(h: &DMatrix<T>) -> f64 {
    if h.is_empty() {
        return f64::NEG_INFINITY;
    }
    let herm = (h + h.adjoint()).map(|x| x.scale(0.5));
    herm.symmetric_eigenvalues().max()
}

/// `max Re(Ay, y) / (‖Ay‖ ‖y‖)` over random `y`.
fn sampled_dissipativity<T, O, R>(op: &O, space: &InnerProductSpace, rng: &mut R) -> f64
where
    T: Scalar,
    O: LinearOperator<T>,
    R: Rng,
{
    (0..8)
        .map(|_| {
            let y = gaussian_vec::<T, _>(op.dim(), rng);
            let ay = op.apply_vec(&y);
            space.inner(&y, &ay).re() / (space.norm(&ay) * space.norm(&y))
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

fn projected_checks<T: Scalar>(
    label: &str,
    dec: &RationalKrylovDecomposition<T>,
    out: &mut Vec<PropertyReport>,
) -> Result<()> {
    let h = dec.projected();
    out.push(PropertyReport::at_most(
        Suite::Dissipativity,
        format!("{label}: basis orthonormality defect"),
        dec.orthonormality_defect(),
        STRUCTURE_TOL,
    ));
    out.push(PropertyReport::at_most(
        Suite::Dissipativity,
        format!("{label}: max Re(Hc, c) over unit c"),
        numerical_abscissa(h),
        STRUCTURE_TOL,
    ));
    let mut worst = f64::NEG_INFINITY;
    for j in 0..=4 {
        let p = phi_dense(h, PhiIndex::new(j)?)?;
        worst = worst.max(norm2(&p) - 1.0 / factorial(j));
    }
    out.push(PropertyReport::at_most(
        Suite::Dissipativity,
        format!("{label}: |phi_j(H)| - 1/j!, j <= 4"),
        worst,
        PHI_BOUND_TOL,
    ));
    Ok(())
}

/// Dissipativity of each operator in its designated inner product, and of
/// the projected matrices built from it.
pub fn dissipativity_suite(seed: u64) -> Result<Vec<PropertyReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = SolverConfig::default();
    let mut out = Vec::new();

    let lap = Arc::new(assemble_fd_laplacian(31)?);
    let wave = make_wave_block_operator(lap.clone());
    let wave_space = LinearOperator::<f64>::designated_space(&wave);
    let lap_space = LinearOperator::<f64>::designated_space(lap.as_ref());
    let schr = schrodinger_operator(256)?;
    let schr_space = schr.designated_space();
    let dense = DenseOperator::<Complex64>::random_dissipative(60, &mut rng);
    let dense_space = dense.designated_space();

    let samples = [
        (
            "wave d=31",
            sampled_dissipativity::<f64, _, _>(&wave, &wave_space, &mut rng),
        ),
        (
            "laplacian d=31",
            sampled_dissipativity::<f64, _, _>(lap.as_ref(), &lap_space, &mut rng),
        ),
        (
            "schrodinger N=256",
            sampled_dissipativity(&schr, &schr_space, &mut rng),
        ),
        (
            "random dense dim 60",
            sampled_dissipativity(&dense, &dense_space, &mut rng),
        ),
    ];
    for (label, value) in samples {
        out.push(PropertyReport::at_most(
            Suite::Dissipativity,
            format!("{label}: Re(Ay, y) / (|Ay| |y|)"),
            value,
            STRUCTURE_TOL,
        ));
    }

    let v = wave_initial_data(31, 2)?;
    let dec = rational_arnoldi(&wave, &wave_space, &v, 30, 1.0, 0.5, &cfg)?;
    projected_checks("wave d=31, n=30", &dec, &mut out)?;

    let v: Vec<f64> = (0..lap.n()).map(|_| rng.sample(StandardNormal)).collect();
    let dec = rational_arnoldi(lap.as_ref(), &lap_space, &v, 30, 1.0, 0.01, &cfg)?;
    projected_checks("laplacian d=31, n=30", &dec, &mut out)?;

    let v = schrodinger_initial_data(256, 2)?;
    let dec = rational_arnoldi(&schr, &schr_space, &v, 30, 1.0, 0.02, &cfg)?;
    projected_checks("schrodinger N=256, n=30", &dec, &mut out)?;

    let v = gaussian_vec::<Complex64, _>(60, &mut rng);
    let dec = rational_arnoldi(&dense, &dense_space, &v, 12, 1.0, 1.0, &cfg)?;
    projected_checks("random dense dim 60, n=12", &dec, &mut out)?;

    Ok(out)
}
