//! Convergence experiments: problem setups, the error-curve runner, rate
//! fits and the grid-independence measure.

mod rate;
mod schrodinger;
mod wave;

pub use rate::{estimate_rate, grid_independence_ratio, RateEstimate, NOISE_FLOOR};
pub use schrodinger::{
    schrodinger_initial_data, schrodinger_operator, schrodinger_profile, schrodinger_samples,
    wave_numbers,
};
pub use wave::{wave_initial_data, wave_operator, wave_profile, wave_profile_samples};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::krylov::rational_arnoldi;
use crate::linalg;
use crate::operators::{InnerProductSpace, LinearOperator, SolverConfig, SolverMethod};
use crate::reference::{exact_diagonal_phi, exact_wave_dst_with, implicit_euler};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProblemKind {
    Schrodinger,
    WaveFd,
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProblemKind::Schrodinger => "schrodinger",
            ProblemKind::WaveFd => "wave_fd",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ResolventKrylov,
    ImplicitEuler,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ResolventKrylov => "resolvent_krylov",
            Method::ImplicitEuler => "implicit_euler",
        })
    }
}

/// One convergence experiment: `e^{τA} v` for a problem family at a given
/// resolution and smoothness index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProblemSetup {
    pub problem: ProblemKind,
    /// `N` (number of Fourier modes) or `d` (grid points per direction).
    pub size: usize,
    pub tau: f64,
    pub gamma: f64,
    pub q: usize,
    pub solver: SolverConfig,
}

impl ProblemSetup {
    /// `τ = 0.02`, `γ = 1`.
    pub fn schrodinger(n: usize, q: usize) -> Self {
        Self {
            problem: ProblemKind::Schrodinger,
            size: n,
            tau: 0.02,
            gamma: 1.0,
            q,
            solver: SolverConfig {
                method: SolverMethod::DirectElementwise,
                ..SolverConfig::default()
            },
        }
    }

    /// `τ = 0.5`, `γ = 1`, sine-transform solves.
    pub fn wave_fd(d: usize, q: usize) -> Self {
        Self {
            problem: ProblemKind::WaveFd,
            size: d,
            tau: 0.5,
            gamma: 1.0,
            q,
            solver: SolverConfig::default(),
        }
    }

    /// Dimension of the discretized operator.
    pub fn dim(&self) -> usize {
        match self.problem {
            ProblemKind::Schrodinger => self.size,
            ProblemKind::WaveFd => 2 * self.size * self.size,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.q == 0 {
            return Err(Error::Domain(
                "smoothness index q must be at least 1".into(),
            ));
        }
        if !(self.tau > 0.0) || !(self.gamma > 0.0) {
            return Err(Error::Domain("tau and gamma must be positive".into()));
        }
        if self.problem == ProblemKind::Schrodinger && !self.size.is_multiple_of(2) {
            return Err(Error::Domain(format!(
                "Schrödinger size must be even, got {}",
                self.size
            )));
        }
        Ok(())
    }
}

/// Error of one method at one `n` (subspace dimension or step count).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRecord {
    pub method: Method,
    pub problem: ProblemKind,
    pub dim: usize,
    pub size: usize,
    pub tau: f64,
    pub gamma: f64,
    pub q: usize,
    pub n: usize,
    pub error: f64,
}

/// Error curve of `method` against the exact solution, in the problem's
/// designated norm. Krylov curves reuse one decomposition of depth
/// `max(n_values)` and evaluate nested prefixes.
pub fn run_convergence(
    setup: &ProblemSetup,
    n_values: &[usize],
    method: Method,
) -> Result<Vec<ConvergenceRecord>> {
    setup.validate()?;
    let mut ns = n_values.to_vec();
    ns.sort_unstable();
    ns.dedup();
    if ns.first() == Some(&0) {
        return Err(Error::Domain("n values must be positive".into()));
    }
    if ns.is_empty() {
        return Ok(Vec::new());
    }
    let errors = match setup.problem {
        ProblemKind::Schrodinger => {
            let op = schrodinger_operator(setup.size)?;
            let v = schrodinger_initial_data(setup.size, setup.q)?;
            let exact = exact_diagonal_phi(op.entries(), setup.tau, &v, 0)?.vector;
            curve(&op, &op.designated_space(), &v, &exact, setup, &ns, method)?
        }
        ProblemKind::WaveFd => {
            let op = wave_operator(setup.size)?;
            let v = wave_initial_data(setup.size, setup.q)?;
            let exact = exact_wave_dst_with(op.laplacian(), setup.tau, &v)?.vector;
            let space = LinearOperator::<f64>::designated_space(&op);
            curve(&op, &space, &v, &exact, setup, &ns, method)?
        }
    };
    Ok(ns
        .iter()
        .zip(errors)
        .map(|(&n, error)| ConvergenceRecord {
            method,
            problem: setup.problem,
            dim: setup.dim(),
            size: setup.size,
            tau: setup.tau,
            gamma: setup.gamma,
            q: setup.q,
            n,
            error,
        })
        .collect())
}

fn curve<T, O>(
    op: &O,
    space: &InnerProductSpace,
    v: &[T],
    exact: &[T],
    setup: &ProblemSetup,
    ns: &[usize],
    method: Method,
) -> Result<Vec<f64>>
where
    T: Scalar,
    O: LinearOperator<T>,
{
    let results: Vec<Result<f64>> = match method {
        Method::ResolventKrylov => {
            let n_max = *ns.last().expect("non-empty");
            let dec = rational_arnoldi(op, space, v, n_max, setup.gamma, setup.tau, &setup.solver)?;
            // past a breakdown the subspace is invariant and the result exact
            linalg::map_range(ns.len(), |i| {
                let approx = dec.phi_apply_prefix(0, ns[i].min(dec.dim()))?;
                Ok(space.norm(&linalg::sub(exact, &approx)))
            })
        }
        Method::ImplicitEuler => linalg::map_range(ns.len(), |i| {
            let approx = implicit_euler(op, v, setup.tau, ns[i], &setup.solver)?;
            Ok(space.norm(&linalg::sub(exact, &approx)))
        }),
    };
    results.into_iter().collect()
}

/// Runs the Krylov curve for every setup (differing only in resolution) and
/// returns [`grid_independence_ratio`] over `n_values`.
pub fn grid_independence_check(setups: &[ProblemSetup], n_values: &[usize]) -> Result<f64> {
    if setups.len() < 2 {
        return Err(Error::InsufficientPoints {
            found: setups.len(),
            needed: 2,
        });
    }
    let curves: Vec<Vec<ConvergenceRecord>> = linalg::map_range(setups.len(), |i| {
        run_convergence(&setups[i], n_values, Method::ResolventKrylov)
    })
    .into_iter()
    .collect::<Result<_>>()?;
    Ok(grid_independence_ratio(&curves))
}
