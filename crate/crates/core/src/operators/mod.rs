//! Stiff operators, their designated inner products and shifted solvers.
//!
//! Every operator `A` exposes `apply` and a shifted-resolvent solve of
//! `(γ - τA) x = w`. The time step `τ` is passed to the solve rather than
//! baked into the operator so one assembled operator serves every step size.

mod cg;
mod dense;
mod diagonal;
mod dst;
mod laplacian;
mod space;
mod wave;

pub use cg::conjugate_gradient;
pub use dense::DenseOperator;
pub use diagonal::DiagonalOperator;
pub use dst::{SineTransform, DIRECT_DST_MAX};
pub use laplacian::{assemble_fd_laplacian, assemble_fd_laplacian_1d, CsrMatrix, FdLaplacian};
pub use space::{InnerProductForm, InnerProductSpace};
pub use wave::{make_wave_block_operator, WaveBlockOperator};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OperatorKind {
    Diagonal,
    SparseSymmetric,
    WaveBlock,
    Dense,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverMethod {
    /// Exact elementwise division; used by diagonal operators regardless of
    /// the configured method.
    DirectElementwise,
    /// Exact solve in the tensor sine eigenbasis of the grid Laplacian.
    FastSineTransform,
    ConjugateGradient,
}

impl SolverMethod {
    pub fn name(self) -> &'static str {
        match self {
            SolverMethod::DirectElementwise => "direct",
            SolverMethod::FastSineTransform => "dst",
            SolverMethod::ConjugateGradient => "cg",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub method: SolverMethod,
    /// Relative residual tolerance for iterative solvers.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            method: SolverMethod::FastSineTransform,
            tolerance: 1e-12,
            max_iterations: 10_000,
        }
    }
}

impl SolverConfig {
    pub fn cg(tolerance: f64, max_iterations: usize) -> Self {
        Self {
            method: SolverMethod::ConjugateGradient,
            tolerance,
            max_iterations,
        }
    }
}

/// A (discretized) generator `A` of a contraction semigroup.
pub trait LinearOperator<T: Scalar>: Send + Sync {
    fn dim(&self) -> usize;

    fn kind(&self) -> OperatorKind;

    /// `y = A x`
    fn apply(&self, x: &[T], y: &mut [T]);

    /// Solves `(γ - τA) x = w`.
    fn solve_shifted(&self, gamma: f64, tau: f64, w: &[T], cfg: &SolverConfig) -> Result<Vec<T>>;

    /// The inner product in which `A` is dissipative.
    fn designated_space(&self) -> InnerProductSpace;

    /// Cheap upper estimate of `‖A‖` in the designated norm.
    fn norm_estimate(&self) -> f64;

    fn apply_vec(&self, x: &[T]) -> Vec<T> {
        let mut y = vec![T::zero(); self.dim()];
        self.apply(x, &mut y);
        y
    }
}

pub(crate) fn check_shift(gamma: f64, tau: f64) -> Result<()> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::Domain(format!(
            "shift gamma must be positive, got {gamma}"
        )));
    }
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(Error::Domain(format!(
            "time step tau must be positive, got {tau}"
        )));
    }
    Ok(())
}

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}
