//! Resolvent Krylov subspace approximation of `e^{τA} v` and `φ_j(τA) v` for
//! stiff generators `A`.
//!
//! The approximation space is `K_n((γ - τA)^{-1}, v)`, built by a rational
//! Arnoldi process in the operator's own inner product; the Galerkin
//! projection `H = Vᴴ (τA) V` is exponentiated densely. Convergence is
//! sublinear in `n` with a rate set by the smoothness of `v`, and does not
//! deteriorate as the spatial grid is refined.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod experiments;
pub mod krylov;
pub mod linalg;
pub mod matfun;
pub mod operators;
pub mod reference;
pub mod scalar;
pub mod smoothing;
pub mod verify;

pub use error::{Error, Result};
pub use krylov::{
    check_rational_exactness, krylov_phi_approx, rational_arnoldi, RationalKrylovDecomposition,
};
pub use operators::{InnerProductSpace, LinearOperator, SolverConfig, SolverMethod};
pub use scalar::Scalar;

pub use num_complex::Complex64;
