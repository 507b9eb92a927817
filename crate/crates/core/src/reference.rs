//! Reference values: exact diagonal φ-functions, exact wave propagation in the
//! sine eigenbasis, and the implicit Euler baseline.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::matfun::{phi_dense_apply, phi_scalar, PhiIndex};
use crate::operators::{assemble_fd_laplacian, FdLaplacian, LinearOperator, SolverConfig};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReferenceMethod {
    DiagonalExact,
    DstExact,
    DenseEig,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceSolution<T> {
    pub vector: Vec<T>,
    pub method: ReferenceMethod,
    /// Relative accuracy bound of `vector`.
    pub certified_accuracy: f64,
}

/// `φ_j(τ diag(a)) v`, componentwise.
pub fn exact_diagonal_phi(
    entries: &[Complex64],
    tau: f64,
    v: &[Complex64],
    j: usize,
) -> Result<ReferenceSolution<Complex64>> {
    if entries.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: entries.len(),
            found: v.len(),
        });
    }
    PhiIndex::new(j)?;
    let vector = entries
        .iter()
        .zip(v)
        .map(|(&a, &x)| phi_scalar(a * tau, j) * x)
        .collect();
    Ok(ReferenceSolution {
        vector,
        method: ReferenceMethod::DiagonalExact,
        certified_accuracy: 1e-14,
    })
}

/// `e^{τA} y0` for the wave block operator on the `d × d` grid.
pub fn exact_wave_dst(d: usize, tau: f64, y0: &[f64]) -> Result<ReferenceSolution<f64>> {
    let lap = assemble_fd_laplacian(d)?;
    exact_wave_dst_with(&lap, tau, y0)
}

/// Like [`exact_wave_dst`] with a prebuilt Laplacian. Each sine mode with
/// frequency `ω = √(-λ)` is advanced by the rotation
/// `[[cos τω, sin τω / ω], [-ω sin τω, cos τω]]`.
pub fn exact_wave_dst_with(
    lap: &FdLaplacian,
    tau: f64,
    y0: &[f64],
) -> Result<ReferenceSolution<f64>> {
    let n = lap.n();
    if y0.len() != 2 * n {
        return Err(Error::DimensionMismatch {
            expected: 2 * n,
            found: y0.len(),
        });
    }
    if !(tau >= 0.0) {
        return Err(Error::Domain(format!(
            "tau must be non-negative, got {tau}"
        )));
    }
    if tau == 0.0 {
        return Ok(ReferenceSolution {
            vector: y0.to_vec(),
            method: ReferenceMethod::DstExact,
            certified_accuracy: 0.0,
        });
    }
    let mut u = y0[..n].to_vec();
    let mut w = y0[n..].to_vec();
    lap.transform(&mut u);
    lap.transform(&mut w);
    let lam = lap.eigenvalues();
    let mut modes: Vec<(f64, f64)> = u.into_iter().zip(w).collect();
    linalg::for_each_chunk_mut(&mut modes, |off, c| {
        for (i, (a, b)) in c.iter_mut().enumerate() {
            let omega = (-lam[off + i]).sqrt();
            let (s, co) = (tau * omega).sin_cos();
            let (a0, b0) = (*a, *b);
            *a = co * a0 + s / omega * b0;
            *b = -omega * s * a0 + co * b0;
        }
    });
    let (mut u, mut w): (Vec<f64>, Vec<f64>) = modes.into_iter().unzip();
    lap.transform(&mut u);
    lap.transform(&mut w);
    let scale = lap.inverse_scale();
    let mut vector: Vec<f64> = u.into_iter().map(|x| x * scale).collect();
    vector.extend(w.into_iter().map(|x| x * scale));
    Ok(ReferenceSolution {
        vector,
        method: ReferenceMethod::DstExact,
        certified_accuracy: 1e-12,
    })
}

/// `φ_j(τM) v` for a small dense matrix.
pub fn exact_dense_phi<T: Scalar>(
    matrix: &DMatrix<T>,
    tau: f64,
    v: &[T],
    j: usize,
) -> Result<ReferenceSolution<T>> {
    let h = matrix.map(|x| x.scale(tau));
    let out = phi_dense_apply(&h, PhiIndex::new(j)?, &DVector::from_column_slice(v))?;
    Ok(ReferenceSolution {
        vector: out.as_slice().to_vec(),
        method: ReferenceMethod::DenseEig,
        certified_accuracy: 1e-12,
    })
}

/// `(I - (τ/n) A)^{-n} v` by `n` uniform backward Euler steps.
pub fn implicit_euler<T, O>(
    op: &O,
    v: &[T],
    tau: f64,
    n: usize,
    cfg: &SolverConfig,
) -> Result<Vec<T>>
where
    T: Scalar,
    O: LinearOperator<T> + ?Sized,
{
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "implicit Euler steps",
            value: 0,
            lo: 1,
            hi: usize::MAX,
        });
    }
    let dt = tau / n as f64;
    let mut x = v.to_vec();
    for _ in 0..n {
        x = op.solve_shifted(1.0, dt, &x, cfg)?;
    }
    Ok(x)
}
