use num_complex::Complex64;

use super::space::InnerProductSpace;
use super::{check_len, check_shift, LinearOperator, OperatorKind, SolverConfig};
use crate::error::{Error, Result};
use crate::linalg;

/// Diagonal operator with complex entries, e.g. the Fourier symbol of a
/// pseudospectral discretization.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalOperator {
    entries: Vec<Complex64>,
}

impl DiagonalOperator {
    pub fn new(entries: Vec<Complex64>) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }
}

impl LinearOperator<Complex64> for DiagonalOperator {
    fn dim(&self) -> usize {
        self.entries.len()
    }

    fn kind(&self) -> OperatorKind {
        OperatorKind::Diagonal
    }

    fn apply(&self, x: &[Complex64], y: &mut [Complex64]) {
        linalg::for_each_chunk_mut(y, |off, c| {
            for (k, yi) in c.iter_mut().enumerate() {
                *yi = self.entries[off + k] * x[off + k];
            }
        });
    }

    /// Elementwise `x_k = w_k / (γ - τ a_k)`; the configured method is ignored.
    fn solve_shifted(
        &self,
        gamma: f64,
        tau: f64,
        w: &[Complex64],
        _cfg: &SolverConfig,
    ) -> Result<Vec<Complex64>> {
        check_shift(gamma, tau)?;
        check_len(self.dim(), w.len())?;
        let mut x = vec![Complex64::new(0.0, 0.0); w.len()];
        for (k, (xi, &wi)) in x.iter_mut().zip(w).enumerate() {
            let den = Complex64::new(gamma, 0.0) - self.entries[k] * tau;
            if den.norm() == 0.0 {
                return Err(Error::Domain(format!(
                    "shift {gamma} is an eigenvalue of tau*A"
                )));
            }
            *xi = wi / den;
        }
        Ok(x)
    }

    fn designated_space(&self) -> InnerProductSpace {
        InnerProductSpace::euclidean(self.dim(), 1.0)
    }

    fn norm_estimate(&self) -> f64 {
        self.entries.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }
}
