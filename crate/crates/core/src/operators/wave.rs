use std::sync::Arc;

use super::laplacian::FdLaplacian;
use super::space::InnerProductSpace;
use super::{check_len, check_shift, LinearOperator, OperatorKind, SolverConfig};
use crate::error::Result;
use crate::scalar::Scalar;

/// First-order form of the wave equation, `A = [[0, I], [Δ, 0]]`, acting on
/// block vectors `[u; u']`.
#[derive(Debug, Clone)]
pub struct WaveBlockOperator {
    laplacian: Arc<FdLaplacian>,
}

pub fn make_wave_block_operator(laplacian: Arc<FdLaplacian>) -> WaveBlockOperator {
    WaveBlockOperator { laplacian }
}

impl WaveBlockOperator {
    pub fn laplacian(&self) -> &Arc<FdLaplacian> {
        &self.laplacian
    }

    /// Size of one block.
    pub fn block_len(&self) -> usize {
        self.laplacian.n()
    }
}

impl<T: Scalar> LinearOperator<T> for WaveBlockOperator {
    fn dim(&self) -> usize {
        2 * self.laplacian.n()
    }

    fn kind(&self) -> OperatorKind {
        OperatorKind::WaveBlock
    }

    fn apply(&self, x: &[T], y: &mut [T]) {
        let n = self.block_len();
        let (y1, y2) = y.split_at_mut(n);
        y1.copy_from_slice(&x[n..]);
        self.laplacian.matrix().apply(&x[..n], y2);
    }

    /// Schur-complement reduction to one SPD solve:
    /// `(γ² - τ²Δ) x1 = γ b1 + τ b2`, then `x2 = (γ x1 - b1)/τ`.
    fn solve_shifted(&self, gamma: f64, tau: f64, w: &[T], cfg: &SolverConfig) -> Result<Vec<T>> {
        check_shift(gamma, tau)?;
        check_len(LinearOperator::<T>::dim(self), w.len())?;
        let n = self.block_len();
        let (b1, b2) = w.split_at(n);
        let rhs: Vec<T> = b1
            .iter()
            .zip(b2)
            .map(|(&p, &q)| p.scale(gamma) + q.scale(tau))
            .collect();
        let x1 = self
            .laplacian
            .solve_spd_shifted(gamma * gamma, tau * tau, &rhs, cfg)?;
        let inv_tau = 1.0 / tau;
        let mut x = x1.clone();
        x.extend(
            x1.iter()
                .zip(b1)
                .map(|(&a, &b)| (a.scale(gamma) - b).scale(inv_tau)),
        );
        Ok(x)
    }

    fn designated_space(&self) -> InnerProductSpace {
        InnerProductSpace::wave_energy(self.laplacian.clone())
    }

    /// `max ω = sqrt(-λ_min)`, the energy-norm of `A`.
    fn norm_estimate(&self) -> f64 {
        LinearOperator::<f64>::norm_estimate(self.laplacian.as_ref()).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::assemble_fd_laplacian;
    use nalgebra::{DMatrix, DVector};

    fn dense_block(op: &WaveBlockOperator) -> DMatrix<f64> {
        let n = op.block_len();
        let lap = op.laplacian().matrix().to_dense();
        let mut a = DMatrix::zeros(2 * n, 2 * n);
        a.view_mut((0, n), (n, n))
            .copy_from(&DMatrix::identity(n, n));
        a.view_mut((n, 0), (n, n)).copy_from(&lap);
        a
    }

    #[test]
    fn apply_moves_blocks() {
        let op = make_wave_block_operator(Arc::new(assemble_fd_laplacian(3).unwrap()));
        let v1: Vec<f64> = (0..9).map(|k| k as f64).collect();
        let mut x = v1.clone();
        x.extend(vec![0.0; 9]);
        let y = op.apply_vec(&x);
        let mut lv = vec![0.0; 9];
        op.laplacian().matrix().apply(&v1, &mut lv);
        assert!(y[..9].iter().all(|&a| a == 0.0));
        assert_eq!(&y[9..], &lv[..]);
    }

    #[test]
    fn shifted_solve_matches_dense_lu() {
        let op = make_wave_block_operator(Arc::new(assemble_fd_laplacian(2).unwrap()));
        let m = DMatrix::identity(8, 8) - dense_block(&op);
        let b: Vec<f64> = vec![1.0, -2.0, 0.5, 3.0, 0.25, 1.5, -1.0, 2.0];
        let expect = m.lu().solve(&DVector::from_vec(b.clone())).unwrap();
        let x = op
            .solve_shifted(1.0, 1.0, &b, &SolverConfig::default())
            .unwrap();
        for (a, e) in x.iter().zip(expect.iter()) {
            assert!((a - e).abs() < 1e-12 * expect.norm());
        }
    }
}
