use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

use super::space::InnerProductSpace;
use super::{check_len, check_shift, LinearOperator, OperatorKind, SolverConfig};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Small dense operator with LU-based shifted solves. Used as a test bed for
/// the Krylov machinery.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator<T: Scalar> {
    matrix: DMatrix<T>,
}

impl<T: Scalar> DenseOperator<T> {
    pub fn new(matrix: DMatrix<T>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &DMatrix<T> {
        &self.matrix
    }

    /// Random matrix `A = S - B Bᴴ - δ I` with `S` skew-Hermitian, so that
    /// `Re (Ax, x) ≤ -δ ‖x‖²`.
    pub fn random_dissipative<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        let mut gauss = |s: f64| -> T {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            T::from_parts(re * s, im * s)
        };
        let s = 1.0 / (dim as f64).sqrt();
        let m = DMatrix::from_fn(dim, dim, |_, _| gauss(4.0 * s));
        let b = DMatrix::from_fn(dim, dim, |_, _| gauss(s));
        let skew = (&m - m.adjoint()).scale(0.5);
        let matrix = skew - &b * b.adjoint() - DMatrix::identity(dim, dim).scale(0.1);
        Self { matrix }
    }
}

impl<T: Scalar> LinearOperator<T> for DenseOperator<T> {
    fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    fn kind(&self) -> OperatorKind {
        OperatorKind::Dense
    }

    fn apply(&self, x: &[T], y: &mut [T]) {
        let r = &self.matrix * DVector::from_column_slice(x);
        y.copy_from_slice(r.as_slice());
    }

    fn solve_shifted(&self, gamma: f64, tau: f64, w: &[T], _cfg: &SolverConfig) -> Result<Vec<T>> {
        check_shift(gamma, tau)?;
        check_len(self.dim(), w.len())?;
        let n = self.dim();
        let shifted = DMatrix::<T>::identity(n, n).scale(gamma) - self.matrix.scale(tau);
        shifted
            .lu()
            .solve(&DVector::from_column_slice(w))
            .map(|x| x.as_slice().to_vec())
            .ok_or(Error::Singular)
    }

    fn designated_space(&self) -> InnerProductSpace {
        InnerProductSpace::euclidean(self.dim(), 1.0)
    }

    fn norm_estimate(&self) -> f64 {
        self.matrix.norm()
    }
}
