use std::sync::Arc;

use super::laplacian::FdLaplacian;
use crate::linalg;
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub enum InnerProductForm {
    /// `weight · Σ conj(x_k) y_k`
    ScaledEuclidean { weight: f64 },
    /// `weight · ((-Δ x1, y1)_2 + (x2, y2)_2)` on block vectors `[x1; x2]`.
    WaveEnergy {
        laplacian: Arc<FdLaplacian>,
        weight: f64,
    },
}

/// Inner product on `dim`-vectors, antilinear in the first argument.
#[derive(Debug, Clone)]
pub struct InnerProductSpace {
    dim: usize,
    form: InnerProductForm,
}

impl InnerProductSpace {
    pub fn euclidean(dim: usize, weight: f64) -> Self {
        assert!(weight > 0.0, "inner product weight must be positive");
        Self {
            dim,
            form: InnerProductForm::ScaledEuclidean { weight },
        }
    }

    /// Discrete energy form `h² ((-Δ x1, y1) + (x2, y2))`.
    pub fn wave_energy(laplacian: Arc<FdLaplacian>) -> Self {
        let h = laplacian.h();
        Self {
            dim: 2 * laplacian.n(),
            form: InnerProductForm::WaveEnergy {
                laplacian,
                weight: h * h,
            },
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn form(&self) -> &InnerProductForm {
        &self.form
    }

    /// Gram (Riesz) map `G` with `inner(x, y) = dot(G x, y)`.
    pub fn riesz<T: Scalar>(&self, x: &[T]) -> Vec<T> {
        debug_assert_eq!(x.len(), self.dim);
        match &self.form {
            InnerProductForm::ScaledEuclidean { weight } => {
                let w = T::of_real(*weight);
                x.iter().map(|&xi| xi * w).collect()
            }
            InnerProductForm::WaveEnergy { laplacian, weight } => {
                let n = laplacian.n();
                let mut g = vec![T::zero(); 2 * n];
                laplacian.matrix().apply(&x[..n], &mut g[..n]);
                let neg = T::of_real(-*weight);
                let w = T::of_real(*weight);
                g[..n].iter_mut().for_each(|gi| *gi *= neg);
                g[n..]
                    .iter_mut()
                    .zip(&x[n..])
                    .for_each(|(gi, &xi)| *gi = xi * w);
                g
            }
        }
    }

    pub fn inner<T: Scalar>(&self, x: &[T], y: &[T]) -> T {
        match &self.form {
            InnerProductForm::ScaledEuclidean { weight } => linalg::dot(x, y) * T::of_real(*weight),
            InnerProductForm::WaveEnergy { .. } => linalg::dot(&self.riesz(x), y),
        }
    }

    pub fn norm<T: Scalar>(&self, x: &[T]) -> f64 {
        self.inner(x, x).re().max(0.0).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::assemble_fd_laplacian;

    #[test]
    fn energy_form_splits_into_blocks() {
        let lap = Arc::new(assemble_fd_laplacian(3).unwrap());
        let h = lap.h();
        let space = InnerProductSpace::wave_energy(lap.clone());
        let x: Vec<f64> = (0..18).map(|k| (k as f64 * 0.37).sin()).collect();
        let y: Vec<f64> = (0..18).map(|k| (k as f64 * 0.91).cos()).collect();
        let mut ly = vec![0.0; 9];
        lap.matrix().apply(&y[..9], &mut ly);
        let expected = h
            * h
            * (-x[..9].iter().zip(&ly).map(|(a, b)| a * b).sum::<f64>()
                + x[9..].iter().zip(&y[9..]).map(|(a, b)| a * b).sum::<f64>());
        assert!((space.inner(&x, &y) - expected).abs() < 1e-12 * expected.abs().max(1.0));
        assert!((space.inner(&x, &y) - space.inner(&y, &x)).abs() < 1e-12);
    }
}
