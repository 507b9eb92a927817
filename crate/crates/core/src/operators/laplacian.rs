use std::f64::consts::PI;

use nalgebra::DMatrix;

use super::cg::conjugate_gradient;
use super::dst::SineTransform;
use super::space::InnerProductSpace;
use super::{check_len, check_shift, LinearOperator, OperatorKind, SolverConfig, SolverMethod};
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::Scalar;

/// Compressed sparse row matrix with real entries.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    nrows: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl CsrMatrix {
    /// Builds from per-row `(column, value)` lists; entries are kept in the
    /// given order.
    pub fn from_rows(rows: Vec<Vec<(usize, f64)>>) -> Self {
        let nrows = rows.len();
        let mut row_ptr = Vec::with_capacity(nrows + 1);
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        row_ptr.push(0);
        for row in rows {
            for (c, v) in row {
                col_idx.push(c);
                values.push(v);
            }
            row_ptr.push(col_idx.len());
        }
        Self {
            nrows,
            row_ptr,
            col_idx,
            values,
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row_nnz(&self, i: usize) -> usize {
        self.row_ptr[i + 1] - self.row_ptr[i]
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        self.col_idx[r.clone()]
            .iter()
            .copied()
            .zip(self.values[r].iter().copied())
    }

    /// `y = M x`
    pub fn apply<T: Scalar>(&self, x: &[T], y: &mut [T]) {
        debug_assert_eq!(x.len(), self.nrows);
        debug_assert_eq!(y.len(), self.nrows);
        linalg::for_each_chunk_mut(y, |off, c| {
            for (r, yi) in c.iter_mut().enumerate() {
                let i = off + r;
                let mut acc = T::zero();
                for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                    acc += x[self.col_idx[k]].scale(self.values[k]);
                }
                *yi = acc;
            }
        });
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.nrows, self.nrows);
        for i in 0..self.nrows {
            for (j, v) in self.row(i) {
                m[(i, j)] += v;
            }
        }
        m
    }
}

/// Dirichlet finite-difference Laplacian on the interior points of the unit
/// interval (`dims = 1`) or unit square (`dims = 2`), `h = 1/(d+1)`.
///
/// Two-dimensional unknowns are ordered row-major: point `(x_i, y_j)` has
/// index `(i-1)·d + (j-1)`.
#[derive(Debug, Clone)]
pub struct FdLaplacian {
    d: usize,
    dims: usize,
    h: f64,
    matrix: CsrMatrix,
    sine: SineTransform,
}

/// Five-point Laplacian `(T_d ⊗ I_d + I_d ⊗ T_d)/h²` with `T_d = tridiag(1, -2, 1)`.
pub fn assemble_fd_laplacian(d: usize) -> Result<FdLaplacian> {
    if d == 0 {
        return Err(Error::Domain("grid size d must be at least 1".into()));
    }
    let h = 1.0 / (d + 1) as f64;
    let inv_h2 = 1.0 / (h * h);
    let mut rows = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let mut row = Vec::with_capacity(5);
            if i > 0 {
                row.push(((i - 1) * d + j, inv_h2));
            }
            if j > 0 {
                row.push((i * d + j - 1, inv_h2));
            }
            row.push((i * d + j, -4.0 * inv_h2));
            if j + 1 < d {
                row.push((i * d + j + 1, inv_h2));
            }
            if i + 1 < d {
                row.push(((i + 1) * d + j, inv_h2));
            }
            rows.push(row);
        }
    }
    Ok(FdLaplacian {
        d,
        dims: 2,
        h,
        matrix: CsrMatrix::from_rows(rows),
        sine: SineTransform::new(d),
    })
}

/// Three-point Laplacian `T_d / h²` on the unit interval.
pub fn assemble_fd_laplacian_1d(d: usize) -> Result<FdLaplacian> {
    if d == 0 {
        return Err(Error::Domain("grid size d must be at least 1".into()));
    }
    let h = 1.0 / (d + 1) as f64;
    let inv_h2 = 1.0 / (h * h);
    let rows = (0..d)
        .map(|i| {
            let mut row = Vec::with_capacity(3);
            if i > 0 {
                row.push((i - 1, inv_h2));
            }
            row.push((i, -2.0 * inv_h2));
            if i + 1 < d {
                row.push((i + 1, inv_h2));
            }
            row
        })
        .collect();
    Ok(FdLaplacian {
        d,
        dims: 1,
        h,
        matrix: CsrMatrix::from_rows(rows),
        sine: SineTransform::new(d),
    })
}

impl FdLaplacian {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    /// Number of unknowns, `d^dims`.
    pub fn n(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn matrix(&self) -> &CsrMatrix {
        &self.matrix
    }

    pub fn sine_transform(&self) -> &SineTransform {
        &self.sine
    }

    /// Replaces the sine transform backend (used to cross-check the table and
    /// FFT paths).
    pub fn with_sine_transform(mut self, sine: SineTransform) -> Self {
        assert_eq!(sine.len(), self.d);
        self.sine = sine;
        self
    }

    /// `-(4/h²) sin²(jπh/2)`, the eigenvalue of `T_d/h²` for mode `j ∈ 1..=d`.
    pub fn eigenvalue_1d(&self, j: usize) -> f64 {
        let s = (j as f64 * PI * self.h / 2.0).sin();
        -4.0 / (self.h * self.h) * s * s
    }

    /// Eigenvalues in the ordering of the sine-transform coefficients.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let lam: Vec<f64> = (1..=self.d).map(|j| self.eigenvalue_1d(j)).collect();
        match self.dims {
            1 => lam,
            _ => lam
                .iter()
                .flat_map(|&a| lam.iter().map(move |&b| a + b))
                .collect(),
        }
    }

    /// Unnormalized sine transform of a grid function in place.
    pub fn transform(&self, data: &mut [f64]) {
        match self.dims {
            1 => {
                let x = data.to_vec();
                self.sine.apply_1d(&x, data);
            }
            _ => self.sine.apply_2d(data),
        }
    }

    /// Scale factor so that `transform` followed by `transform` and this
    /// scaling is the identity.
    pub fn inverse_scale(&self) -> f64 {
        self.sine.inverse_scale().powi(self.dims as i32)
    }

    /// Solves `(α - βΔ) x = b` for `α, β > 0` (symmetric positive definite).
    pub fn solve_spd_shifted<T: Scalar>(
        &self,
        alpha: f64,
        beta: f64,
        b: &[T],
        cfg: &SolverConfig,
    ) -> Result<Vec<T>> {
        check_len(self.n(), b.len())?;
        match cfg.method {
            SolverMethod::FastSineTransform => Ok(self.solve_dst(alpha, beta, b)),
            SolverMethod::ConjugateGradient => {
                let apply = |x: &[T], y: &mut [T]| {
                    self.matrix.apply(x, y);
                    linalg::for_each_chunk_mut(y, |off, c| {
                        let src = &x[off..off + c.len()];
                        for (yi, &xi) in c.iter_mut().zip(src) {
                            *yi = xi.scale(alpha) - yi.scale(beta);
                        }
                    });
                };
                conjugate_gradient(apply, b, cfg.tolerance, cfg.max_iterations).map(|(x, _)| x)
            }
            SolverMethod::DirectElementwise => Err(Error::UnsupportedSolver {
                method: cfg.method.name(),
                operator: "finite-difference Laplacian",
            }),
        }
    }

    fn solve_dst<T: Scalar>(&self, alpha: f64, beta: f64, b: &[T]) -> Vec<T> {
        let lam = self.eigenvalues();
        let scale = self.inverse_scale();
        let solve_real = |mut part: Vec<f64>| {
            self.transform(&mut part);
            for (p, l) in part.iter_mut().zip(&lam) {
                *p *= scale / (alpha - beta * l);
            }
            self.transform(&mut part);
            part
        };
        let re = solve_real(b.iter().map(|z| z.re()).collect());
        if T::IS_COMPLEX {
            let im = solve_real(b.iter().map(|z| z.im()).collect());
            re.into_iter()
                .zip(im)
                .map(|(r, i)| T::from_parts(r, i))
                .collect()
        } else {
            re.into_iter().map(T::of_real).collect()
        }
    }
}

impl<T: Scalar> LinearOperator<T> for FdLaplacian {
    fn dim(&self) -> usize {
        self.n()
    }

    fn kind(&self) -> OperatorKind {
        OperatorKind::SparseSymmetric
    }

    fn apply(&self, x: &[T], y: &mut [T]) {
        self.matrix.apply(x, y);
    }

    fn solve_shifted(&self, gamma: f64, tau: f64, w: &[T], cfg: &SolverConfig) -> Result<Vec<T>> {
        check_shift(gamma, tau)?;
        self.solve_spd_shifted(gamma, tau, w, cfg)
    }

    /// `h^dims`-weighted Euclidean inner product (discrete L²).
    fn designated_space(&self) -> InnerProductSpace {
        InnerProductSpace::euclidean(self.n(), self.h.powi(self.dims as i32))
    }

    fn norm_estimate(&self) -> f64 {
        4.0 * self.dims as f64 / (self.h * self.h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d1_is_single_entry() {
        // h = 1/2: central entry of T⊗I + I⊗T is -4, times 1/h² = 4
        let lap = assemble_fd_laplacian(1).unwrap();
        assert_eq!(lap.matrix().to_dense(), DMatrix::from_element(1, 1, -16.0));
    }

    #[test]
    fn d2_five_point_pattern() {
        let lap = assemble_fd_laplacian(2).unwrap();
        let m = lap.matrix().to_dense();
        #[rustfmt::skip]
        let expect = DMatrix::from_row_slice(4, 4, &[
            -36.0,   9.0,   9.0,   0.0,
              9.0, -36.0,   0.0,   9.0,
              9.0,   0.0, -36.0,   9.0,
              0.0,   9.0,   9.0, -36.0,
        ]);
        assert_eq!(m, expect);
    }

    #[test]
    fn interior_rows_have_five_entries() {
        let d = 6;
        let lap = assemble_fd_laplacian(d).unwrap();
        for i in 1..d - 1 {
            for j in 1..d - 1 {
                assert_eq!(lap.matrix().row_nnz(i * d + j), 5);
            }
        }
        assert_eq!(lap.matrix().row_nnz(0), 3);
        assert_eq!(lap.matrix().nnz(), 5 * d * d - 4 * d);
    }

    #[test]
    fn rejects_empty_grid() {
        assert!(assemble_fd_laplacian(0).is_err());
        assert!(assemble_fd_laplacian_1d(0).is_err());
    }

    #[test]
    fn dense_eigendecomposition_matches_formula() {
        for d in 1..=8 {
            let lap = assemble_fd_laplacian(d).unwrap();
            let mut dense: Vec<f64> = lap
                .matrix()
                .to_dense()
                .symmetric_eigen()
                .eigenvalues
                .iter()
                .copied()
                .collect();
            let mut formula = lap.eigenvalues();
            dense.sort_by(f64::total_cmp);
            formula.sort_by(f64::total_cmp);
            for (a, b) in dense.iter().zip(&formula) {
                assert!((a - b).abs() < 1e-10, "d={d}: {a} vs {b}");
            }
            assert!(formula.iter().all(|&l| l < 0.0));
        }
    }

    #[test]
    fn dst_solve_matches_dense_lu() {
        let lap = assemble_fd_laplacian(4).unwrap();
        let a = DMatrix::identity(16, 16) - lap.matrix().to_dense() * 0.5;
        let w = vec![1.0; 16];
        let expect = a
            .lu()
            .solve(&nalgebra::DVector::from_vec(w.clone()))
            .unwrap();
        let x: Vec<f64> = lap
            .solve_shifted(1.0, 0.5, &w, &SolverConfig::default())
            .unwrap();
        let err: f64 = x
            .iter()
            .zip(expect.iter())
            .map(|(a, b)| (a - b).powi(2))
            .sum::<f64>()
            .sqrt();
        assert!(
            err <= 1e-12 * expect.norm(),
            "relative error {}",
            err / expect.norm()
        );
    }

    #[test]
    fn fft_and_table_backends_solve_identically() {
        let d = 20;
        let lap = assemble_fd_laplacian(d).unwrap();
        let fast = lap.clone().with_sine_transform(SineTransform::fast(d));
        let w: Vec<f64> = (0..d * d).map(|k| (k as f64).sin()).collect();
        let cfg = SolverConfig::default();
        let a: Vec<f64> = lap.solve_shifted(2.0, 0.1, &w, &cfg).unwrap();
        let b: Vec<f64> = fast.solve_shifted(2.0, 0.1, &w, &cfg).unwrap();
        let diff = linalg::norm2(&linalg::sub(&a, &b));
        assert!(diff < 1e-12 * linalg::norm2(&a));
    }

    #[test]
    fn cg_agrees_with_dst() {
        let lap = assemble_fd_laplacian_1d(50).unwrap();
        let w: Vec<f64> = (0..50).map(|k| 1.0 + (k as f64 * 0.2).cos()).collect();
        let a: Vec<f64> = lap
            .solve_shifted(1.0, 0.01, &w, &SolverConfig::default())
            .unwrap();
        let b: Vec<f64> = lap
            .solve_shifted(1.0, 0.01, &w, &SolverConfig::cg(1e-13, 500))
            .unwrap();
        assert!(linalg::norm2(&linalg::sub(&a, &b)) < 1e-11 * linalg::norm2(&a));
    }

    #[test]
    fn non_positive_shift_is_a_domain_error() {
        let lap = assemble_fd_laplacian(3).unwrap();
        let w = vec![1.0; 9];
        let r: Result<Vec<f64>> = lap.solve_shifted(0.0, 1.0, &w, &SolverConfig::default());
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn elementwise_method_is_rejected() {
        let lap = assemble_fd_laplacian(3).unwrap();
        let cfg = SolverConfig {
            method: SolverMethod::DirectElementwise,
            ..SolverConfig::default()
        };
        let r: Result<Vec<f64>> = lap.solve_shifted(1.0, 1.0, &[0.0; 9], &cfg);
        assert!(matches!(r, Err(Error::UnsupportedSolver { .. })));
    }
}
