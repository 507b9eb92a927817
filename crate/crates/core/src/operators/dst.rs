//! Type-I discrete sine transform on `d` interior grid points.
//!
//! `S[j][k] = sin(π (j+1)(k+1) / (d+1))`; `S² = (d+1)/2 · I`.

use std::f64::consts::PI;
use std::sync::Arc;

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

/// Largest `d` for which [`SineTransform::new`] picks the dense table.
pub const DIRECT_DST_MAX: usize = 64;

#[derive(Clone)]
enum Backend {
    Table(Vec<f64>),
    Fft(Arc<dyn Fft<f64>>),
}

#[derive(Clone)]
pub struct SineTransform {
    d: usize,
    backend: Backend,
}

impl std::fmt::Debug for SineTransform {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let kind = match self.backend {
            Backend::Table(_) => "table",
            Backend::Fft(_) => "fft",
        };
        f.debug_struct("SineTransform")
            .field("d", &self.d)
            .field("backend", &kind)
            .finish()
    }
}

impl SineTransform {
    pub fn new(d: usize) -> Self {
        if d <= DIRECT_DST_MAX {
            Self::direct(d)
        } else {
            Self::fast(d)
        }
    }

    /// Dense `d × d` sine table, `O(d²)` per transform.
    pub fn direct(d: usize) -> Self {
        let scale = PI / (d + 1) as f64;
        let mut table = Vec::with_capacity(d * d);
        for j in 1..=d {
            for k in 1..=d {
                // reduce j*k mod 2(d+1) so the argument stays in [0, 2π)
                let m = (j * k) % (2 * (d + 1));
                table.push((scale * m as f64).sin());
            }
        }
        Self {
            d,
            backend: Backend::Table(table),
        }
    }

    /// Odd extension to length `2(d+1)` followed by a complex FFT.
    pub fn fast(d: usize) -> Self {
        let fft = FftPlanner::new().plan_fft_forward(2 * (d + 1));
        Self {
            d,
            backend: Backend::Fft(fft),
        }
    }

    pub fn len(&self) -> usize {
        self.d
    }

    pub fn is_empty(&self) -> bool {
        self.d == 0
    }

    /// Normalization making `inverse_scale · S` an involution.
    pub fn inverse_scale(&self) -> f64 {
        2.0 / (self.d + 1) as f64
    }

    /// Unnormalized transform of one line.
    pub fn apply_1d(&self, x: &[f64], out: &mut [f64]) {
        let d = self.d;
        debug_assert_eq!(x.len(), d);
        debug_assert_eq!(out.len(), d);
        match &self.backend {
            Backend::Table(t) => {
                for (k, o) in out.iter_mut().enumerate() {
                    *o = t[k * d..(k + 1) * d]
                        .iter()
                        .zip(x)
                        .map(|(s, xi)| s * xi)
                        .sum();
                }
            }
            Backend::Fft(fft) => {
                let len = 2 * (d + 1);
                let mut buf = vec![Complex::new(0.0, 0.0); len];
                for (j, &xj) in x.iter().enumerate() {
                    buf[j + 1].re = xj;
                    buf[len - 1 - j].re = -xj;
                }
                fft.process(&mut buf);
                // X_k = -2i Σ x_j sin(π j k / (d+1))
                for (k, o) in out.iter_mut().enumerate() {
                    *o = -0.5 * buf[k + 1].im;
                }
            }
        }
    }

    /// Unnormalized transform along every row of a row-major `rows × d` block.
    pub fn apply_rows(&self, data: &mut [f64]) {
        let d = self.d;
        let work = |row: &mut [f64]| {
            let input = row.to_vec();
            self.apply_1d(&input, row);
        };
        #[cfg(feature = "parallel")]
        if data.len() >= crate::linalg::PAR_THRESHOLD {
            data.par_chunks_mut(d).for_each(work);
            return;
        }
        data.chunks_mut(d).for_each(work);
    }

    /// Unnormalized tensor transform `S X S` of a row-major `d × d` grid.
    pub fn apply_2d(&self, data: &mut [f64]) {
        let d = self.d;
        debug_assert_eq!(data.len(), d * d);
        self.apply_rows(data);
        transpose_square(data, d);
        self.apply_rows(data);
        transpose_square(data, d);
    }
}

fn transpose_square(data: &mut [f64], d: usize) {
    for i in 0..d {
        for j in i + 1..d {
            data.swap(i * d + j, j * d + i);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(x: &[f64]) -> Vec<f64> {
        let d = x.len();
        (1..=d)
            .map(|k| {
                (1..=d)
                    .map(|j| x[j - 1] * (PI * (j * k) as f64 / (d + 1) as f64).sin())
                    .sum()
            })
            .collect()
    }

    #[test]
    fn fast_and_direct_agree_with_naive_sum() {
        for d in [1, 2, 7, 31, 65, 100] {
            let x: Vec<f64> = (0..d).map(|k| ((k * 13 + 5) % 17) as f64 - 8.0).collect();
            let expect = naive(&x);
            for t in [SineTransform::direct(d), SineTransform::fast(d)] {
                let mut out = vec![0.0; d];
                t.apply_1d(&x, &mut out);
                for (a, b) in out.iter().zip(&expect) {
                    assert!(
                        (a - b).abs() < 1e-11 * (d as f64),
                        "d={d} {t:?}: {a} vs {b}"
                    );
                }
            }
        }
    }

    #[test]
    fn transform_is_an_involution_up_to_scale() {
        let d = 9;
        let t = SineTransform::new(d);
        let x: Vec<f64> = (0..d * d).map(|k| (k as f64 * 0.3).cos()).collect();
        let mut y = x.clone();
        t.apply_2d(&mut y);
        t.apply_2d(&mut y);
        let s = t.inverse_scale().powi(2);
        for (a, b) in x.iter().zip(&y) {
            assert!((a - s * b).abs() < 1e-13);
        }
    }
}
