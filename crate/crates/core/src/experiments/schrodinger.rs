//! Pseudospectral Schrödinger problem `u' = i u_xx` on `(0, 2π)`, periodic.
//!
//! Fourier coefficients are ordered `k = -N/2, …, N/2 - 1`; the generator is
//! `diag(-i k²)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::operators::DiagonalOperator;

fn check_size(n: usize) -> Result<()> {
    if n < 8 || !n.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "Schrödinger grid size must be even and at least 8, got {n}"
        )));
    }
    Ok(())
}

/// Wave numbers `-N/2..N/2` in vector order.
pub fn wave_numbers(n: usize) -> impl Iterator<Item = i64> {
    let half = (n / 2) as i64;
    -half..half
}

pub fn schrodinger_operator(n: usize) -> Result<DiagonalOperator> {
    check_size(n)?;
    let entries = wave_numbers(n)
        .map(|k| Complex64::new(0.0, -((k * k) as f64)))
        .collect();
    Ok(DiagonalOperator::new(entries))
}

/// Initial profile `u_0^q`: `(2/π)^{4q} (x-π)^{2q} x^{2q}` on `(0, π]` and
/// `(2/π)^{4q} (x-π)^{2q} (x-2π)^{2q}` on `(π, 2π]`. It lies in the domain
/// of the `q`-th power of `∂²_x` but not the `(q+1)`-th.
pub fn schrodinger_profile(x: f64, q: usize) -> f64 {
    let p = 2 * q as i32;
    let c = (2.0 / PI).powi(4 * q as i32);
    if x <= PI {
        c * (x - PI).powi(p) * x.powi(p)
    } else {
        c * (x - PI).powi(p) * (x - 2.0 * PI).powi(p)
    }
}

/// Samples of the profile at `x_m = 2πm/N`.
pub fn schrodinger_samples(n: usize, q: usize) -> Vec<f64> {
    (0..n)
        .map(|m| schrodinger_profile(2.0 * PI * m as f64 / n as f64, q))
        .collect()
}

/// `ψ_k = (1/N) Σ_m u_0^q(x_m) e^{-i k x_m}`, `k = -N/2..N/2-1`.
pub fn schrodinger_initial_data(n: usize, q: usize) -> Result<Vec<Complex64>> {
    check_size(n)?;
    if q == 0 {
        return Err(Error::Domain(
            "smoothness index q must be at least 1".into(),
        ));
    }
    let mut buf: Vec<Complex64> = schrodinger_samples(n, q)
        .into_iter()
        .map(|u| Complex64::new(u, 0.0))
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let inv_n = 1.0 / n as f64;
    Ok(wave_numbers(n)
        .map(|k| buf[k.rem_euclid(n as i64) as usize] * inv_n)
        .collect())
}
