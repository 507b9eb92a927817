//! Smoothing operators
//! `H_{n,q} = Σ_{k=q}^{2q-1} h_k^q (√n (√n - A)^{-1})^k`
//! with `h_k^q = C(2q-1, k) C(k-1, k-q) (-1)^{k-q}`.
//!
//! The coefficients make `(1 - Σ_k h_k^q (1-z)^{-k}) / z^q` holomorphic at
//! `z = 0`, which gives `‖H_{n,q} v - v‖ ≤ C n^{-q/2} ‖A^q v‖`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::operators::{InnerProductSpace, LinearOperator, SolverConfig};
use crate::scalar::Scalar;

pub const MAX_Q: usize = 12;

fn binomial(n: i128, k: i128) -> i128 {
    if k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i128, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmootherCoefficients {
    q: usize,
    /// `h_k^q` for `k = q..=2q-1`.
    coefficients: Vec<i64>,
}

impl SmootherCoefficients {
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    /// `(k, h_k^q)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coefficients
            .iter()
            .enumerate()
            .map(move |(i, &h)| (self.q + i, h))
    }

    pub fn sum(&self) -> i64 {
        self.coefficients.iter().sum()
    }

    /// First `count` Taylor coefficients at `z = 0` of
    /// `1 - Σ_k h_k (1-z)^{-k}`, using `(1-z)^{-k} = Σ_m C(m+k-1, k-1) z^m`.
    pub fn defect_taylor(&self, count: usize) -> Vec<i128> {
        (0..count)
            .map(|m| {
                let m = m as i128;
                let series: i128 = self
                    .iter()
                    .map(|(k, h)| h as i128 * binomial(m + k as i128 - 1, k as i128 - 1))
                    .sum();
                i128::from(m == 0) - series
            })
            .collect()
    }

    /// The defect vanishes to order exactly `q` at the origin.
    pub fn is_holomorphic(&self) -> bool {
        let c = self.defect_taylor(self.q + 1);
        c[..self.q].iter().all(|&x| x == 0) && c[self.q] != 0
    }
}

fn check_q(q: usize) -> Result<()> {
    if q == 0 || q > MAX_Q {
        return Err(Error::OutOfRange {
            what: "smoothness index q",
            value: q,
            lo: 1,
            hi: MAX_Q,
        });
    }
    Ok(())
}

/// `h_k^q = C(2q-1, k) C(k-1, k-q) (-1)^{k-q}`, exact.
pub fn h_coefficients(q: usize) -> Result<SmootherCoefficients> {
    check_q(q)?;
    let qi = q as i128;
    let coefficients = (q..2 * q)
        .map(|k| {
            let k = k as i128;
            let sign = if (k - qi) % 2 == 0 { 1 } else { -1 };
            (sign * binomial(2 * qi - 1, k) * binomial(k - 1, k - qi)) as i64
        })
        .collect();
    Ok(SmootherCoefficients { q, coefficients })
}

/// Alternative form `C(2q-1, k) Σ_{l=0}^{k-q} C(k, l) (-1)^l`.
pub fn h_coefficients_alternating_sum(q: usize) -> Result<SmootherCoefficients> {
    check_q(q)?;
    let qi = q as i128;
    let coefficients = (q..2 * q)
        .map(|k| {
            let k = k as i128;
            let s: i128 = (0..=k - qi)
                .map(|l| {
                    if l % 2 == 0 {
                        binomial(k, l)
                    } else {
                        -binomial(k, l)
                    }
                })
                .sum();
            (binomial(2 * qi - 1, k) * s) as i64
        })
        .collect();
    Ok(SmootherCoefficients { q, coefficients })
}

/// `H_{n,q} v` via `2q - 1` successive solves with shift `√n`.
pub fn apply_smoother<T, O>(
    op: &O,
    v: &[T],
    n: usize,
    q: usize,
    cfg: &SolverConfig,
) -> Result<Vec<T>>
where
    T: Scalar,
    O: LinearOperator<T> + ?Sized,
{
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "smoothing parameter n",
            value: 0,
            lo: 1,
            hi: usize::MAX,
        });
    }
    let coeffs = h_coefficients(q)?;
    let root = (n as f64).sqrt();
    let mut power = v.to_vec();
    let mut out = vec![T::zero(); v.len()];
    for k in 1..2 * q {
        power = op.solve_shifted(root, 1.0, &power, cfg)?;
        linalg::scale(T::of_real(root), &mut power);
        if k >= q {
            let h = coeffs.coefficients()[k - q] as f64;
            linalg::axpy(T::of_real(h), &power, &mut out);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmoothingSample {
    pub n: usize,
    /// `n^{q/2} ‖H_{n,q} v - v‖ / ‖A^q v‖`
    pub scaled_error: f64,
}

pub fn smoothing_rate_study<T, O>(
    op: &O,
    space: &InnerProductSpace,
    v: &[T],
    q: usize,
    n_values: &[usize],
    cfg: &SolverConfig,
) -> Result<Vec<SmoothingSample>>
where
    T: Scalar,
    O: LinearOperator<T> + ?Sized,
{
    check_q(q)?;
    let mut aqv = v.to_vec();
    for _ in 0..q {
        aqv = op.apply_vec(&aqv);
    }
    let aq_norm = space.norm(&aqv);
    if aq_norm == 0.0 {
        return Err(Error::DegenerateInput("A^q v vanishes".into()));
    }
    linalg::map_range(n_values.len(), |i| {
        let n = n_values[i];
        let hv = apply_smoother(op, v, n, q, cfg)?;
        let err = space.norm(&linalg::sub(&hv, v));
        Ok(SmoothingSample {
            n,
            scaled_error: (n as f64).powf(q as f64 / 2.0) * err / aq_norm,
        })
    })
    .into_iter()
    .collect()
}

/// Power-iteration estimate of `‖H_{n,q}‖` in `space` (exact in the limit for
/// normal `A`).
pub fn smoother_norm_estimate<T, O>(
    op: &O,
    space: &InnerProductSpace,
    start: &[T],
    n: usize,
    q: usize,
    iterations: usize,
    cfg: &SolverConfig,
) -> Result<f64>
where
    T: Scalar,
    O: LinearOperator<T> + ?Sized,
{
    let mut x = start.to_vec();
    let mut estimate = 0.0;
    for _ in 0..iterations {
        let nx = space.norm(&x);
        if nx == 0.0 {
            return Err(Error::ZeroVector);
        }
        linalg::scale(T::of_real(1.0 / nx), &mut x);
        x = apply_smoother(op, &x, n, q, cfg)?;
        estimate = space.norm(&x);
    }
    Ok(estimate)
}
