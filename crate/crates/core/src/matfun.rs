//! Dense `e^H` and `φ_j(H)` for the small projected matrices, plus a plain
//! Taylor-series oracle.
//!
//! `φ_0 = exp`, `φ_k(z) = z^{-k} (e^z - Σ_{i<k} z^i/i!)`, equivalently
//! `φ_k(z) = Σ_{i≥0} z^i/(i+k)!`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Index `j` of `φ_j`; `0` is the exponential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PhiIndex(usize);

impl PhiIndex {
    pub const MAX: usize = 16;

    pub fn new(j: usize) -> Result<Self> {
        if j > Self::MAX {
            return Err(Error::OutOfRange {
                what: "phi index",
                value: j,
                lo: 0,
                hi: Self::MAX,
            });
        }
        Ok(Self(j))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

/// Scaling target: `‖H‖₁ / 2^s ≤ SCALE_TARGET` before the Padé core.
const SCALE_TARGET: f64 = 0.5;

/// Diagonal Padé(13,13) coefficients `b_0..b_13` for `exp`.
const PADE13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

pub fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64)
}

/// Induced 1-norm (maximum absolute column sum).
pub fn norm1<T: Scalar>(h: &DMatrix<T>) -> f64 {
    h.column_iter()
        .map(|c| c.iter().map(|x| x.modulus()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Spectral norm via the singular values.
pub fn norm2<T: Scalar>(h: &DMatrix<T>) -> f64 {
    if h.is_empty() {
        return 0.0;
    }
    h.clone().singular_values().max()
}

fn check_square<T: Scalar>(h: &DMatrix<T>) -> Result<()> {
    if !h.is_square() {
        return Err(Error::NotSquare {
            rows: h.nrows(),
            cols: h.ncols(),
        });
    }
    Ok(())
}

fn scaled<T: Scalar>(m: &DMatrix<T>, c: f64) -> DMatrix<T> {
    m.map(|x| x.scale(c))
}

fn pade13<T: Scalar>(a: &DMatrix<T>) -> Result<DMatrix<T>> {
    let n = a.nrows();
    let b = &PADE13;
    let ident = DMatrix::<T>::identity(n, n);
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let u_inner = &a6 * (scaled(&a6, b[13]) + scaled(&a4, b[11]) + scaled(&a2, b[9]))
        + scaled(&a6, b[7])
        + scaled(&a4, b[5])
        + scaled(&a2, b[3])
        + scaled(&ident, b[1]);
    let u = a * u_inner;
    let v = &a6 * (scaled(&a6, b[12]) + scaled(&a4, b[10]) + scaled(&a2, b[8]))
        + scaled(&a6, b[6])
        + scaled(&a4, b[4])
        + scaled(&a2, b[2])
        + scaled(&ident, b[0]);
    let p = &v + &u;
    let q = v - u;
    q.lu().solve(&p).ok_or(Error::Singular)
}

/// Matrix exponential by scaling and squaring around a Padé(13,13) core.
pub fn expm_dense<T: Scalar>(h: &DMatrix<T>) -> Result<DMatrix<T>> {
    check_square(h)?;
    if h.iter().any(|x| !x.re().is_finite() || !x.im().is_finite()) {
        return Err(Error::Domain("matrix has non-finite entries".into()));
    }
    let n = h.nrows();
    if n == 0 {
        return Ok(DMatrix::zeros(0, 0));
    }
    let norm = norm1(h);
    let mut s = 0i32;
    if norm > SCALE_TARGET {
        s = (norm / SCALE_TARGET).log2().ceil() as i32;
    }
    let a = scaled(h, 0.5f64.powi(s));
    let mut e = pade13(&a)?;
    for _ in 0..s {
        e = &e * &e;
    }
    Ok(e)
}

/// `φ_j(H)` read off one exponential of the block matrix
/// `[[H, I, 0, …], [0, 0, I, …], …, [0, …, 0]]` of order `m(j+1)`; the
/// top-right `m × m` block is `φ_j(H)`.
pub fn phi_dense<T: Scalar>(h: &DMatrix<T>, j: PhiIndex) -> Result<DMatrix<T>> {
    check_square(h)?;
    let j = j.get();
    if j == 0 {
        return expm_dense(h);
    }
    let m = h.nrows();
    let size = m * (j + 1);
    let mut big = DMatrix::<T>::zeros(size, size);
    big.view_mut((0, 0), (m, m)).copy_from(h);
    for blk in 0..j {
        for i in 0..m {
            big[(blk * m + i, (blk + 1) * m + i)] = T::one();
        }
    }
    let e = expm_dense(&big)?;
    Ok(e.view((0, j * m), (m, m)).into_owned())
}

/// `φ_j(H) b` from the exponential of the `(m+j)`-order matrix
/// `[[H, b e_1ᵀ], [0, J]]`, `J` the nilpotent upper shift.
pub fn phi_dense_apply<T: Scalar>(
    h: &DMatrix<T>,
    j: PhiIndex,
    b: &DVector<T>,
) -> Result<DVector<T>> {
    check_square(h)?;
    let m = h.nrows();
    if b.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: b.len(),
        });
    }
    let j = j.get();
    if j == 0 {
        return Ok(expm_dense(h)? * b);
    }
    let size = m + j;
    let mut big = DMatrix::<T>::zeros(size, size);
    big.view_mut((0, 0), (m, m)).copy_from(h);
    big.view_mut((0, m), (m, 1)).copy_from(b);
    for i in 0..j - 1 {
        big[(m + i, m + i + 1)] = T::one();
    }
    let e = expm_dense(&big)?;
    Ok(e.view((0, m + j - 1), (m, 1)).column(0).into_owned())
}

/// Largest spectral norm for which [`phi_series_oracle`] is accepted.
pub const ORACLE_NORM_BOUND: f64 = 2.0;

/// Minimum number of series terms for [`phi_series_oracle`].
pub const ORACLE_MIN_TERMS: usize = 40;

/// Truncated series `Σ_{k=0}^{terms} H^k/(k+j)!`. The truncation error is
/// bounded by `‖H‖^{terms+1}/(terms+1)!`.
pub fn phi_series_oracle<T: Scalar>(h: &DMatrix<T>, j: usize, terms: usize) -> Result<DMatrix<T>> {
    check_square(h)?;
    if terms < ORACLE_MIN_TERMS {
        return Err(Error::OutOfRange {
            what: "series terms",
            value: terms,
            lo: ORACLE_MIN_TERMS,
            hi: usize::MAX,
        });
    }
    let norm = norm2(h);
    if norm > ORACLE_NORM_BOUND {
        return Err(Error::OracleNormTooLarge {
            norm,
            bound: ORACLE_NORM_BOUND,
        });
    }
    let m = h.nrows();
    let mut term = scaled(&DMatrix::<T>::identity(m, m), 1.0 / factorial(j));
    let mut sum = term.clone();
    for k in 1..=terms {
        term = scaled(&(&term * h), 1.0 / (k + j) as f64);
        sum += &term;
    }
    Ok(sum)
}

/// Scalar `φ_j(z)`.
///
/// Uses the Taylor series for `|z| < j + 1`, where its terms decrease
/// monotonically, and the upward recurrence `φ_{k+1} = (φ_k - 1/k!)/z` from
/// `e^z` otherwise, where the recurrence is stable.
pub fn phi_scalar(z: Complex64, j: usize) -> Complex64 {
    if j == 0 {
        return z.exp();
    }
    if z.norm() < (j + 1) as f64 {
        phi_scalar_series(z, j)
    } else {
        phi_scalar_recurrence(z, j)
    }
}

fn phi_scalar_series(z: Complex64, j: usize) -> Complex64 {
    let mut term = Complex64::new(1.0 / factorial(j), 0.0);
    let mut sum = term;
    for k in 1..400 {
        term = term * z / (k + j) as f64;
        sum += term;
        if term.norm() <= 1e-18 * sum.norm() {
            break;
        }
    }
    sum
}

fn phi_scalar_recurrence(z: Complex64, j: usize) -> Complex64 {
    let mut phi = z.exp();
    for k in 0..j {
        phi = (phi - 1.0 / factorial(k)) / z;
    }
    phi
}
