//! Vector kernels shared by the operators and the Krylov builder.
//!
//! Reductions are evaluated over fixed-size chunks whose partial sums are
//! combined left to right, so the parallel and sequential paths return the
//! same bits regardless of the thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::scalar::Scalar;

/// Chunk length for reductions and elementwise loops.
pub const CHUNK: usize = 2048;

/// Vectors shorter than this are always processed sequentially.
pub const PAR_THRESHOLD: usize = 8192;

#[inline]
fn chunk_dot<T: Scalar>(x: &[T], y: &[T]) -> T {
    x.iter()
        .zip(y)
        .fold(T::zero(), |acc, (&a, &b)| acc + a.conjugate() * b)
}

/// `Σ conj(x_k) y_k`, sequential.
pub fn dot_seq<T: Scalar>(x: &[T], y: &[T]) -> T {
    debug_assert_eq!(x.len(), y.len());
    x.chunks(CHUNK)
        .zip(y.chunks(CHUNK))
        .map(|(a, b)| chunk_dot(a, b))
        .fold(T::zero(), |s, p| s + p)
}

/// `Σ conj(x_k) y_k`, chunks evaluated on the rayon pool.
#[cfg(feature = "parallel")]
pub fn dot_par<T: Scalar>(x: &[T], y: &[T]) -> T {
    debug_assert_eq!(x.len(), y.len());
    let parts: Vec<T> = x
        .par_chunks(CHUNK)
        .zip(y.par_chunks(CHUNK))
        .map(|(a, b)| chunk_dot(a, b))
        .collect();
    parts.into_iter().fold(T::zero(), |s, p| s + p)
}

/// Euclidean inner product, antilinear in the first argument.
pub fn dot<T: Scalar>(x: &[T], y: &[T]) -> T {
    #[cfg(feature = "parallel")]
    if x.len() >= PAR_THRESHOLD {
        return dot_par(x, y);
    }
    dot_seq(x, y)
}

pub fn norm2<T: Scalar>(x: &[T]) -> f64 {
    dot(x, x).re().max(0.0).sqrt()
}

/// Runs `f(offset, chunk)` over consecutive mutable chunks of `y`.
pub fn for_each_chunk_mut<T, F>(y: &mut [T], f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if y.len() >= PAR_THRESHOLD {
        y.par_chunks_mut(CHUNK)
            .enumerate()
            .for_each(|(i, c)| f(i * CHUNK, c));
        return;
    }
    y.chunks_mut(CHUNK)
        .enumerate()
        .for_each(|(i, c)| f(i * CHUNK, c));
}

/// `y += alpha * x`
pub fn axpy<T: Scalar>(alpha: T, x: &[T], y: &mut [T]) {
    debug_assert_eq!(x.len(), y.len());
    for_each_chunk_mut(y, |off, c| {
        let src = &x[off..off + c.len()];
        for (yi, &xi) in c.iter_mut().zip(src) {
            *yi += alpha * xi;
        }
    });
}

pub fn scale<T: Scalar>(alpha: T, y: &mut [T]) {
    for_each_chunk_mut(y, |_, c| c.iter_mut().for_each(|yi| *yi *= alpha));
}

/// `Σ_k coeffs[k] * vectors[k]`
pub fn combine<T: Scalar>(vectors: &[Vec<T>], coeffs: &[T]) -> Vec<T> {
    let n = vectors.first().map_or(0, Vec::len);
    let mut out = vec![T::zero(); n];
    for_each_chunk_mut(&mut out, |off, c| {
        for (v, &a) in vectors.iter().zip(coeffs) {
            let src = &v[off..off + c.len()];
            for (o, &x) in c.iter_mut().zip(src) {
                *o += a * x;
            }
        }
    });
    out
}

/// `(0..n).map(f).collect()`, on the rayon pool when available.
pub fn map_range<O, F>(n: usize, f: F) -> Vec<O>
where
    O: Send,
    F: Fn(usize) -> O + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

pub fn sub<T: Scalar>(x: &[T], y: &[T]) -> Vec<T> {
    x.iter().zip(y).map(|(&a, &b)| a - b).collect()
}
