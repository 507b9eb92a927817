use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::Scalar;

/// Conjugate gradients for a Hermitian positive definite operator given as a
/// closure `y = M x`. Stops when `‖b - Mx‖ ≤ tol · ‖b‖`; returns the solution
/// and the iteration count.
pub fn conjugate_gradient<T, F>(
    apply: F,
    b: &[T],
    tol: f64,
    max_iter: usize,
) -> Result<(Vec<T>, usize)>
where
    T: Scalar,
    F: Fn(&[T], &mut [T]),
{
    let n = b.len();
    let b_norm = linalg::norm2(b);
    let mut x = vec![T::zero(); n];
    if b_norm == 0.0 {
        return Ok((x, 0));
    }
    let mut r = b.to_vec();
    let mut p = r.clone();
    let mut mp = vec![T::zero(); n];
    let mut rr = linalg::dot(&r, &r).re();
    for it in 1..=max_iter {
        apply(&p, &mut mp);
        let pmp = linalg::dot(&p, &mp).re();
        if !(pmp > 0.0) {
            return Err(Error::SolverFailure {
                iterations: it,
                residual: rr.sqrt() / b_norm,
            });
        }
        let alpha = T::of_real(rr / pmp);
        linalg::axpy(alpha, &p, &mut x);
        linalg::axpy(-alpha, &mp, &mut r);
        let rr_new = linalg::dot(&r, &r).re();
        if rr_new.sqrt() <= tol * b_norm {
            return Ok((x, it));
        }
        let beta = T::of_real(rr_new / rr);
        rr = rr_new;
        for (pi, &ri) in p.iter_mut().zip(&r) {
            *pi = ri + beta * *pi;
        }
    }
    Err(Error::SolverFailure {
        iterations: max_iter,
        residual: rr.sqrt() / b_norm,
    })
}
