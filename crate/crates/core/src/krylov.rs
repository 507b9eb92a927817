//! Rational Arnoldi process for the resolvent Krylov subspace
//! `K_n((γ - τA)^{-1}, v) = span{v, (γ - τA)^{-1} v, …, (γ - τA)^{-(n-1)} v}`
//! and the Galerkin approximation `φ_j(τA) v ≈ β V φ_j(H) e_1`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg;
use crate::matfun::{phi_dense_apply, PhiIndex};
use crate::operators::{InnerProductSpace, LinearOperator, SolverConfig};
use crate::scalar::Scalar;

/// A candidate whose norm drops below this fraction of its norm before
/// orthogonalization signals an invariant subspace.
pub const BREAKDOWN_TOL: f64 = 1e-12;

/// Orthonormal basis of a resolvent Krylov subspace together with the
/// projected operator `H = Vᴴ (τA) V`.
#[derive(Debug, Clone)]
pub struct RationalKrylovDecomposition<T: Scalar> {
    basis: Vec<Vec<T>>,
    /// Gram map applied to each basis vector, `inner(w_i, x) = dot(riesz_i, x)`.
    riesz: Vec<Vec<T>>,
    projected: DMatrix<T>,
    gamma: f64,
    tau: f64,
    beta: f64,
    breakdown: Option<usize>,
    space: InnerProductSpace,
    solver: SolverConfig,
}

impl<T: Scalar> RationalKrylovDecomposition<T> {
    pub fn basis(&self) -> &[Vec<T>] {
        &self.basis
    }

    pub fn projected(&self) -> &DMatrix<T> {
        &self.projected
    }

    /// Subspace dimension `m`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Dimension at which the process stopped on an invariant subspace.
    pub fn breakdown(&self) -> Option<usize> {
        self.breakdown
    }

    pub fn space(&self) -> &InnerProductSpace {
        &self.space
    }

    pub fn solver(&self) -> &SolverConfig {
        &self.solver
    }

    /// Gram matrix `G_ij = inner(w_i, w_j)` of the basis.
    pub fn gram(&self) -> DMatrix<T> {
        let m = self.dim();
        DMatrix::from_fn(m, m, |i, j| linalg::dot(&self.riesz[i], &self.basis[j]))
    }

    /// `max |G - I|` over all entries.
    pub fn orthonormality_defect(&self) -> f64 {
        let g = self.gram();
        let m = self.dim();
        (g - DMatrix::<T>::identity(m, m))
            .iter()
            .map(|x| x.modulus())
            .fold(0.0, f64::max)
    }

    /// The decomposition of the nested subspace spanned by the first `n`
    /// basis vectors.
    pub fn truncated(&self, n: usize) -> Result<Self> {
        let m = self.dim();
        if n == 0 || n > m {
            return Err(Error::OutOfRange {
                what: "prefix dimension",
                value: n,
                lo: 1,
                hi: m,
            });
        }
        Ok(Self {
            basis: self.basis[..n].to_vec(),
            riesz: self.riesz[..n].to_vec(),
            projected: self.projected.view((0, 0), (n, n)).into_owned(),
            breakdown: self.breakdown.filter(|&b| b == n),
            space: self.space.clone(),
            ..*self
        })
    }

    /// `β V_n φ_j(H_n) e_1` using the first `n` basis vectors and the leading
    /// `n × n` block of `H`.
    pub fn phi_apply_prefix(&self, j: usize, n: usize) -> Result<Vec<T>> {
        let m = self.dim();
        if n == 0 || n > m {
            return Err(Error::OutOfRange {
                what: "prefix dimension",
                value: n,
                lo: 1,
                hi: m,
            });
        }
        let h = self.projected.view((0, 0), (n, n)).into_owned();
        let mut e1 = DVector::<T>::zeros(n);
        e1[0] = T::one();
        let y = phi_dense_apply(&h, PhiIndex::new(j)?, &e1)?;
        let coeffs: Vec<T> = y.iter().map(|c| c.scale(self.beta)).collect();
        Ok(linalg::combine(&self.basis[..n], &coeffs))
    }
}

/// Builds an orthonormal basis of `K_n((γ - τA)^{-1}, v)` in `space`.
///
/// Each new candidate is the shifted solve applied to the previous basis
/// vector, orthogonalized by modified Gram-Schmidt with one full
/// reorthogonalization pass. `H` is formed afterwards by direct projection.
pub fn rational_arnoldi<T, O>(
    op: &O,
    space: &InnerProductSpace,
    v: &[T],
    n: usize,
    gamma: f64,
    tau: f64,
    cfg: &SolverConfig,
) -> Result<RationalKrylovDecomposition<T>>
where
    T: Scalar,
    O: LinearOperator<T> + ?Sized,
{
    if v.len() != op.dim() || space.dim() != op.dim() {
        return Err(Error::DimensionMismatch {
            expected: op.dim(),
            found: if v.len() != op.dim() {
                v.len()
            } else {
                space.dim()
            },
        });
    }
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "subspace dimension",
            value: 0,
            lo: 1,
            hi: usize::MAX,
        });
    }
    if !(gamma > 0.0) {
        return Err(Error::Domain(format!(
            "shift gamma must be positive, got {gamma}"
        )));
    }
    let beta = space.norm(v);
    if beta == 0.0 || !beta.is_finite() {
        return Err(Error::ZeroVector);
    }

    let mut w1 = v.to_vec();
    linalg::scale(T::of_real(1.0 / beta), &mut w1);
    let mut riesz = vec![space.riesz(&w1)];
    let mut basis = vec![w1];
    let mut breakdown = None;

    while basis.len() < n {
        let last = basis.last().expect("basis is never empty");
        let mut cand = op.solve_shifted(gamma, tau, last, cfg)?;
        let before = space.norm(&cand);
        for _pass in 0..2 {
            for (w, g) in basis.iter().zip(&riesz) {
                let r = linalg::dot(g, &cand);
                linalg::axpy(-r, w, &mut cand);
            }
        }
        let after = space.norm(&cand);
        if !(after > BREAKDOWN_TOL * before) {
            breakdown = Some(basis.len());
            break;
        }
        linalg::scale(T::of_real(1.0 / after), &mut cand);
        riesz.push(space.riesz(&cand));
        basis.push(cand);
    }

    let m = basis.len();
    let applied: Vec<Vec<T>> = linalg::map_range(m, |j| {
        let mut y = op.apply_vec(&basis[j]);
        linalg::scale(T::of_real(tau), &mut y);
        y
    });
    let entries: Vec<T> = linalg::map_range(m * m, |idx| {
        let (i, j) = (idx / m, idx % m);
        linalg::dot(&riesz[i], &applied[j])
    });
    let projected = DMatrix::from_row_slice(m, m, &entries);

    Ok(RationalKrylovDecomposition {
        basis,
        riesz,
        projected,
        gamma,
        tau,
        beta,
        breakdown,
        space: space.clone(),
        solver: *cfg,
    })
}

/// `β V φ_j(H) e_1`, the Galerkin approximation of `φ_j(τA) v`.
pub fn krylov_phi_approx<T: Scalar>(
    dec: &RationalKrylovDecomposition<T>,
    j: usize,
) -> Result<Vec<T>> {
    dec.phi_apply_prefix(j, dec.dim())
}

/// Relative error between `(γ - τA)^{-k} v` and its projected counterpart
/// `β V (γI - H)^{-k} e_1`.
///
/// The projection reproduces every `p_{m-1}(z)/(γ - z)^{m-1}` exactly, so the
/// error is at rounding level for `k ≤ m - 1`. `k = m` is accepted as the
/// first index past exactness.
pub fn check_rational_exactness<T, O>(
    dec: &RationalKrylovDecomposition<T>,
    op: &O,
    k: usize,
) -> Result<f64>
where
    T: Scalar,
    O: LinearOperator<T> + ?Sized,
{
    let m = dec.dim();
    if k > m {
        return Err(Error::OutOfRange {
            what: "resolvent power",
            value: k,
            lo: 0,
            hi: m,
        });
    }
    if k == 0 {
        return Ok(0.0);
    }
    let mut exact = dec.basis[0].clone();
    linalg::scale(T::of_real(dec.beta), &mut exact);
    for _ in 0..k {
        exact = op.solve_shifted(dec.gamma, dec.tau, &exact, &dec.solver)?;
    }

    let shifted = DMatrix::<T>::identity(m, m).scale(dec.gamma) - &dec.projected;
    let lu = shifted.lu();
    let mut c = DVector::<T>::zeros(m);
    c[0] = T::of_real(dec.beta);
    for _ in 0..k {
        c = lu.solve(&c).ok_or(Error::Singular)?;
    }
    let approx = linalg::combine(&dec.basis, c.as_slice());
    let diff = linalg::sub(&exact, &approx);
    Ok(dec.space.norm(&diff) / dec.space.norm(&exact))
}
