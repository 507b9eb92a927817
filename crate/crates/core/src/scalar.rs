use nalgebra::ComplexField;
use num_complex::Complex64;

/// Scalar field of the vectors an operator acts on: `f64` for the wave path,
/// `Complex64` for the Schrödinger path.
pub trait Scalar: ComplexField<RealField = f64> + Copy + Send + Sync + 'static {
    const IS_COMPLEX: bool;

    fn re(self) -> f64;
    fn im(self) -> f64;
    /// Builds a scalar from real and imaginary parts; the imaginary part is
    /// dropped for real scalars.
    fn from_parts(re: f64, im: f64) -> Self;

    fn of_real(x: f64) -> Self {
        Self::from_parts(x, 0.0)
    }
}

impl Scalar for f64 {
    const IS_COMPLEX: bool = false;

    #[inline]
    fn re(self) -> f64 {
        self
    }
    #[inline]
    fn im(self) -> f64 {
        0.0
    }
    #[inline]
    fn from_parts(re: f64, _im: f64) -> Self {
        re
    }
}

impl Scalar for Complex64 {
    const IS_COMPLEX: bool = true;

    #[inline]
    fn re(self) -> f64 {
        self.re
    }
    #[inline]
    fn im(self) -> f64 {
        self.im
    }
    #[inline]
    fn from_parts(re: f64, im: f64) -> Self {
        Complex64::new(re, im)
    }
}
