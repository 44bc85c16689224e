//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point scalar (`f32` or `f64`) together with the numerical
/// tolerances that make sense at its precision.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Sum + Send + Sync + 'static
{
    /// Eigenvalues in `[-EIG_CLIP, 0)` are treated as zero; anything lower is not a state.
    const EIG_CLIP: f64;
    /// Allowed deviation of a trace or a squared norm from one.
    const NORM_TOL: f64;
    /// Allowed entrywise deviation from Hermiticity or unitarity.
    const HERM_TOL: f64;

    /// Converts an `f64` literal. Panics only for values unrepresentable in `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const EIG_CLIP: f64 = 1e-10;
    const NORM_TOL: f64 = 1e-9;
    const HERM_TOL: f64 = 1e-10;
}

impl Real for f32 {
    const EIG_CLIP: f64 = 1e-4;
    const NORM_TOL: f64 = 1e-4;
    const HERM_TOL: f64 = 1e-5;
}

/// Complex amplitude over a [`Real`] scalar.
pub type C<R> = Complex<R>;

#[inline]
pub(crate) fn c<R: Real>(re: R, im: R) -> C<R> {
    Complex::new(re, im)
}

/// `exp(i·theta)`
#[inline]
pub(crate) fn cis<R: Real>(theta: R) -> C<R> {
    Complex::new(theta.cos(), theta.sin())
}
