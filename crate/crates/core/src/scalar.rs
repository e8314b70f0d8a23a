//! Scalar abstraction: every solver in this crate is generic over a real
//! floating-point type. `f64` is the production precision; `f32` exists to
//! prove the algorithms are precision-agnostic (and for quick previews).

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real scalar usable by the solvers.
///
/// This is a blanket-implemented alias trait: anything float-like with the
/// usual constants and conversions qualifies (in practice `f32` and `f64`).
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + core::fmt::Debug
    + core::fmt::Display
    + Send
    + Sync
    + 'static
{
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + ToPrimitive
        + NumAssign
        + core::fmt::Debug
        + core::fmt::Display
        + Send
        + Sync
        + 'static
{
}

/// Complex number over a [`Real`] scalar.
pub type C<T> = Complex<T>;

/// Converts an `f64` literal/constant into the working scalar.
///
/// Panics only if the scalar cannot represent finite `f64` values at all,
/// which no admissible `Real` type does.
#[inline]
pub fn r<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("finite f64 must convert into the working scalar")
}

/// Builds a complex number from `f64` parts in the working scalar.
#[inline]
pub fn cx<T: Real>(re: f64, im: f64) -> C<T> {
    Complex::new(r(re), r(im))
}

/// The imaginary unit.
#[inline]
pub fn i<T: Real>() -> C<T> {
    Complex::new(T::zero(), T::one())
}

/// Real scalar promoted to a complex number.
#[inline]
pub fn re_c<T: Real>(x: T) -> C<T> {
    Complex::new(x, T::zero())
}

/// Lossy view of the working scalar as `f64` (used for reports/diagnostics).
#[inline]
pub fn as_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
