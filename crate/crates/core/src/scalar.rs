//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, NumAssign};

/// Real floating-point type the linear algebra is generic over (`f32`, `f64`).
pub trait Real:
    Float + FloatConst + NumAssign + Default + Debug + Display + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float + FloatConst + NumAssign + Default + Debug + Display + Send + Sync + 'static
{
}

/// Complex amplitude over a [`Real`] scalar.
pub type Cplx<T> = Complex<T>;

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from(x).expect("f64 literal representable in target scalar")
}

/// Widens a scalar to `f64` (for reporting and serialization).
#[inline]
pub fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[inline]
pub fn cplx<T: Real>(re: f64, im: f64) -> Cplx<T> {
    Complex::new(lit(re), lit(im))
}

#[inline]
pub fn czero<T: Real>() -> Cplx<T> {
    Complex::new(T::zero(), T::zero())
}

#[inline]
pub fn cone<T: Real>() -> Cplx<T> {
    Complex::new(T::one(), T::zero())
}

#[inline]
pub fn creal<T: Real>(x: T) -> Cplx<T> {
    Complex::new(x, T::zero())
}

/// A tolerance stated for double precision, floored at a few ulps of `T` so
/// the same check stays meaningful in single precision.
pub fn tolerance<T: Real>(stated: f64) -> T {
    let floor = T::epsilon() * lit(64.0);
    let stated = lit::<T>(stated);
    if stated > floor {
        stated
    } else {
        floor
    }
}
