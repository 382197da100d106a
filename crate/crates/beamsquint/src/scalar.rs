//! Scalar abstraction: the whole library is generic over the floating-point
//! type through [`Real`], with `f64` aliases exported at the crate root.

use num_traits::{FromPrimitive, ToPrimitive};

/// Floating-point scalar the library computes with: `f32` or `f64`.
pub trait Real: nalgebra::RealField + FromPrimitive + ToPrimitive + Copy {
    /// Machine epsilon of the concrete type.
    fn eps() -> Self;
}

impl Real for f32 {
    fn eps() -> Self {
        f32::EPSILON
    }
}

impl Real for f64 {
    fn eps() -> Self {
        f64::EPSILON
    }
}

/// Converts an `f64` literal into the working scalar type.
#[inline]
pub fn real<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}

/// Exact speed of light in m/s.
#[inline]
pub fn speed_of_light<T: Real>() -> T {
    real(299_792_458.0)
}

/// Lossy view of a scalar as `f64`, for error messages and output.
#[inline]
pub fn as_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
