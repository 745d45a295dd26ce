//! Scalar abstraction shared by the phase-space modules.

use nalgebra as na;
use num_traits as nt;

/// Real scalar usable by the covariance-matrix machinery. Implemented for `f32` and `f64`.
pub trait Real: na::RealField + nt::FloatConst + Copy {}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    na::convert(x)
}

/// Lossy conversion back to `f64`, for reporting.
#[inline]
pub fn to_f64<T: Real>(x: T) -> f64 {
    na::try_convert(x).unwrap_or(f64::NAN)
}
