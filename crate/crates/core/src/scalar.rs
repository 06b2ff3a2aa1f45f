//! Scalar abstraction for the numeric backends.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating point type underlying the complex arithmetic of the
/// numeric backends (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossy conversion from `f64`, used for literals and rational coefficients.
    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).unwrap_or_else(Self::nan)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `e^{iθ}` for a real angle.
pub fn unit_phase<T: Real>(theta: T) -> Complex<T> {
    Complex::new(theta.cos(), theta.sin())
}

/// Relative distance `|a - b| / max(|b|, floor)`.
pub fn rel_diff<T: Real>(a: Complex<T>, b: Complex<T>, floor: T) -> T {
    (a - b).norm() / b.norm().max(floor)
}
