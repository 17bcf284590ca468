//! Scalar abstraction shared by the analytic formulas.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` constant into the scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 constant representable in scalar type")
    }

    /// Lossy conversion used for error reporting.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `1 / (1 + e^x)` without overflow for either sign of `x`.
///
/// Every Gibbs weight in the crate goes through this function: the ground
/// population of a gap `ε` at temperature `T` is `fermi(-ε/T)`.
#[inline]
pub fn fermi<F: Real>(x: F) -> F {
    if x >= F::zero() {
        let e = (-x).exp();
        e / (F::one() + e)
    } else {
        F::one() / (F::one() + x.exp())
    }
}

/// Smallest positive value treated as distinguishable from zero in decay
/// factors: `1e-300` for `f64`, the smallest normal value for `f32`.
#[inline]
pub fn underflow_floor<F: Real>() -> F {
    F::lit(1e-300).max(F::min_positive_value())
}
