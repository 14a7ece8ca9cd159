//! Scalar abstraction shared by every numeric module.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FromPrimitive, ToPrimitive};
use rand::distributions::uniform::SampleUniform;

/// Floating-point type the toolkit can compute with.
///
/// Implemented for `f32` and `f64`. The expression language and the scenario
/// files are `f64` only; everything below them is generic.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + SampleUniform
    + Default
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` constant, rounding to the nearest representable value.
    fn lit(v: f64) -> Self;

    fn to_f64_lossy(self) -> f64;

    /// Threshold used to witness strict positivity (`0 < v` is tested as `v > STRICT`).
    fn tol_strict() -> Self {
        Self::lit(1e-12)
    }

    /// Coordinate-wise separation above which two points count as distinct.
    fn distinct_sep() -> Self {
        Self::lit(1e-9)
    }
}

impl Scalar for f64 {
    #[inline]
    fn lit(v: f64) -> Self {
        v
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self
    }
}

impl Scalar for f32 {
    #[inline]
    fn lit(v: f64) -> Self {
        v as f32
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self as f64
    }

    fn tol_strict() -> Self {
        1e-6
    }

    fn distinct_sep() -> Self {
        1e-4
    }
}
