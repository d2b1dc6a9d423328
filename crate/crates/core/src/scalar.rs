//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Real scalar type the geometry is evaluated in.
///
/// All tolerances in the crate are tuned for `f64`; `f32` works with the same
/// code paths but only meets correspondingly looser bounds.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + nalgebra::Scalar
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Base step for Richardson-extrapolated central differences in chart coordinates.
    fn chart_step() -> Self;

    /// Step for five-point stencils along a curve parameter.
    fn curve_step() -> Self;

    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in scalar type")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn chart_step() -> Self {
        1e-5
    }

    fn curve_step() -> Self {
        1e-3
    }
}

impl Real for f32 {
    fn chart_step() -> Self {
        4e-3
    }

    fn curve_step() -> Self {
        3e-2
    }
}

/// Shorthand for converting an `f64` constant into `T`.
#[inline]
pub fn lit<T: Real>(v: f64) -> T {
    T::lit(v)
}
