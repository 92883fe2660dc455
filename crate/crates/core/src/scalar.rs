//! Scalar abstraction shared by every numeric module.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating point type the rotation algebra is computed in: `f32` or `f64`.
///
/// The default tolerances scale with the precision of the type so that the
/// same identity checks are meaningful in both widths.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + Default
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Default slack for norm constraints checked at construction.
    fn default_eps_unit() -> Self;
    /// Default slack for identity checks.
    fn default_eps_eq() -> Self;

    /// Converts a literal constant. Every `f64` is representable (possibly
    /// rounded) in the supported types.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }
}

impl Real for f32 {
    fn default_eps_unit() -> Self {
        1e-4
    }
    fn default_eps_eq() -> Self {
        1e-5
    }
}

impl Real for f64 {
    fn default_eps_unit() -> Self {
        1e-9
    }
    fn default_eps_eq() -> Self {
        1e-12
    }
}
