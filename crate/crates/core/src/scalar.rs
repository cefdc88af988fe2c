//! Floating point abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real scalar the curve machinery is written against.
///
/// Implemented for `f32` and `f64`. The algebraic pieces that only need ring
/// operations (affine maps, the parabola subcurve maps) are generic over
/// [`num_traits::Num`] instead, so they also run on exact rationals.
pub trait Scalar:
    'static
    + Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Default
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
{
    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Relative tolerance below which numbers are indistinguishable from noise.
    #[inline]
    fn noise() -> Self {
        Self::epsilon() * Self::lit(64.0)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Shorthand for [`Scalar::lit`].
#[inline]
pub(crate) fn c<T: Scalar>(x: f64) -> T {
    T::lit(x)
}
