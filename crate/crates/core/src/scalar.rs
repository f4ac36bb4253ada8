//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Real floating-point scalar (`f32` or `f64`).
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Lossy conversion from an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Shorthand for `S::lit(x)`.
#[inline]
pub fn lit<S: Real>(x: f64) -> S {
    S::lit(x)
}

/// Unit complex number `e^{iθ}`.
#[inline]
pub fn cis<S: Real>(theta: S) -> Complex<S> {
    Complex::new(theta.cos(), theta.sin())
}

pub(crate) fn is_finite_c<S: Real>(z: Complex<S>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}
