//! Scalar traits the rest of the crate is generic over.

use std::fmt::{Debug, Display};
use std::ops::Neg;
use std::str::FromStr;

use num_traits::{Float, FloatConst, FromPrimitive, Num};

/// Component type of a [`Dual`](crate::Dual): any ordered commutative ring
/// with cheap copies. Covers `f32`, `f64`, `i64` and `num_rational::Ratio`.
pub trait Scalar: Num + Copy + Neg<Output = Self> + PartialOrd + Debug + Send + Sync + 'static {}

impl<T> Scalar for T where T: Num + Copy + Neg<Output = T> + PartialOrd + Debug + Send + Sync + 'static {}

/// Floating point component type: `f32` or `f64`.
///
/// Everything that evaluates transcendental primitives, norms or Darboux
/// sums needs this bound; the purely algebraic layers only need [`Scalar`].
pub trait Real: Scalar + Float + FloatConst + FromPrimitive + Display + FromStr {}

impl Real for f32 {}
impl Real for f64 {}
