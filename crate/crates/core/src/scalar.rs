//! Scalar abstraction over the floating-point types that back complex
//! amplitudes, in the style of a small numeric-traits bundle.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar usable as the real and imaginary parts of
/// amplitudes.
///
/// `TOL` is the default comparison width for norm, unitarity and overlap
/// checks at that precision: construction error for the matrices and states
/// built here stays orders of magnitude below it.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Default tolerance for state and unitary checks.
    const TOL: Self;
}

impl Scalar for f32 {
    const TOL: Self = 1e-4;
}

impl Scalar for f64 {
    const TOL: Self = 1e-9;
}

/// Lossless in practice: every value converted here is a small index.
pub(crate) fn real_from_usize<T: Scalar>(x: usize) -> T {
    T::from_usize(x).expect("index representable as scalar")
}
