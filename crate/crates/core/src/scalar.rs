//! Scalar abstraction shared by every numeric type in the crate.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_traits::{Float, FromPrimitive, NumAssign};

/// Real scalar used for coordinates, distances and filtration values.
///
/// Implemented for `f32` and `f64`. All comparisons in the pipeline are exact
/// (`==` on floats); tie batches depend on it.
pub trait Scalar:
    Float + FromPrimitive + NumAssign + Debug + Display + FromStr + Default + Send + Sync + 'static
{
    /// Total order for finite values; NaN is rejected on ingest, so this never
    /// has to break ties between incomparable values.
    fn cmp_finite(&self, other: &Self) -> std::cmp::Ordering {
        self.partial_cmp(other)
            .expect("non-finite scalar in ordered comparison")
    }

    /// Lossless-enough conversion for reporting and 17-digit printing.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Conversion from a literal; panics only for values outside the type's
    /// range, which the crate never produces.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("scalar literal out of range")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Formats a scalar with the shortest representation that parses back to
/// the same value; `inf` for infinities.
pub fn fmt_scalar<T: Scalar>(x: T) -> String {
    if x.is_infinite() {
        return if x > T::zero() { "inf".into() } else { "-inf".into() };
    }
    let v = x.to_f64_lossy();
    let a = v.abs();
    if a != 0.0 && !(1e-5..1e16).contains(&a) {
        format!("{:e}", v)
    } else {
        format!("{}", v)
    }
}
