use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_traits::{FromPrimitive, Signed};

use crate::error::{Error, Result};

/// An exact, totally ordered field.
///
/// The `Ord` bound deliberately keeps IEEE floats out: every predicate in this
/// crate distinguishes `< 0`, `= 0` and `> 0`, and those answers must be exact.
pub trait Scalar: Signed + Clone + Ord + Debug + Display + FromStr + FromPrimitive + Send + Sync + 'static {
    fn int(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("scalar must represent small integers")
    }

    /// `p/q` as a scalar.
    fn frac(p: i64, q: i64) -> Self {
        Self::int(p) / Self::int(q)
    }
}

impl<T> Scalar for T where T: Signed + Clone + Ord + Debug + Display + FromStr + FromPrimitive + Send + Sync + 'static {}

/// Parses `"p/q"` or `"p"` (surrounding whitespace allowed).
pub fn parse_scalar<T: Scalar>(text: &str) -> Result<T> {
    let trimmed = text.trim();
    if let Some((_, den)) = trimmed.split_once('/') {
        if den.trim().trim_start_matches(['+', '-']).chars().all(|c| c == '0') {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
    }
    trimmed.parse::<T>().map_err(|_| Error::Parse(format!("not a rational number: {text:?}")))
}

/// Formats as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_scalar<T: Scalar>(value: &T) -> String {
    value.to_string()
}
