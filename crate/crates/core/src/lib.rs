pub mod bounds;
pub mod error;
pub mod exact;
pub mod generate;
pub mod polytope;
pub mod raysystem;
pub mod realized;
pub mod structure;

pub use error::{Error, Result};

/// Arbitrary-precision rational, the default scalar.
pub type Rational = num_rational::BigRational;
/// Machine-word rational, for exhaustive searches over small integer data.
pub type SmallRational = num_rational::Ratio<i64>;
pub type Vector = exact::RVector<Rational>;
pub type Form = exact::TrilinearForm<Rational>;
pub type System = raysystem::RayDivisorSystem<Rational>;
