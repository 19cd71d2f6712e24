//! Exact arithmetic kernel: the scalar abstraction, vectors, dense matrices
//! with fraction-free elimination, symmetric trilinear forms, binomial
//! coefficients and a Fourier–Motzkin feasibility engine.
//!
//! Everything here is generic over [`Scalar`], an exact ordered field. The
//! crate root fixes the arbitrary-precision instantiation as [`crate::Rational`];
//! `Ratio<i64>` also satisfies the bound and is handy for small exhaustive
//! searches.

mod binomial;
mod feasibility;
mod matrix;
mod scalar;
mod trilinear;
mod vector;

pub use binomial::binomial;
pub use feasibility::{feasible_point, LinearSystem, Relation};
pub use matrix::Matrix;
pub use scalar::{format_scalar, parse_scalar, Scalar};
pub use trilinear::TrilinearForm;
pub use vector::RVector;
