//! The abstract ray–divisor model of a Mori cone.
//!
//! Rays are typed (`TypeI`, `TypeII` contract a divisor, `Small` does not)
//! and carry their pairing row against every listed divisor. Whether two
//! divisors intersect is explicit input (`meets`), not derived from the
//! numbers. Quantifiers over "all divisors" range over the listed divisors.

mod graph;
mod io;
mod model;
mod predicates;
mod rayset;
mod validate;

pub use graph::{build_graph, distance, divisorial_components, is_single_arrow_connected, Distance, OrientedGraph};
pub use io::{RayEntry, SystemFile};
pub use model::{Ray, RayDivisorSystem, RayType};
pub use predicates::{cross_pairing_inequality, is_simple_ray};
pub use rayset::RaySet;
pub use validate::{Violation, ViolationKind};
