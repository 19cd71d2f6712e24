//! Combinatorial polytopes given by vertex–facet incidence.
//!
//! A polytope here carries no coordinates. Faces are the nonempty
//! intersections of facet families; their dimensions come from the length of
//! the longest chain of faces below them. The face lattice is computed once at
//! construction.

mod bitset;
mod counting;
mod generators;
mod io;
mod lattice;

pub use bitset::BitSet;
pub use counting::{a02_bound, average_face_bound, average_faces};
pub use generators::{cube, cyclic_dual, polygon, product, simplex};
pub use io::PolytopeFile;
pub use lattice::{CombinatorialPolytope, FVector, Face};
