//! Seeded instance generators.
//!
//! Every generator is a pure function of its parameters and seed
//! (ChaCha8). System families come with face structures built from the
//! typed-subset rule in [`typed_faces`]; `random_valid` redraws until the
//! validator is clean and reports how many draws it threw away.

mod diagrams;
mod exhaustive;
mod faces;
mod realized;
mod systems;

pub use diagrams::{cyclic_polygon, cyclic_product, d2_square, disjoint_diagram, standard_fixtures, DiagramFixture};
pub use exhaustive::sign_pattern_systems;
pub use faces::{classified_faces, disjoint_exclusion_variants, typed_faces};
pub use realized::{planted_b2, realize, realized_instance, PlantedB2};
pub use systems::{generate_system, random_valid, Generated, RandomParams, SystemFamily};
