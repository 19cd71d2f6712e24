//! Classification of extremal sets and E-sets of a ray–divisor system.
//!
//! Components of an extremal set are typed by sign patterns of the pairing
//! (`A1`, `B2`, `Cm`, `D2`, plus `E2` for a type II ray paired with a small
//! ray). E-sets, the minimal non-extremal sets, fall into four cases. All
//! feasibility questions are decided exactly by Fourier–Motzkin elimination.
//! Failures to classify are returned as data, never as panics.

mod classify;
mod conditions;
mod eset;
mod fano;
mod report;

pub use classify::{
    classify_component, classify_set, d2_condition, ClassificationFailure, ClassificationReport, Classified,
    ComponentOutcome, ComponentType,
};
pub use conditions::{
    check_arrow_connectivity, check_condition_ii, check_condition_iii, condition_ii_witness, crossing_arrows_exist,
    nef_combination,
};
pub use eset::{classify_eset, find_esets, EsetClass, EsetOutcome, EsetType};
pub use fano::{detect_e2_pairs, fano_shape_filter, small_ray_witness};
pub use report::{ComponentEntry, EsetEntry, StructureReport};
