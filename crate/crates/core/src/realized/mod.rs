//! Exact vector realizations of ray–divisor systems: curve classes for rays,
//! dual classes for divisors, and an optional trilinear intersection form.

mod dependence;
mod io;
mod maps;
mod model;

pub use dependence::{b2_invariants, check_paired_dependence_form, is_simple_in_face, linear_dependence, B2Invariants};
pub use io::RealizedFile;
pub use maps::{b2_nef_combine, cm_nef_extension, d2_nef_extension, fano_nef_sum};
pub use model::{NefCertificate, RealizedModel};
