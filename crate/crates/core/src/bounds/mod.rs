//! Weighted-angle bounds on simple polytopes and the diagram pipeline that
//! derives angle weights from ray–divisor systems.

mod angles;
mod io;
mod pipeline;
mod replay;
mod weights;

pub use angles::{enumerate_angles, verify_angle_weights, AngleData, AngleKey, BoundReport, ChainAudit};
pub use io::DiagramFile;
pub use pipeline::{count_condition_b, diagram_pipeline, ConstantsMode, DiagramInput, DiagramReport, ReplayComparison};
pub use replay::{AngleReplay, DiagramReplay};
pub use weights::{coarse_angle_bound, diagram_bound, sigma, weighted_angle_max_n, weighted_angle_rhs, WeightRule};
