//! Galois points, simultaneous Galois (SG) points and the solvers behind them.

mod check;
mod enumerate;
mod fiber;
mod galois;
mod knowledge;
mod system;

pub use check::{point_kind, sg_point_check, sg_point_check_components, verify_witness, CurvePair, PointKind, SgVerdict, SgWitness};
pub use enumerate::{
    sg_enumerate, Completeness, ComponentVerdict, EnumerateOptions, Rejected, SgPointReport, SgReport, TheoremFlag,
};
pub use fiber::{solve_fiber_transforms, solve_two_center_transforms, FiberTransform};
pub use galois::{galois_point_check, group_descriptor, group_structure, transform_order, GaloisVerdict, GroupDescriptor};
pub use knowledge::{knowledge_base, quartic_twist, GaloisSet, KnowledgeBase, NormalForm};
pub use system::solve_system;
