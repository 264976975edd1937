//! Prestacks of 2-groups on finite spaces: constructors, stalks, π-presheaves,
//! the plus construction, and the cohomology pipelines.

pub mod cohomology;
pub mod data;
pub mod descent;
pub mod extension;
pub mod sheaf;
pub mod verify;

pub use cohomology::{
    berishvili_stabilization, cochain_complex, cohomology, compare, cover_nerve, required_truncation,
    space_tu_sequence, tu_groups, CohomologyReport, CompareReport, CompareRow, DegreeResult, Mode, SpaceTuSequence,
    Stabilization,
};
pub use data::{Prestack, PrestackMor};
pub use descent::{is_separated, is_stack, plus, stack_defect, stackify, Stackification};
pub use extension::{is_extension, kernel_extension, level_maps, PrestackExtension};
pub use sheaf::Presheaf;
pub use verify::{
    contraction_check, contraction_matrix, elementary_bounds_check, refinement_example, refinement_kills,
    refinement_through_stalks, stackify_invariance_check, Check, RefinementReport,
};
