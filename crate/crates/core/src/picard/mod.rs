//! Presented abelian 2-groups, strict morphisms, tracks, kernels and
//! cokernels, homs out of the generator, and directed colimits.

pub mod braiding;
pub mod colim;
pub mod hom_phi;
pub mod kernel;
pub mod morphism;
pub mod pic;

pub use braiding::{BraidTerm, Braiding};
pub use colim::DirectedDiagram;
pub use hom_phi::hom_from_phi;
pub use kernel::{
    cokernel, comparison_to_kernel, gz_sequence, kernel, relative_cokernel, relative_kernel, two_exact,
    CokernelData, GzSequence, KernelData, PairObjects,
};
pub use morphism::{Classification, StrictMor, Track};
pub use pic::{Pic2Group, QData};
