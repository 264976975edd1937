//! 2-cochain complexes of 2-groups, their two kinds of cohomology, and the
//! sequences relating them.

pub mod complex;
pub mod cone;
pub mod extension;
pub mod morphism;
pub mod secondary;
pub mod sequence;
pub mod tu;

pub use complex::TwoCochainComplex;
pub use cone::{tu_cohomology, Cone, PaddedComplex};
pub use extension::{kernel_extension, ComplexExtension, DegreeCheck, ExtensionLes};
pub use morphism::ComplexMor;
pub use secondary::{secondary_cohomology, secondary_range};
pub use sequence::LongSequence;
pub use tu::{pi0_complex, pi1_complex, tu_sequence};
