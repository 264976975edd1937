//! Cohomology with coefficients in prestacks of abelian 2-groups on finite
//! spaces and finite simplicial complexes.

pub mod complex2;
pub mod cosimplicial;
pub mod error;
pub mod fgab;
pub mod picard;
pub mod prestack;
pub mod site;

pub use error::{Error, Result};
pub use fgab::{AbCochainComplex, FgAbGroup, GroupHom, Int, SparseMatrix, SparseVec};
