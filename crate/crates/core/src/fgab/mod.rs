//! Finitely generated abelian groups: presentations, Smith normal form,
//! homomorphisms, subquotients and cochain complexes.

pub mod cochain;
pub mod group;
pub mod hom;
pub mod lattice;
pub mod smith;
pub mod sparse;

pub use cochain::AbCochainComplex;
pub use group::{format_invariants, normalize_chain, parse_invariants, FgAbGroup, SmithData};
pub use hom::{exact_at, hom_exactness, Exactness, GroupHom, HomExactness, Kernel, Preimage, Subquotient};
pub use lattice::Echelon;
pub use smith::{smith_normal_form, IntMatrix, SmithDecomposition};
pub use sparse::{reduce_mod, Int, SparseMatrix, SparseVec};
