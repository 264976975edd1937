//! Finite spaces, simplicial complexes, covers and the precosimplicial
//! diagrams of prestack values over their nerves.

pub mod cover;
pub mod diagram;
pub mod simplicial;
pub mod space;

pub use cover::{BerishviliCover, Cover, SpecialCover, TupleNerve};
pub use diagram::{nerve_diagram, refinement_map};
pub use simplicial::SimplicialComplex;
pub use space::{members, FiniteSpace, OpenSet};

/// A finite space together with the cover its Čech cohomology is computed at:
/// the minimal special cover for a bare poset, the vertex-star cover for the
/// face poset of a simplicial complex.
#[derive(Clone, Debug)]
pub struct Site {
    space: FiniteSpace,
    cech: Cover,
    complex: Option<SimplicialComplex>,
}

impl Site {
    pub fn poset(space: &FiniteSpace) -> Self {
        Site { space: space.clone(), cech: SpecialCover::minimal(space).as_cover(space), complex: None }
    }

    /// Čech cohomology at a chosen special cover instead of the minimal one.
    pub fn poset_at(space: &FiniteSpace, cover: &SpecialCover) -> Self {
        Site { space: space.clone(), cech: cover.as_cover(space), complex: None }
    }

    pub fn simplicial(k: &SimplicialComplex) -> Self {
        Site { space: k.face_poset(), cech: k.star_cover(), complex: Some(k.clone()) }
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn cech_cover(&self) -> &Cover {
        &self.cech
    }

    pub fn complex(&self) -> Option<&SimplicialComplex> {
        self.complex.as_ref()
    }

    /// Whether the Čech cover is a special cover indexed by points, so the
    /// Berishvili cover built from the minimal cover refines it.
    pub fn cech_is_special(&self) -> bool {
        self.complex.is_none()
    }
}
