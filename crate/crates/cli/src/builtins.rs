//! Definitions available without a manifest. Manifest entries with the same
//! name take precedence.

use crate::manifest::{ComplexDef, GroupDef, Manifest, MorphismDef, PrestackDef, Space, SpaceDef, TwoGroupDef};
use stackcoh::site::{FiniteSpace, SimplicialComplex};

pub const SPACES: [&str; 7] = ["point", "discrete-2", "discrete-3", "pseudocircle", "triangle-boundary", "sphere", "rp2"];

pub fn space(name: &str) -> Option<Space> {
    Some(match name {
        "point" => Space::Poset(FiniteSpace::point()),
        "discrete-2" => Space::Poset(FiniteSpace::discrete(2)),
        "discrete-3" => Space::Poset(FiniteSpace::discrete(3)),
        "pseudocircle" => Space::Poset(FiniteSpace::pseudocircle()),
        "triangle-boundary" => Space::Simplicial(SimplicialComplex::triangle_boundary()),
        "sphere" => Space::Simplicial(SimplicialComplex::sphere()),
        "rp2" => Space::Simplicial(SimplicialComplex::projective_plane()),
        _ => return None,
    })
}

pub fn definitions() -> Manifest {
    let mut m = Manifest { schema: crate::manifest::SCHEMA, ..Manifest::default() };
    m.groups.insert("Z".into(), GroupDef::Invariants { invariants: vec![0] });
    m.groups.insert("Z/2".into(), GroupDef::Invariants { invariants: vec![2] });
    for s in SPACES {
        m.spaces.insert(s.into(), SpaceDef::Builtin { builtin: s.into() });
    }
    m.two_groups.insert("phi".into(), TwoGroupDef::Phi);
    m.two_groups.insert("zero".into(), TwoGroupDef::Zero);
    m.two_groups.insert("z".into(), TwoGroupDef::Discrete { group: "Z".into() });
    m.two_groups.insert("z2".into(), TwoGroupDef::Discrete { group: "Z/2".into() });
    m.two_groups.insert("bz2".into(), TwoGroupDef::Suspension { group: "Z/2".into() });
    m.morphisms.insert(
        "phi-times-2".into(),
        MorphismDef { source: "phi".into(), target: "phi".into(), f1: vec![vec![0]], f0: vec![vec![2]] },
    );
    m.complexes.insert(
        "phi-times-2".into(),
        ComplexDef { lo: 0, objects: vec!["phi".into(), "phi".into()], diffs: vec!["phi-times-2".into()], tracks: None },
    );
    for (name, value) in [("constant-phi", "phi"), ("constant-z", "z"), ("constant-z2", "z2")] {
        m.prestacks.insert(name.into(), PrestackDef::Constant { value: value.into() });
    }
    m.prestacks.insert(
        "elementary-phi".into(),
        PrestackDef::Elementary { fibers: crate::manifest::Fibers::Uniform("phi".into()) },
    );
    m
}
