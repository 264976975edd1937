//! Manifest schema and resolution of named definitions into engine values.

use crate::commands::Task;
use crate::error::CliError;
use serde::Deserialize;
use stackcoh::complex2::TwoCochainComplex;
use stackcoh::fgab::{parse_invariants, FgAbGroup, GroupHom, Int, SparseMatrix, SparseVec};
use stackcoh::picard::{Braiding, Pic2Group, StrictMor};
use stackcoh::prestack::Prestack;
use stackcoh::site::{FiniteSpace, OpenSet, SimplicialComplex, Site, SpecialCover};
use std::collections::BTreeMap;

pub const SCHEMA: u32 = 1;

/// Row-major integer matrix.
pub type Matrix = Vec<Vec<i64>>;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub schema: u32,
    #[serde(default)]
    pub groups: BTreeMap<String, GroupDef>,
    #[serde(default)]
    pub homs: BTreeMap<String, HomDef>,
    #[serde(default)]
    pub two_groups: BTreeMap<String, TwoGroupDef>,
    #[serde(default)]
    pub morphisms: BTreeMap<String, MorphismDef>,
    #[serde(default)]
    pub complexes: BTreeMap<String, ComplexDef>,
    #[serde(default)]
    pub spaces: BTreeMap<String, SpaceDef>,
    #[serde(default)]
    pub covers: BTreeMap<String, CoverDef>,
    #[serde(default)]
    pub prestacks: BTreeMap<String, PrestackDef>,
    #[serde(default)]
    pub tasks: Vec<Task>,
}

/// A group: a canonical string such as `"Z^2 + Z/6"`, a list of invariant
/// factors (`0` for a free summand), or a presentation.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum GroupDef {
    Canonical(String),
    Invariants {
        invariants: Vec<i64>,
    },
    Presentation {
        generators: usize,
        #[serde(default)]
        relations: Matrix,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomDef {
    pub source: String,
    pub target: String,
    pub matrix: Matrix,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BraidEntry {
    pub x: usize,
    pub y: usize,
    pub value: Vec<i64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TwoGroupDef {
    Phi,
    Zero,
    /// `K(f)` for a homomorphism `f: C1 → C0`.
    Kf {
        hom: String,
    },
    Discrete {
        group: String,
    },
    Suspension {
        group: String,
    },
    Explicit {
        c1: String,
        c0: String,
        d: Matrix,
        #[serde(default)]
        braiding: Vec<BraidEntry>,
    },
    Product {
        factors: Vec<String>,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDef {
    pub source: String,
    pub target: String,
    pub f1: Matrix,
    pub f0: Matrix,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDef {
    #[serde(default)]
    pub lo: i64,
    pub objects: Vec<String>,
    pub diffs: Vec<String>,
    /// `s^n: C0^n → C1^{n+2}`; zero when omitted
    #[serde(default)]
    pub tracks: Option<Vec<Matrix>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum SpaceDef {
    Builtin {
        builtin: String,
    },
    /// Pairs `[x, y]` mean `x ≤ y`: `x` lies in every open containing `y`.
    Poset {
        points: Vec<String>,
        #[serde(default)]
        order: Vec<(String, String)>,
    },
    Simplicial {
        vertices: usize,
        facets: Vec<Vec<usize>>,
    },
}

/// A special cover: one open (as a list of points) per point.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverDef {
    pub space: String,
    pub opens: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Fibers {
    Uniform(String),
    PerPoint(BTreeMap<String, String>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableValue {
    pub open: Vec<String>,
    pub value: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableRestriction {
    pub from: Vec<String>,
    pub to: Vec<String>,
    pub morphism: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PrestackDef {
    Constant {
        value: String,
    },
    Elementary {
        fibers: Fibers,
    },
    Skyscraper {
        point: String,
        value: String,
    },
    /// Values on every open of the space's open family and generating
    /// restrictions; only valid on `space`.
    Table {
        space: String,
        values: Vec<TableValue>,
        #[serde(default)]
        restrictions: Vec<TableRestriction>,
    },
}

/// Parses a manifest, reporting syntax errors with line and column.
pub fn parse(source: &str, origin: &str) -> Result<Manifest, CliError> {
    let m: Manifest = serde_json::from_str(source).map_err(|e| {
        let msg = e.to_string();
        let suffix = format!(" at line {} column {}", e.line(), e.column());
        let msg = msg.strip_suffix(&suffix).unwrap_or(&msg);
        CliError::input(format!("{origin}:{}:{}: parse error: {msg}", e.line(), e.column()))
    })?;
    if m.schema != SCHEMA {
        return Err(CliError::input(format!("{origin}: unsupported schema {} (expected {SCHEMA})", m.schema)));
    }
    Ok(m)
}

/// A resolved space: a bare poset or a simplicial complex with its face poset.
#[derive(Clone, Debug)]
pub enum Space {
    Poset(FiniteSpace),
    Simplicial(SimplicialComplex),
}

impl Space {
    pub fn site(&self) -> Site {
        match self {
            Space::Poset(x) => Site::poset(x),
            Space::Simplicial(k) => Site::simplicial(k),
        }
    }

    pub fn points(&self) -> FiniteSpace {
        match self {
            Space::Poset(x) => x.clone(),
            Space::Simplicial(k) => k.face_poset(),
        }
    }
}

const MAX_DEPTH: usize = 64;

fn core(what: impl std::fmt::Display, e: stackcoh::Error) -> CliError {
    CliError::input(format!("{what}: {e}"))
}

fn int_rows(m: &Matrix) -> Vec<Vec<Int>> {
    m.iter().map(|r| r.iter().map(|x| Int::from(*x)).collect()).collect()
}

/// Checks a row-major matrix against `rows × cols` and converts it.
pub fn matrix(what: &str, m: &Matrix, rows: usize, cols: usize) -> Result<SparseMatrix, CliError> {
    if m.len() != rows {
        return Err(CliError::input(format!("{what}: matrix has {} rows, expected {rows}", m.len())));
    }
    if let Some((i, r)) = m.iter().enumerate().find(|(_, r)| r.len() != cols) {
        return Err(CliError::input(format!("{what}: row {i} has {} entries, expected {cols}", r.len())));
    }
    Ok(SparseMatrix::from_dense(&int_rows(m), cols))
}

/// Named definitions (manifest entries over the built-in ones) and their resolution.
#[derive(Debug, Clone)]
pub struct Context {
    pub defs: Manifest,
    /// names defined by the manifest itself, not the built-ins
    pub user: Manifest,
}

impl Context {
    pub fn new(user: Manifest) -> Result<Self, CliError> {
        let mut defs = crate::builtins::definitions();
        defs.groups.extend(user.groups.clone());
        defs.homs.extend(user.homs.clone());
        defs.two_groups.extend(user.two_groups.clone());
        defs.morphisms.extend(user.morphisms.clone());
        defs.complexes.extend(user.complexes.clone());
        defs.spaces.extend(user.spaces.clone());
        defs.covers.extend(user.covers.clone());
        defs.prestacks.extend(user.prestacks.clone());
        defs.tasks = user.tasks.clone();
        let ctx = Context { defs, user };
        ctx.validate()?;
        Ok(ctx)
    }

    /// Resolves every manifest definition that does not need a space.
    fn validate(&self) -> Result<(), CliError> {
        fn at<T>(kind: &str, name: &str, r: Result<T, CliError>) -> Result<(), CliError> {
            let prefix = format!("{kind} {name}");
            r.map(|_| ()).map_err(|CliError::Input(m)| {
                CliError::Input(if m.starts_with(&prefix) { m } else { format!("{prefix}: {m}") })
            })
        }
        for name in self.user.groups.keys() {
            at("group", name, self.group(name))?;
        }
        for name in self.user.homs.keys() {
            at("hom", name, self.hom(name))?;
        }
        for name in self.user.two_groups.keys() {
            at("2-group", name, self.two_group(name))?;
        }
        for name in self.user.morphisms.keys() {
            at("morphism", name, self.morphism(name))?;
        }
        for name in self.user.complexes.keys() {
            at("complex", name, self.complex(name))?;
        }
        for name in self.user.spaces.keys() {
            at("space", name, self.space(name))?;
        }
        for name in self.user.covers.keys() {
            at("cover", name, self.cover(name))?;
        }
        for (name, def) in &self.user.prestacks {
            if let PrestackDef::Table { space, .. } = def {
                at("prestack", name, self.prestack(name, space))?;
            }
        }
        Ok(())
    }

    /// A named group, or a canonical group string used inline.
    pub fn group(&self, name: &str) -> Result<FgAbGroup, CliError> {
        let Some(def) = self.defs.groups.get(name) else {
            return parse_invariants(name)
                .map(|inv| FgAbGroup::from_orders(&inv))
                .map_err(|_| CliError::input(format!("unknown group {name:?}")));
        };
        let what = format!("group {name}");
        match def {
            GroupDef::Canonical(s) => {
                parse_invariants(s).map(|inv| FgAbGroup::from_orders(&inv)).map_err(|e| core(&what, e))
            }
            GroupDef::Invariants { invariants } => {
                if invariants.iter().any(|d| *d < 0) {
                    return Err(CliError::input(format!("{what}: invariant factors must be non-negative")));
                }
                let inv: Vec<Int> = invariants.iter().map(|d| Int::from(*d)).collect();
                Ok(FgAbGroup::from_orders(&inv))
            }
            GroupDef::Presentation { generators, relations } => {
                FgAbGroup::present(*generators, relations).map_err(|e| core(&what, e))
            }
        }
    }

    pub fn hom(&self, name: &str) -> Result<GroupHom, CliError> {
        let def = self.defs.homs.get(name).ok_or_else(|| CliError::input(format!("unknown hom {name:?}")))?;
        let what = format!("hom {name}");
        let (s, t) = (self.group(&def.source)?, self.group(&def.target)?);
        let m = matrix(&what, &def.matrix, t.ngens(), s.ngens())?;
        GroupHom::new(s, t, m).map_err(|e| core(&what, e))
    }

    pub fn two_group(&self, name: &str) -> Result<Pic2Group, CliError> {
        self.two_group_at(name, 0)
    }

    fn two_group_at(&self, name: &str, depth: usize) -> Result<Pic2Group, CliError> {
        if depth > MAX_DEPTH {
            return Err(CliError::input(format!("2-group {name}: definition is cyclic")));
        }
        let def =
            self.defs.two_groups.get(name).ok_or_else(|| CliError::input(format!("unknown 2-group {name:?}")))?;
        let what = format!("2-group {name}");
        let p = match def {
            TwoGroupDef::Phi => Pic2Group::phi(),
            TwoGroupDef::Zero => Pic2Group::zero(),
            TwoGroupDef::Kf { hom } => Pic2Group::from_hom(&self.hom(hom)?),
            TwoGroupDef::Discrete { group } => Pic2Group::discrete(&self.group(group)?),
            TwoGroupDef::Suspension { group } => Pic2Group::suspension(&self.group(group)?),
            TwoGroupDef::Explicit { c1, c0, d, braiding } => {
                let (c1, c0) = (self.group(c1)?, self.group(c0)?);
                let dm = matrix(&format!("{what}: d"), d, c0.ngens(), c1.ngens())?;
                let mut entries = Vec::new();
                for b in braiding {
                    if b.x >= c0.ngens() || b.y >= c0.ngens() || b.value.len() != c1.ngens() {
                        return Err(CliError::input(format!(
                            "{what}: braiding entry ({}, {}) does not fit C0 with {} and C1 with {} generators",
                            b.x,
                            b.y,
                            c0.ngens(),
                            c1.ngens()
                        )));
                    }
                    entries.push(((b.x, b.y), SparseVec::from_i64(&b.value)));
                }
                Pic2Group::new(c1, c0, dm, Braiding::from_table(entries)).map_err(|e| core(&what, e))?
            }
            TwoGroupDef::Product { factors } => {
                let parts = factors.iter().map(|f| self.two_group_at(f, depth + 1)).collect::<Result<Vec<_>, _>>()?;
                Pic2Group::product(&parts)
            }
        };
        Ok(p)
    }

    pub fn morphism(&self, name: &str) -> Result<StrictMor, CliError> {
        let def =
            self.defs.morphisms.get(name).ok_or_else(|| CliError::input(format!("unknown morphism {name:?}")))?;
        let what = format!("morphism {name}");
        let (a, b) = (self.two_group(&def.source)?, self.two_group(&def.target)?);
        let f1 = matrix(&format!("{what}: f1"), &def.f1, b.c1().ngens(), a.c1().ngens())?;
        let f0 = matrix(&format!("{what}: f0"), &def.f0, b.c0().ngens(), a.c0().ngens())?;
        StrictMor::new(&a, &b, f1, f0).map_err(|e| core(&what, e))
    }

    pub fn complex(&self, name: &str) -> Result<TwoCochainComplex, CliError> {
        let def =
            self.defs.complexes.get(name).ok_or_else(|| CliError::input(format!("unknown complex {name:?}")))?;
        let what = format!("complex {name}");
        if def.objects.is_empty() {
            return Err(CliError::input(format!("{what}: needs at least one object")));
        }
        if def.diffs.len() + 1 != def.objects.len() {
            return Err(CliError::input(format!(
                "{what}: {} objects need {} differentials, got {}",
                def.objects.len(),
                def.objects.len() - 1,
                def.diffs.len()
            )));
        }
        let objects = def.objects.iter().map(|o| self.two_group(o)).collect::<Result<Vec<_>, _>>()?;
        let mut diffs = Vec::new();
        for (n, d) in def.diffs.iter().enumerate() {
            let m = &self.defs.morphisms.get(d).ok_or_else(|| CliError::input(format!("unknown morphism {d:?}")))?;
            if m.source != def.objects[n] || m.target != def.objects[n + 1] {
                return Err(CliError::input(format!(
                    "{what}: differential {d} goes {} → {}, expected {} → {}",
                    m.source,
                    m.target,
                    def.objects[n],
                    def.objects[n + 1]
                )));
            }
            diffs.push(self.morphism(d)?);
        }
        let ntracks = objects.len().saturating_sub(2);
        let tracks = match &def.tracks {
            None => (0..ntracks).map(|n| SparseMatrix::zero(objects[n + 2].c1().ngens(), objects[n].c0().ngens())).collect(),
            Some(ts) => {
                if ts.len() != ntracks {
                    return Err(CliError::input(format!("{what}: expected {ntracks} tracks, got {}", ts.len())));
                }
                ts.iter()
                    .enumerate()
                    .map(|(n, t)| {
                        matrix(&format!("{what}: track {n}"), t, objects[n + 2].c1().ngens(), objects[n].c0().ngens())
                    })
                    .collect::<Result<Vec<_>, _>>()?
            }
        };
        TwoCochainComplex::new(def.lo, objects, diffs, tracks).map_err(|e| core(&what, e))
    }

    pub fn space(&self, name: &str) -> Result<Space, CliError> {
        self.space_at(name, 0)
    }

    fn space_at(&self, name: &str, depth: usize) -> Result<Space, CliError> {
        let def = self.defs.spaces.get(name).ok_or_else(|| CliError::input(format!("unknown space {name:?}")))?;
        let what = format!("space {name}");
        match def {
            SpaceDef::Builtin { builtin } => {
                if let Some(s) = crate::builtins::space(builtin) {
                    return Ok(s);
                }
                if depth < MAX_DEPTH && builtin != name && self.defs.spaces.contains_key(builtin) {
                    return self.space_at(builtin, depth + 1);
                }
                Err(CliError::input(format!("{what}: unknown built-in space {builtin:?}")))
            }
            SpaceDef::Poset { points, order } => {
                let index = |p: &String| {
                    points
                        .iter()
                        .position(|q| q == p)
                        .ok_or_else(|| CliError::input(format!("{what}: order mentions unknown point {p:?}")))
                };
                let rel = order.iter().map(|(x, y)| Ok((index(x)?, index(y)?))).collect::<Result<Vec<_>, CliError>>()?;
                FiniteSpace::new(points.clone(), &rel).map(Space::Poset).map_err(|e| core(&what, e))
            }
            SpaceDef::Simplicial { vertices, facets } => {
                SimplicialComplex::from_facets(*vertices, facets).map(Space::Simplicial).map_err(|e| core(&what, e))
            }
        }
    }

    /// The cover and the name of its space.
    pub fn cover(&self, name: &str) -> Result<(String, SpecialCover), CliError> {
        let def = self.defs.covers.get(name).ok_or_else(|| CliError::input(format!("unknown cover {name:?}")))?;
        let what = format!("cover {name}");
        let x = self.space(&def.space)?.points();
        if let Some(p) = def.opens.keys().find(|p| x.index_of(p).is_none()) {
            return Err(CliError::input(format!("{what}: unknown point {p:?}")));
        }
        let opens = x
            .names()
            .iter()
            .map(|p| {
                let pts = def.opens.get(p).ok_or_else(|| CliError::input(format!("{what}: no open for point {p:?}")))?;
                open_of(&x, pts).map_err(|e| CliError::input(format!("{what}: {e}")))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let c = SpecialCover::new(&x, opens).map_err(|e| core(&what, e))?;
        Ok((def.space.clone(), c))
    }

    /// A prestack recipe evaluated on a space.
    pub fn prestack(&self, name: &str, space: &str) -> Result<Prestack, CliError> {
        let def =
            self.defs.prestacks.get(name).ok_or_else(|| CliError::input(format!("unknown prestack {name:?}")))?;
        let what = format!("prestack {name}");
        let x = self.space(space)?.points();
        let p = match def {
            PrestackDef::Constant { value } => Prestack::constant(&x, &self.two_group(value)?),
            PrestackDef::Elementary { fibers } => {
                let fibers = match fibers {
                    Fibers::Uniform(v) => vec![self.two_group(v)?; x.len()],
                    Fibers::PerPoint(map) => {
                        if let Some(p) = map.keys().find(|p| x.index_of(p).is_none()) {
                            return Err(CliError::input(format!("{what}: unknown point {p:?} on space {space}")));
                        }
                        x.names()
                            .iter()
                            .map(|p| {
                                let v = map.get(p).ok_or_else(|| {
                                    CliError::input(format!("{what}: no fiber for point {p:?} of space {space}"))
                                })?;
                                self.two_group(v)
                            })
                            .collect::<Result<Vec<_>, _>>()?
                    }
                };
                Prestack::elementary(&x, &fibers).map_err(|e| core(&what, e))?
            }
            PrestackDef::Skyscraper { point, value } => {
                let i = x
                    .index_of(point)
                    .ok_or_else(|| CliError::input(format!("{what}: space {space} has no point {point:?}")))?;
                Prestack::skyscraper(&x, i, &self.two_group(value)?).map_err(|e| core(&what, e))?
            }
            PrestackDef::Table { space: own, values, restrictions } => {
                if own != space {
                    return Err(CliError::input(format!("{what}: defined on space {own}, not {space}")));
                }
                let mut table = BTreeMap::new();
                for v in values {
                    let u = open_of(&x, &v.open).map_err(|e| CliError::input(format!("{what}: {e}")))?;
                    if table.insert(u, self.two_group(&v.value)?).is_some() {
                        return Err(CliError::input(format!("{what}: two values on {}", x.format_open(u))));
                    }
                }
                let mut gens = Vec::new();
                for r in restrictions {
                    let v = open_of(&x, &r.from).map_err(|e| CliError::input(format!("{what}: {e}")))?;
                    let u = open_of(&x, &r.to).map_err(|e| CliError::input(format!("{what}: {e}")))?;
                    gens.push((v, u, self.morphism(&r.morphism)?));
                }
                Prestack::from_table(&x, table, gens).map_err(|e| core(&what, e))?
            }
        };
        p.validate().map_err(|e| core(&what, e))?;
        Ok(p)
    }
}

/// The open with the given points; it must be a down-set.
pub fn open_of(x: &FiniteSpace, points: &[String]) -> Result<OpenSet, String> {
    let mut u: OpenSet = 0;
    for p in points {
        let i = x.index_of(p).ok_or_else(|| format!("unknown point {p:?}"))?;
        u |= 1u128 << i;
    }
    if !x.is_open(u) {
        return Err(format!("{} is not open", x.format_open(u)));
    }
    Ok(u)
}
