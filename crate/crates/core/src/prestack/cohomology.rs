//! Čech and Berishvili cohomology with prestack coefficients, the comparison
//! between them, and the TU sequence over a space.

use super::data::Prestack;
use crate::complex2::{secondary_cohomology, tu_sequence, Cone, ComplexMor, LongSequence, TwoCochainComplex};
use crate::error::{Error, Result};
use crate::fgab::FgAbGroup;
use crate::picard::Pic2Group;
use crate::site::{nerve_diagram, refinement_map, BerishviliCover, Site, SpecialCover, TupleNerve};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    Cech,
    Berishvili,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Cech => "cech",
            Mode::Berishvili => "berishvili",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cech" => Ok(Mode::Cech),
            "berishvili" => Ok(Mode::Berishvili),
            _ => Err(Error::Input(format!("unknown mode {s:?}: expected cech or berishvili"))),
        }
    }
}

/// Tuples of the cover the given theory is computed at, levels `0..=top`.
pub fn cover_nerve(site: &Site, mode: Mode, top: usize) -> TupleNerve {
    match mode {
        Mode::Cech => site.cech_cover().cech_nerve(top),
        Mode::Berishvili => {
            let x = site.space();
            BerishviliCover::from_special(x, &SpecialCover::minimal(x), top).nerve(top)
        }
    }
}

/// The 2-cochain complex `C^*(cover, P)` in degrees `0..=top`.
pub fn cochain_complex(site: &Site, p: &Prestack, mode: Mode, top: usize) -> Result<TwoCochainComplex> {
    nerve_diagram(&cover_nerve(site, mode, top), p)?.to_complex_unchecked()
}

/// Smallest truncation at which degree `n` is computed exactly.
pub fn required_truncation(n: usize) -> usize {
    n + 2
}

#[derive(Clone, Debug)]
pub struct DegreeResult {
    pub degree: usize,
    /// `H^n_U`
    pub tu: FgAbGroup,
    /// `𝐇^n`
    pub secondary: Pic2Group,
}

#[derive(Clone, Debug)]
pub struct CohomologyReport {
    pub mode: Mode,
    pub truncation: usize,
    pub degrees: Vec<DegreeResult>,
}

fn check_truncation(hi: usize, truncation: Option<usize>) -> Result<usize> {
    let need = required_truncation(hi);
    match truncation {
        Some(t) if t < need => Err(Error::Input(format!(
            "truncation {t} is too small for degree {hi}: need at least {need}"
        ))),
        Some(t) => Ok(t),
        None => Ok(need),
    }
}

/// `H^n_U` and `𝐇^n` for `lo ≤ n ≤ hi`.
pub fn cohomology(
    site: &Site,
    p: &Prestack,
    mode: Mode,
    lo: usize,
    hi: usize,
    truncation: Option<usize>,
) -> Result<CohomologyReport> {
    if lo > hi {
        return Err(Error::Input(format!("empty degree window {lo}..={hi}")));
    }
    let top = check_truncation(hi, truncation)?;
    let c = cochain_complex(site, p, mode, top)?;
    let cone = Cone::new(&c);
    let degrees = (lo..=hi)
        .map(|n| DegreeResult {
            degree: n,
            tu: cone.subquotient(n as i64).group,
            secondary: secondary_cohomology(&c, n as i64),
        })
        .collect();
    Ok(CohomologyReport { mode, truncation: top, degrees })
}

/// `H^n_U` only, for `0 ≤ n ≤ hi`.
pub fn tu_groups(site: &Site, p: &Prestack, mode: Mode, hi: usize) -> Result<Vec<FgAbGroup>> {
    let c = cochain_complex(site, p, mode, required_truncation(hi))?;
    let cone = Cone::new(&c);
    Ok((0..=hi).map(|n| cone.subquotient(n as i64).group).collect())
}

#[derive(Clone, Debug)]
pub struct CompareRow {
    pub degree: usize,
    pub cech: FgAbGroup,
    pub berishvili: FgAbGroup,
    pub equal: bool,
    /// whether the comparison `Čech → Berishvili` is an isomorphism, when
    /// the Čech cover is the minimal one and the map is available
    pub map_iso: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct CompareReport {
    pub rows: Vec<CompareRow>,
}

impl CompareReport {
    pub fn agree(&self) -> bool {
        self.rows.iter().all(|r| r.equal)
    }

    pub fn disagreements(&self) -> Vec<usize> {
        self.rows.iter().filter(|r| !r.equal).map(|r| r.degree).collect()
    }
}

/// Both theories in degrees `0..=hi`, with the induced comparison map when
/// the Čech cover is a special cover.
pub fn compare(site: &Site, p: &Prestack, hi: usize) -> Result<CompareReport> {
    let top = required_truncation(hi);
    let cn = cover_nerve(site, Mode::Cech, top);
    let bn = cover_nerve(site, Mode::Berishvili, top);
    let cc = nerve_diagram(&cn, p)?.to_complex_unchecked()?;
    let bc = nerve_diagram(&bn, p)?.to_complex_unchecked()?;
    let map = if site.cech_is_special() {
        let maps = refinement_map(&bn, &cn, p)?;
        Some(ComplexMor::strict(&cc, &bc, 0, maps)?)
    } else {
        None
    };
    let (ccone, bcone) = (Cone::new(&cc), Cone::new(&bc));
    let rows = (0..=hi)
        .map(|n| {
            let (a, b) = (ccone.subquotient(n as i64).group, bcone.subquotient(n as i64).group);
            CompareRow {
                degree: n,
                equal: a.is_isomorphic(&b),
                cech: a,
                berishvili: b,
                map_iso: map.as_ref().map(|m| m.on_tu(n as i64).is_iso()),
            }
        })
        .collect();
    Ok(CompareReport { rows })
}

#[derive(Clone, Debug)]
pub struct SpaceTuSequence {
    pub sequence: LongSequence,
    /// the `π^i` terms agree with the cohomology of the discrete prestacks
    /// built from the `π^i` presheaves
    pub pi_terms_agree: bool,
}

/// `… → H^{n+1}(X, π^{-1}P) → H^n_U(X, P) → H^n(X, π^0 P) → H^{n+2}(X, π^{-1}P) → …`
/// up to `H^hi(X, π^0 P)`.
pub fn space_tu_sequence(site: &Site, p: &Prestack, mode: Mode, hi: usize) -> Result<SpaceTuSequence> {
    let top = required_truncation(hi);
    let c = cochain_complex(site, p, mode, top)?;
    let full = tu_sequence(&c);
    let end = full
        .labels
        .iter()
        .position(|l| *l == format!("H^{hi}(pi0)"))
        .ok_or_else(|| Error::Invariant(format!("TU sequence has no H^{hi}(pi0) term")))?;
    let sequence = LongSequence::new(
        full.labels[..=end].to_vec(),
        full.groups[..=end].to_vec(),
        full.maps[..end].to_vec(),
    );
    let d0 = Prestack::discrete(&p.pi_presheaf(0)?)?;
    let d1 = Prestack::discrete(&p.pi_presheaf(-1)?)?;
    let c0 = cochain_complex(site, &d0, mode, top)?;
    let c1 = cochain_complex(site, &d1, mode, top)?;
    let (k0, k1) = (Cone::new(&c0), Cone::new(&c1));
    let mut agree = true;
    for (l, g) in sequence.labels.iter().zip(&sequence.groups) {
        let Some(rest) = l.strip_prefix("H^") else { continue };
        let Some((deg, kind)) = rest.split_once('(') else { continue };
        let Ok(n) = deg.parse::<i64>() else { continue };
        let other = match kind {
            "pi0)" => k0.subquotient(n).group,
            "pi1)" => k1.subquotient(n).group,
            _ => continue,
        };
        agree &= n < 0 || other.is_isomorphic(g);
    }
    Ok(SpaceTuSequence { sequence, pi_terms_agree: agree })
}

#[derive(Clone, Debug)]
pub struct Stabilization {
    /// `H^n_U` for `0 ≤ n ≤ hi`, one row per refinement round
    pub rounds: Vec<Vec<FgAbGroup>>,
    /// some round changed a value
    pub changed: bool,
}

/// Berishvili `H_U` at the cover built from the minimal special cover, then
/// after repeated refinement through minimal opens, until two consecutive
/// rounds agree or `max_rounds` is reached.
pub fn berishvili_stabilization(p: &Prestack, hi: usize, max_rounds: usize) -> Result<Stabilization> {
    let x = p.space();
    let top = required_truncation(hi);
    let mut cover = BerishviliCover::from_special(x, &SpecialCover::minimal(x), top);
    let groups = |c: &BerishviliCover| -> Result<Vec<FgAbGroup>> {
        let cone = Cone::new(&nerve_diagram(&c.nerve(top), p)?.to_complex_unchecked()?);
        Ok((0..=hi).map(|n| cone.subquotient(n as i64).group).collect())
    };
    let mut rounds = vec![groups(&cover)?];
    let mut changed = false;
    for _ in 0..max_rounds {
        cover = super::verify::refinement_through_stalks(x, &cover);
        let next = groups(&cover)?;
        let last = rounds.last().unwrap();
        let same = last.iter().zip(&next).all(|(a, b)| a.is_isomorphic(b));
        changed |= !same;
        rounds.push(next);
        if same {
            break;
        }
    }
    Ok(Stabilization { rounds, changed })
}
