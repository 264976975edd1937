//! 2-cochain complexes: graded 2-groups with differentials `d^n` and
//! null-homotopy tracks `∂^n: d^{n+1} d^n ⇒ 0`.

use crate::error::{Error, Result};
use crate::fgab::{FgAbGroup, SparseMatrix};
use crate::picard::{Pic2Group, StrictMor, Track};

/// Degrees `lo..=hi`, zero outside. `s^n: C0^n → C1^{n+2}` is the
/// homomorphism of `∂^n`, so `d s^n = -d^{n+1}_0 d^n_0` and
/// `s^n d = -d^{n+1}_1 d^n_1`.
#[derive(Clone, Debug)]
pub struct TwoCochainComplex {
    lo: i64,
    objects: Vec<Pic2Group>,
    diffs: Vec<StrictMor>,
    tracks: Vec<SparseMatrix>,
}

fn zero_into(g: &FgAbGroup, m: &SparseMatrix) -> bool {
    m.columns().iter().all(|c| g.is_zero_element(c))
}

impl TwoCochainComplex {
    /// `diffs[k]: A^{lo+k} → A^{lo+k+1}` and `tracks[k] = s^{lo+k}`.
    /// Validates every track and the coincidence `d^{n+2}_1 s^n = s^{n+1} d^n_0`.
    pub fn new(lo: i64, objects: Vec<Pic2Group>, diffs: Vec<StrictMor>, tracks: Vec<SparseMatrix>) -> Result<Self> {
        let c = Self::new_unchecked(lo, objects, diffs, tracks)?;
        c.validate()?;
        Ok(c)
    }

    /// Checks shapes only.
    pub fn new_unchecked(
        lo: i64,
        objects: Vec<Pic2Group>,
        diffs: Vec<StrictMor>,
        tracks: Vec<SparseMatrix>,
    ) -> Result<Self> {
        let n = objects.len();
        if n == 0 {
            return Err(Error::Input("a complex needs at least one degree".into()));
        }
        if diffs.len() != n - 1 {
            return Err(Error::Dimension(format!("{n} objects need {} differentials, got {}", n - 1, diffs.len())));
        }
        if tracks.len() != n.saturating_sub(2) {
            return Err(Error::Dimension(format!(
                "{n} objects need {} tracks, got {}",
                n.saturating_sub(2),
                tracks.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            let deg = lo + k as i64;
            let (a, b) = (&objects[k], &objects[k + 1]);
            if d.f0().ncols() != a.c0().ngens()
                || d.f0().nrows() != b.c0().ngens()
                || d.f1().ncols() != a.c1().ngens()
                || d.f1().nrows() != b.c1().ngens()
            {
                return Err(Error::Dimension(format!("differential d^{deg} has the wrong shape")));
            }
        }
        for (k, s) in tracks.iter().enumerate() {
            let deg = lo + k as i64;
            if s.ncols() != objects[k].c0().ngens() || s.nrows() != objects[k + 2].c1().ngens() {
                return Err(Error::Dimension(format!("track s^{deg} has the wrong shape")));
            }
        }
        Ok(TwoCochainComplex { lo, objects, diffs, tracks })
    }

    /// A single 2-group in degree `n`.
    pub fn concentrated(n: i64, a: Pic2Group) -> Self {
        TwoCochainComplex { lo: n, objects: vec![a], diffs: vec![], tracks: vec![] }
    }

    pub fn validate(&self) -> Result<()> {
        for n in self.lo..self.hi() {
            let d = self.diff(n);
            StrictMor::chain_map(d.source(), d.target(), d.f1().clone(), d.f0().clone())
                .map_err(|e| Error::Invariant(format!("d^{n}: {e}")))?;
        }
        for n in self.lo..self.hi() - 1 {
            let dd = self.diff(n + 1).compose(&self.diff(n));
            let zero = StrictMor::zero(self.object(n), self.object(n + 2));
            Track::new(&dd, &zero, self.track(n)).map_err(|e| Error::Invariant(format!("∂^{n}: {e}")))?;
        }
        for n in self.lo..self.hi() - 2 {
            let lhs = self.diff(n + 2).f1().compose(&self.track(n));
            let rhs = self.track(n + 1).compose(self.diff(n).f0());
            if !zero_into(self.object(n + 3).c1(), &lhs.sub(&rhs)) {
                return Err(Error::Invariant(format!(
                    "track coincidence fails in degree {n}: d^{}_1 s^{n} ≠ s^{} d^{n}_0",
                    n + 2,
                    n + 1
                )));
            }
        }
        Ok(())
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.objects.len() as i64 - 1
    }

    pub fn in_window(&self, n: i64) -> bool {
        n >= self.lo && n <= self.hi()
    }

    pub fn object(&self, n: i64) -> &Pic2Group {
        static ZERO: std::sync::OnceLock<Pic2Group> = std::sync::OnceLock::new();
        if self.in_window(n) {
            &self.objects[(n - self.lo) as usize]
        } else {
            ZERO.get_or_init(Pic2Group::zero)
        }
    }

    pub fn diff(&self, n: i64) -> StrictMor {
        if n >= self.lo && n < self.hi() {
            self.diffs[(n - self.lo) as usize].clone()
        } else {
            StrictMor::zero(self.object(n), self.object(n + 1))
        }
    }

    /// `s^n: C0^n → C1^{n+2}`, zero outside the window.
    pub fn track(&self, n: i64) -> SparseMatrix {
        if n >= self.lo && n < self.hi() - 1 {
            self.tracks[(n - self.lo) as usize].clone()
        } else {
            SparseMatrix::zero(self.object(n + 2).c1().ngens(), self.object(n).c0().ngens())
        }
    }

    /// All `C1` trivial.
    pub fn is_discrete(&self) -> bool {
        self.objects.iter().all(|a| a.c1().ngens() == 0 || a.c1().is_trivial())
    }

    /// Copy truncated to degrees `lo..=top`.
    pub fn truncate(&self, top: i64) -> Self {
        if top >= self.hi() {
            return self.clone();
        }
        let keep = (top - self.lo + 1).max(1) as usize;
        TwoCochainComplex {
            lo: self.lo,
            objects: self.objects[..keep].to_vec(),
            diffs: self.diffs[..keep - 1].to_vec(),
            tracks: self.tracks[..keep.saturating_sub(2)].to_vec(),
        }
    }
}
