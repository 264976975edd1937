//! Morphisms of 2-cochain complexes: degreewise strict morphisms `f^n` with
//! tracks `τ^n: f^{n+1} d ⇒ d f^n`.

use super::complex::TwoCochainComplex;
use super::cone::Cone;
use crate::error::{Error, Result};
use crate::fgab::{GroupHom, SparseMatrix};
use crate::picard::{StrictMor, Track};

#[derive(Clone, Debug)]
pub struct ComplexMor {
    source: TwoCochainComplex,
    target: TwoCochainComplex,
    lo: i64,
    maps: Vec<StrictMor>,
    taus: Vec<SparseMatrix>,
}

impl ComplexMor {
    /// `maps[k]` and `taus[k]` sit in degree `lo + k`; both are zero elsewhere.
    /// `τ^n: C0_A^n → C1_B^{n+1}`.
    pub fn new(
        source: &TwoCochainComplex,
        target: &TwoCochainComplex,
        lo: i64,
        maps: Vec<StrictMor>,
        taus: Vec<SparseMatrix>,
    ) -> Result<Self> {
        if maps.len() != taus.len() {
            return Err(Error::Dimension(format!("{} component maps but {} tracks", maps.len(), taus.len())));
        }
        let m = ComplexMor { source: source.clone(), target: target.clone(), lo, maps, taus };
        m.validate()?;
        Ok(m)
    }

    /// Strictly commuting morphism (all `τ^n = 0`).
    pub fn strict(source: &TwoCochainComplex, target: &TwoCochainComplex, lo: i64, maps: Vec<StrictMor>) -> Result<Self> {
        let taus = maps
            .iter()
            .enumerate()
            .map(|(k, f)| {
                let n = lo + k as i64;
                SparseMatrix::zero(target.object(n + 1).c1().ngens(), f.source().c0().ngens())
            })
            .collect();
        Self::new(source, target, lo, maps, taus)
    }

    pub fn identity(c: &TwoCochainComplex) -> Self {
        let maps = (c.lo()..=c.hi()).map(|n| StrictMor::identity(c.object(n))).collect();
        Self::strict(c, c, c.lo(), maps).expect("identity is a morphism")
    }

    fn range(&self) -> std::ops::RangeInclusive<i64> {
        let lo = self.source.lo().min(self.target.lo()) - 1;
        let hi = self.source.hi().max(self.target.hi()) + 1;
        lo..=hi
    }

    fn validate(&self) -> Result<()> {
        for (k, (f, t)) in self.maps.iter().zip(&self.taus).enumerate() {
            let n = self.lo + k as i64;
            let (a, b) = (self.source.object(n), self.target.object(n));
            if f.f0().ncols() != a.c0().ngens()
                || f.f0().nrows() != b.c0().ngens()
                || f.f1().ncols() != a.c1().ngens()
                || f.f1().nrows() != b.c1().ngens()
            {
                return Err(Error::Dimension(format!("component f^{n} has the wrong shape")));
            }
            if t.ncols() != a.c0().ngens() || t.nrows() != self.target.object(n + 1).c1().ngens() {
                return Err(Error::Dimension(format!("track τ^{n} has the wrong shape")));
            }
            StrictMor::chain_map(a, b, f.f1().clone(), f.f0().clone()).map_err(|e| Error::Invariant(format!("f^{n}: {e}")))?;
        }
        for n in self.range() {
            let fd = self.map(n + 1).compose(&self.source.diff(n));
            let df = self.target.diff(n).compose(&self.map(n));
            Track::new(&fd, &df, self.tau(n)).map_err(|e| Error::Invariant(format!("τ^{n}: {e}")))?;
        }
        for n in self.range() {
            // f^{n+2}_1 s_A = τ^{n+1} d_{A,0} + d_{B,1} τ^n + s_B f^n_0
            let lhs = self.map(n + 2).f1().compose(&self.source.track(n));
            let rhs = self
                .tau(n + 1)
                .compose(self.source.diff(n).f0())
                .add(&self.target.diff(n + 1).f1().compose(&self.tau(n)))
                .add(&self.target.track(n).compose(self.map(n).f0()));
            let g = self.target.object(n + 2).c1();
            if !lhs.sub(&rhs).columns().iter().all(|c| g.is_zero_element(c)) {
                return Err(Error::Invariant(format!("morphism is not compatible with the tracks in degree {n}")));
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &TwoCochainComplex {
        &self.source
    }

    pub fn target(&self) -> &TwoCochainComplex {
        &self.target
    }

    pub fn map(&self, n: i64) -> StrictMor {
        let k = n - self.lo;
        if k >= 0 && (k as usize) < self.maps.len() {
            self.maps[k as usize].clone()
        } else {
            StrictMor::zero(self.source.object(n), self.target.object(n))
        }
    }

    pub fn tau(&self, n: i64) -> SparseMatrix {
        let k = n - self.lo;
        if k >= 0 && (k as usize) < self.taus.len() {
            self.taus[k as usize].clone()
        } else {
            SparseMatrix::zero(self.target.object(n + 1).c1().ngens(), self.source.object(n).c0().ngens())
        }
    }

    /// `(a, m) ↦ (f0 a, f1 m + τ a)` on `T^n`.
    pub fn cone_matrix(&self, n: i64) -> SparseMatrix {
        let f = self.map(n);
        let g = self.map(n + 1);
        let m1 = self.source.object(n + 1).c1().ngens();
        let b0 = self.target.object(n).c0().ngens();
        let top = SparseMatrix::hstack(f.f0(), &SparseMatrix::zero(b0, m1));
        let bottom = SparseMatrix::hstack(&self.tau(n), g.f1());
        SparseMatrix::vstack(&top, &bottom)
    }

    /// Induced map `H^n_U(A) → H^n_U(B)`.
    pub fn on_tu(&self, n: i64) -> GroupHom {
        self.on_tu_with(&Cone::new(&self.source), &Cone::new(&self.target), n)
    }

    pub(crate) fn on_tu_with(&self, ca: &Cone, cb: &Cone, n: i64) -> GroupHom {
        ca.subquotient(n).induced(&cb.subquotient(n), &self.cone_matrix(n)).expect("cone map is a chain map")
    }

    /// Isomorphism on `H^n_U` in every degree.
    pub fn is_tu_quasi_iso(&self) -> bool {
        let (ca, cb) = (Cone::new(&self.source), Cone::new(&self.target));
        self.range().all(|n| self.on_tu_with(&ca, &cb, n).is_iso())
    }
}
