#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use stackcoh::complex2::{ComplexMor, TwoCochainComplex};
use stackcoh::fgab::{FgAbGroup, GroupHom, Int, SparseMatrix, SparseVec};
use stackcoh::picard::{Pic2Group, StrictMor};

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(r: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> SparseMatrix {
    let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| r.gen_range(-bound..=bound)).collect()).collect();
    SparseMatrix::from_rows_i64(&data, cols)
}

/// Random well-defined homomorphism: a random matrix with the columns of
/// generators that occur in source relators cleared unless they happen to work.
pub fn random_hom(r: &mut ChaCha8Rng, src: &FgAbGroup, tgt: &FgAbGroup, bound: i64) -> SparseMatrix {
    let m = random_matrix(r, tgt.ngens(), src.ngens(), bound);
    if GroupHom::new(src.clone(), tgt.clone(), m.clone()).is_ok() {
        return m;
    }
    let touched: std::collections::BTreeSet<usize> =
        src.relations().iter().flat_map(|v| v.iter().map(|(i, _)| *i).collect::<Vec<_>>()).collect();
    let cols = (0..src.ngens())
        .map(|i| if touched.contains(&i) { stackcoh::fgab::SparseVec::new() } else { m.col(i).clone() })
        .collect();
    SparseMatrix::from_columns(tgt.ngens(), cols)
}

/// Small random group: rank ≤ 3, torsion orders ≤ 8.
pub fn random_group(r: &mut ChaCha8Rng) -> FgAbGroup {
    let n = r.gen_range(0..=3);
    let orders: Vec<i64> = (0..n).map(|_| if r.gen_bool(0.4) { 0 } else { r.gen_range(2..=8) }).collect();
    let rels: Vec<Vec<i64>> = orders
        .iter()
        .enumerate()
        .filter(|(_, o)| **o != 0)
        .map(|(i, o)| {
            let mut v = vec![0; n];
            v[i] = *o;
            v
        })
        .collect();
    FgAbGroup::present(n, &rels).unwrap()
}

/// One of a few elementary 2-groups.
pub fn random_piece(r: &mut ChaCha8Rng) -> Pic2Group {
    let z = FgAbGroup::free(1);
    match r.gen_range(0..6) {
        0 => Pic2Group::phi(),
        1 => {
            let m = r.gen_range(0..=4);
            Pic2Group::from_hom(&GroupHom::from_rows_i64(z.clone(), z, &[vec![m]]).unwrap())
        }
        2 => Pic2Group::discrete(&FgAbGroup::cyclic(r.gen_range(2..=8))),
        3 => Pic2Group::suspension(&FgAbGroup::cyclic(r.gen_range(2..=8))),
        4 => Pic2Group::discrete(&z),
        _ => {
            let m = r.gen_range(2..=6);
            Pic2Group::from_hom(&GroupHom::from_rows_i64(z, FgAbGroup::cyclic(m), &[vec![1]]).unwrap())
        }
    }
}

/// Random 2-group built as a product of 1–2 pieces.
pub fn random_pic(r: &mut ChaCha8Rng) -> Pic2Group {
    let k = r.gen_range(1..=2);
    let parts: Vec<Pic2Group> = (0..k).map(|_| random_piece(r)).collect();
    Pic2Group::product(&parts)
}

/// A summand of a random complex: objects in consecutive degrees with
/// its own differentials and, for three-term pieces, a track.
struct Piece {
    start: usize,
    objs: Vec<Pic2Group>,
    /// `(f1, f0)` per step
    steps: Vec<(SparseMatrix, SparseMatrix)>,
    track: Option<SparseMatrix>,
}

fn random_summand(r: &mut ChaCha8Rng, len: usize) -> Piece {
    let start = r.gen_range(0..len);
    let room = len - start;
    let z = FgAbGroup::free(1);
    if room >= 3 && r.gen_bool(0.35) {
        // Z --k--> Z --l--> (Z =1= Z) with d∘d = kl null-homotopic via -kl
        let (k, l) = (r.gen_range(1..=3), r.gen_range(1..=3));
        let disc = Pic2Group::discrete(&z);
        let contr = Pic2Group::from_hom(&GroupHom::identity(&z));
        let one = |m: i64| SparseMatrix::from_rows_i64(&[vec![m]], 1);
        return Piece {
            start,
            objs: vec![disc.clone(), disc, contr],
            steps: vec![(SparseMatrix::zero(0, 0), one(k)), (SparseMatrix::zero(1, 0), one(l))],
            track: Some(one(-k * l)),
        };
    }
    let obj = random_piece(r);
    if room >= 2 && r.gen_bool(0.6) {
        let m = if obj.q_matrix().is_zero() { r.gen_range(-3..=3) } else { 2 * r.gen_range(-1..=1) + 1 };
        let f1 = SparseMatrix::identity(obj.c1().ngens()).scale(&m.into());
        let f0 = SparseMatrix::identity(obj.c0().ngens()).scale(&m.into());
        Piece { start, objs: vec![obj.clone(), obj], steps: vec![(f1, f0)], track: None }
    } else {
        Piece { start, objs: vec![obj], steps: vec![], track: None }
    }
}

/// A random 2-cochain complex on degrees `0..len`: a sum of small pieces
/// (single objects, arrows `P --m--> P`, and three-term pieces with a
/// nonzero track), then a random gauge change `d ↦ d + [d, h]`.
pub fn random_complex(r: &mut ChaCha8Rng, len: usize) -> TwoCochainComplex {
    let npieces = r.gen_range(1..=4);
    let pieces: Vec<Piece> = (0..npieces).map(|_| random_summand(r, len)).collect();
    let at = |p: &Piece, n: usize| -> Option<usize> { (n >= p.start && n < p.start + p.objs.len()).then(|| n - p.start) };
    let comps: Vec<Vec<usize>> =
        (0..len).map(|n| (0..pieces.len()).filter(|&i| at(&pieces[i], n).is_some()).collect()).collect();
    let objects: Vec<Pic2Group> = (0..len)
        .map(|n| {
            Pic2Group::product(&comps[n].iter().map(|&i| pieces[i].objs[at(&pieces[i], n).unwrap()].clone()).collect::<Vec<_>>())
        })
        .collect();
    // offsets of each component inside the product, for C0 and C1
    let offsets = |n: usize| -> Vec<(usize, usize)> {
        let mut acc = (0, 0);
        let mut out = Vec::new();
        for &i in &comps[n] {
            out.push(acc);
            let o = &pieces[i].objs[at(&pieces[i], n).unwrap()];
            acc = (acc.0 + o.c0().ngens(), acc.1 + o.c1().ngens());
        }
        out
    };
    let place = |dst: &mut Vec<Vec<i64>>, m: &SparseMatrix, row: usize, col: usize| {
        for (j, c) in m.columns().iter().enumerate() {
            for (i, v) in c.iter() {
                dst[row + *i][col + j] = i64::try_from(v).unwrap();
            }
        }
    };
    let mut d0s = Vec::new();
    let mut d1s = Vec::new();
    for n in 0..len.saturating_sub(1) {
        let (so, to) = (offsets(n), offsets(n + 1));
        let mut m0 = vec![vec![0i64; objects[n].c0().ngens()]; objects[n + 1].c0().ngens()];
        let mut m1 = vec![vec![0i64; objects[n].c1().ngens()]; objects[n + 1].c1().ngens()];
        for (a, &i) in comps[n].iter().enumerate() {
            let k = at(&pieces[i], n).unwrap();
            if k < pieces[i].steps.len() {
                let b = comps[n + 1].iter().position(|&j| j == i).unwrap();
                let (f1, f0) = &pieces[i].steps[k];
                place(&mut m0, f0, to[b].0, so[a].0);
                place(&mut m1, f1, to[b].1, so[a].1);
            }
        }
        d0s.push(SparseMatrix::from_rows_i64(&m0, objects[n].c0().ngens()));
        d1s.push(SparseMatrix::from_rows_i64(&m1, objects[n].c1().ngens()));
    }
    let mut base_s = Vec::new();
    for n in 0..len.saturating_sub(2) {
        let (so, to) = (offsets(n), offsets(n + 2));
        let mut m = vec![vec![0i64; objects[n].c0().ngens()]; objects[n + 2].c1().ngens()];
        for (a, &i) in comps[n].iter().enumerate() {
            if let (0, Some(t)) = (at(&pieces[i], n).unwrap(), &pieces[i].track) {
                let b = comps[n + 2].iter().position(|&j| j == i).unwrap();
                place(&mut m, t, to[b].1, so[a].0);
            }
        }
        base_s.push(SparseMatrix::from_rows_i64(&m, objects[n].c0().ngens()));
    }
    // gauge change by random h^n: C0^n → C1^{n+1}
    let hs: Vec<SparseMatrix> = (0..len.saturating_sub(1))
        .map(|n| {
            if r.gen_bool(0.7) {
                random_hom(r, objects[n].c0(), objects[n + 1].c1(), 2)
            } else {
                SparseMatrix::zero(objects[n + 1].c1().ngens(), objects[n].c0().ngens())
            }
        })
        .collect();
    let mut diffs = Vec::new();
    for n in 0..len.saturating_sub(1) {
        let f0 = d0s[n].add(&objects[n + 1].d().matrix().compose(&hs[n]));
        let f1 = d1s[n].add(&hs[n].compose(objects[n].d().matrix()));
        diffs.push(StrictMor::chain_map(&objects[n], &objects[n + 1], f1, f0).expect("gauge change keeps chain maps"));
    }
    let tracks = (0..len.saturating_sub(2))
        .map(|n| base_s[n].sub(&hs[n + 1].compose(diffs[n].f0())).sub(&d1s[n + 1].compose(&hs[n])))
        .collect();
    TwoCochainComplex::new(0, objects, diffs, tracks).expect("random complex is valid")
}

/// A random strict morphism `a → b`: `f0` is sampled, `f1` solves
/// `d f1 = f0 d`, and candidates are retried until every check passes.
pub fn random_strict_between(r: &mut ChaCha8Rng, a: &Pic2Group, b: &Pic2Group) -> StrictMor {
    for _ in 0..60 {
        let f0 = random_hom(r, a.c0(), b.c0(), 3);
        let solver = b.d().preimage_solver();
        let cols: Option<Vec<_>> = (0..a.c1().ngens())
            .map(|k| solver.solve(&f0.apply(a.d().matrix().col(k))))
            .collect();
        let Some(cols) = cols else { continue };
        let f1 = SparseMatrix::from_columns(b.c1().ngens(), cols);
        if let Ok(f) = StrictMor::new(a, b, f1, f0) {
            return f;
        }
    }
    StrictMor::zero(a, b)
}

pub fn random_strict(r: &mut ChaCha8Rng) -> StrictMor {
    let a = random_pic(r);
    let b = if r.gen_bool(0.3) { a.clone() } else { random_pic(r) };
    random_strict_between(r, &a, &b)
}

/// Degreewise direct sum of two complexes on the same window.
pub fn direct_sum(a: &TwoCochainComplex, b: &TwoCochainComplex) -> TwoCochainComplex {
    assert_eq!((a.lo(), a.hi()), (b.lo(), b.hi()));
    let (lo, hi) = (a.lo(), a.hi());
    let objects: Vec<Pic2Group> = (lo..=hi).map(|n| Pic2Group::product(&[a.object(n).clone(), b.object(n).clone()])).collect();
    let at = |n: i64| &objects[(n - lo) as usize];
    let diffs = (lo..hi)
        .map(|n| {
            let (x, y) = (a.diff(n), b.diff(n));
            StrictMor::chain_map(
                at(n),
                at(n + 1),
                SparseMatrix::block_diag(&[x.f1(), y.f1()]),
                SparseMatrix::block_diag(&[x.f0(), y.f0()]),
            )
            .unwrap()
        })
        .collect();
    let tracks = (lo..hi - 1).map(|n| SparseMatrix::block_diag(&[&a.track(n), &b.track(n)])).collect();
    TwoCochainComplex::new(lo, objects, diffs, tracks).unwrap()
}

/// Coordinate projection `a ⊕ b → b` (or `→ a`), degreewise.
pub fn projection(sum: &TwoCochainComplex, a: &TwoCochainComplex, b: &TwoCochainComplex, second: bool) -> ComplexMor {
    let maps = (sum.lo()..=sum.hi())
        .map(|n| {
            let (x, y) = (a.object(n), b.object(n));
            let pick = |na: usize, nb: usize| {
                let (keep, rows) = if second { (na..na + nb, nb) } else { (0..na, na) };
                let cols = (0..na + nb)
                    .map(|j| if keep.contains(&j) { SparseVec::unit(j - keep.start) } else { SparseVec::new() })
                    .collect();
                SparseMatrix::from_columns(rows, cols)
            };
            let tgt = if second { y } else { x };
            StrictMor::chain_map(
                sum.object(n),
                tgt,
                pick(x.c1().ngens(), y.c1().ngens()),
                pick(x.c0().ngens(), y.c0().ngens()),
            )
            .unwrap()
        })
        .collect();
    ComplexMor::strict(sum, if second { b } else { a }, sum.lo(), maps).unwrap()
}

// ---- test-side integer linear algebra, used as an independent oracle ----

pub fn int(x: i64) -> Int {
    Int::from(x)
}

pub fn int_abs(x: &Int) -> Int {
    if *x < int(0) {
        -x.clone()
    } else {
        x.clone()
    }
}

pub fn int_gcd(a: &Int, b: &Int) -> Int {
    let (mut a, mut b) = (int_abs(a), int_abs(b));
    while b != int(0) {
        let t = &a % &b;
        a = b;
        b = t;
    }
    a
}

/// Fraction-free elimination.
pub fn determinant(m: &[Vec<Int>]) -> Int {
    let n = m.len();
    if n == 0 {
        return int(1);
    }
    let mut a = m.to_vec();
    let mut sign = int(1);
    let mut prev = int(1);
    for k in 0..n - 1 {
        if a[k][k] == int(0) {
            match (k + 1..n).find(|&i| a[i][k] != int(0)) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return int(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors `d_k = g_k / g_{k-1}` from the gcds `g_k` of the
/// `k × k` minors, length `min(rows, cols)`.
pub fn minor_gcd_invariants(m: &[Vec<Int>], rows: usize, cols: usize) -> Vec<Int> {
    let mut g_prev = int(1);
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut g = int(0);
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<Int>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect()).collect();
                g = int_gcd(&g, &determinant(&sub));
            }
        }
        out.push(if g_prev == int(0) { int(0) } else { &g / &g_prev });
        g_prev = g;
    }
    out
}

/// Diagonal of a Smith form by plain elimination (no transforms).
pub fn elementary_divisors(m: &[Vec<Int>], cols: usize) -> Vec<Int> {
    let mut a: Vec<Vec<Int>> = m.to_vec();
    let rows = a.len();
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != int(0))
            .min_by_key(|&(i, j)| int_abs(&a[i][j]));
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = &a[i][t] / &a[t][t];
            for j in t..cols {
                let v = &q * &a[t][j];
                a[i][j] -= v;
            }
            clean &= a[i][t] == int(0);
        }
        for j in t + 1..cols {
            let q = &a[t][j] / &a[t][t];
            for i in t..rows {
                let v = &q * &a[i][t];
                a[i][j] -= v;
            }
            clean &= a[t][j] == int(0);
        }
        if !clean {
            continue;
        }
        // the pivot must divide the rest of the block
        let bad = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| &a[i][j] % &a[t][t] != int(0));
        if let Some((i, _)) = bad {
            for j in t..cols {
                let v = a[i][j].clone();
                a[t][j] += v;
            }
            continue;
        }
        out.push(int_abs(&a[t][t]));
        t += 1;
    }
    out
}

/// Integral cohomology of a simplicial complex as (rank, torsion orders) per
/// degree, from its simplices listed as sorted vertex sets.
pub fn simplicial_cohomology(simplices: &[Vec<usize>]) -> Vec<(usize, Vec<Int>)> {
    let dim = simplices.iter().map(|s| s.len() - 1).max().unwrap_or(0);
    let by_dim: Vec<Vec<Vec<usize>>> =
        (0..=dim).map(|k| simplices.iter().filter(|s| s.len() == k + 1).cloned().collect()).collect();
    // δ^k: C^k → C^{k+1} as a (#(k+1)-simplices × #k-simplices) matrix
    let delta = |k: usize| -> Vec<Vec<Int>> {
        let (src, tgt) = (&by_dim[k], &by_dim[k + 1]);
        tgt.iter()
            .map(|t| {
                src.iter()
                    .map(|s| match (0..t.len()).find(|&i| {
                        let mut face = t.clone();
                        face.remove(i);
                        face == *s
                    }) {
                        Some(i) => int(if i % 2 == 0 { 1 } else { -1 }),
                        None => int(0),
                    })
                    .collect()
            })
            .collect()
    };
    let divisors: Vec<Vec<Int>> = (0..dim).map(|k| elementary_divisors(&delta(k), by_dim[k].len())).collect();
    (0..=dim)
        .map(|k| {
            let out_rank = if k < dim { divisors[k].len() } else { 0 };
            let (in_rank, torsion) = if k > 0 {
                let d = &divisors[k - 1];
                (d.len(), d.iter().filter(|x| **x != int(1)).cloned().collect())
            } else {
                (0, vec![])
            };
            (by_dim[k].len() - out_rank - in_rank, torsion)
        })
        .collect()
}

/// Chains `x_0 < … < x_k` of a finite poset given by its `≤` relation.
pub fn order_complex(n: usize, leq: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..n).map(|x| vec![x]).collect();
    let mut frontier = out.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for c in &frontier {
            let last = *c.last().unwrap();
            for y in 0..n {
                if y != last && leq(last, y) {
                    let mut c2 = c.clone();
                    c2.push(y);
                    next.push(c2);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    // chains as sorted vertex sets so faces match by equality
    for c in out.iter_mut() {
        c.sort();
    }
    out
}
