//! End-to-end acceptance criteria. Runs as a plain binary and prints one
//! line per criterion; exits nonzero if any fails.

mod common;

use common::{int, rng};
use rand::Rng;
use stackcoh::complex2::{
    kernel_extension, pi0_complex, secondary_cohomology, tu_cohomology, tu_sequence, ComplexMor, LongSequence,
    TwoCochainComplex,
};
use stackcoh::fgab::{smith_normal_form, FgAbGroup, GroupHom, Int, IntMatrix, SparseMatrix, SparseVec};
use stackcoh::picard::{gz_sequence, hom_from_phi, DirectedDiagram, Pic2Group, StrictMor};
use stackcoh::prestack::{
    cohomology, compare, contraction_check, elementary_bounds_check, refinement_example, space_tu_sequence,
    stackify_invariance_check, Mode, Prestack,
};
use stackcoh::site::{FiniteSpace, SimplicialComplex, Site};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|x| int(*x)).collect()
}

fn z() -> FgAbGroup {
    FgAbGroup::free(1)
}

/// Composites of consecutive maps vanish and the alternating sum of ranks is
/// zero, for a sequence that starts and ends with zero maps in and out.
fn rank_oracle(s: &LongSequence) -> Result<(), String> {
    for (k, w) in s.maps.windows(2).enumerate() {
        let comp = w[1].compose(&w[0]);
        ensure(comp.is_zero_map(), || format!("composite into {} is nonzero", s.labels[k + 2]))?;
    }
    let chi: i64 = s.groups.iter().enumerate().map(|(k, g)| if k % 2 == 0 { 1 } else { -1 } * g.free_rank() as i64).sum();
    ensure(chi == 0, || format!("alternating rank sum {chi}"))
}

fn snf() -> Outcome {
    let mut r = rng(1);
    for t in 0..500 {
        let (rows, cols) = (r.gen_range(1..=6), r.gen_range(1..=6));
        let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| r.gen_range(-9..=9)).collect()).collect();
        let m = IntMatrix::from_i64_shape(&data, cols);
        let s = smith_normal_form(&m);
        let mul = |a: &IntMatrix, b: &IntMatrix| -> Vec<Vec<Int>> {
            (0..a.rows)
                .map(|i| (0..b.cols).map(|j| (0..a.cols).fold(int(0), |acc, k| acc + &a.data[i][k] * &b.data[k][j])).collect())
                .collect()
        };
        let um = IntMatrix { rows: s.u.rows, cols, data: mul(&s.u, &m) };
        ensure(mul(&um, &s.v) == s.d.data, || format!("matrix {t}: U M V ≠ D"))?;
        for (name, x) in [("U", &s.u), ("V", &s.v)] {
            let det = common::determinant(&x.data);
            ensure(det == int(1) || det == int(-1), || format!("matrix {t}: det {name} = {det}"))?;
        }
        let diag = s.diagonal();
        for i in 0..rows {
            for j in 0..cols {
                ensure(i == j || s.d.data[i][j] == int(0), || format!("matrix {t}: D not diagonal"))?;
            }
        }
        for w in diag.windows(2) {
            let divides = if w[0] == int(0) { w[1] == int(0) } else { &w[1] % &w[0] == int(0) };
            ensure(divides, || format!("matrix {t}: {} does not divide {}", w[0], w[1]))?;
        }
        let oracle = common::minor_gcd_invariants(&m.data, rows, cols);
        ensure(diag == oracle, || format!("matrix {t}: diagonal {diag:?}, minors give {oracle:?}"))?;
    }
    Ok("500 matrices up to 6×6".into())
}

fn gz() -> Outcome {
    let mut r = rng(2);
    let mut nonzero = 0;
    for t in 0..200 {
        let f = common::random_strict(&mut r);
        nonzero += usize::from(!f.f0().is_zero() || !f.f1().is_zero());
        let s = gz_sequence(&f);
        ensure(s.is_exact(), || format!("morphism {t}: exactness flags {:?}", s.exact))?;
        for (k, w) in s.maps.windows(2).enumerate() {
            ensure(w[1].compose(&w[0]).is_zero_map(), || format!("morphism {t}: composite {k} nonzero"))?;
        }
        // 0 → … → π^0 B → coker → 0 has alternating rank sum zero
        let coker = s.maps[4].cokernel().0;
        let ranks: Vec<i64> = s.groups.iter().chain([&coker]).map(|g| g.free_rank() as i64).collect();
        let chi: i64 = ranks.iter().enumerate().map(|(k, x)| if k % 2 == 0 { *x } else { -x }).sum();
        ensure(chi == 0, || format!("morphism {t}: ranks {ranks:?}"))?;
    }
    Ok(format!("200 strict morphisms, {nonzero} nonzero"))
}

fn secondary_vs_tu() -> Outcome {
    let mut r = rng(3);
    for t in 0..200 {
        let len = r.gen_range(1..=4);
        let c = common::random_complex(&mut r, len);
        for n in -1..=len as i64 {
            let hu = tu_cohomology(&c, n);
            let h = secondary_cohomology(&c, n);
            ensure(h.pi0().is_isomorphic(&hu), || format!("complex {t}: π^0 𝐇^{n} = {} vs H^{n}_U = {hu}", h.pi0()))?;
            let h1 = secondary_cohomology(&c, n + 1);
            ensure(h1.pi1().is_isomorphic(&hu), || {
                format!("complex {t}: π^-1 𝐇^{} = {} vs H^{n}_U = {hu}", n + 1, h1.pi1())
            })?;
        }
    }
    Ok("200 random complexes".into())
}

fn discrete_of(c: &TwoCochainComplex) -> TwoCochainComplex {
    let p0 = pi0_complex(c);
    let objects: Vec<Pic2Group> = (c.lo()..=c.hi()).map(|n| Pic2Group::discrete(&p0.group(n))).collect();
    let diffs = (c.lo()..c.hi())
        .map(|n| {
            let (a, b) = (&objects[(n - c.lo()) as usize], &objects[(n - c.lo() + 1) as usize]);
            StrictMor::chain_map(a, b, SparseMatrix::zero(0, 0), p0.differential(n).matrix().clone()).unwrap()
        })
        .collect();
    let tracks = (c.lo()..c.hi() - 1)
        .map(|n| SparseMatrix::zero(0, objects[(n - c.lo()) as usize].c0().ngens()))
        .collect();
    TwoCochainComplex::new(c.lo(), objects, diffs, tracks).unwrap()
}

fn tu_exact() -> Outcome {
    let mut r = rng(4);
    for t in 0..100 {
        let len = r.gen_range(1..=4);
        let c = common::random_complex(&mut r, len);
        let s = tu_sequence(&c);
        ensure(s.is_exact(), || format!("complex {t}: fails at {:?}", s.failures()))?;
        rank_oracle(&s).map_err(|e| format!("complex {t}: {e}"))?;
        let d = discrete_of(&c);
        let s = tu_sequence(&d);
        ensure(s.is_exact(), || format!("discrete {t}: fails at {:?}", s.failures()))?;
        for (k, l) in s.labels.iter().enumerate() {
            if l.ends_with("(pi1)") {
                ensure(s.groups[k].is_trivial(), || format!("discrete {t}: {l} ≠ 0"))?;
            }
            if l.ends_with("_U") {
                ensure(s.maps[k].is_iso(), || format!("discrete {t}: {l} → H(pi0) is not an isomorphism"))?;
            }
        }
    }
    Ok("100 random and 100 discrete complexes".into())
}

/// `B → π^0 B` as a map onto a discrete complex.
fn postnikov(b: &TwoCochainComplex) -> ComplexMor {
    let c = discrete_of(b);
    let maps = (b.lo()..=b.hi())
        .map(|n| {
            StrictMor::chain_map(
                b.object(n),
                c.object(n),
                SparseMatrix::zero(0, b.object(n).c1().ngens()),
                SparseMatrix::identity(b.object(n).c0().ngens()),
            )
            .unwrap()
        })
        .collect();
    ComplexMor::strict(b, &c, b.lo(), maps).unwrap()
}

fn extensions() -> Outcome {
    let mut r = rng(5);
    let mut split = 0;
    for t in 0..50 {
        let len = r.gen_range(1..=3);
        let is_split = t % 2 == 1;
        let p = if is_split {
            let (a, b) = (common::random_complex(&mut r, len), common::random_complex(&mut r, len));
            let s = common::direct_sum(&a, &b);
            common::projection(&s, &a, &b, true)
        } else {
            postnikov(&common::random_complex(&mut r, len))
        };
        let e = kernel_extension(&p).map_err(|e| format!("extension {t}: {e}"))?;
        let les = e.long_exact_sequence().map_err(|e| format!("extension {t}: {e}"))?;
        ensure(les.degrees.iter().all(|d| d.ok()), || format!("extension {t}: degreewise checks {:?}", les.degrees))?;
        ensure(les.sequence.is_exact(), || format!("extension {t}: fails at {:?}", les.sequence.failures()))?;
        rank_oracle(&les.sequence).map_err(|e| format!("extension {t}: {e}"))?;
        if is_split {
            split += 1;
            ensure(les.connecting.iter().all(|(_, m)| m.is_zero_map()), || format!("extension {t}: split but δ ≠ 0"))?;
        }
    }
    Ok(format!("50 extensions, {split} split with zero connecting maps"))
}

fn check_against_simplicial(name: &str, k: &SimplicialComplex, expect: &[&str]) -> Result<(), String> {
    let site = Site::simplicial(k);
    let p = Prestack::constant(site.space(), &Pic2Group::discrete(&z()));
    let hi = expect.len() - 1;
    let rep = cohomology(&site, &p, Mode::Cech, 0, hi, None).map_err(|e| e.to_string())?;
    let oracle = common::simplicial_cohomology(k.simplices());
    for d in &rep.degrees {
        let n = d.degree;
        let (rank, tors) = &oracle[n];
        let want = FgAbGroup::from_orders(&tors.iter().cloned().chain((0..*rank).map(|_| int(0))).collect::<Vec<_>>());
        ensure(d.tu.is_isomorphic(&want), || format!("{name}: H^{n} = {}, simplicial {want}", d.tu))?;
        ensure(d.tu.to_string() == expect[n], || format!("{name}: H^{n} = {}, expected {}", d.tu, expect[n]))?;
    }
    Ok(())
}

fn cech_constant_z() -> Outcome {
    check_against_simplicial("triangle boundary", &SimplicialComplex::triangle_boundary(), &["Z", "Z"])?;
    check_against_simplicial("S²", &SimplicialComplex::sphere(), &["Z", "0", "Z"])?;
    check_against_simplicial("RP²", &SimplicialComplex::projective_plane(), &["Z", "0", "Z/2"])?;
    Ok("triangle boundary, S², RP² agree with simplicial cohomology".into())
}

fn constant_phi() -> Outcome {
    let site = Site::simplicial(&SimplicialComplex::triangle_boundary());
    let p = Prestack::constant(site.space(), &Pic2Group::phi());
    let rep = cohomology(&site, &p, Mode::Cech, 0, 1, None).map_err(|e| e.to_string())?;
    let (h0, h1) = (&rep.degrees[0].tu, &rep.degrees[1].tu);
    ensure(h0.invariants() == ints(&[2, 0]), || format!("H^0_U = {h0}"))?;
    ensure(h1.invariants() == ints(&[0]), || format!("H^1_U = {h1}"))?;
    for (name, k) in [("S²", SimplicialComplex::sphere()), ("RP²", SimplicialComplex::projective_plane())] {
        let site = Site::simplicial(&k);
        let p = Prestack::constant(site.space(), &Pic2Group::phi());
        let s = space_tu_sequence(&site, &p, Mode::Cech, 2).map_err(|e| e.to_string())?;
        ensure(s.sequence.is_exact(), || format!("{name}: fails at {:?}", s.sequence.failures()))?;
        ensure(s.pi_terms_agree, || format!("{name}: π terms differ from the discrete prestacks"))?;
        rank_oracle(&s.sequence).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("triangle boundary H^0_U = {h0}, H^1_U = {h1}; S², RP² sequences exact"))
}

fn random_poset(r: &mut impl Rng, n: usize) -> FiniteSpace {
    let mut rel = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if r.gen_bool(0.35) {
                rel.push((x, y));
            }
        }
    }
    FiniteSpace::new((0..n).map(|i| format!("x{i}")).collect(), &rel).unwrap()
}

fn elementary() -> Outcome {
    let mut r = rng(8);
    let phi = Pic2Group::phi();
    let k = Pic2Group::from_hom(&GroupHom::from_rows_i64(z(), FgAbGroup::cyclic(4), &[vec![1]]).unwrap());
    let spaces = [("pseudocircle", FiniteSpace::pseudocircle()), ("random 6-point poset", random_poset(&mut r, 6))];
    for (name, x) in &spaces {
        let fibers: Vec<Pic2Group> = (0..x.len()).map(|i| if i % 2 == 0 { phi.clone() } else { k.clone() }).collect();
        let site = Site::poset(x);
        for mode in [Mode::Berishvili, Mode::Cech] {
            let c = elementary_bounds_check(&site, &fibers, mode, 2).map_err(|e| e.to_string())?;
            ensure(c.passed, || format!("{name}, {mode}: {}", c.detail))?;
        }
        let c = contraction_check(x, &fibers, 4).map_err(|e| e.to_string())?;
        ensure(c.passed, || format!("{name}: {}", c.detail))?;
    }
    Ok("pseudocircle and a random 6-point poset; contraction verified".into())
}

fn refinement() -> Outcome {
    let (c, rep) = refinement_example().map_err(|e| e.to_string())?;
    ensure(c.passed, || format!("refines {}, nonzero {}, killed {}", rep.refines, rep.was_nonzero, rep.killed))?;
    Ok(c.detail)
}

fn stackify_invariance() -> Outcome {
    for (name, x) in [("two points", FiniteSpace::discrete(2)), ("pseudocircle", FiniteSpace::pseudocircle())] {
        let site = Site::poset(&x);
        let p = Prestack::constant(&x, &Pic2Group::phi());
        let c = stackify_invariance_check(&site, &p, Mode::Berishvili, 2).map_err(|e| e.to_string())?;
        ensure(c.passed, || format!("{name}: {}", c.detail))?;
    }
    Ok("constant Φ on two points and the pseudocircle, degrees 0–2".into())
}

fn pseudocircle_compare() -> Outcome {
    let x = FiniteSpace::pseudocircle();
    let site = Site::poset(&x);
    let p = Prestack::constant(&x, &Pic2Group::discrete(&z()));
    let rep = compare(&site, &p, 1).map_err(|e| e.to_string())?;
    let row = &rep.rows[1];
    ensure(row.berishvili.invariants() == ints(&[0]), || format!("Berishvili H^1 = {}", row.berishvili))?;
    ensure(row.cech.is_trivial(), || format!("Čech H^1 = {}", row.cech))?;
    ensure(rep.disagreements() == vec![1], || format!("disagreements {:?}", rep.disagreements()))?;
    ensure(row.map_iso == Some(false), || format!("comparison map iso: {:?}", row.map_iso))?;
    let oracle = common::simplicial_cohomology(&common::order_complex(x.len(), |a, b| x.leq(a, b)));
    ensure(oracle[1] == (1, vec![]), || format!("order complex H^1 = {:?}", oracle[1]))?;
    Ok(format!("Berishvili H^1 = {}, Čech H^1 = {}", row.berishvili, row.cech))
}

/// `⊕ G_i / ⟨ι_i x − ι_j f_ij x⟩` over the generating edges.
fn colimit_of_groups(groups: &[FgAbGroup], edges: &[(usize, usize, GroupHom)]) -> FgAbGroup {
    let mut off = vec![0];
    for g in groups {
        off.push(off.last().unwrap() + g.ngens());
    }
    let sum = FgAbGroup::direct_sum(&groups.iter().collect::<Vec<_>>());
    let rels = edges.iter().flat_map(|(i, j, f)| {
        let (i, j) = (*i, *j);
        let off = off.clone();
        (0..groups[i].ngens())
            .map(move |x| SparseVec::unit(off[i] + x).sub(&f.matrix().col(x).shifted(off[j])))
            .collect::<Vec<_>>()
    });
    sum.quotient_by(rels)
}

fn colimits() -> Outcome {
    let mut r = rng(12);
    for t in 0..50 {
        let n = r.gen_range(2..=6);
        let objects: Vec<Pic2Group> = (0..n).map(|_| common::random_pic(&mut r)).collect();
        // a tree directed towards the top element n-1
        let edges: Vec<(usize, usize, StrictMor)> = (0..n - 1)
            .map(|i| {
                let j = r.gen_range(i + 1..n);
                (i, j, common::random_strict_between(&mut r, &objects[i], &objects[j]))
            })
            .collect();
        let d = DirectedDiagram::new(objects.clone(), edges.clone()).map_err(|e| format!("diagram {t}: {e}"))?;
        let colim = d.colimit().group;
        let pi0 = colimit_of_groups(
            &objects.iter().map(|p| p.pi0().clone()).collect::<Vec<_>>(),
            &edges.iter().map(|(i, j, f)| (*i, *j, f.on_pi0())).collect::<Vec<_>>(),
        );
        let pi1 = colimit_of_groups(
            &objects.iter().map(|p| p.pi1().clone()).collect::<Vec<_>>(),
            &edges.iter().map(|(i, j, f)| (*i, *j, f.on_pi1())).collect::<Vec<_>>(),
        );
        ensure(colim.pi0().is_isomorphic(&pi0), || format!("diagram {t}: π^0 {} vs {pi0}", colim.pi0()))?;
        ensure(colim.pi1().is_isomorphic(&pi1), || format!("diagram {t}: π^-1 {} vs {pi1}", colim.pi1()))?;
    }
    Ok("50 random directed diagrams".into())
}

fn hom_phi() -> Outcome {
    let mut r = rng(13);
    for t in 0..100 {
        let p = common::random_pic(&mut r);
        let h = hom_from_phi(&p);
        ensure(h.qdata() == p.qdata(), || format!("2-group {t}: {:?} vs {:?}", h.qdata(), p.qdata()))?;
    }
    Ok("100 random 2-groups".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("Smith normal form", snf),
        ("kernel sequence exactness", gz),
        ("secondary vs TU cohomology", secondary_vs_tu),
        ("TU sequence", tu_exact),
        ("extension long exact sequence", extensions),
        ("Čech, star cover, constant Z", cech_constant_z),
        ("constant Φ", constant_phi),
        ("elementary prestacks", elementary),
        ("refinement through stalks", refinement),
        ("stackification invariance", stackify_invariance),
        ("pseudocircle comparison", pseudocircle_compare),
        ("colimits", colimits),
        ("morphisms out of Φ", hom_phi),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.2}s)", k + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {e} ({secs:.2}s)", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
