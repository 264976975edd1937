//! Verification suites run by `verify`: checks on the manifest's own
//! definitions plus fixed seeded corpora.

use crate::commands::{Settings, Suite, Task};
use crate::error::CliError;
use crate::manifest::{Context, PrestackDef, Space};
use crate::report::{table, Report};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use stackcoh::complex2::{secondary_cohomology, tu_cohomology, tu_sequence};
use stackcoh::fgab::{
    format_invariants, parse_invariants, smith_normal_form, AbCochainComplex, FgAbGroup, GroupHom, Int, IntMatrix,
    SparseMatrix,
};
use stackcoh::picard::{gz_sequence, hom_from_phi, Pic2Group};
use stackcoh::prestack::{
    cohomology, contraction_check, elementary_bounds_check, refinement_example, space_tu_sequence, stackify,
    stackify_invariance_check, Mode, Prestack,
};
use stackcoh::site::{BerishviliCover, SimplicialComplex, SpecialCover};
use std::panic::{catch_unwind, AssertUnwindSafe};

const RANDOM_MATRICES: usize = 200;
const DEFAULT_SPACES: [&str; 4] = ["point", "discrete-2", "pseudocircle", "triangle-boundary"];
const DEFAULT_PAIRS: [(&str, &str); 3] =
    [("triangle-boundary", "constant-phi"), ("pseudocircle", "constant-z"), ("discrete-2", "constant-phi")];

struct Row {
    suite: &'static str,
    name: String,
    passed: bool,
    detail: String,
}

type Outcome = Result<String, String>;

struct Runner {
    rows: Vec<Row>,
}

impl Runner {
    fn check(&mut self, suite: &'static str, name: impl Into<String>, f: impl FnOnce() -> Outcome) {
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let (passed, detail) = match res {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.rows.push(Row { suite, name: name.into(), passed, detail });
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

pub fn run(ctx: &Context, suite: Suite, _settings: &Settings) -> Result<Report, CliError> {
    let mut r = Runner { rows: Vec::new() };
    let all = suite == Suite::All;
    if all || suite == Suite::Snf {
        snf(ctx, &mut r);
    }
    if all || suite == Suite::Picard {
        picard(ctx, &mut r);
    }
    if all || suite == Suite::Complex2 {
        complex2(ctx, &mut r);
    }
    if all || suite == Suite::Site {
        site(ctx, &mut r)?;
    }
    if all || suite == Suite::Prestack {
        prestack(ctx, &mut r)?;
    }
    let passed = r.rows.iter().filter(|x| x.passed).count();
    let total = r.rows.len();
    let rows: Vec<Vec<String>> = r
        .rows
        .iter()
        .map(|x| {
            vec![
                if x.passed { "PASS" } else { "FAIL" }.to_string(),
                x.suite.to_string(),
                x.name.clone(),
                x.detail.clone(),
            ]
        })
        .collect();
    let suite_name = format!("{suite:?}").to_lowercase();
    let text = format!(
        "verify --suite {suite_name}\n{}\n{passed} of {total} checks passed",
        table(&["status", "suite", "check", "detail"], &rows)
    );
    let json = json!({
        "command": "verify",
        "suite": suite_name,
        "checks": r.rows.iter().map(|x| json!({
            "suite": x.suite, "name": x.name, "passed": x.passed, "detail": x.detail,
        })).collect::<Vec<_>>(),
        "passed": passed,
        "failed": total - passed,
    });
    Ok(Report { json, text, ok: passed == total })
}

fn snf_ok(m: &IntMatrix) -> Result<(), String> {
    let s = smith_normal_form(m);
    ensure(s.u.mul(m).mul(&s.v) == s.d, || "U·M·V ≠ D".into())?;
    ensure(s.d.is_diagonal(), || "D is not diagonal".into())?;
    let unit = |d: Int| d == Int::from(1) || d == Int::from(-1);
    ensure(unit(s.u.determinant()) && unit(s.v.determinant()), || "U or V is not unimodular".into())?;
    ensure(s.v.mul(&s.v_inv) == IntMatrix::identity(m.cols), || "V·V⁻¹ ≠ 1".into())?;
    let diag = s.diagonal();
    let zero = Int::from(0);
    for w in diag.windows(2) {
        let ok = if w[0] == zero { w[1] == zero } else { &w[1] % &w[0] == zero };
        ensure(ok, || format!("{} does not divide {}", w[0], w[1]))?;
    }
    ensure(diag.iter().all(|d| *d >= zero), || "negative diagonal entry".into())
}

fn relation_matrix(g: &FgAbGroup) -> IntMatrix {
    IntMatrix { rows: g.relations().len(), cols: g.ngens(), data: g.relations().iter().map(|r| r.to_dense(g.ngens())).collect() }
}

fn snf(ctx: &Context, r: &mut Runner) {
    r.check("snf", "random matrices", || {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for t in 0..RANDOM_MATRICES {
            let (rows, cols) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
            let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect()).collect();
            snf_ok(&IntMatrix::from_i64(&data)).map_err(|e| format!("matrix {t}: {e}"))?;
        }
        Ok(format!("{RANDOM_MATRICES} seeded matrices up to 5×5"))
    });
    for name in ctx.defs.groups.keys() {
        r.check("snf", format!("group {name}"), || {
            let g = ctx.group(name).map_err(err)?;
            snf_ok(&relation_matrix(&g))?;
            let s = g.to_string();
            let back = parse_invariants(&s).map_err(err)?;
            ensure(back == g.invariants(), || format!("{s} re-parses as {}", format_invariants(&back)))?;
            Ok(s)
        });
    }
    for name in ctx.defs.homs.keys() {
        r.check("snf", format!("hom {name}"), || {
            let f = ctx.hom(name).map_err(err)?;
            let k = f.kernel();
            let (im, _, _) = f.image();
            let (co, _) = f.cokernel();
            ensure(f.source().free_rank() == k.group().free_rank() + im.free_rank(), || "rank-nullity fails".into())?;
            ensure(f.target().free_rank() == im.free_rank() + co.free_rank(), || "image and cokernel ranks do not add up".into())?;
            Ok(format!("ker {}, im {im}, coker {co}", k.group()))
        });
    }
}

fn picard(ctx: &Context, r: &mut Runner) {
    for name in ctx.defs.two_groups.keys() {
        r.check("picard", format!("2-group {name}"), || {
            let p = ctx.two_group(name).map_err(err)?;
            p.validate().map_err(err)?;
            let (co, _) = p.d().cokernel();
            ensure(p.pi0().is_isomorphic(&co), || "pi0 is not coker d".into())?;
            ensure(p.pi1().is_isomorphic(p.d().kernel().group()), || "pi1 is not ker d".into())?;
            let h = hom_from_phi(&p);
            ensure(h.qdata() == p.qdata(), || format!("Hom(Φ, P) has {}", h.qdata()))?;
            Ok(p.qdata().to_string())
        });
    }
    for name in ctx.defs.morphisms.keys() {
        r.check("picard", format!("kernel sequence of {name}"), || {
            let f = ctx.morphism(name).map_err(err)?;
            let gz = gz_sequence(&f);
            for w in gz.maps.windows(2) {
                ensure(w[1].compose(&w[0]).is_zero_map(), || "consecutive maps do not compose to zero".into())?;
            }
            ensure(gz.is_exact(), || format!("exactness flags {:?}", gz.exact))?;
            Ok(gz.groups.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", "))
        });
    }
    r.check("picard", "phi-times-2 groups", || {
        let f = ctx.morphism("phi-times-2").map_err(err)?;
        let got: Vec<String> = gz_sequence(&f).groups.iter().map(|g| g.to_string()).collect();
        let want = ["Z/2", "Z/2", "Z/2", "Z/2", "Z", "Z"];
        ensure(got == want, || format!("got {}", got.join(", ")))?;
        Ok(got.join(", "))
    });
}

fn complex2(ctx: &Context, r: &mut Runner) {
    for name in ctx.defs.complexes.keys() {
        r.check("complex2", format!("complex {name}"), || {
            let c = ctx.complex(name).map_err(err)?;
            let seq = tu_sequence(&c);
            ensure(seq.is_exact(), || format!("TU sequence not exact at {}", seq.failures().join(", ")))?;
            for n in c.lo() - 1..=c.hi() {
                let hu = tu_cohomology(&c, n);
                let h0 = secondary_cohomology(&c, n);
                let h1 = secondary_cohomology(&c, n + 1);
                ensure(h0.pi0().is_isomorphic(&hu), || format!("pi0 of H^{n} is {} but H^{n}_U is {hu}", h0.pi0()))?;
                ensure(h1.pi1().is_isomorphic(&hu), || {
                    format!("pi1 of H^{} is {} but H^{n}_U is {hu}", n + 1, h1.pi1())
                })?;
            }
            Ok(format!("TU sequence exact, {} terms", seq.groups.len()))
        });
    }
}

/// Names of tasks' spaces and `(space, prestack)` pairs, in manifest order.
fn task_targets(ctx: &Context) -> (Vec<String>, Vec<(String, String)>) {
    let mut spaces: Vec<String> = ctx.user.spaces.keys().cloned().collect();
    let mut pairs = Vec::new();
    let push_pair = |s: &str, p: &str, pairs: &mut Vec<(String, String)>| {
        let pair = (s.to_string(), p.to_string());
        if !pairs.contains(&pair) {
            pairs.push(pair);
        }
    };
    for t in &ctx.user.tasks {
        let sp = match t {
            Task::Cohomology(a) => Some((a.space.clone(), Some(a.prestack.clone()))),
            Task::TuSequence(a) => a.space.clone().map(|s| (s, a.prestack.clone())),
            Task::Stalk(a) => Some((a.space.clone(), Some(a.prestack.clone()))),
            Task::Stackify(a) => Some((a.space.clone(), Some(a.prestack.clone()))),
            Task::Compare(a) => Some((a.space.clone(), Some(a.prestack.clone()))),
            Task::GzSequence(_) | Task::Verify(_) => None,
        };
        if let Some((s, p)) = sp {
            if !spaces.contains(&s) {
                spaces.push(s.clone());
            }
            if let Some(p) = p {
                push_pair(&s, &p, &mut pairs);
            }
        }
    }
    for (name, def) in &ctx.user.prestacks {
        if let PrestackDef::Table { space, .. } = def {
            push_pair(space, name, &mut pairs);
        }
    }
    if spaces.is_empty() {
        spaces = DEFAULT_SPACES.iter().map(|s| s.to_string()).collect();
    }
    if pairs.is_empty() {
        pairs = DEFAULT_PAIRS.iter().map(|(s, p)| (s.to_string(), p.to_string())).collect();
    }
    (spaces, pairs)
}

/// `H^n(K; Z)` from simplicial cochains, `0 ≤ n ≤ dim K`.
fn simplicial_cohomology(k: &SimplicialComplex) -> Result<Vec<FgAbGroup>, String> {
    let dim = k.dim();
    let by_dim: Vec<Vec<&Vec<usize>>> =
        (0..=dim).map(|d| k.simplices().iter().filter(|s| s.len() == d + 1).collect()).collect();
    let groups: Vec<FgAbGroup> = by_dim.iter().map(|s| FgAbGroup::free(s.len())).collect();
    let mut diffs = Vec::new();
    for d in 0..dim {
        let rows: Vec<Vec<i64>> = by_dim[d + 1]
            .iter()
            .map(|t| {
                let mut row = vec![0; by_dim[d].len()];
                for i in 0..t.len() {
                    let mut f = (*t).clone();
                    f.remove(i);
                    let j = by_dim[d].iter().position(|s| **s == f).expect("faces are simplices");
                    row[j] += if i % 2 == 0 { 1 } else { -1 };
                }
                row
            })
            .collect();
        let m = SparseMatrix::from_rows_i64(&rows, by_dim[d].len());
        diffs.push(GroupHom::new(groups[d].clone(), groups[d + 1].clone(), m).map_err(err)?);
    }
    let c = AbCochainComplex::new(0, groups, diffs).map_err(err)?;
    (0..=dim as i64).map(|n| c.cohomology(n).map_err(err)).collect()
}

fn site(ctx: &Context, r: &mut Runner) -> Result<(), CliError> {
    let (spaces, _) = task_targets(ctx);
    for name in &spaces {
        let space = ctx.space(name)?;
        let x = space.points();
        let site = space.site();
        r.check("site", format!("{name}: minimal cover"), || {
            let min = SpecialCover::minimal(&x);
            ensure(min.refines(&SpecialCover::total(&x)), || "minimal cover does not refine the total cover".into())?;
            BerishviliCover::from_special(&x, &min, 3).validate(&x).map_err(err)?;
            Ok(format!("{} points, Berishvili axioms hold", x.len()))
        });
        for (cname, def) in &ctx.user.covers {
            if def.space != *name {
                continue;
            }
            r.check("site", format!("{name}: cover {cname}"), || {
                let (_, c) = ctx.cover(cname).map_err(err)?;
                ensure(SpecialCover::minimal(&x).refines(&c), || "minimal cover does not refine it".into())?;
                BerishviliCover::from_special(&x, &c, 3).validate(&x).map_err(err)?;
                Ok("refined by the minimal cover, Berishvili axioms hold".into())
            });
        }
        r.check("site", format!("{name}: truncation stability"), || {
            let p = Prestack::constant(&x, &Pic2Group::discrete(&FgAbGroup::free(1)));
            for mode in [Mode::Cech, Mode::Berishvili] {
                let a = cohomology(&site, &p, mode, 0, 1, Some(3)).map_err(err)?;
                let b = cohomology(&site, &p, mode, 0, 1, Some(4)).map_err(err)?;
                for (u, v) in a.degrees.iter().zip(&b.degrees) {
                    ensure(u.tu.is_isomorphic(&v.tu), || format!("{mode} H^{}_U: {} vs {}", u.degree, u.tu, v.tu))?;
                }
            }
            Ok("constant Z, degrees 0..=1 at truncations 3 and 4".into())
        });
        if let Space::Simplicial(k) = &space {
            r.check("site", format!("{name}: star cover vs simplicial cochains"), || {
                let want = simplicial_cohomology(k)?;
                let p = Prestack::constant(&x, &Pic2Group::discrete(&FgAbGroup::free(1)));
                let got = cohomology(&site, &p, Mode::Cech, 0, k.dim(), None).map_err(err)?;
                for (d, w) in got.degrees.iter().zip(&want) {
                    ensure(d.tu.is_isomorphic(w), || format!("H^{}: {} vs {w}", d.degree, d.tu))?;
                }
                Ok(want.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", "))
            });
        }
    }
    Ok(())
}

fn prestack(ctx: &Context, r: &mut Runner) -> Result<(), CliError> {
    let (spaces, pairs) = task_targets(ctx);
    for (s, name) in &pairs {
        let site = ctx.space(s)?.site();
        let p = ctx.prestack(name, s)?;
        let label = format!("{name} on {s}");
        r.check("prestack", format!("{label}: stalks of Pi"), || {
            let sheaves = [p.pi_presheaf(0).map_err(err)?.sheafify(), p.pi_presheaf(-1).map_err(err)?.sheafify()];
            for x in 0..p.space().len() {
                let st = p.stalk(x);
                ensure(sheaves[0].stalk(x).is_isomorphic(st.pi0()) && sheaves[1].stalk(x).is_isomorphic(st.pi1()), || {
                    format!("point {}", p.space().name(x))
                })?;
            }
            Ok(format!("{} points", p.space().len()))
        });
        r.check("prestack", format!("{label}: stackify"), || {
            let st = stackify(&p).map_err(err)?;
            for x in 0..p.space().len() {
                ensure(p.stalk(x).qdata() == st.stack.stalk(x).qdata(), || {
                    format!("stalk data changed at {}", p.space().name(x))
                })?;
            }
            Ok("result is a stack with the same stalks".into())
        });
        r.check("prestack", format!("{label}: stackify invariance"), || {
            let c = stackify_invariance_check(&site, &p, Mode::Berishvili, 1).map_err(err)?;
            if c.passed {
                Ok(c.detail)
            } else {
                Err(c.detail)
            }
        });
        r.check("prestack", format!("{label}: TU sequence"), || {
            let t = space_tu_sequence(&site, &p, Mode::Berishvili, 1).map_err(err)?;
            ensure(t.sequence.is_exact(), || format!("not exact at {}", t.sequence.failures().join(", ")))?;
            ensure(t.pi_terms_agree, || "pi terms differ from discrete coefficients".into())?;
            Ok("berishvili, exact through H^1(pi0)".into())
        });
    }
    for name in &spaces {
        let space = ctx.space(name)?;
        let x = space.points();
        let site = space.site();
        let fibers = vec![Pic2Group::phi(); x.len()];
        r.check("prestack", format!("{name}: elementary contraction"), || {
            let c = contraction_check(&x, &fibers, 3).map_err(err)?;
            if c.passed {
                Ok(c.detail)
            } else {
                Err(c.detail)
            }
        });
        r.check("prestack", format!("{name}: elementary bounds"), || {
            let c = elementary_bounds_check(&site, &fibers, Mode::Berishvili, 2).map_err(err)?;
            if c.passed {
                Ok(c.detail)
            } else {
                Err(c.detail)
            }
        });
    }
    r.check("prestack", "refinement kills cocycle", || {
        let (c, _) = refinement_example().map_err(err)?;
        if c.passed {
            Ok(c.detail)
        } else {
            Err(c.detail)
        }
    });
    Ok(())
}
