//! Command arguments (shared by the command line and manifest tasks) and
//! their execution into reports.

use crate::error::CliError;
use crate::manifest::Context;
use crate::report::{group_json, pic_json, table, yes_no, Report};
use clap::{Args, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};
use stackcoh::complex2::{tu_sequence, LongSequence};
use stackcoh::fgab::{format_invariants, parse_invariants, FgAbGroup};
use stackcoh::picard::gz_sequence;
use stackcoh::prestack::{
    berishvili_stabilization, cohomology, compare, required_truncation, space_tu_sequence, stack_defect, stackify,
    Mode,
};
use stackcoh::site::Site;

/// Rounds of refinement tried by `--stabilize` before giving up.
const STABILIZE_ROUNDS: usize = 4;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    #[default]
    Cech,
    Berishvili,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Cech => Mode::Cech,
            ModeArg::Berishvili => Mode::Berishvili,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Snf,
    Picard,
    Complex2,
    Site,
    Prestack,
    #[default]
    All,
}

fn two() -> usize {
    2
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CohomologyArgs {
    #[arg(long)]
    pub space: String,
    #[arg(long)]
    pub prestack: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Cech)]
    #[serde(default)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    pub min_degree: usize,
    #[arg(long, default_value_t = 2)]
    #[serde(default = "two")]
    pub max_degree: usize,
    /// Highest cochain level built; at least max-degree + 2.
    #[arg(long)]
    #[serde(default)]
    pub truncation: Option<usize>,
    /// Special cover for Čech mode (default: the site's own cover).
    #[arg(long)]
    #[serde(default)]
    pub cover: Option<String>,
    /// Berishvili only: refine until two rounds agree.
    #[arg(long)]
    #[serde(default)]
    pub stabilize: bool,
    /// Expected `H^n_U` for the degree window, separated by `;`
    /// (e.g. `"Z + Z/2; Z"`); a mismatch is a verification failure.
    #[arg(long)]
    #[serde(default)]
    pub expect: Option<String>,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TuSequenceArgs {
    /// A 2-cochain complex; otherwise `--space` and `--prestack`.
    #[arg(long, conflicts_with_all = ["space", "prestack"])]
    #[serde(default)]
    pub complex: Option<String>,
    #[arg(long, requires = "prestack")]
    #[serde(default)]
    pub space: Option<String>,
    #[arg(long, requires = "space")]
    #[serde(default)]
    pub prestack: Option<String>,
    #[arg(long, value_enum, default_value_t = ModeArg::Cech)]
    #[serde(default)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 2)]
    #[serde(default = "two")]
    pub max_degree: usize,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GzArgs {
    #[arg(long)]
    pub morphism: String,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StalkArgs {
    #[arg(long)]
    pub space: String,
    #[arg(long)]
    pub prestack: String,
    /// One point; all points when omitted.
    #[arg(long)]
    #[serde(default)]
    pub point: Option<String>,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StackifyArgs {
    #[arg(long)]
    pub space: String,
    #[arg(long)]
    pub prestack: String,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompareArgs {
    #[arg(long)]
    pub space: String,
    #[arg(long)]
    pub prestack: String,
    #[arg(long, default_value_t = 2)]
    #[serde(default = "two")]
    pub max_degree: usize,
    #[arg(long)]
    #[serde(default)]
    pub cover: Option<String>,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    #[serde(default)]
    pub suite: Suite,
}

/// One command, as given on the command line or as a manifest task.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Task {
    Cohomology(CohomologyArgs),
    TuSequence(TuSequenceArgs),
    GzSequence(GzArgs),
    Stalk(StalkArgs),
    Stackify(StackifyArgs),
    Compare(CompareArgs),
    Verify(VerifyArgs),
}

impl Task {
    pub fn name(&self) -> &'static str {
        match self {
            Task::Cohomology(_) => "cohomology",
            Task::TuSequence(_) => "tu-sequence",
            Task::GzSequence(_) => "gz-sequence",
            Task::Stalk(_) => "stalk",
            Task::Stackify(_) => "stackify",
            Task::Compare(_) => "compare",
            Task::Verify(_) => "verify",
        }
    }
}

/// Process-wide settings read from the environment.
#[derive(Debug, Clone, Copy, Default)]
pub struct Settings {
    /// `STACKCOH_MAX_DEGREE`: truncation level used when no flag is given
    pub truncation: Option<usize>,
}

impl Settings {
    pub const ENV: &'static str = "STACKCOH_MAX_DEGREE";

    pub fn from_env() -> Result<Self, CliError> {
        match std::env::var(Self::ENV) {
            Ok(v) if !v.trim().is_empty() => {
                let t = v.trim().parse::<usize>().map_err(|_| {
                    CliError::input(format!("{} must be a non-negative integer, got {v:?}", Self::ENV))
                })?;
                Ok(Settings { truncation: Some(t) })
            }
            _ => Ok(Settings::default()),
        }
    }

    /// Rejects an override too small for degree `hi`.
    fn check(&self, hi: usize) -> Result<(), CliError> {
        match self.truncation {
            Some(t) if t < required_truncation(hi) => Err(CliError::input(format!(
                "truncation {t} (from {}) is too small for degree {hi}: need at least {}",
                Self::ENV,
                required_truncation(hi)
            ))),
            _ => Ok(()),
        }
    }
}

pub fn execute(ctx: &Context, task: &Task, settings: &Settings) -> Result<Report, CliError> {
    match task {
        Task::Cohomology(a) => run_cohomology(ctx, a, settings),
        Task::TuSequence(a) => run_tu_sequence(ctx, a, settings),
        Task::GzSequence(a) => run_gz(ctx, a),
        Task::Stalk(a) => run_stalk(ctx, a),
        Task::Stackify(a) => run_stackify(ctx, a),
        Task::Compare(a) => run_compare(ctx, a, settings),
        Task::Verify(a) => crate::verify::run(ctx, a.suite, settings),
    }
}

fn site_for(ctx: &Context, space: &str, cover: Option<&str>) -> Result<Site, CliError> {
    let s = ctx.space(space)?;
    match cover {
        None => Ok(s.site()),
        Some(c) => {
            let (cs, sc) = ctx.cover(c)?;
            if cs != space {
                return Err(CliError::input(format!("cover {c} is a cover of {cs}, not {space}")));
            }
            Ok(Site::poset_at(&s.points(), &sc))
        }
    }
}

fn summary(groups: &[(usize, &FgAbGroup)]) -> String {
    groups.iter().map(|(n, g)| format!("H^{n}_U = {g}")).collect::<Vec<_>>().join("; ")
}

fn run_cohomology(ctx: &Context, a: &CohomologyArgs, settings: &Settings) -> Result<Report, CliError> {
    let mode: Mode = a.mode.into();
    if a.cover.is_some() && mode != Mode::Cech {
        return Err(CliError::input("--cover selects the Čech cover and needs --mode cech"));
    }
    if a.stabilize && mode != Mode::Berishvili {
        return Err(CliError::input("--stabilize needs --mode berishvili"));
    }
    let site = site_for(ctx, &a.space, a.cover.as_deref())?;
    let p = ctx.prestack(&a.prestack, &a.space)?;
    let r = cohomology(&site, &p, mode, a.min_degree, a.max_degree, a.truncation.or(settings.truncation))?;
    let line = summary(&r.degrees.iter().map(|d| (d.degree, &d.tu)).collect::<Vec<_>>());
    let rows: Vec<Vec<String>> = r
        .degrees
        .iter()
        .map(|d| vec![d.degree.to_string(), d.tu.to_string(), d.secondary.qdata().to_string()])
        .collect();
    let mut text = format!(
        "cohomology of {} on {} ({mode}, truncation {})\n{line}\n\n{}",
        a.prestack,
        a.space,
        r.truncation,
        table(&["n", "H^n_U", "secondary H^n"], &rows)
    );
    let mut json = json!({
        "command": "cohomology",
        "space": a.space,
        "prestack": a.prestack,
        "mode": mode.to_string(),
        "cover": a.cover,
        "truncation": r.truncation,
        "summary": line,
        "degrees": r.degrees.iter().map(|d| json!({
            "degree": d.degree,
            "tu": group_json(&d.tu),
            "secondary": pic_json(&d.secondary),
        })).collect::<Vec<_>>(),
    });
    if a.stabilize {
        let s = berishvili_stabilization(&p, a.max_degree, STABILIZE_ROUNDS)?;
        text.push_str("\n\nstabilization");
        let mut rounds = Vec::new();
        for (k, gs) in s.rounds.iter().enumerate() {
            let l = summary(&gs.iter().enumerate().collect::<Vec<_>>());
            text.push_str(&format!("\nround {k}: {l}"));
            rounds.push(json!({ "round": k, "groups": gs.iter().map(group_json).collect::<Vec<_>>() }));
        }
        text.push_str(&format!("\nchanged: {}", yes_no(s.changed)));
        json["stabilization"] = json!({ "rounds": rounds, "changed": s.changed });
    }
    let mut ok = true;
    if let Some(e) = &a.expect {
        let want = e.split(';').map(parse_invariants).collect::<Result<Vec<_>, _>>()?;
        if want.len() != r.degrees.len() {
            return Err(CliError::input(format!(
                "--expect lists {} groups for {} degrees",
                want.len(),
                r.degrees.len()
            )));
        }
        let bad: Vec<String> = r
            .degrees
            .iter()
            .zip(&want)
            .filter(|(d, w)| d.tu.invariants() != **w)
            .map(|(d, w)| format!("H^{}_U is {}, expected {}", d.degree, d.tu, format_invariants(w)))
            .collect();
        ok = bad.is_empty();
        let line = if ok { "met".to_string() } else { format!("failed ({})", bad.join("; ")) };
        text.push_str(&format!("\nexpectation: {line}"));
        json["expectation_met"] = json!(ok);
    }
    Ok(Report { json, text, ok })
}

fn sequence_parts(seq: &LongSequence) -> (Vec<Vec<String>>, Value) {
    let n = seq.groups.len();
    let rows = (0..n)
        .map(|k| {
            let exact = if k == 0 || k + 1 == n { "-".to_string() } else { yes_no(seq.exact[k - 1]).to_string() };
            vec![seq.labels[k].clone(), seq.groups[k].to_string(), exact]
        })
        .collect();
    let terms = (0..n)
        .map(|k| {
            let mut t = group_json(&seq.groups[k]);
            t["label"] = json!(seq.labels[k]);
            if k > 0 && k + 1 < n {
                t["exact"] = json!(seq.exact[k - 1]);
            }
            t
        })
        .collect::<Vec<_>>();
    (rows, Value::Array(terms))
}

fn verdict(seq: &LongSequence) -> String {
    if seq.is_exact() {
        "exact".into()
    } else {
        format!("not exact at {}", seq.failures().join(", "))
    }
}

fn run_tu_sequence(ctx: &Context, a: &TuSequenceArgs, settings: &Settings) -> Result<Report, CliError> {
    let (title, seq, extra, mut json) = match (&a.complex, &a.space, &a.prestack) {
        (Some(c), None, None) => {
            let cx = ctx.complex(c)?;
            (format!("tu-sequence of complex {c}"), tu_sequence(&cx), None, json!({ "complex": c }))
        }
        (None, Some(s), Some(p)) => {
            settings.check(a.max_degree)?;
            let mode: Mode = a.mode.into();
            let site = ctx.space(s)?.site();
            let pr = ctx.prestack(p, s)?;
            let r = space_tu_sequence(&site, &pr, mode, a.max_degree)?;
            (
                format!("tu-sequence of {p} on {s} ({mode}, through H^{}(pi0))", a.max_degree),
                r.sequence,
                Some(r.pi_terms_agree),
                json!({ "space": s, "prestack": p, "mode": mode.to_string(), "max_degree": a.max_degree }),
            )
        }
        _ => return Err(CliError::input("tu-sequence needs either --complex or both --space and --prestack")),
    };
    let (rows, terms) = sequence_parts(&seq);
    let v = verdict(&seq);
    let mut text = format!("{title}\n{}\nverdict: {v}", table(&["term", "group", "exact"], &rows));
    json["command"] = json!("tu-sequence");
    json["terms"] = terms;
    json["verdict"] = json!(v);
    json["exact"] = json!(seq.is_exact());
    let mut ok = seq.is_exact();
    if let Some(agree) = extra {
        text.push_str(&format!("\npi terms match discrete coefficients: {}", yes_no(agree)));
        json["pi_terms_agree"] = json!(agree);
        ok &= agree;
    }
    Ok(Report { json, text, ok })
}

pub const GZ_LABELS: [&str; 6] = ["pi1(Ker f)", "pi1(A)", "pi1(B)", "pi0(Ker f)", "pi0(A)", "pi0(B)"];

fn run_gz(ctx: &Context, a: &GzArgs) -> Result<Report, CliError> {
    let f = ctx.morphism(&a.morphism)?;
    let gz = gz_sequence(&f);
    let rows: Vec<Vec<String>> = gz
        .groups
        .iter()
        .enumerate()
        .map(|(k, g)| {
            let e = if k < gz.exact.len() { yes_no(gz.exact[k]).to_string() } else { "-".to_string() };
            vec![GZ_LABELS[k].to_string(), g.to_string(), e]
        })
        .collect();
    let v = if gz.is_exact() {
        "exact".to_string()
    } else {
        let bad: Vec<&str> = gz.exact.iter().enumerate().filter(|(_, e)| !**e).map(|(k, _)| GZ_LABELS[k]).collect();
        format!("not exact at {}", bad.join(", "))
    };
    let list = gz.groups.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ");
    let text = format!(
        "gz-sequence of {}\n{}\ngroups: {list}\nverdict: {v}",
        a.morphism,
        table(&["term", "group", "exact"], &rows)
    );
    let terms = gz
        .groups
        .iter()
        .enumerate()
        .map(|(k, g)| {
            let mut t = group_json(g);
            t["label"] = json!(GZ_LABELS[k]);
            if k < gz.exact.len() {
                t["exact"] = json!(gz.exact[k]);
            }
            t
        })
        .collect::<Vec<_>>();
    let json = json!({
        "command": "gz-sequence",
        "morphism": a.morphism,
        "terms": terms,
        "verdict": v,
        "exact": gz.is_exact(),
    });
    Ok(Report { json, text, ok: gz.is_exact() })
}

fn run_stalk(ctx: &Context, a: &StalkArgs) -> Result<Report, CliError> {
    let p = ctx.prestack(&a.prestack, &a.space)?;
    let x = p.space().clone();
    let points: Vec<usize> = match &a.point {
        Some(name) => vec![x
            .index_of(name)
            .ok_or_else(|| CliError::input(format!("space {} has no point {name:?}", a.space)))?],
        None => (0..x.len()).collect(),
    };
    let sheaves = [p.pi_presheaf(0)?.sheafify(), p.pi_presheaf(-1)?.sheafify()];
    let mut rows = Vec::new();
    let mut items = Vec::new();
    let mut ok = true;
    for &i in &points {
        let s = p.stalk(i);
        let (s0, s1) = (sheaves[0].stalk(i), sheaves[1].stalk(i));
        let agree = s0.is_isomorphic(s.pi0()) && s1.is_isomorphic(s.pi1());
        ok &= agree;
        rows.push(vec![x.name(i).to_string(), s.qdata().to_string(), s0.to_string(), s1.to_string(), yes_no(agree).into()]);
        items.push(json!({
            "point": x.name(i),
            "stalk": pic_json(s),
            "sheaf_pi0": group_json(&s0),
            "sheaf_pi1": group_json(&s1),
            "agree": agree,
        }));
    }
    let text = format!(
        "stalks of {} on {}\n{}",
        a.prestack,
        a.space,
        table(&["point", "stalk", "Pi^0 stalk", "Pi^-1 stalk", "agree"], &rows)
    );
    let json = json!({ "command": "stalk", "space": a.space, "prestack": a.prestack, "stalks": items });
    Ok(Report { json, text, ok })
}

fn run_stackify(ctx: &Context, a: &StackifyArgs) -> Result<Report, CliError> {
    let p = ctx.prestack(&a.prestack, &a.space)?;
    let x = p.space().clone();
    let defect = stack_defect(&p)?;
    let (s, failure) = match stackify(&p) {
        Ok(s) => (Some(s), None),
        Err(stackcoh::Error::Invariant(m)) => (None, Some(m)),
        Err(e) => return Err(e.into()),
    };
    let mut text = format!("stackify {} on {}\n", a.prestack, a.space);
    let input_stack = match defect {
        None => "yes".to_string(),
        Some(u) => format!("no (descent fails on {})", x.format_open(u)),
    };
    text.push_str(&format!("input is a stack: {input_stack}\n"));
    let mut json = json!({
        "command": "stackify",
        "space": a.space,
        "prestack": a.prestack,
        "input_is_stack": defect.is_none(),
    });
    let Some(s) = s else {
        let m = failure.unwrap_or_default();
        text.push_str(&format!("stackification failed: {m}"));
        json["error"] = json!(m);
        json["ok"] = json!(false);
        return Ok(Report { json, text, ok: false });
    };
    let stalks_ok = (0..x.len()).all(|i| p.stalk(i).qdata() == s.stack.stalk(i).qdata());
    let unit_stalks = (0..x.len()).all(|i| {
        let u = s.unit.stalk(i);
        u.on_pi0().is_iso() && u.on_pi1().is_iso()
    });
    text.push_str(&format!("result is a stack: yes\nstalk data preserved: {}\n", yes_no(stalks_ok)));
    text.push_str(&format!("unit is an equivalence on stalks: {}\n\n", yes_no(unit_stalks)));
    let mut rows = Vec::new();
    let mut opens = Vec::new();
    for &u in p.opens() {
        let (before, after) = (p.value(u)?, s.stack.value(u)?);
        rows.push(vec![x.format_open(u), before.qdata().to_string(), after.qdata().to_string()]);
        opens.push(json!({ "open": x.format_open(u), "before": pic_json(before), "after": pic_json(after) }));
    }
    text.push_str(&table(&["open", "P(U)", "stackify(P)(U)"], &rows));
    let ok = stalks_ok && unit_stalks;
    json["result_is_stack"] = json!(true);
    json["stalks_preserved"] = json!(stalks_ok);
    json["unit_stalk_equivalence"] = json!(unit_stalks);
    json["opens"] = Value::Array(opens);
    Ok(Report { json, text, ok })
}

fn run_compare(ctx: &Context, a: &CompareArgs, settings: &Settings) -> Result<Report, CliError> {
    settings.check(a.max_degree)?;
    let site = site_for(ctx, &a.space, a.cover.as_deref())?;
    let p = ctx.prestack(&a.prestack, &a.space)?;
    let r = compare(&site, &p, a.max_degree)?;
    let iso = |m: Option<bool>| m.map_or("-".to_string(), |b| yes_no(b).to_string());
    let rows: Vec<Vec<String>> = r
        .rows
        .iter()
        .map(|row| {
            vec![
                row.degree.to_string(),
                row.cech.to_string(),
                row.berishvili.to_string(),
                yes_no(row.equal).into(),
                iso(row.map_iso),
            ]
        })
        .collect();
    let v = if r.agree() {
        format!("agree in degrees 0..={}", a.max_degree)
    } else {
        let ds: Vec<String> = r.disagreements().iter().map(|d| d.to_string()).collect();
        format!("differ in degree {}", ds.join(", "))
    };
    let text = format!(
        "compare cech and berishvili for {} on {}\n{}\nverdict: {v}",
        a.prestack,
        a.space,
        table(&["n", "cech", "berishvili", "equal", "map iso"], &rows)
    );
    let json = json!({
        "command": "compare",
        "space": a.space,
        "prestack": a.prestack,
        "cover": a.cover,
        "rows": r.rows.iter().map(|row| json!({
            "degree": row.degree,
            "cech": group_json(&row.cech),
            "berishvili": group_json(&row.berishvili),
            "equal": row.equal,
            "map_iso": row.map_iso,
        })).collect::<Vec<_>>(),
        "verdict": v,
        "agree": r.agree(),
    });
    Ok(Report { json, text, ok: true })
}
