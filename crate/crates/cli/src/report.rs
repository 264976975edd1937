//! Report values, their JSON encoding, and plain-text tables.

use serde_json::{json, Value};
use stackcoh::fgab::{format_invariants, FgAbGroup, Int};
use stackcoh::picard::Pic2Group;

/// The outcome of one command: a JSON value, the human rendering, and
/// whether every check it made passed.
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Value,
    pub text: String,
    pub ok: bool,
}

/// Invariant factors as JSON numbers where they fit, decimal strings otherwise.
pub fn invariants_json(inv: &[Int]) -> Value {
    Value::Array(
        inv.iter()
            .map(|d| match i64::try_from(d) {
                Ok(v) => json!(v),
                Err(_) => json!(d.to_string()),
            })
            .collect(),
    )
}

pub fn group_json(g: &FgAbGroup) -> Value {
    let inv = g.invariants();
    json!({ "group": format_invariants(&inv), "invariants": invariants_json(&inv) })
}

pub fn pic_json(p: &Pic2Group) -> Value {
    let q = p.qdata();
    json!({
        "pi0": { "group": format_invariants(&q.pi0), "invariants": invariants_json(&q.pi0) },
        "pi1": { "group": format_invariants(&q.pi1), "invariants": invariants_json(&q.pi1) },
        "q": if q.q_trivial() { "0" } else { "nontrivial" },
        "q_image": { "group": format_invariants(&q.q_image), "invariants": invariants_json(&q.q_image) },
        "summary": q.to_string(),
    })
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Left-aligned columns separated by two spaces, trailing spaces trimmed.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let ncols = header.len();
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (k, c) in r.iter().enumerate().take(ncols) {
            widths[k] = widths[k].max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (k, c) in cells.iter().enumerate() {
            s.push_str(c);
            if k + 1 < cells.len() {
                s.push_str(&" ".repeat(widths[k] - c.chars().count() + 2));
            }
        }
        s.trim_end().to_string()
    };
    let mut out = vec![line(header.to_vec())];
    for r in rows {
        out.push(line(r.iter().map(String::as_str).collect()));
    }
    out.join("\n")
}
