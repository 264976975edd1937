use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn example() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("manifests/example.json")
}

fn stackcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stackcoh"))
        .args(args)
        .env_remove("STACKCOH_MAX_DEGREE")
        .output()
        .expect("binary runs")
}

fn with_env(args: &[&str], value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stackcoh"))
        .args(args)
        .env("STACKCOH_MAX_DEGREE", value)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_manifest(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("stackcoh-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

/// Independent reading of "Z^r + Z/d1 + ..." into (free rank, sorted orders).
fn read_group(s: &str) -> (usize, Vec<i64>) {
    if s == "0" {
        return (0, vec![]);
    }
    let mut free = 0;
    let mut tors = Vec::new();
    for part in s.split(" + ") {
        if part == "Z" {
            free += 1;
        } else if let Some(r) = part.strip_prefix("Z^") {
            free += r.parse::<usize>().unwrap();
        } else {
            tors.push(part.strip_prefix("Z/").unwrap().parse::<i64>().unwrap());
        }
    }
    tors.sort();
    (free, tors)
}

fn from_invariants(inv: &[Value]) -> (usize, Vec<i64>) {
    let free = inv.iter().filter(|v| v.as_i64() == Some(0)).count();
    let mut tors: Vec<i64> = inv.iter().filter_map(|v| v.as_i64()).filter(|d| *d != 0).collect();
    tors.sort();
    (free, tors)
}

/// Every `{group, invariants}` pair in the report; returns how many were seen.
fn check_groups(v: &Value) -> usize {
    match v {
        Value::Object(m) => {
            let mut n = 0;
            if let (Some(Value::String(g)), Some(Value::Array(inv))) = (m.get("group"), m.get("invariants")) {
                assert_eq!(read_group(g), from_invariants(inv), "{g} vs {inv:?}");
                let chain: Vec<i64> = inv.iter().filter_map(|v| v.as_i64()).filter(|d| *d != 0).collect();
                for w in chain.windows(2) {
                    assert_eq!(w[1] % w[0], 0, "{g}: {chain:?} is not a divisibility chain");
                }
                n += 1;
            }
            n + m.values().map(check_groups).sum::<usize>()
        }
        Value::Array(a) => a.iter().map(check_groups).sum(),
        _ => 0,
    }
}

#[test]
fn triangle_boundary_constant_phi() {
    let o = stackcoh(&[
        "cohomology",
        "--space",
        "triangle-boundary",
        "--prestack",
        "constant-phi",
        "--mode",
        "cech",
        "--max-degree",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("H^0_U = Z + Z/2; H^1_U = Z"), "{}", stdout(&o));
}

#[test]
fn gz_sequence_of_phi_times_two() {
    let o = stackcoh(&["gz-sequence", "--morphism", "phi-times-2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("groups: Z/2, Z/2, Z/2, Z/2, Z, Z"), "{s}");
    assert!(s.contains("verdict: exact"), "{s}");
}

#[test]
fn verify_all_on_example_manifest() {
    let m = example();
    let o = stackcoh(&["--manifest", m.to_str().unwrap(), "verify", "--suite", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn each_suite_passes_without_manifest() {
    for suite in ["snf", "picard", "complex2", "site", "prestack"] {
        let o = stackcoh(&["verify", "--suite", suite]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
        assert!(stdout(&o).lines().skip(2).all(|l| l.starts_with("PASS") || l.contains("checks passed")));
    }
}

#[test]
fn task_list_runs_and_is_deterministic() {
    let m = example();
    let m = m.to_str().unwrap();
    let a = stackcoh(&["--manifest", m, "run"]);
    let b = stackcoh(&["--manifest", m, "run"]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let ja = stackcoh(&["--manifest", m, "--json", "run"]);
    let jb = stackcoh(&["--manifest", m, "--json", "run"]);
    assert_eq!(ja.stdout, jb.stdout);
    let s = stdout(&a);
    assert_eq!(s.matches("[task ").count(), 11);
    assert!(s.contains("expectation: met"));
}

#[test]
fn json_report_round_trips() {
    let m = example();
    let o = stackcoh(&["--manifest", m.to_str().unwrap(), "--json", "run"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(check_groups(&v) > 50);
    let again = serde_json::to_string_pretty(&v).unwrap();
    assert_eq!(again.trim_end(), stdout(&o).trim_end());
    let tasks = v["tasks"].as_array().unwrap();
    assert_eq!(tasks[0]["summary"], "H^0_U = Z + Z/2; H^1_U = Z; H^2_U = 0");
    assert_eq!(tasks[0]["degrees"][0]["tu"]["invariants"], serde_json::json!([2, 0]));
}

#[test]
fn pseudocircle_theories_differ_in_degree_one() {
    let o = stackcoh(&["--json", "compare", "--space", "pseudocircle", "--prestack", "constant-z", "--max-degree", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows[1]["cech"]["group"], "0");
    assert_eq!(rows[1]["berishvili"]["group"], "Z");
    assert_eq!(rows[0]["equal"], true);
    assert_eq!(rows[1]["equal"], false);
}

#[test]
fn stackify_of_two_points() {
    let o = stackcoh(&["stackify", "--space", "discrete-2", "--prestack", "constant-phi"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("input is a stack: no"));
    assert!(s.contains("pi0=Z^2, pi1=Z/2 + Z/2"), "{s}");
}

#[test]
fn failed_expectation_exits_one() {
    let o = stackcoh(&[
        "cohomology",
        "--space",
        "triangle-boundary",
        "--prestack",
        "constant-z",
        "--max-degree",
        "1",
        "--expect",
        "Z; 0",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("H^1_U is Z, expected 0"));
}

#[test]
fn parse_errors_report_position() {
    let p = write_manifest("bad-syntax.json", "{\n  \"schema\": 1,\n  \"groups\": { \"A\": [1, }\n}\n");
    let o = stackcoh(&["--manifest", p.to_str().unwrap(), "run"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad-syntax.json:3:"), "{}", stderr(&o));
}

#[test]
fn unknown_fields_and_schema_are_rejected() {
    let p = write_manifest("bad-field.json", r#"{"schema": 1, "grops": {}}"#);
    let o = stackcoh(&["--manifest", p.to_str().unwrap(), "verify"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("grops"));
    let p = write_manifest("bad-schema.json", r#"{"schema": 3}"#);
    let o = stackcoh(&["--manifest", p.to_str().unwrap(), "verify"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("schema"));
}

#[test]
fn validation_errors_name_the_invariant() {
    let p = write_manifest(
        "bad-q.json",
        r#"{"schema": 1, "morphisms": {"m": {"source": "phi", "target": "phi", "f1": [[0]], "f0": [[1]]}}}"#,
    );
    let o = stackcoh(&["--manifest", p.to_str().unwrap(), "gz-sequence", "--morphism", "m"]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    assert!(e.contains("morphism m") && e.contains("q"), "{e}");

    let p = write_manifest("bad-space.json", r#"{"schema": 1, "spaces": {"s": {"points": ["a", "b"], "order": [["a", "b"], ["b", "a"]]}}}"#);
    let o = stackcoh(&["--manifest", p.to_str().unwrap(), "verify"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not a poset"), "{}", stderr(&o));

    let p = write_manifest("bad-ref.json", r#"{"schema": 1, "homs": {"f": {"source": "Z", "target": "G", "matrix": [[1]]}}}"#);
    let o = stackcoh(&["--manifest", p.to_str().unwrap(), "verify"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("hom f: unknown group \"G\""), "{}", stderr(&o));
}

#[test]
fn degree_windows_and_truncation() {
    let base = ["cohomology", "--space", "pseudocircle", "--prestack", "constant-z"];
    let o = stackcoh(&[&base[..], &["--min-degree", "2", "--max-degree", "1"]].concat());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("degree window"));

    let o = stackcoh(&[&base[..], &["--max-degree", "2", "--truncation", "3"]].concat());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("too small"));

    let o = with_env(&[&base[..], &["--max-degree", "2"]].concat(), "3");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("too small"));

    let o = with_env(&[&base[..], &["--max-degree", "1", "--mode", "berishvili"]].concat(), "5");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("truncation 5"));
    assert!(stdout(&o).contains("H^0_U = Z; H^1_U = Z"));

    let o = with_env(&["gz-sequence", "--morphism", "phi-times-2"], "many");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_names_are_input_errors() {
    let o = stackcoh(&["stalk", "--space", "nowhere", "--prestack", "constant-z"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown space"));
    let o = stackcoh(&["gz-sequence", "--morphism", "nothing"]);
    assert_eq!(o.status.code(), Some(2));
}
