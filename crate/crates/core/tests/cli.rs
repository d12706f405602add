use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cralg"))
        .args(args)
        .env_remove("CRALG_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

fn assert_error(o: &Output, code: &str) {
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(o);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.starts_with(&format!("error[{code}]: ")), "{err}");
    assert!(o.stdout.is_empty());
}

#[test]
fn validates_algebras() {
    let o = run(&["algebra", "validate", &data("dual.alg")]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("local: yes"));
    let o = run(&["--json", "algebra", "validate", "split"]);
    let v = json(&o);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["dim"], 2);
    assert_eq!(v["local"], false);
    assert_error(
        &run(&["algebra", "validate", &data("nonassoc.alg")]),
        "AxiomViolation",
    );
    assert_error(&run(&["algebra", "validate", "octonions"]), "UnknownPreset");
}

#[test]
fn validates_surfaces() {
    let o = run(&["surface", "validate", &data("quartic.srf")]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("# bidegree (2,2): yes"));
    assert!(text.contains("# (fd) condition: holds"));
    let o = run(&["--json", "surface", "validate", &data("sphere.srf")]);
    let v = json(&o);
    assert_eq!(v["weights"]["w1"], 2);
    assert_eq!(v["bidegree_22"], false);
    assert_eq!(v["fd"], Value::Null);
}

#[test]
fn errors_are_single_lines_with_codes() {
    let o = run(&["surface", "validate", &data("syntax.srf")]);
    assert_error(&o, "SyntaxError");
    assert!(stderr(&o).contains("3:5"));
    assert_error(
        &run(&["surface", "validate", &data("notreal.srf")]),
        "NotReal",
    );
    assert_error(
        &run(&["surface", "validate", &data("missing.srf")]),
        "IoError",
    );
    assert_error(
        &run(&["aut", &data("sphere.srf"), "--max-weight", "x"]),
        "UsageError",
    );
    assert_error(&run(&["frobnicate"]), "UsageError");
    assert_error(
        &run(&["flow", &data("sphere.srf"), "--field", "9"]),
        "BadFieldIndex",
    );
    assert_error(
        &run(&["flow", &data("sphere.srf"), "--field", "1", "--order", "0"]),
        "BadOrder",
    );
    assert_error(
        &run(&["--seed", "zz", "surface", "validate", &data("quartic.srf")]),
        "BadSeed",
    );
}

#[test]
fn aut_text_lists_graded_basis() {
    let o = run(&["aut", &data("sphere.srf")]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("weights searched: -2..=4"));
    assert!(text.contains("total 8"));
    assert!(text.contains("  [8] weight 2: "));
    assert!(!text.contains("[9]"));
}

#[test]
fn aut_json_is_byte_identical_across_runs() {
    let args = ["--json", "aut", &data("sphere.srf"), "--algebra", "dual"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["total_dim"], 17);
    assert_eq!(v["total_s_dim"], 16);
    let w0 = v["components"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["weight"] == 0)
        .unwrap();
    assert_eq!(w0["dim"], 5);
    assert_eq!(w0["s_dim"], 4);
    assert_eq!(w0["s_basis_indices"], serde_json::json!([0, 1, 2, 3]));
}

#[test]
fn s_report_compares_weights() {
    let o = run(&[
        "s-report",
        &data("sphere.srf"),
        "--algebra",
        &data("dual.alg"),
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("scaling holds at every weight: yes"));
    assert!(text.contains("exhausts the algebra: no"));
    let o = run(&[
        "--json",
        "s-report",
        &data("quartic.srf"),
        "--algebra",
        "reals",
    ]);
    let v = json(&o);
    assert_eq!(v["exhausted"], true);
    assert_eq!(v["l"], 1);
}

#[test]
fn flow_reports_series_and_tangency() {
    let o = run(&["flow", &data("sphere.srf"), "--field", "2", "--order", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("series terminates: yes"));
    assert!(text.contains("tangent modulo t^4: yes"));
    let o = run(&["--json", "flow", &data("quartic.srf"), "--field", "4"]);
    let v = json(&o);
    assert_eq!(v["weight"], 4);
    assert_eq!(v["tangent"], true);
    assert_eq!(v["flow"]["terminates"], false);
    assert_eq!(v["flow"]["order"], 6);
    assert_eq!(v["algebra_holomorphic"], Value::Null);
}

#[test]
fn algebraize_prints_expanded_surface() {
    let o = run(&["algebraize", &data("sphere.srf"), "--algebra", "dual"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("surface n=2 k=2"));
    assert!(text.contains("z1_1") && text.contains("w1_2"));
}

#[test]
fn reference_suite_fails_when_range_is_truncated() {
    let o = run(&["paper-suite", "--max-weight", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("FAIL sphere.dims")));
    assert!(text.lines().any(|l| l.starts_with("FAIL sphere.total")));
    assert!(text.lines().any(|l| l.starts_with("PASS dsphere.g0 ")));
    let o = run(&["--json", "paper-suite", "--max-weight", "0"]);
    let v = json(&o);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["max_weight"], 0);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(
        v["passed"].as_u64().unwrap() + v["failed"].as_u64().unwrap(),
        rows.len() as u64
    );
    assert!(rows
        .iter()
        .all(|r| r["id"].is_string() && r["pass"].is_boolean()));
}
