use std::process::{Command, Output};

use harmonica::parse_form;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_harmonica"))
        .args(args)
        .env_remove("HARMONICA_ASCII")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const BROKEN: &str = r#"{
  "name": "broken",
  "n": 1,
  "generators": ["phi1"],
  "d": {"phi1": [{"coeff": {"re": "1", "im": "0"}, "hol": [], "anti": [1]}]},
  "omega": ["1"]
}"#;

#[test]
fn validate_iwasawa() {
    let o = run(&["validate", "iwasawa_ak"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("almost Kähler: yes, integrable: no"));
    let o = run(&["validate", "iwasawa_cplx"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("integrable: yes"));
}

#[test]
fn validate_broken_spec_reports_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.spec");
    std::fs::write(&path, BROKEN).unwrap();
    let o = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("FAIL d^2 = 0"), "{out}");
    assert!(out.contains("witness"), "{out}");

    // computations refuse broken specs unless forced
    let o = run(&["harmonics", path.to_str().unwrap(), "-l", "d", "-b", "0,0"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&[
        "--force",
        "harmonics",
        path.to_str().unwrap(),
        "-l",
        "d",
        "-b",
        "0,0",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"name\": ").unwrap();
    assert_eq!(
        run(&["validate", path.to_str().unwrap()]).status.code(),
        Some(2)
    );
    std::fs::write(&path, "{\"name\": \"x\", \"bogus\": 1}").unwrap();
    assert_eq!(
        run(&["validate", path.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["validate", "nosuch"]).status.code(), Some(2));
    let o = run(&[
        "check-form",
        "torus6",
        "--form",
        "phi[4;]",
        "--laplacian",
        "a",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(
        run(&["harmonics", "iwasawa_ak", "-l", "zz"]).status.code(),
        Some(2)
    );
}

#[test]
fn harmonics_examples() {
    let o = run(&[
        "harmonics",
        "iwasawa_ak",
        "--laplacian",
        "bc",
        "--bidegree",
        "2,1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("dimension: 2"));
    for line in out.lines().filter(|l| l.starts_with("  ")) {
        parse_form(3, line.trim()).unwrap();
    }
    let o = run(&[
        "harmonics",
        "flat_kahler6",
        "--laplacian",
        "a",
        "--bidegree",
        "1,1",
    ]);
    assert!(stdout(&o).contains("dimension: 9"));
    let o = run(&[
        "harmonics",
        "torus6",
        "--laplacian",
        "bc",
        "--bidegree",
        "1,1",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&[
        "harmonics",
        "iwasawa_ak",
        "--laplacian",
        "bc",
        "--bidegree",
        "4,0",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn check_form_examples() {
    let o = run(&[
        "check-form",
        "torus6",
        "--form",
        "phi[2;1]",
        "--laplacian",
        "delbar",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("member\n"));
    let o = run(&[
        "check-form",
        "torus6",
        "--form",
        "phi[1;2]",
        "--laplacian",
        "a",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stdout(&o).starts_with("non-member; residual ∂∂̄ ≠ 0\n"),
        "{}",
        stdout(&o)
    );
    let o = run(&[
        "--ascii",
        "check-form",
        "torus6",
        "--form",
        "phi[1;2]",
        "--laplacian",
        "a",
    ]);
    assert!(stdout(&o).starts_with("non-member; residual del delbar != 0\n"));
}

#[test]
fn relations_example() {
    let o = run(&["relations", "iwasawa_ak", "--bidegree", "2,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("all four primitive spaces equal"));
    let o = run(&["relations", "iwasawa_cplx", "--bidegree", "1,1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn primitive_command() {
    let o = run(&["--ascii", "primitive", "iwasawa_ak", "--bidegree", "1,1"]);
    assert!(stdout(&o).contains("dimension: 8"));
    let o = run(&["--ascii", "primitive", "iwasawa_ak", "--form", "phi[1;1]"]);
    let out = stdout(&o);
    assert!(
        out.contains("r = 0: beta = (2/3,0)*phi[1;1] + (-1/3,0)*phi[2;2] + (-1/3,0)*phi[3;3]"),
        "{out}"
    );
    assert!(out.contains("r = 1: beta = (0,-1/3)*phi[;]"), "{out}");
}

#[test]
fn ascii_env_matches_flag() {
    let args = ["harmonics", "iwasawa_ak", "-l", "bc", "-b", "2,1"];
    let flag = run(&[&["--ascii"][..], &args[..]].concat());
    let env = Command::new(env!("CARGO_BIN_EXE_harmonica"))
        .args(args)
        .env("HARMONICA_ASCII", "1")
        .output()
        .unwrap();
    assert_eq!(flag.stdout, env.stdout);
    assert!(stdout(&flag).contains("phi[1,3;1]"));
    assert!(!stdout(&flag).contains('φ'));
}

#[test]
fn output_is_deterministic() {
    let a = run(&["report", "iwasawa_ak"]);
    let b = run(&["report", "iwasawa_ak"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_report() {
    let o = run(&["report", "iwasawa_ak", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["almost_kahler"], true);
    assert_eq!(doc["dimensions"]["bc"][2][1], 2);
    let statements = doc["statements"].as_array().unwrap();
    let gap = statements.iter().find(|s| s["id"] == "bc21-gap").unwrap();
    assert_eq!(gap["flags"]["strict"], false);

    let o = run(&["report", "torus6", "--json"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(doc["dimensions"]["bc"].is_null());
    let torus = doc["statements"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["id"] == "counterexamples-torus")
        .unwrap();
    assert_eq!(torus["status"], "verified");
}
