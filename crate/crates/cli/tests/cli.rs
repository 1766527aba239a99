use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;
use torus_zeta_cli::ProblemSpec;

const DIAG: &str = r#"{"p":7,"e":1,"d":2,"matrix":[[[6],[0]],[[0],[2]]]}"#;
const CUBIC: &str = r#"{"p":2,"e":1,"d":3,"matrix":[[0,0,[0,1]],[1,0,[0,0,1]],[0,1,[0,0,1]]]}"#;
const T: &str = r#"{"p":2,"e":1,"d":1,"matrix":[[[0,1]]]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torus-zeta")).args(args).output().unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("bad.json", "{not json", 1),
        ("shape.json", r#"{"p":2,"e":1,"d":2,"matrix":[[1]]}"#, 1),
        ("singular.json", r#"{"p":3,"e":1,"d":2,"matrix":[[1,1],[1,1]]}"#, 2),
        ("big.json", r#"{"p":2,"e":1,"d":9,"matrix":[]}"#, 3),
        ("notprime.json", r#"{"p":6,"e":1,"d":1,"matrix":[[1]]}"#, 5),
        ("reducible.json", r#"{"p":2,"e":2,"modulus":[1,0,1],"d":1,"matrix":[[[[1,0]]]]}"#, 5),
    ];
    for (name, body, code) in cases {
        let p = write(&dir, name, body);
        let out = run(&["classify", s(&p)]);
        assert_eq!(out.status.code(), Some(code), "{name}");
        assert!(out.stdout.is_empty());
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("torus-zeta: "));
    }
    let missing = dir.path().join("missing.json");
    assert_eq!(run(&["entropy", s(&missing)]).status.code(), Some(6));
    let diag = write(&dir, "diag.json", DIAG);
    assert_eq!(run(&["nk", s(&diag), "--max", "201"]).status.code(), Some(3));
    assert_eq!(run(&["nk", s(&diag), "--max", "0"]).status.code(), Some(1));
    assert_eq!(run(&["zeta", s(&diag), "--terms", "501"]).status.code(), Some(3));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(run(&[]).status.code(), Some(64));
    assert_eq!(run(&["report", s(&diag), "--json", "--text"]).status.code(), Some(64));
}

#[test]
fn help_lists_exit_codes() {
    let out = run(&["--help"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("Exit codes:"));
    assert!(text.contains("64  usage error"));
    assert!(run(&["--version"]).status.success());
}

#[test]
fn nk_for_t() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(&dir, "t.json", T);
    let v = json(&run(&["nk", s(&p), "--max", "3"]));
    assert_eq!(v["command"], "nk");
    let rows = v["nk"]["rows"].as_array().unwrap();
    let values: Vec<&str> = rows.iter().map(|r| r["direct"]["value"].as_str().unwrap()).collect();
    assert_eq!(values, ["2", "4", "8"]);
    assert!(rows.iter().all(|r| r["equal"] == true));
    assert_eq!(v["nk"]["all_equal"], true);
}

#[test]
fn zeta_for_diag() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(&dir, "diag.json", DIAG);
    let v = json(&run(&["zeta", s(&p), "--terms", "10"]));
    assert_eq!(v["zeta"]["tag"], "Algebraic");
    assert_eq!(
        v["zeta"]["closed_form"]["display"],
        "(1-z^2)^{1/2}(1-z^3)^{1/3}/((1-z)(1-z^6)^{1/6})"
    );
    assert_eq!(v["zeta"]["closed_form"]["factors"]["6"]["num"], -1);
    assert_eq!(v["zeta"]["closed_form"]["factors"]["6"]["den"], 6);
    let series = &v["series"];
    assert_eq!(series["terms"], 10);
    assert_eq!(series["from_nk"].as_array().unwrap().len(), 11);
    assert_eq!(series["from_nk"][2], "1/2");
    assert_eq!(series["from_nk"], series["from_closed_form"]);
    assert_eq!(series["routes_equal"], true);
    assert_eq!(series["integral"], false);
    assert_eq!(series["inverse_recovers_nk"], true);
}

#[test]
fn classify_cubic() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(&dir, "cubic.json", CUBIC);
    let v = json(&run(&["classify", s(&p)]));
    assert_eq!(v["zeta"]["tag"], "Transcendental");
    assert!(v["zeta"].get("closed_form").is_none());
    let e = json(&run(&["entropy", s(&p)]));
    assert_eq!(e["entropy"]["E"], 2);
}

#[test]
fn report_text_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(&dir, "diag.json", DIAG);
    let out = run(&["report", s(&p), "--text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("zeta: algebraic"));
    assert!(text.contains("N_5 = q^0 = 1"));
    assert!(text.contains("routes agree: true"));
    let v = json(&run(&["report", s(&p), "--max", "6", "--terms", "4"]));
    assert_eq!(v["nk"]["rows"].as_array().unwrap().len(), 6);
    assert_eq!(v["series"]["terms"], 4);
    assert_eq!(v["det_t_degree"], 0);
}

#[test]
fn rendered_problem_round_trips_through_cli() {
    let spec = ProblemSpec::parse(CUBIC.as_bytes()).unwrap();
    let rendered = spec.render();
    assert_eq!(ProblemSpec::parse(rendered.as_bytes()).unwrap(), spec);
    let dir = tempfile::tempdir().unwrap();
    let a = write(&dir, "a.json", CUBIC);
    let b = write(&dir, "b.json", &rendered);
    let (va, vb) = (json(&run(&["report", s(&a)])), json(&run(&["report", s(&b)])));
    assert_eq!(va, vb);
}

#[test]
fn extension_field_input() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(&dir, "gf9.json", r#"{"p":3,"e":2,"d":1,"matrix":[[[[0,0],[1,0]]]]}"#);
    let v = json(&run(&["entropy", s(&p)]));
    assert_eq!(v["field"]["q"], 9);
    assert_eq!(v["field"]["modulus"], serde_json::json!([1, 0, 1]));
    assert_eq!(v["entropy"]["E"], 1);
}
