use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn kronhall(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kronhall"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn classify_zero_pair() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "zero.json", r#"{"q": 2, "x1": [[0]], "x2": [[0]]}"#);
    let o = kronhall(&["--format", "json", "classify", &f]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["preproj"], serde_json::json!([[1, 1]]));
    assert_eq!(v["preinj"], serde_json::json!([[1, 1]]));
    assert_eq!(v["regular"], serde_json::json!([]));
}

#[test]
fn classify_with_explicit_dims_and_identity_pencil() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "s0.json", r#"{"q": 3, "dims": [1, 0], "x1": [], "x2": []}"#);
    assert_eq!(stdout(&kronhall(&["classify", &empty])).trim(), "I1");
    let id = write(
        dir.path(),
        "id.json",
        r#"{"q": 2, "x1": [[1,0],[0,1]], "x2": [[1,0],[0,1]]}"#,
    );
    assert_eq!(stdout(&kronhall(&["classify", &id])).trim(), "2R[t+1]^1");
}

#[test]
fn malformed_input_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let ragged = write(dir.path(), "bad.json", r#"{"q": 2, "x1": [[0, 1]], "x2": [[0]]}"#);
    assert_eq!(kronhall(&["classify", &ragged]).status.code(), Some(2));
    let garbage = write(dir.path(), "garbage.json", "not json");
    assert_eq!(kronhall(&["classify", &garbage]).status.code(), Some(2));
    let q4 = write(dir.path(), "q4.json", r#"{"q": 4, "x1": [[0]], "x2": [[0]]}"#);
    assert_eq!(kronhall(&["classify", &q4]).status.code(), Some(2));
    assert_eq!(kronhall(&["check", "no_such_check"]).status.code(), Some(2));
    assert_eq!(kronhall(&["table", "rho("]).status.code(), Some(2));
    assert_eq!(kronhall(&["--max-dim", "11", "check", "all"]).status.code(), Some(2));
    assert_eq!(
        kronhall(&["--max-dim", "4", "table", "rho", "3"]).status.code(),
        Some(2)
    );
}

#[test]
fn single_check_passes() {
    let o = kronhall(&["check", "relation", "--n", "3", "--q", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("PASS   relation"), "{out}");
    assert!(out.contains("1 checks, 0 failed"));
}

#[test]
fn rho2_table() {
    let o = kronhall(&["--format", "json", "table", "rho", "2", "--q", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let terms = v[0]["element"]["terms"].as_array().unwrap();
    // every regular class of dimension (2,2) over F_2, each with eps^-8
    assert_eq!(terms.len(), 10);
    for t in terms {
        assert_eq!(t["coeff"], serde_json::json!(["1/16", "0"]));
        assert_eq!(t["class"]["preproj"], serde_json::json!([]));
    }
}

#[test]
fn perturbed_convention_fails_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let conv = write(
        dir.path(),
        "conv.json",
        r#"{"factor_order": "QuotFirst", "t": [[-1, -1], [0, -1]], "u": [[-1, 2], [0, -1]], "divided": "Plain"}"#,
    );
    let o = kronhall(&["--convention", &conv, "check", "relation", "--n", "2", "--q", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL"));
    let bad = write(dir.path(), "bad.json", r#"{"t": 1}"#);
    assert_eq!(
        kronhall(&["--convention", &bad, "check", "relation"]).status.code(),
        Some(2)
    );
}

#[test]
fn calibration_is_persisted() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let o = kronhall(&["--format", "json", "--cache-dir", cache, "calibrate", "--q", "2,3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["survivors"].as_array().unwrap().len(), 1);
    let saved: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("calibration-q2-3.json")).unwrap()).unwrap();
    assert_eq!(saved, v);
}

#[test]
fn warm_cache_gives_identical_output() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = [
        "--format",
        "json",
        "--cache-dir",
        cache,
        "--jobs",
        "2",
        "check",
        "all",
        "--q",
        "2",
        "--max",
        "2",
    ];
    let cold = kronhall(&args);
    assert_eq!(cold.status.code(), Some(0));
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert!(!files.is_empty());
    let warm = kronhall(&args);
    assert_eq!(cold.stdout, warm.stdout);
    let v = json(&warm);
    assert_eq!(v["failed"], 0);
    // the series identity with the uninverted ratio is reported and waived
    let reports = v["reports"].as_array().unwrap();
    assert!(reports
        .iter()
        .any(|r| r["id"] == "pseries" && r["pass"] == false && r["waived"].is_string()));
}

#[test]
fn interpolate_mu_product() {
    let o = kronhall(&["--format", "json", "interpolate", "mu1*mu0", "--q", "2,3,5,7"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["integral"], true);
    assert!(!v["coefficients"].as_object().unwrap().is_empty());
    // two fields cannot determine a degree-1 fit and check it
    let o = kronhall(&["interpolate", "mu1*mu0", "--q", "2,3", "--degree", "1"]);
    assert_eq!(o.status.code(), Some(1));
}
