use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ashyp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ashyp")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn two_points_have_unit_determinant() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "two.json", r#"{"model":"ball","points":[[0.1,0,0],[-0.2,0.1,0]]}"#);
    let out = ashyp(&["compute", &file]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("D       = 1 + 0i"), "{}", stdout(&out));

    let out = ashyp(&["--json", "compute", &file]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["abs_D"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((v["abs_D_star"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn collinear_points_give_unit_modulus() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "line.json",
        r#"{"model":"disk","points":[[-0.7,0],[-0.3,0],[0.05,0],[0.4,0],[0.8,0]]}"#,
    );
    let out = ashyp(&["--json", "compute", &file]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["abs_D"].as_f64().unwrap() - 1.0).abs() <= 1e-9);
}

#[test]
fn bad_inputs_map_to_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let dup = write(dir.path(), "dup.json", r#"{"model":"ball","points":[[0,0,0],[0.3,0,0],[0.3,0,0]]}"#);
    let out = ashyp(&["compute", &dup]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("points 2 and 3"), "{}", stderr(&out));

    let broken = write(dir.path(), "broken.json", "{\"model\":\"ball\",");
    assert_eq!(ashyp(&["compute", &broken]).status.code(), Some(2));

    let outside = write(dir.path(), "outside.json", r#"{"model":"ball","points":[[0,0,0],[1.2,0,0]]}"#);
    assert_eq!(ashyp(&["compute", &outside]).status.code(), Some(2));
}

#[test]
fn certify_writes_deterministic_certificates() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let out = ashyp(&["certify", "both", "--out-dir", dir.path().to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    }
    let mut names: Vec<_> = fs::read_dir(a.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names.len(), 6);
    for name in &names {
        assert_eq!(fs::read(a.path().join(name)).unwrap(), fs::read(b.path().join(name)).unwrap(), "{name}");
    }
    let delta: Value =
        serde_json::from_slice(&fs::read(a.path().join("certificate_zhangma_delta4.json")).unwrap()).unwrap();
    assert_eq!(delta["uniform_sign"], "mixed");
}

#[test]
fn certify_one_ordering() {
    let dir = tempfile::tempdir().unwrap();
    let out = ashyp(&["certify", "thm1", "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("monomials 778"), "{}", stdout(&out));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 3);
}

#[test]
fn verify_expansion_small_and_capped() {
    let out = ashyp(&["--json", "verify-expansion", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["group_order"], "8");

    let out = ashyp(&["verify-expansion", "7"]);
    assert_eq!(out.status.code(), Some(6));
    // (6!)^7
    assert!(stderr(&out).contains("100306130042880000000"), "{}", stderr(&out));
}

#[test]
fn sweeps_are_reproducible() {
    let args = ["--json", "sweep", "--n", "4", "--shape", "convex_coplanar", "--trials", "10000", "--seed", "11"];
    let first = ashyp(&args);
    assert_eq!(first.status.code(), Some(0), "{}", stderr(&first));
    let v: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(v["violations"], 0);
    assert!(v["min_abs_d"].as_f64().unwrap() >= 1.0 - 1e-9);
    assert_eq!(ashyp(&args).stdout, first.stdout);
}

#[test]
fn sweep_csv_has_one_row_per_trial() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("rows.csv");
    let out = ashyp(&["sweep", "--n", "3", "--trials", "25", "--seed", "2", "--csv", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(fs::read_to_string(&csv).unwrap().lines().count(), 26);
}

#[test]
fn config_files_are_strict() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"command":"sweep","bogus":1}"#);
    assert_eq!(ashyp(&["--config", &bad, "sweep"]).status.code(), Some(2));

    let wrong = write(dir.path(), "wrong.json", r#"{"command":"minimize"}"#);
    assert_eq!(ashyp(&["--config", &wrong, "sweep"]).status.code(), Some(2));

    let good = write(dir.path(), "good.json", r#"{"command":"sweep","n":3,"trials":7,"seed":5}"#);
    let out = ashyp(&["--json", "--config", &good, "sweep"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["trials"], 7);
}

#[test]
fn minimize_reports_its_best_point() {
    let out = ashyp(&["--json", "minimize", "--n", "3", "--restarts", "2", "--seed", "4", "--max-evals", "300"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["min_abs_d"].as_f64().unwrap() >= 1.0 - 1e-9);
    assert_eq!(v["argmin"]["points"].as_array().unwrap().len(), 3);
}
