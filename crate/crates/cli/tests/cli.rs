use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};
use spectrality::json::element_from_json;
use spectrality::{SpectralData, Tol};
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spectrality"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn write(dir: &TempDir, name: &str, v: &Value) -> String {
    let path = dir.path().join(name);
    fs::write(&path, v.to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

fn read(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn data(v: &Value) -> Vec<f64> {
    v["data"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect()
}

#[test]
fn check_exit_codes() {
    assert_eq!(code(&run(&["check", "--model", "fn", "--dim", "5"])), 0);
    assert_eq!(code(&run(&["check", "--model", "censym", "--family", "lp:1", "--dim", "2", "--trials", "200"])), 0);
    assert_eq!(code(&run(&["check", "--model", "jb", "--dim", "-1"])), 2);
    assert_eq!(code(&run(&["check", "--model", "fn", "--dim", "2", "--suite", "nope"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn check_reports_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let first = dir.path().join("first.json");
    let second = dir.path().join("second.json");
    for path in [&first, &second] {
        let out = run(&["check", "--model", "jb", "--dim", "3", "--trials", "100", "--seed", "7", "--report", path.to_str().unwrap()]);
        assert_eq!(code(&out), 0);
    }
    assert_eq!(fs::read(&first).unwrap(), fs::read(&second).unwrap());
    let report = read(&first);
    assert_eq!(report["summary"]["failed"], 0);
}

#[test]
fn spectral_output_round_trips_and_verifies() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "a.json", &json!({"model": "jb", "n": 2, "data": [[1, 0], [0, -1]]}));
    let report = dir.path().join("out.json");
    let out = run(&["spectral", "--input", &input, "--mesh", "0.1", "--report", report.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = read(&report);
    assert!(v["riemann"]["error"].as_f64().unwrap() <= 0.1);

    let (space, _) = element_from_json(&v["a"], Tol::default()).unwrap();
    let d = SpectralData::from_json(&space, &v).unwrap();
    let base = spectrality::models::spectral_base(&space, 100, 1).unwrap().base().unwrap();
    assert!(d.violations(&base).unwrap().is_empty());
}

#[test]
fn spectral_on_functions_reads_off_supports() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "f.json", &json!({"model": "fn", "n": 3, "data": [2, 0, -1]}));
    let out = run(&["spectral", "--input", &input]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(data(&v["cover"]), [1.0, 0.0, 1.0]);
    assert_eq!(data(&v["rickart"]), [0.0, 1.0, 0.0]);
}

#[test]
fn spectral_without_comparability_is_a_violation() {
    let dir = TempDir::new().unwrap();
    let family = json!({"family": "lp", "p": 1});
    let input = write(&dir, "c.json", &json!({"model": "censym", "n": 2, "family": family, "data": [0.1, [1.0, 0.5]]}));
    let out = run(&["spectral", "--input", &input]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("failing focus"));
}

#[test]
fn decompose_splits_the_element() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "f.json", &json!({"model": "fn", "n": 3, "data": [2, 0, -1]}));
    let out = run(&["decompose", "--input", &input]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(data(&v["pos"]), [2.0, 0.0, 0.0]);
    assert_eq!(data(&v["neg"]), [0.0, 0.0, 1.0]);
    assert_eq!(data(&v["abs"]), [2.0, 0.0, 1.0]);
}

#[test]
fn classify_foci() {
    let dir = TempDir::new().unwrap();
    // ℓ₄ has dual exponent 4/3; scale (0.3, 0.4) onto the dual sphere of radius ½
    let q = 4.0 / 3.0;
    let size = (0.3f64.powf(q) + 0.4f64.powf(q)).powf(1.0 / q);
    let y = write(&dir, "lp4.json", &json!([0.15 / size, 0.2 / size]));
    let out = run(&["classify", "--model", "censym", "--family", "lp:4", "--dim", "2", "--input", &y]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["class"], "compression");

    let y = write(&dir, "stadium.json", &json!({"y": [0.0, 0.5]}));
    let out = run(&["classify", "--model", "censym", "--family", "stadium:1,1", "--input", &y]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["class"], "f_compression");

    let y = write(&dir, "short.json", &json!([0.1, 0.0]));
    let out = run(&["classify", "--model", "censym", "--family", "lp:2", "--dim", "2", "--input", &y]);
    assert_eq!(code(&out), 1);
}
