use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_teichcore")).args(args).output().unwrap()
}

fn run_ok(args: &[&str]) -> Value {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn analyze_torus_and_l() {
    let r = run_ok(&["analyze", &data("torus.json")]);
    assert_eq!(r["result"]["genus"], 1);
    assert_eq!(r["result"]["veech_index"], 1);
    let r = run_ok(&["analyze", &data("l_shape.txt")]);
    assert_eq!(r["result"]["genus"], 2);
    assert_eq!(r["result"]["veech_index"], 3);
    assert_eq!(r["result"]["vertices"]["cone_angles"], serde_json::json!([3]));
    assert_eq!(r["provenance"]["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(r["provenance"]["certificates"]["cusps"]["complete"], true);
}

#[test]
fn exit_codes_by_error_class() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"n\": 2").unwrap();
    assert_eq!(run(&["analyze", bad.to_str().unwrap()]).status.code(), Some(2));
    let split = dir.path().join("split.json");
    fs::write(&split, r#"{"n": 2, "h": [[1], [2]], "v": [[1], [2]]}"#).unwrap();
    assert_eq!(run(&["analyze", split.to_str().unwrap()]).status.code(), Some(3));
    let torus = data("torus.json");
    assert_eq!(run(&["pvt", &torus, "--bound", "0"]).status.code(), Some(2));
    assert_eq!(run(&["distance", &torus, "--kind", "el", "--from", "0,-1", "--to", "0,1"]).status.code(), Some(2));
    let inside = run(&["distance", &torus, "--kind", "tr", "--from", "0,9", "--to", "1,1"]);
    assert_eq!(inside.status.code(), Some(5));
    assert!(!inside.stderr.is_empty());
    assert_eq!(run(&["analyze", "/nonexistent/torus.json"]).status.code(), Some(7));
}

#[test]
fn torus_spectrum_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    run_ok(&["pvt", &data("torus.json"), "--bound", "3.5", "--out", out]);
    let csv = fs::read_to_string(dir.path().join("spectrum.csv")).unwrap();
    let values: Vec<&str> = csv.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(values, ["0", "1", "2", "3"]);
}

#[test]
fn electric_distance_inside_one_horoball() {
    let r = run_ok(&["distance", &data("torus.json"), "--kind", "el", "--from", "0.1,6", "--to", "4,6"]);
    let d = r["result"]["distance"].as_f64().unwrap();
    assert!(d <= 1.0 + 1e-9, "{d}");
}

#[test]
fn distances_are_ordered() {
    let l = data("l_shape.txt");
    let get = |kind: &str| {
        let r = run_ok(&["distance", &l, "--kind", kind, "--from", "0.2,1.1", "--to", "2.3,0.9"]);
        r["result"]["distance"].as_f64().unwrap()
    };
    let (el, hyp, tr) = (get("el"), get("hyp"), get("tr"));
    assert!(el <= hyp + 1e-9 && hyp <= tr + 1e-9, "{el} {hyp} {tr}");
}

#[test]
fn undistortion_is_byte_identical_across_runs_and_threads() {
    let torus = data("torus.json");
    let mut reports = Vec::new();
    for threads in ["1", "4", "4"] {
        let dir = tempfile::tempdir().unwrap();
        let o = Command::new(env!("CARGO_BIN_EXE_teichcore"))
            .args(["experiment", "undistortion", &torus, "--radius", "6", "--out", dir.path().to_str().unwrap()])
            .env("TEICHCORE_THREADS", threads)
            .output()
            .unwrap();
        assert!(o.status.success());
        let json = fs::read(dir.path().join("report.json")).unwrap();
        assert_eq!(json, o.stdout);
        let csv = fs::read(dir.path().join("samples.csv")).unwrap();
        assert!(fs::read_to_string(dir.path().join("scatter.svg")).unwrap().starts_with("<svg"));
        reports.push((json, csv));
    }
    assert!(reports.windows(2).all(|w| w[0] == w[1]));
    let r: Value = serde_json::from_slice(&reports[0].0).unwrap();
    assert!(r["result"]["k"].as_f64().unwrap() >= 1.0);
}

#[test]
fn systole_experiment_depends_only_on_seed() {
    let torus = data("torus.json");
    let a = run(&["experiment", "systole", &torus, "--pairs", "10", "--seed", "3"]);
    let b = run(&["experiment", "systole", &torus, "--pairs", "10", "--seed", "3"]);
    let c = run(&["experiment", "systole", &torus, "--pairs", "10", "--seed", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn bad_thread_count_is_rejected() {
    let o = Command::new(env!("CARGO_BIN_EXE_teichcore"))
        .args(["analyze", &data("torus.json")])
        .env("TEICHCORE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn subgroup_family() {
    let r = run_ok(&[
        "--subgroup",
        &data("gamma2.json"),
        "constants",
        &data("torus.json"),
    ]);
    assert_eq!(r["provenance"]["certificates"]["family"]["lattice"], false);
    assert_eq!(r["provenance"]["certificates"]["cusps"]["complete"], false);
    assert!(r["result"]["w"].is_null());
    let eps = r["result"]["eps_gamma"].as_f64().unwrap();
    assert!(eps > 0.0 && eps <= 0.5);
}

#[test]
fn constants_of_the_l_origami() {
    let r = run_ok(&["constants", &data("l_shape.txt")]);
    let res = &r["result"];
    assert!(res["r_gamma"].as_f64().unwrap().is_finite());
    assert_eq!(res["w"]["upper_biased"], true);
    assert_eq!(r["provenance"]["certificates"]["epsilon"]["certified"], true);
}
