use std::f64::consts::TAU;
use std::path::Path;
use std::process::{Command, Output};

use hullbound::c2_lab::KnotReport;
use hullbound::cheb::HullGrid;
use hullbound::{Complex64, MembershipStatus, MembershipVerdict};
use serde_json::Value;
use tempfile::TempDir;

fn hullbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hullbound")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("bad report ({e}); stderr: {}", String::from_utf8_lossy(&out.stderr)))
}

fn roots(n: usize) -> String {
    let pts: Vec<[f64; 2]> =
        (0..n).map(|k| [(TAU * k as f64 / n as f64).cos(), (TAU * k as f64 / n as f64).sin()]).collect();
    serde_json::to_string(&pts).unwrap()
}

fn write(dir: &Path, name: &str, contents: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn regular_pentagon_center_is_member() {
    let out = hullbound(&["points", "--points", &roots(5), "--w", "[0,0]"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let verdict: MembershipVerdict<f64> = serde_json::from_value(r["result"]["query"]["verdict"].clone()).unwrap();
    assert_eq!(verdict.status, MembershipStatus::Member);
    assert_eq!(r["result"]["notes"].as_array().unwrap().len(), 0);
}

#[test]
fn irregular_points_are_noted() {
    let out = hullbound(&["points", "--points", "[[1,0],[0,1],[-1,0],[0,-1],[0.309,0.951]]", "--w", "[0,0]"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let note = r["result"]["notes"][0].as_str().unwrap();
    assert!(note.contains("not the vertices of a regular polygon"), "{note}");
}

#[test]
fn knot_degree_two_does_not_separate_the_origin() {
    let out = hullbound(&["knot", "--p", "2", "--q", "1", "--degree", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let report: KnotReport<f64> = serde_json::from_value(json(&out)["result"].clone()).unwrap();
    assert!(report.value >= 0.999, "{}", report.value);
}

#[test]
fn grid_members_hug_the_points_and_the_origin() {
    let dir = TempDir::new().unwrap();
    let pts = write(dir.path(), "roots5.json", &roots(5));
    let csv = dir.path().join("grid.csv");
    let out = hullbound(&[
        "grid",
        "--points-file",
        &pts,
        "--degree",
        "4",
        "--bbox",
        "-1.2",
        "1.2",
        "--res",
        "41",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let grid: HullGrid<f64> = serde_json::from_value(json(&out)["result"]["grid"].clone()).unwrap();
    assert_eq!(grid.nx, 41);

    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,y,value,status"));
    let anchors: Vec<Complex64> =
        (0..5).map(|k| Complex64::from_polar(1.0, TAU * k as f64 / 5.0)).chain([Complex64::new(0.0, 0.0)]).collect();
    let mut members = 0;
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f.len(), 4);
        if f[3] == "member" {
            members += 1;
            let z = Complex64::new(f[0].parse().unwrap(), f[1].parse().unwrap());
            let d = anchors.iter().map(|&a| (a - z).norm()).fold(f64::INFINITY, f64::min);
            assert!(d <= 0.1, "member cell {z} at distance {d}");
        }
    }
    assert!(members >= 1);
}

#[test]
fn identical_runs_give_identical_bytes() {
    let dir = TempDir::new().unwrap();
    let pts = write(dir.path(), "pts.json", "[[1,0],[0,1],[-1,0],[0,-1],[0.5,0.2]]");
    let csv = dir.path().join("grid.csv");
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_hullbound"))
            .env("HULLBOUND_THREADS", threads)
            .args(["grid", "--points-file", &pts, "--degree", "2", "--res", "9", "--csv", csv.to_str().unwrap()])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        (out.stdout, std::fs::read(&csv).unwrap())
    };
    let a = run("1");
    let b = run("4");
    assert_eq!(a, b);
}

#[test]
fn floats_use_seventeen_significant_digits() {
    let out = hullbound(&["jacobian", "--n", "3", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"expected\": 6.0000000000000000e0"), "{text}");
}

#[test]
fn flags_override_the_config_file() {
    let dir = TempDir::new().unwrap();
    let cfg = write(dir.path(), "run.json", r#"{"subcommand": "knot", "p": 3, "degree": 3, "samples": 100}"#);
    let out = hullbound(&["--config", &cfg, "--degree", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["command"], "knot");
    assert_eq!(r["result"]["degree"], 1);
    assert_eq!(r["result"]["p"], 3);
    assert_eq!(r["result"]["samples"], 100);
}

#[test]
fn reports_go_to_the_named_files() {
    let dir = TempDir::new().unwrap();
    let (report, svg) = (dir.path().join("r.json"), dir.path().join("r.svg"));
    let out =
        hullbound(&["circle-points", "--n", "4", "--out", report.to_str().unwrap(), "--svg", svg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(r["verified"], true);
    let exact: MembershipVerdict<f64> = serde_json::from_value(r["result"]["exact"].clone()).unwrap();
    assert!(exact.is_member());
    assert!(std::fs::read_to_string(svg).unwrap().starts_with("<svg"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(hullbound(&[]).status.code(), Some(1));
    assert_eq!(hullbound(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(hullbound(&["points", "--points", "[[1,0],"]).status.code(), Some(1));
    assert_eq!(hullbound(&["knot", "--degree", "2"]).status.code(), Some(1));
    assert_eq!(hullbound(&["grid", "--points", "[[1,0],[0,1]]", "--degree", "1", "--res", "1"]).status.code(), Some(1));
    assert_eq!(hullbound(&["points", "--points", "[[1,0],[0,1],[1,0]]", "--w", "[5,5]"]).status.code(), Some(1));
    assert_eq!(hullbound(&["knot", "--p", "2", "--q", "2", "--degree", "2"]).status.code(), Some(1));
    let bad = Command::new(env!("CARGO_BIN_EXE_hullbound"))
        .env("HULLBOUND_THREADS", "zero")
        .args(["jacobian"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn help_exits_zero() {
    assert_eq!(hullbound(&["--help"]).status.code(), Some(0));
}

#[test]
fn failed_recheck_exits_two_and_still_reports() {
    // this construction leaves a rounding-level residual, far above the threshold
    let out = hullbound(&["circle-points", "--n", "5", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["verified"], false);
}

#[test]
fn separator_and_family_reports() {
    let out = hullbound(&["separate2", "--z", "[1,1]", "--w", "[1,1]"]);
    assert_eq!(out.status.code(), Some(0));
    let s = &json(&out)["result"];
    assert!(s["check_sup"].as_f64().unwrap() < 1.0);

    let out = hullbound(&["family", "--p", "2", "--samples", "4000"]);
    assert_eq!(out.status.code(), Some(0));
    let c = json(&out)["result"]["clearance"].as_f64().unwrap();
    assert!((c - 0.3472).abs() < 1e-3, "{c}");
}

#[test]
fn pathological_rings_are_members() {
    let out = hullbound(&["pathological", "--n-max", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["all_members"], true);
}

#[test]
fn arc_suite() {
    let out = hullbound(&["arc", "--n", "3", "--alpha", "2.5"]);
    assert_eq!(out.status.code(), Some(0));
    let w = &json(&out)["result"]["witness"];
    assert!(w["residual"].as_f64().unwrap() < 1e-9);

    let out = hullbound(&["arc", "--alpha", "0.6", "--trials", "5", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let seps = json(&out)["result"]["separations"].as_array().unwrap().clone();
    assert_eq!(seps.len(), 5);
    assert!(seps.iter().all(|s| s["separation"]["a"] == 1.0));
}

#[test]
fn cheb_on_unit_circle() {
    let out = hullbound(&["cheb", "--degree", "2", "--generator", r#"{"kind":"circle","center":[0,0],"radius":1}"#]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["passes"], true);

    let out = hullbound(&["cheb", "--degree", "2", "--points", "[[1,0],[0,1]]"]);
    assert_eq!(out.status.code(), Some(1));
}
