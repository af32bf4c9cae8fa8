use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn dynamis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dynamis"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

#[test]
fn run_toy_stream_with_verify() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(dir.path(), "toy.txt", "+e 0 1\n+e 1 2\n-e 0 1\n");
    let out = dynamis(&["run", "mis-simple", &s, "--verify"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let r = report(&out);
    assert_eq!(r["algorithm"], "mis-simple");
    assert_eq!(r["stream"]["events"], 3);
    assert_eq!(r["verification"]["ok"], true);
}

#[test]
fn incremental_flow_rejects_deletions() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(dir.path(), "f.txt", "flow 0 2\n+e 0 1\n+e 1 2\n-e 0 1\n");
    let out = dynamis(&["run", "flow-inc", &s]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("deletions"));
    let out = dynamis(&["run", "flow-fd", &s, "--verify"]);
    assert!(out.status.success());
    assert_eq!(report(&out)["result"]["value"], 0);
}

#[test]
fn queries_go_to_stdout_when_report_is_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(dir.path(), "q.txt", "n 3\n+e 0 1\n? 0\n? 1\n? 2\n");
    let rep = dir.path().join("r.json");
    let out = dynamis(&["run", "mis-implicit", &s, "--report", rep.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "0 1\n1 0\n2 1\n");
    let r: Value = serde_json::from_str(&fs::read_to_string(rep).unwrap()).unwrap();
    assert_eq!(r["query_answers"].as_array().unwrap().len(), 3);
}

#[test]
fn two_level_adjustments_within_bound_on_seed_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.txt");
    let p = path.to_str().unwrap();
    let args = [
        "gen",
        "--family",
        "random-edges",
        "--n",
        "30",
        "--events",
        "400",
    ];
    let out = dynamis(&[&args[..], &["--seed", "3", "--p-vertex", "0.1", "--out", p]].concat());
    assert!(out.status.success());
    let out = dynamis(&["run", "mis-2level", p, "--verify"]);
    assert!(out.status.success());
    let r = report(&out);
    let adj = r["totals"]["adjustments"].as_u64().unwrap();
    let bound =
        4 * (r["stream"]["events"].as_u64().unwrap() + r["stream"]["final_n"].as_u64().unwrap());
    assert!(adj <= bound, "{adj} > {bound}");
}

#[test]
fn gen_arbitrary_removal_counts() {
    let out = dynamis(&[
        "gen",
        "--family",
        "arbitrary-removal",
        "--m",
        "16",
        "--delta",
        "4",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("+e ")).count(), 20);
}

#[test]
fn gen_degree_biased_round_trips_and_rejects_small_m() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("db.txt");
    let out = dynamis(&[
        "gen",
        "--family",
        "degree-biased",
        "--m",
        "64",
        "--out",
        p.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let parsed = dynamis_core::parse_stream(&fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(parsed.events.len(), 2 * 2 * 9 + 2 * 3);
    let out = dynamis(&["gen", "--m", "32", "--family", "degree-biased"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scaling_reports_slope_and_sizes() {
    let out = dynamis(&[
        "scaling",
        "mis-simple",
        "arbitrary-removal",
        "--sizes",
        "256,1024,4096",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let r = report(&out);
    assert_eq!(r["scaling"]["sizes"].as_array().unwrap().len(), 3);
    assert!(r["scaling"]["slope"].as_f64().unwrap() > 1.0);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(dynamis(&["run", "mis-fast", "x"]).status.code(), Some(2));
    assert_eq!(
        dynamis(&["run", "mis-simple", "/nonexistent/stream"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(dynamis(&[]).status.code(), Some(2));
}
