use std::process::{Command, Output};

use primstab::cli::{cmd_psreport, psreport_params, Format, PSREPORT_HEADER};
use primstab::rep::{make_sanov, Representation};

fn primstab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_primstab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(primstab(&["primitive", "aba"]).status.code(), Some(0));
    assert_eq!(primstab(&["primitive", "abAB"]).status.code(), Some(1));
    assert_eq!(primstab(&["primitive", "ab1"]).status.code(), Some(2));
    assert_eq!(primstab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(primstab(&["examples", "bogus"]).status.code(), Some(2));
    assert_eq!(primstab(&["psreport", "/nonexistent/rep.json"]).status.code(), Some(2));
    assert_eq!(primstab(&["--help"]).status.code(), Some(0));
}

#[test]
fn primitive_report_lines() {
    let out = stdout(&primstab(&["primitive", "aba"]));
    assert!(out.contains("cyclic_reduction: aab"));
    assert!(out.contains("conjugator: ab"));
    assert!(out.contains("verdict: primitive"));
    let out = stdout(&primstab(&["primitive", "abc", "--rank", "3"]));
    assert!(out.contains("rank: 3"));
}

#[test]
fn whgraph_dot_golden() {
    let out = stdout(&primstab(&["whgraph", "abAB"]));
    let expected = "graph whitehead {\n  a;\n  A;\n  b;\n  B;\n  a -- b [label=\"1\"];\n  a -- B [label=\"1\"];\n  \
                    A -- b [label=\"1\"];\n  A -- B [label=\"1\"];\n}\n";
    assert_eq!(out, expected);
}

#[test]
fn enumerate_json_matches_csv() {
    let csv = stdout(&primstab(&["enumerate", "--rank", "2", "--max-length", "4"]));
    let json = stdout(&primstab(&[
        "enumerate",
        "--rank",
        "2",
        "--max-length",
        "4",
        "--format",
        "json",
    ]));
    let rows: Vec<serde_json::Value> = serde_json::from_str(&json).unwrap();
    let from_json: String = rows
        .iter()
        .map(|r| format!("{},{}\n", r["class"].as_str().unwrap(), r["length"]))
        .collect();
    assert_eq!(csv, from_json);
    let both = stdout(&primstab(&[
        "enumerate",
        "--rank",
        "2",
        "--max-length",
        "2",
        "--no-invert-dedup",
    ]));
    assert!(both.lines().count() > 4);
}

#[test]
fn examples_round_trip_through_psreport() {
    let dir = std::env::temp_dir().join(format!("primstab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("sanov.json");
    let path = file.to_str().unwrap();
    assert_eq!(primstab(&["examples", "sanov", "--out", path]).status.code(), Some(0));
    let rho = Representation::from_json(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(rho, make_sanov());

    let from_file = stdout(&primstab(&["psreport", path, "--max-length", "5"]));
    let params = psreport_params(None, 5, None, 1e-9, true).unwrap();
    let in_process = cmd_psreport("builtin:sanov", 5, &params, Format::Csv).unwrap().stdout;
    assert_eq!(from_file, in_process);
    assert!(from_file.starts_with(PSREPORT_HEADER));
    assert!(from_file.contains("\na,1,parabolic,0,"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn psreport_json_is_valid() {
    let out = primstab(&["psreport", "builtin:ptorus", "--max-length", "4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["label"], "punctured-torus");
    assert!(doc["rows"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["trace_class"] == "loxodromic"));
}

#[test]
fn thread_cap_must_be_positive() {
    let out = Command::new(env!("CARGO_BIN_EXE_primstab"))
        .args(["enumerate", "--max-length", "3"])
        .env("PRIMSTAB_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
