use std::process::{Command, Output};

use prequant_ech::cli::{self, OutputRecord};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prequant-ech"))
        .args(args)
        .output()
        .expect("spawn binary")
}

fn stdout(args: &[&str]) -> String {
    let out = bin(args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn sphere_capacity_csv_row() {
    let text = stdout(&["capacity", "--base", "sphere", "--euler", "-1", "--k", "3", "--format", "csv"]);
    assert_eq!(text, "k,capacity\n3,4\n");
}

#[test]
fn torus_range_reports_bounds_and_witnesses() {
    let text = stdout(&[
        "capacity", "--base", "torus", "--euler", "-2", "--k", "1", "--k-max", "2", "--format", "csv",
    ]);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[1], "1,4,4,true,1:1:0:0:1,1:1:0:0:1");
    assert_eq!(lines[2], "2,4,8,false,1:2:0:0:0,2:0:0:0:4");
}

#[test]
fn umap_chain_and_trace() {
    assert_eq!(
        stdout(&["umap", "--euler", "-2", "--start", "1:1"]),
        "(1,1) -> (2,0) -> EMPTY\n"
    );
    let trace = stdout(&["umap", "--euler", "-1", "--start", "1:1", "--trace", "--format", "csv"]);
    assert_eq!(
        trace,
        "step,state,grading\n0,(1,1),8\n1,(2,0),6\n2,(0,1),4\n3,(1,0),2\n4,EMPTY,0\n"
    );
}

#[test]
fn index_prints_bare_value() {
    let text = stdout(&["index", "--genus", "1", "--euler", "-1", "--orbitset", "e+^2 e-^2", "--d", "0"]);
    assert_eq!(text.trim(), "4");
}

#[test]
fn generators_by_grading() {
    let text = stdout(&["generators", "--genus", "1", "--euler", "-1", "--grading", "2", "--format", "csv"]);
    let sets: Vec<_> = text.lines().skip(1).map(|l| l.rsplit(',').next().unwrap()).collect();
    assert_eq!(sets, ["e+", "e-^2"]);
}

#[test]
fn json_lines_round_trip() {
    let text = stdout(&[
        "capacity", "--base", "sphere", "--euler", "-3", "--k", "0", "--k-max", "4", "--format", "json",
    ]);
    let recs: Vec<OutputRecord> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(recs.len(), 5);
    for (line, rec) in text.lines().zip(&recs) {
        assert_eq!(rec.command, "capacity");
        assert_eq!(serde_json::to_string(rec).unwrap(), line);
    }
}

#[test]
fn input_errors_exit_2() {
    for args in [
        &["capacity", "--base", "sphere", "--euler", "1", "--k", "1"][..],
        &["generators", "--genus", "0", "--euler", "-1", "--grading", "3"],
        &["index", "--genus", "1", "--euler", "-1", "--orbitset", "h3", "--d", "0"],
        &["capacity", "--base", "torus", "--euler", "-1", "--k", "0"],
        &["no-such-command"],
    ] {
        let out = bin(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_0() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    assert_eq!(cli::run(["prequant-ech", "--help"], &mut out, &mut err), cli::EXIT_OK);
    assert!(String::from_utf8(out).unwrap().contains("umap"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["generators", "--genus", "2", "--euler", "-1", "--action-limit", "9", "--format", "json"];
    let first = bin(&args);
    assert_eq!(first.status.code(), Some(0));
    for _ in 0..3 {
        assert_eq!(bin(&args).stdout, first.stdout);
    }
}
