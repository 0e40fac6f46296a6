//! End-to-end checks of the binary: outputs, exit codes, determinism.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_markedord"))
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).trim().to_string()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).trim().to_string()
}

const CHAIN3: &str = r#"{"poset": {"elements": ["x1","x2","x3"],
  "covers": [["x1","x2"],["x2","x3"]]},
  "marked": ["x1","x3"], "values": {"x1": 0, "x3": 3}}"#;

#[test]
fn mop_commands_on_the_three_chain() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "chain3.json", CHAIN3);
    let cases = [
        (vec!["mop", "count"], "4"),
        (vec!["mop", "strict"], "2"),
        (vec!["mop", "poly"], "1*x3 - 1*x1 + 1"),
        (vec!["mop", "dim"], "1"),
        (vec!["mop", "recip"], "2"),
        (vec!["mop", "chain-count"], "4"),
        (vec!["mop", "cells"], "{x1} < {x3}"),
    ];
    for (args, want) in cases {
        let out = bin().args(&args).arg("-i").arg(&input).output().unwrap();
        assert!(out.status.success(), "{args:?}: {}", stderr(&out));
        assert_eq!(stdout(&out), want, "{args:?}");
    }
}

#[test]
fn validation_errors_exit_one_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "bad.json",
        r#"{"poset": {"elements": ["x1","x2","x3"],
          "covers": [["x1","x2"],["x2","x3"]]},
          "marked": ["x1","x3"], "values": {"x1": 3, "x3": 0}}"#,
    );
    let out = bin()
        .args(["mop", "count", "-i"])
        .arg(&input)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr(&out), "NotOrderPreserving(x1,x3)");
}

#[test]
fn parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "broken.json", "{ not json");
    let out = bin()
        .args(["mop", "count", "-i"])
        .arg(&input)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let missing = dir.path().join("nope.json");
    let out = bin()
        .args(["mop", "count", "-i"])
        .arg(&missing)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn transitive_covers_are_reported_not_silent() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "redundant.json",
        r#"{"poset": {"elements": ["x1","x2","x3"],
          "covers": [["x1","x2"],["x2","x3"],["x1","x3"]]},
          "marked": ["x1","x3"], "values": {"x1": 0, "x3": 3}}"#,
    );
    let out = bin()
        .args(["mop", "count", "-i"])
        .arg(&input)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out), "4");
    assert!(stderr(&out).contains("(x1,x3)"), "stderr: {}", stderr(&out));
}

#[test]
fn mt_commands() {
    let out = bin()
        .args(["mt", "alpha", "--n", "3", "--bottom", "1,2,3"])
        .output()
        .unwrap();
    assert_eq!(stdout(&out), "7");
    let out = bin()
        .args(["mt", "count", "--n", "3", "--bottom", "1,2,3"])
        .output()
        .unwrap();
    assert_eq!(stdout(&out), "7");
    let out = bin()
        .args(["mt", "alpha-poly", "--n", "2"])
        .output()
        .unwrap();
    assert_eq!(stdout(&out), "1*k2 - 1*k1 + 1");
    // the signed DMT sum agrees with the library's polynomial evaluation
    let poly = markedord::triangles::alpha_polynomial(3).unwrap();
    let want = markedord::triangles::eval_alpha(&poly, &[3, 2, 1]).unwrap();
    let out = bin()
        .args(["mt", "dmt-signed", "--n", "3", "--bottom", "3,2,1"])
        .output()
        .unwrap();
    assert_eq!(stdout(&out), want.to_string());
    // decreasing input to an increasing command is a validation error
    let out = bin()
        .args(["mt", "count", "--n", "3", "--bottom", "3,2,1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr(&out), "NotIncreasing");
}

#[test]
fn chrom_commands() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(
        dir.path(),
        "k3.json",
        r#"{"vertices": ["a","b","c"], "edges": [["a","b"],["a","c"],["b","c"]]}"#,
    );
    let coloring = write(dir.path(), "none.json", r#"{"k": 0, "colors": {}}"#);
    let run = |args: &[&str]| {
        let out = bin()
            .args(args)
            .arg("-g")
            .arg(&graph)
            .arg("-c")
            .arg(&coloring)
            .output()
            .unwrap();
        assert!(out.status.success(), "{args:?}: {}", stderr(&out));
        stdout(&out)
    };
    assert_eq!(run(&["chrom", "poly"]), "1*m^3 - 3*m^2 + 2*m");
    assert_eq!(run(&["chrom", "eval", "--m", "3"]), "6");
    assert_eq!(run(&["chrom", "eval", "--m", "-1"]), "-6");
    assert_eq!(run(&["chrom", "acyclic"]), "6");
    assert_eq!(run(&["chrom", "pairs", "--m", "1"]), "6");

    let marked = write(dir.path(), "c.json", r#"{"k": 1, "colors": {"a": 1}}"#);
    let out = bin()
        .args(["chrom", "poly", "-g"])
        .arg(&graph)
        .arg("-c")
        .arg(&marked)
        .output()
        .unwrap();
    assert_eq!(stdout(&out), "1*m^2 - 3*m + 2");
}

#[test]
fn zero_polynomial_prints_zero() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(
        dir.path(),
        "edge.json",
        r#"{"vertices": ["u","v"], "edges": [["u","v"]]}"#,
    );
    let coloring = write(
        dir.path(),
        "same.json",
        r#"{"k": 1, "colors": {"u": 1, "v": 1}}"#,
    );
    let out = bin()
        .args(["chrom", "poly", "-g"])
        .arg(&graph)
        .arg("-c")
        .arg(&coloring)
        .output()
        .unwrap();
    assert_eq!(stdout(&out), "0");
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "chain3.json", CHAIN3);
    let mut first: Option<Vec<u8>> = None;
    for _ in 0..3 {
        let out = bin()
            .args(["mop", "poly", "-i"])
            .arg(&input)
            .args(["--format", "json"])
            .output()
            .unwrap();
        match &first {
            None => first = Some(out.stdout.clone()),
            Some(prev) => assert_eq!(prev, &out.stdout),
        }
    }
}

#[test]
fn json_output_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "chain3.json", CHAIN3);
    let out = bin()
        .args(["mop", "poly", "-i"])
        .arg(&input)
        .args(["--format", "json"])
        .output()
        .unwrap();
    let poly = markedord::json::poly_from_str(&stdout(&out)).unwrap();
    assert_eq!(format!("{poly}"), "1*x3 - 1*x1 + 1");
}

#[test]
fn corpus_generation_is_seeded() {
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");
    for out in [&out_a, &out_b] {
        let run = bin()
            .args(["corpus", "--seed", "7", "--count", "3", "--out"])
            .arg(out)
            .output()
            .unwrap();
        assert!(run.status.success());
    }
    for i in 0..3 {
        let name = format!("marking_{i:03}.json");
        let a = fs::read(out_a.join(&name)).unwrap();
        let b = fs::read(out_b.join(&name)).unwrap();
        assert_eq!(a, b);
        // and the generated files parse as valid markings
        let (m, _) = markedord::json::marking_from_str(&String::from_utf8(a).unwrap()).unwrap();
        m.validate().unwrap();
    }
}
