//! End-to-end tests of the `pell` binary: output formats, exit codes,
//! and file artifacts.

use std::process::{Command, Output};

fn pell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pell"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn solve_default_fast_json() {
    let o = pell(&["solve", "61"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o).trim(),
        r#"{"A":61,"x":"226153980","y":"1766319049","method":"EQUAL_R","steps":6}"#
    );
}

#[test]
fn solve_standard_and_seqdiff() {
    let o = pell(&["solve", "61", "--method", "standard"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o).trim(),
        r#"{"A":61,"x":"226153980","y":"1766319049","method":"STANDARD","steps":12}"#
    );

    let o = pell(&["solve", "61", "--method", "seqdiff", "--format", "tsv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "61\t226153980\t1766319049\tSEQDIFF\t10");

    let o = pell(&["solve", "103", "--method", "seqdiff", "--trace"]);
    assert!(o.status.success());
    let err = stderr(&o);
    assert!(err.contains("start form: 18Y^2 - 3X^2 + 14XY"));
    assert!(err.contains("5) X = Y + X'  =>  13Y^2 - 3X^2 - 16XY"));
}

#[test]
fn solve_perfect_square_fails() {
    let o = pell(&["solve", "16"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("perfect square"));
}

#[test]
fn solve_minus_three() {
    let o = pell(&["solve", "1729", "--rhs", "-3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains(r#""x":"2954""#) && out.contains(r#""y":"122831""#));

    // No solution exists for A = 5.
    let o = pell(&["solve", "5", "--rhs", "-3"]);
    assert_eq!(o.status.code(), Some(1));

    let o = pell(&["solve", "61", "--rhs", "7"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn family_horizontal_records() {
    let o = pell(&[
        "family", "h4n1", "--l", "2", "--m", "1", "--a", "1", "--b", "1", "--i", "-3..3",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains(r#""i":-1,"A":"13","x":"180","#));
    assert!(out.contains(r#""i":1,"A":"41","x":"320","#));
    for line in out.lines() {
        assert!(line.contains(r#""verified":true"#));
    }
}

#[test]
fn family_vertical_single_shift() {
    let o = pell(&[
        "family", "v8n7", "--g1", "3", "--d", "1", "--m", "1", "--l", "7", "--shift", "7",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains(r#""A":"103","x":"22419","#));
}

#[test]
fn family_identity_kind() {
    let o = pell(&[
        "family", "es5", "--n1", "5", "--d", "6", "--t", "3", "--shift", "-41",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains(r#""A":"149","x":"2113761020","#));
}

#[test]
fn family_usage_errors() {
    // Non-coprime basic parameters.
    let o = pell(&[
        "family", "h4n1", "--l", "2", "--m", "2", "--a", "1", "--b", "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("coprime"));

    // Unknown family id.
    let o = pell(&["family", "p9z"]);
    assert_eq!(o.status.code(), Some(2));

    // Missing free variable.
    let o = pell(&["family", "es1", "--g", "3"]);
    assert_eq!(o.status.code(), Some(2));

    // Condition violation is a math error, not usage.
    let o = pell(&[
        "family", "h4n1", "--l", "3", "--m", "1", "--a", "1", "--b", "1",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn scan_writes_table_and_maxima() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = pell(&["scan", "2", "63", "--maxima", "--out", out]);
    assert!(o.status.success());
    let table = std::fs::read_to_string(dir.path().join("table.jsonl")).unwrap();
    assert!(table.starts_with(r#"{"A":2,"x":"2","y":"3","#));
    assert_eq!(table.lines().count(), 56); // non-squares in [2, 63]
    let tsv = std::fs::read_to_string(dir.path().join("table.tsv")).unwrap();
    assert!(tsv.contains("61\t226153980"));
    let summary = stdout(&o);
    assert!(summary.contains("A=61"));
    assert!(dir.path().join("maxima.json").exists());

    let o = pell(&["scan", "10", "9"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bench_report_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = pell(&["bench", "2", "100", "--out", out]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("0 mismatches"));
    let json = std::fs::read_to_string(dir.path().join("bench.json")).unwrap();
    assert!(json.contains("\"step_ratio_fast_over_standard\""));
}
