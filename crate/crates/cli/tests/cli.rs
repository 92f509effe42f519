//! End-to-end CLI tests: file parsing diagnostics, exit codes, the
//! pretty/JSON round trip, and byte-identical determinism of seeded runs.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

fn symres_bin() -> &'static str {
    env!("CARGO_BIN_EXE_symres")
}

fn run(args: &[&str]) -> Output {
    Command::new(symres_bin())
        .args(args)
        .output()
        .expect("spawn symres")
}

fn write_file(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    path.to_str().unwrap().to_string()
}

const COORD_POINTS: &str = "field 32003\nring x0 x1 x2\nideal x0*x1, x0*x2, x1*x2\n";
const PAPER_EXAMPLE: &str = "field 32003\nring x0 x1 x2 x3\nideal -x2^3*x3 + x3^4, -x2^4 - x3^4, -x1*x3^3 - x3^4, x2^2*x3^2 + x3^4\n";

#[test]
fn predict_prints_the_expected_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(dir.path(), "coordpts.ideal", COORD_POINTS);
    let out = run(&["predict", &path]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim(), "1: S(-1,-1)^2 ; 2: S(-2,-2)^1");
}

#[test]
fn predict_refuses_the_paper_example() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(dir.path(), "paper.ideal", PAPER_EXAMPLE);
    let out = run(&["predict", &path]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("hypotheses violated"), "stderr: {err}");
}

#[test]
fn verify_paper_example_reports_dimension_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(dir.path(), "paper.ideal", PAPER_EXAMPLE);
    let out = run(&["verify", &path, "--json"]);
    assert!(out.status.success(), "hypothesis failure is data, not an error");
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["hypotheses"]["dimension"], 2);
    assert_eq!(v["subregular"], false);
    assert!(v["betti_match"].is_null());
    assert!(v.get("timings").is_none());
}

#[test]
fn pretty_betti_round_trips_against_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(dir.path(), "coordpts.ideal", COORD_POINTS);

    let pretty_out = run(&["resolve", &path, "--of", "ix"]);
    assert!(pretty_out.status.success());
    let pretty_text = String::from_utf8(pretty_out.stdout).unwrap();
    let betti_line = pretty_text
        .lines()
        .find_map(|l| l.strip_prefix("betti: "))
        .expect("betti line");
    let reparsed = symres::complex::BettiTable::parse_pretty(betti_line).unwrap();

    let json_out = run(&["resolve", &path, "--of", "ix", "--json"]);
    assert!(json_out.status.success());
    let v: symres::complex::BettiTableJson =
        serde_json::from_slice(&json_out.stdout).expect("betti json");
    let from_json = symres::complex::BettiTable::from_json(&v);
    assert_eq!(reparsed, from_json);
}

#[test]
fn identical_seeds_give_byte_identical_json() {
    let args = [
        "battery", "--n", "1", "--eta", "2", "--count", "2", "--seed", "11", "--json",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn parse_errors_exit_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(
        dir.path(),
        "bad.ideal",
        "field 32003\nring x0 x1\nideal x0*q1\n",
    );
    let out = run(&["dim", &path]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "stderr: {err}");
}

#[test]
fn mixed_degrees_rejected_with_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(
        dir.path(),
        "mixed.ideal",
        "field 32003\nring x0 x1 x2\nideal x0*x1, x0, x1*x2\n",
    );
    let out = run(&["dim", &path]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("equigenerated"), "stderr: {err}");
}

#[test]
fn unknown_subcommand_exits_2() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn char_flag_overrides_file_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(dir.path(), "coordpts.ideal", COORD_POINTS);
    let out = run(&["verify", &path, "--char", "101", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["field"], "F_101");
    assert_eq!(v["betti_match"], true);
}

#[test]
fn rationals_supported_on_small_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(dir.path(), "coordpts.ideal", COORD_POINTS);
    let out = run(&["verify", &path, "--char", "QQ", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["field"], "QQ");
    assert_eq!(v["betti_match"], true);
    assert_eq!(v["identity_checks"]["colon_ok"], true);
}

#[test]
fn dim_prints_the_number() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(dir.path(), "paper.ideal", PAPER_EXAMPLE);
    let out = run(&["dim", &path]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "2");
}

#[test]
fn battery_summary_line() {
    let out = run(&["battery", "--n", "2", "--eta", "2", "--count", "3", "--seed", "5"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("3/3 betti_match"), "got: {text}");
    assert!(text.contains("3/3 subregular"), "got: {text}");
}

#[test]
fn orders_agree_on_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(dir.path(), "coordpts.ideal", COORD_POINTS);
    let a = run(&["verify", &path, "--order", "block", "--json"]);
    let b = run(&["verify", &path, "--order", "grevlex", "--json"]);
    let va: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let vb: serde_json::Value = serde_json::from_slice(&b.stdout).unwrap();
    assert_eq!(va["computed_betti"], vb["computed_betti"]);
    assert_eq!(va["betti_match"], vb["betti_match"]);
    assert_eq!(va["identity_checks"], vb["identity_checks"]);
}

#[test]
fn verify_json_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(dir.path(), "coordpts.ideal", COORD_POINTS);
    let args = ["verify", &path, "--json", "--seed", "99"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn battery_is_thread_count_invariant() {
    let args = [
        "battery", "--n", "2", "--eta", "2", "--count", "4", "--seed", "7", "--json",
    ];
    let single = Command::new(symres_bin())
        .args(args)
        .env("SYMRES_THREADS", "1")
        .output()
        .unwrap();
    let multi = Command::new(symres_bin())
        .args(args)
        .env("SYMRES_THREADS", "4")
        .output()
        .unwrap();
    assert!(single.status.success() && multi.status.success());
    assert_eq!(single.stdout, multi.stdout);
}

#[test]
fn non_cm_inputs_are_data_not_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(
        dir.path(),
        "noncm.ideal",
        "field 32003\nring x0 x1\nideal x0^2, x0*x1\n",
    );
    let out = run(&["verify", &path, "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["hypotheses"]["dimension"], 1);
    assert_eq!(v["hypotheses"]["is_cm"], false);
    assert_eq!(v["hypotheses"]["theorem_applicable"], false);
    assert!(v["betti_match"].is_null());
    assert_eq!(v["hull_contained_in_ix"], true);
}
