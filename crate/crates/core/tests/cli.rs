mod common;

use std::io::Write;
use std::process::{Command, Output};

use common::fixture_path;
use coxeter_growth::Error;

fn coxgrowth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxgrowth"))
        .args(args)
        .env_remove("COXGROWTH_CONFIG")
        .output()
        .expect("binary runs")
}

fn fx(name: &str) -> String {
    fixture_path(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_succeeds_and_is_deterministic() {
    let args = ["analyze", &fx("golden"), "--k", "12", "--oracle", "--corroborate", "--format", "json"];
    let a = coxgrowth(&args);
    let b = coxgrowth(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["w"][2], "5");
    assert_eq!(v["g"][2], "6");
    assert_eq!(v["oracle"]["w_agrees"], true);
}

#[test]
fn csv_table() {
    let o = coxgrowth(&["analyze", &fx("universal3"), "--k", "4", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,w_k,g_k,r_k"));
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[4][..3], ["4".to_string(), "24".into(), "24".into()]);

    let o = coxgrowth(&["growth", &fx("golden"), "--k", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("2,5,6"));
}

#[test]
fn dot_exports() {
    let o = coxgrowth(&["automaton", &fx("universal3"), "--kind", "shortlex", "--dot"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("q0 -> q1 [label=\"s1\"]"));
    assert_eq!(dot, stdout(&coxgrowth(&["automaton", &fx("universal3"), "--kind", "shortlex", "--dot"])));

    let o = coxgrowth(&["check", &fx("pentagon"), "--dot"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dashed"));
}

#[test]
fn subcommands_run() {
    for args in [
        vec!["check", "golden"],
        vec!["roots", "golden_m13_4"],
        vec!["roots", "golden_m13_4", "--format", "json"],
        vec!["automaton", "golden", "--kind", "geo", "--format", "json"],
        vec!["growth", "path4_chords", "--k", "10"],
        vec!["oracle", "golden", "--k", "5"],
        vec!["analyze", "infinite_dihedral"],
        vec!["analyze", "finite_a2", "--corroborate"],
    ] {
        let mut a: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        a[1] = fx(args[1]);
        let refs: Vec<&str> = a.iter().map(String::as_str).collect();
        let o = coxgrowth(&refs);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stdout.is_empty());
    }
}

#[test]
fn input_errors_exit_two() {
    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "rank 3\nedge 1 4 inf").unwrap();
    let o = coxgrowth(&["analyze", bad.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));

    let o = coxgrowth(&["analyze", "/nonexistent/diagram.cox"]);
    assert_eq!(o.status.code(), Some(2));

    // disconnected diagram
    let mut disc = tempfile::NamedTempFile::new().unwrap();
    writeln!(disc, "rank 4\nedge 1 2 inf\nedge 3 4 inf").unwrap();
    let o = coxgrowth(&["analyze", disc.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let o = coxgrowth(&["analyze", &fx("golden"), "--tol", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn caps_exit_three() {
    let o = coxgrowth(&["analyze", &fx("path4_chords"), "--cap-states", "3"]);
    assert_eq!(o.status.code(), Some(3));
    let o = coxgrowth(&["roots", &fx("path4_chords"), "--cap-sigma", "4"]);
    assert_eq!(o.status.code(), Some(3));
    let o = coxgrowth(&["roots", &fx("path4_chords"), "--cap-degree", "2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn internal_errors_map_to_four() {
    assert_eq!(Error::Invariant("x".into()).exit_code(), 4);
}

#[test]
fn config_file_from_environment() {
    let mut cfg = tempfile::NamedTempFile::new().unwrap();
    writeln!(cfg, "k = 4\nformat = \"csv\"").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_coxgrowth"))
        .args(["analyze", &fx("universal3")])
        .env("COXGROWTH_CONFIG", cfg.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 6);

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "unknown_key = 1").unwrap();
    let o = coxgrowth(&["analyze", &fx("universal3"), "--config", bad.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
