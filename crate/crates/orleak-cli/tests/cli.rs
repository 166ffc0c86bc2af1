//! End-to-end tests of the `orleak` binary: stable output, spec'd exit
//! codes, and byte-identical reruns.

use std::path::Path;
use std::process::{Command, Output};

fn orleak(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orleak"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn simulate_k2_shows_single_report_message() {
    let out = orleak(&[
        "simulate",
        "--graph",
        "complete:2",
        "--algo",
        "convergecast",
        "--input",
        "initiator:1",
    ]);
    assert!(out.status.success());
    let dump: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(dump["rounds"], 2);
    let messages = dump["messages"].as_array().unwrap();
    let non_empty: Vec<_> = messages
        .iter()
        .filter(|m| !m["payload_hex"].is_null())
        .collect();
    assert_eq!(non_empty.len(), 1);
    assert_eq!(non_empty[0]["dir"], "1->0");
    assert_eq!(non_empty[0]["round"], 1);
    assert_eq!(non_empty[0]["payload_hex"], "01");
    assert_eq!(dump["outputs"][0]["bit"], 1);
}

#[test]
fn simulate_all_zero_silent_run_is_silent() {
    let out = orleak(&[
        "simulate", "--graph", "star:4", "--algo", "silent", "--input", "zeros",
    ]);
    assert!(out.status.success());
    let dump: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(dump["messages"]
        .as_array()
        .unwrap()
        .iter()
        .all(|m| m["payload_hex"].is_null()));
    assert_eq!(dump["outputs"][0]["bit"], 0);
}

#[test]
fn leakage_rows_match_pinned_values() {
    let out = orleak(&[
        "leakage", "--graph", "star:4", "--algo", "silent", "--mode", "filtered", "--p", "0.5",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("graph,algo,mode,selector,value_bits,method,samples,stderr\n"));
    assert!(text.contains("star:4,silent(root=0),filtered,p=0.500000,1.116729,exact,,"));

    let out = orleak(&[
        "leakage",
        "--graph",
        "complete:2",
        "--algo",
        "convergecast",
        "--edges",
        "0-1",
    ]);
    assert!(stdout(&out).contains("F=0-1,1.000000,exact"));

    // empty edge set leaks nothing
    let out = orleak(&[
        "leakage", "--graph", "star:4", "--algo", "silent", "--edges", "",
    ]);
    assert!(stdout(&out).contains("F=empty,0.000000"));
}

#[test]
fn leakage_rejects_bad_probability_with_exit_2() {
    let out = orleak(&[
        "leakage", "--graph", "star:4", "--algo", "silent", "--p", "1.5",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bounds_comparison_row_matches_spec_example() {
    let out = orleak(&[
        "bounds",
        "--graph",
        "complete:4",
        "--algo",
        "convergecast",
        "--theorem",
        "dense_k",
        "--k",
        "1",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("dense_k,graph=complete:4;k=1,0.333333,0.405639,0.072306,true,"));

    // densec on the always-talking convergecast: hypothesis violated, bound 0
    let out = orleak(&[
        "bounds",
        "--graph",
        "star:4",
        "--algo",
        "convergecast",
        "--theorem",
        "densec_p",
        "--p",
        "0.5",
    ]);
    let text = stdout(&out);
    assert!(text.contains("densec_p,graph=star:4;wcom=3;p=0.500000,0.000000"));
    assert!(text.contains("false,hypothesis wcom < n-1 violated"));
}

#[test]
fn rcase_discrepancy_report_is_generated() {
    let out = orleak(&[
        "bounds",
        "--graph",
        "complete:2",
        "--algo",
        "convergecast",
        "--theorem",
        "rcase",
        "--edges",
        "0-1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    // simulated 1.0 bit against the 1.0-bit component form ...
    assert!(text.contains(
        "rcase,graph=complete:2;F=0-1,1.000000,1.000000,0.000000,true,component entropy form"
    ));
    // ... and the 0.0-bit printed form, flagged as disagreeing
    assert!(text
        .contains("rcase_printed_form,graph=complete:2;F=0-1,0.000000,1.000000,1.000000,false,"));
    assert!(text.contains("printed form disagrees"));
}

#[test]
fn petrov_sweep_passes() {
    let out = orleak(&["bounds", "--theorem", "petrov", "--n-max", "8"]);
    assert!(out.status.success());
    let text = stdout(&out);
    // every (n, m) row carries a non-negative worst margin
    for line in text.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        let margin: f64 = fields[4].parse().unwrap();
        assert!(margin >= -1e-9, "negative margin in {line}");
    }
}

#[test]
fn verify_reports_pass_and_fail_with_exit_codes() {
    let out = orleak(&[
        "verify",
        "--family",
        "n<=3",
        "--special-n",
        "0",
        "--suites",
        "k2_spot_values,petrov",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("PASS k2_spot_values"));
    assert!(text.contains("PASS petrov"));
    assert!(text.contains("OK: 2 suites"));

    let out = orleak(&[
        "verify",
        "--family",
        "n<=3",
        "--special-n",
        "0",
        "--algos",
        "lossy",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let text = stdout(&out);
    assert!(text.contains("FAIL lossy_control"));
    assert!(
        text.contains("witness:"),
        "a concrete witness must be printed"
    );
    assert!(text.contains("disconnecting set with identical observations"));

    let out = orleak(&["verify", "--family", "n<=0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_unknown_suite_is_config_error() {
    let out = orleak(&["verify", "--suites", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ramp_build_verify_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("scheme.json");
    let out = orleak(&[
        "ramp",
        "--out",
        dump.to_str().unwrap(),
        "build",
        "1",
        "2",
        "3",
        "5",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("verified=true"));
    assert!(stdout(&out).contains("2.321928"));

    let out = orleak(&["ramp", "verify", "--input", dump.to_str().unwrap()]);
    assert!(out.status.success());

    // tamper: zero the first share everywhere
    let mut parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&dump).unwrap()).unwrap();
    for row in parsed["table"].as_array_mut().unwrap() {
        row["shares"][0] = 0.into();
    }
    let tampered = dir.path().join("tampered.json");
    std::fs::write(&tampered, serde_json::to_string(&parsed).unwrap()).unwrap();
    let out = orleak(&["ramp", "verify", "--input", tampered.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));

    let out = orleak(&["ramp", "bounds", "1", "2", "4"]);
    assert!(stdout(&out).contains("2.000000"));
}

#[test]
fn runs_are_byte_identical() {
    let args = [
        "leakage",
        "--graph",
        "star:4",
        "--algo",
        "silent",
        "--mode",
        "filtered",
        "--p",
        "0.5",
        "--method",
        "mc",
        "--seed",
        "11",
        "--samples",
        "500",
    ];
    let a = orleak(&args);
    let b = orleak(&args);
    assert_eq!(a.stdout, b.stdout);

    let args = [
        "simulate",
        "--graph",
        "star:4",
        "--algo",
        "dummy",
        "--input",
        "initiator:2",
        "--seed",
        "3",
    ];
    let a = orleak(&args);
    let b = orleak(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn config_file_supplies_defaults_but_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(
        &cfg,
        r#"{"graph": "star:4", "algo": "silent", "mode": "filtered"}"#,
    )
    .unwrap();
    let out = orleak(&["--config", cfg.to_str().unwrap(), "leakage", "--p", "0.5"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("star:4,silent(root=0),filtered,p=0.500000,1.116729"));

    // explicit flag overrides the config's mode
    let out = orleak(&[
        "--config",
        cfg.to_str().unwrap(),
        "leakage",
        "--mode",
        "full",
        "--p",
        "0.5",
    ]);
    assert!(stdout(&out).contains(",full,p=0.500000"));
}

#[test]
fn graph_files_load_in_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    let edge_list = dir.path().join("net.txt");
    std::fs::write(&edge_list, "# a 3-path\n0 1\n1 2\n").unwrap();
    let out = orleak(&[
        "leakage",
        "--graph",
        edge_list.to_str().unwrap(),
        "--algo",
        "convergecast",
        "--edges",
        "0-1",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("net,convergecast(root=0)"));

    let json = dir.path().join("net.json");
    std::fs::write(&json, r#"{"nodes": 3, "edges": [[0, 1], [1, 2]]}"#).unwrap();
    let out = orleak(&[
        "leakage",
        "--graph",
        json.to_str().unwrap(),
        "--algo",
        "convergecast",
        "--edges",
        "0-1",
    ]);
    assert!(out.status.success());

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "0 1 extra\n").unwrap();
    let out = orleak(&[
        "simulate",
        "--graph",
        bad.to_str().unwrap(),
        "--algo",
        "convergecast",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let out = orleak(&[
        "leakage",
        "--graph",
        "star:4",
        "--algo",
        "silent",
        "--k",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("graph,algo,"));
    assert!(Path::new(&path).exists());
}
