//! End-to-end CLI tests: run the library entry point directly and the
//! installed binary for the exit-code contract.

use std::process::Command;

use patword_cli::{run, RunOutput};
use patword::algebra::TSeries;

fn run_args(args: &[&str]) -> RunOutput {
    run(std::iter::once("patword").chain(args.iter().copied()))
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_patword"))
}

#[test]
fn series_closed_2341_text() {
    let out = run_args(&[
        "series", "--pattern", "2341", "--alphabet", "5", "--order", "3", "--method", "closed",
    ]);
    assert_eq!(out.exit_code, 0);
    assert_eq!(
        out.stdout,
        "1 + 5x t + (15x + 10x^2) t^2 + (35x + 80x^2 + 10x^3) t^3 + O(t^4)"
    );
}

#[test]
fn series_json_round_trips() {
    for method in ["brute", "dp", "closed", "recip"] {
        let out = run_args(&[
            "series", "--pattern", "2312", "--alphabet", "4", "--order", "5", "--method", method,
            "--output", "json",
        ]);
        assert_eq!(out.exit_code, 0, "{method}");
        let parsed: TSeries = serde_json::from_str(&out.stdout).expect("parses back");
        let again = serde_json::to_string_pretty(&parsed).unwrap();
        assert_eq!(again, out.stdout, "{method} canonical form is stable");
    }
    // all four methods agree on the rendered output
    let outputs: Vec<String> = ["brute", "dp", "closed", "recip"]
        .iter()
        .map(|m| {
            run_args(&[
                "series", "--pattern", "2312", "--alphabet", "4", "--order", "5", "--method", m,
                "--output", "json",
            ])
            .stdout
        })
        .collect();
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn verify_supported_patterns_exit_0() {
    for (p, k) in [("2341", "5"), ("2312", "4"), ("12311", "5")] {
        let out = run_args(&[
            "verify", "--pattern", p, "--alphabet", k, "--order", "5",
        ]);
        assert_eq!(out.exit_code, 0, "{p}: {}", out.stdout);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["agree"], serde_json::json!(true));
    }
}

#[test]
fn corrupted_verify_exits_2_with_localized_mismatch() {
    let out = run_args(&[
        "verify", "--pattern", "2312", "--alphabet", "4", "--order", "5", "--corrupt-weights",
    ]);
    assert_eq!(out.exit_code, 2);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["agree"], serde_json::json!(false));
    assert!(v["first_mismatch"]["t"].is_u64());
    assert!(v["first_mismatch"]["lhs"].is_string());
}

#[test]
fn weights_json_keyed_by_pair() {
    let out = run_args(&[
        "weights", "--pattern", "2341", "--alphabet", "5", "--order", "4",
    ]);
    assert_eq!(out.exit_code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert!(v["entries"]["2,1"].is_object());
    assert_eq!(v["case"], serde_json::json!("descent"));
}

#[test]
fn fixpoints_listing() {
    let out = run_args(&[
        "fixpoints", "--pattern", "2341", "--alphabet", "5", "--length", "2", "--list",
        "--output", "json",
    ]);
    assert_eq!(out.exit_code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    // length 2: single bricks of weakly increasing pairs, and split bricks
    assert!(v["fixed_points"].as_array().unwrap().len() > 10);
}

#[test]
fn identity_subcommand_seeded() {
    let a = run_args(&[
        "identity", "--which", "des", "--alphabet", "2", "--order", "4", "--trials", "5",
        "--seed", "7",
    ]);
    let b = run_args(&[
        "identity", "--which", "des", "--alphabet", "2", "--order", "4", "--trials", "5",
        "--seed", "7",
    ]);
    assert_eq!(a.exit_code, 0);
    assert_eq!(a.stdout, b.stdout, "seeded runs are deterministic");
}

#[test]
fn exact_mode_alphabet_validation() {
    let out = run_args(&[
        "series", "--pattern", "2341", "--alphabet", "3", "--order", "3", "--mode", "exact",
    ]);
    assert_eq!(out.exit_code, 1);
}

#[test]
fn threads_flag_changes_nothing() {
    let base = run_args(&[
        "series", "--pattern", "2341", "--alphabet", "5", "--order", "6", "--method", "brute",
    ]);
    let threaded = run_args(&[
        "series", "--pattern", "2341", "--alphabet", "5", "--order", "6", "--method", "brute",
        "--threads", "4",
    ]);
    assert_eq!(base.stdout, threaded.stdout);
}

#[test]
fn binary_exit_codes_match() {
    let ok = bin()
        .args(["verify", "--pattern", "2312", "--alphabet", "4", "--order", "4"])
        .output()
        .expect("binary runs");
    assert_eq!(ok.status.code(), Some(0));

    let mismatch = bin()
        .args([
            "verify", "--pattern", "2312", "--alphabet", "4", "--order", "4",
            "--corrupt-weights",
        ])
        .output()
        .expect("binary runs");
    assert_eq!(mismatch.status.code(), Some(2));

    let usage = bin().args(["series"]).output().expect("binary runs");
    assert_eq!(usage.status.code(), Some(1));

    let version = bin().args(["--version"]).output().expect("binary runs");
    assert_eq!(version.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&version.stdout).contains("fixture set"));
}
