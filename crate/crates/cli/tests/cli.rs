//! End-to-end tests of the command-line surface: file formats, exit codes,
//! determinism, and the root-vector cache.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_qgcli")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .env_remove("QGCLI_CACHE_DIR")
        .output()
        .expect("binary runs")
}

#[test]
fn transition_matches_known_entries() {
    let out = run(&[
        "transition",
        "--algebra",
        "A2",
        "--from",
        "1,2,1",
        "--to",
        "2,1,2",
        "--bound",
        "2",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["kind"], "transition");
    assert_eq!(v["source"], serde_json::json!([1, 2, 1]));
    // find the m = (0,1,0) row: entries {(1,0,1): 1 - q^2, (0,1,0): -q}
    let mut seen = 0;
    for block in v["blocks"].as_array().unwrap() {
        for e in block["entries"].as_array().unwrap() {
            if e["m"] == serde_json::json!([0, 1, 0]) {
                seen += 1;
                if e["n"] == serde_json::json!([0, 1, 0]) {
                    assert_eq!(e["coeff"]["num"], serde_json::json!([["-1", 1]]));
                } else {
                    assert_eq!(e["n"], serde_json::json!([1, 0, 1]));
                    assert_eq!(e["coeff"]["num"], serde_json::json!([["1", 0], ["-1", 2]]));
                }
            }
        }
    }
    assert_eq!(seen, 2);
}

#[test]
fn transition_identity_and_bound_zero() {
    let out = run(&[
        "transition",
        "--algebra",
        "A2",
        "--from",
        "1,2,1",
        "--to",
        "1,2,1",
        "--bound",
        "2",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for block in v["blocks"].as_array().unwrap() {
        for e in block["entries"].as_array().unwrap() {
            assert_eq!(e["m"], e["n"]);
            assert_eq!(e["coeff"]["num"], serde_json::json!([["1", 0]]));
        }
    }
    let out = run(&[
        "transition",
        "--algebra",
        "A2",
        "--from",
        "1,2,1",
        "--bound",
        "0",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let blocks = v["blocks"].as_array().unwrap();
    assert_eq!(blocks.len(), 1);
    assert_eq!(blocks[0]["entries"].as_array().unwrap().len(), 1);
}

#[test]
fn intertwiner_compare_gamma_empty_diff() {
    for (algebra, from, to, bound) in [("A2", "1,2,1", "2,1,2", "2"), ("B2", "1,2,1,2", "2,1,2,1", "2")] {
        let out = run(&[
            "intertwiner",
            "--algebra",
            algebra,
            "--from",
            from,
            "--to",
            to,
            "--bound",
            bound,
            "--compare-gamma",
        ]);
        assert!(out.status.success(), "{algebra}");
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["kind"], "intertwiner");
        assert_eq!(v["diff"].as_array().unwrap().len(), 0, "{algebra}");
    }
}

#[test]
fn deterministic_output() {
    let args = [
        "transition",
        "--algebra",
        "B2",
        "--from",
        "1,2,1,2",
        "--to",
        "2,1,2,1",
        "--bound",
        "2",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn csv_format() {
    let out = run(&[
        "transition",
        "--algebra",
        "A2",
        "--from",
        "1,2,1",
        "--to",
        "2,1,2",
        "--bound",
        "1",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "weight,m,n,coeff");
    assert!(text.lines().count() > 3);
}

#[test]
fn verify_suites_and_exit_codes() {
    let out = run(&[
        "verify", "--algebra", "A1", "--suite", "main2", "--bound", "6",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS"));
    // empty suite: empty report, exit 0
    let out = run(&["verify", "--algebra", "A2", "--suite", ""]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    // non-reduced word is a usage error
    let out = run(&[
        "transition",
        "--algebra",
        "A2",
        "--from",
        "1,1,2",
        "--to",
        "2,1,2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // unknown algebra
    let out = run(&["verify", "--algebra", "Z9", "--suite", "braid"]);
    assert_eq!(out.status.code(), Some(2));
    // unknown suite name
    let out = run(&["verify", "--algebra", "A1", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_braid_g2() {
    let out = run(&["verify", "--algebra", "G2", "--suite", "braid"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("braid relation"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn cache_roundtrip_and_recheck() {
    let dir = std::env::temp_dir().join(format!("qgcli-cache-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    let dirs = dir.to_str().unwrap();
    let args_base = [
        "transition",
        "--algebra",
        "A2",
        "--from",
        "1,2,1",
        "--to",
        "2,1,2",
        "--bound",
        "2",
        "--cache-dir",
        dirs,
    ];
    let first = run(&args_base);
    assert!(first.status.success());
    // cache files were written
    let files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    assert!(!files.is_empty());
    // second run consumes the cache and produces identical bytes
    let second = run(&args_base);
    assert!(second.status.success());
    assert_eq!(first.stdout, second.stdout);
    // recompute-and-compare accepts a valid cache
    let mut args_recheck: Vec<&str> = args_base.to_vec();
    args_recheck.push("--recheck-cache");
    let third = run(&args_recheck);
    assert!(third.status.success());
    assert_eq!(first.stdout, third.stdout);
    // a corrupted cache entry is rejected
    let victim = files
        .iter()
        .find(|p| p.file_name().unwrap().to_str().unwrap().ends_with("_f.json"))
        .unwrap();
    std::fs::write(victim, "[{\"word\": [9], \"coeff\": {\"num\": [[\"1\", 0]], \"den\": [[\"1\", 0]]}}]").unwrap();
    let fourth = run(&args_base);
    assert_eq!(fourth.status.code(), Some(2));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn jobs_flag_is_deterministic() {
    let base = [
        "intertwiner",
        "--algebra",
        "A2",
        "--from",
        "1,2,1",
        "--to",
        "2,1,2",
        "--bound",
        "2",
    ];
    let serial = run(&base);
    let mut with_jobs: Vec<&str> = base.to_vec();
    with_jobs.extend(["--jobs", "2"]);
    let parallel = run(&with_jobs);
    assert!(serial.status.success() && parallel.status.success());
    assert_eq!(serial.stdout, parallel.stdout);
}
