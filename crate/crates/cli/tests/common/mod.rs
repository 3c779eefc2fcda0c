#![allow(dead_code)]

pub mod oracle;

use std::path::PathBuf;
use std::process::{Command, Output};

pub const BIN: &str = env!("CARGO_BIN_EXE_umbral");

/// Representative commands and the file holding their expected output.
pub const GOLDEN: [(&str, &[&str]); 6] = [
    ("hermite_k3.tex", &["gen", "--family", "hermite", "--k", "3", "--format", "latex"]),
    ("bernoulli_k0.json", &["gen", "--family", "bernoulli", "--k", "0"]),
    ("meixner_k2.json", &["gen", "--family", "meixner", "--k", "2", "--p", "1/2", "--format", "json"]),
    ("hermite_multi_1_2.json", &["gen", "--family", "hermite", "--index", "1,2", "--c", "1,0;1/2,1"]),
    ("table6_k3.tex", &["tables", "--table", "6", "--max-degree", "3", "--format", "latex"]),
    ("verify_ks_3.json", &["verify", "ks", "--max-degree", "3"]),
];

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden").join(name)
}

pub fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("UMBRAL_MEMO_CAP").output().expect("binary runs")
}

/// Runs every golden command, returning the mismatches. With
/// `UPDATE_GOLDEN=1` the files are rewritten instead.
pub fn golden_mismatches() -> Vec<String> {
    let update = std::env::var("UPDATE_GOLDEN").is_ok_and(|v| v == "1");
    let mut bad = Vec::new();
    for (file, args) in GOLDEN {
        let out = run(args);
        if out.status.code() != Some(0) {
            bad.push(format!("{file}: exit {:?}", out.status.code()));
            continue;
        }
        let path = golden_path(file);
        if update {
            std::fs::write(&path, &out.stdout).expect("golden file writable");
            continue;
        }
        match std::fs::read(&path) {
            Ok(expected) if expected == out.stdout => {}
            Ok(_) => bad.push(format!("{file}: output differs")),
            Err(e) => bad.push(format!("{file}: {e}")),
        }
        if run(args).stdout != out.stdout {
            bad.push(format!("{file}: output not reproducible"));
        }
    }
    bad
}

/// `(description, args, expected exit code)`; every one of these must also
/// leave stdout empty unless it exits 0 or 3.
pub fn exit_code_cases() -> Vec<(&'static str, Vec<&'static str>, i32)> {
    vec![
        ("success", vec!["gen", "--family", "laguerre", "--k", "2"], 0),
        ("unknown flag", vec!["gen", "--family", "hermite", "--k", "2", "--bogus"], 2),
        ("missing degree", vec!["gen", "--family", "hermite"], 2),
        ("unknown family", vec!["gen", "--family", "chebyshev", "--k", "2"], 2),
        ("p outside (0,1)", vec!["gen", "--family", "meixner", "--k", "2", "--p", "3/2"], 2),
        ("reserved parameter name", vec!["gen", "--family", "hermite", "--k", "2", "--sigma", "t"], 2),
        ("bad multi-index", vec!["gen", "--family", "hermite", "--index", "1,x"], 2),
        ("zero rate", vec!["sim", "--process", "poisson", "--lambda", "0", "--n", "100"], 2),
        ("bad covariance", vec!["sim", "--process", "multivariate-brownian", "--sigma", "1,2;2,1", "--n", "100"], 2),
        ("unknown suite", vec!["verify", "everything"], 2),
        (
            "statistical failure",
            vec!["sim", "--process", "brownian", "--k", "2", "--n", "1000", "--threshold", "1e-9"],
            3,
        ),
        (
            "unwritable output",
            vec!["gen", "--family", "hermite", "--k", "2", "--output", "/nonexistent/dir/out.json"],
            1,
        ),
        ("trivial verification", vec!["verify", "all", "--max-degree", "0"], 0),
    ]
}

pub fn exit_code_mismatches() -> Vec<String> {
    let mut bad = Vec::new();
    for (what, args, code) in exit_code_cases() {
        let out = run(&args);
        if out.status.code() != Some(code) {
            bad.push(format!("{what}: expected {code}, got {:?}", out.status.code()));
        }
        if code != 0 && code != 3 && !out.stdout.is_empty() {
            bad.push(format!("{what}: partial output on error"));
        }
        if code == 2 && out.stderr.is_empty() {
            bad.push(format!("{what}: no message on stderr"));
        }
    }
    bad
}
