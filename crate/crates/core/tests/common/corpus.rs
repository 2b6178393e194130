//! The CLI invocations used by the golden and determinism tests. Each runs
//! from `tests/data` so file names in messages stay relative.

use std::path::{Path, PathBuf};
use std::process::Command;

pub const CORPUS: &[(&str, &[&str])] = &[
    ("factor_360", &["factor", "360"]),
    ("factor_one", &["factor", "1"]),
    ("factor_max", &["factor", "18446744073709551615"]),
    ("factor_zero", &["factor", "0"]),
    ("factor_text", &["factor", "twelve"]),
    ("gcd_12_18", &["gcd", "12", "18"]),
    ("gcd_coprime", &["gcd", "35", "22"]),
    ("gcd_free", &["gcd", r#"{"primes":{"p":2,"q":1}}"#, r#"{"primes":{"p":1,"r":3}}"#]),
    ("gcd_mixed", &["gcd", "6", r#"{"primes":{"p":1}}"#]),
    ("gcdgraph_naturals", &["gcdgraph", "set_naturals.json"]),
    ("gcdgraph_free", &["gcdgraph", "set_free.json"]),
    ("gcdgraph_duplicate", &["gcdgraph", "set_duplicate.json"]),
    ("realize_p3", &["realize", "p3.json"]),
    ("realize_p3_free", &["realize", "p3.json", "--backend", "free"]),
    ("realize_petersen", &["realize", "petersen.json"]),
    ("minor_k3_c4", &["minor", "k3.json", "c4.json"]),
    ("minor_k3_c4_oracle", &["minor", "k3.json", "c4.json", "--oracle"]),
    ("minor_k4_c4", &["minor", "k4.json", "c4.json"]),
    ("minor_k4_c4_oracle", &["minor", "k4.json", "c4.json", "--oracle"]),
    ("minor_k5_petersen", &["minor", "k5.json", "petersen.json"]),
    ("minor_budget", &["minor", "k5.json", "petersen.json", "--budget", "10"]),
    ("minor_oracle_too_large", &["minor", "k3.json", "petersen.json", "--oracle"]),
    ("minor_malformed", &["minor", "k3.json", "malformed.json"]),
    ("minor_loop", &["minor", "loop.json", "c4.json"]),
    ("minor_missing_file", &["minor", "k3.json", "nope.json"]),
    ("iso_c4_named", &["iso", "c4.json", "c4_named.json"]),
    ("iso_k3_p3", &["iso", "k3.json", "p3.json"]),
    ("partition_example", &["partition", "mh.json", "mg.json"]),
    ("partition_example_full", &["partition", "mh.json", "mg.json", "--full"]),
    ("partition_example_k0", &["partition", "mh.json", "mg.json", "--full", "--k0", "10"]),
    ("partition_bad_k0", &["partition", "mh.json", "mg.json", "--full", "--k0", "7"]),
    ("partition_not_minor", &["partition", "mg.json", "mh.json"]),
    ("scan_example", &["scan", "seq_example.json"]),
    ("scan_mixed", &["scan", "seq_mixed.json"]),
    ("scan_mixed_all", &["scan", "seq_mixed.json", "--all-pairs"]),
    ("usage_no_command", &[]),
    ("usage_bad_flag", &["minor", "k3.json", "c4.json", "--frobnicate"]),
    ("usage_k0_without_full", &["partition", "mh.json", "mg.json", "--k0", "6"]),
];

pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Exit code, stdout and stderr rendered as one transcript.
pub fn run_case(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_gcdminor"))
        .args(args)
        .current_dir(data_dir())
        .output()
        .expect("binary runs");
    format!(
        "exit: {}\n--- stdout\n{}--- stderr\n{}",
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    )
}
