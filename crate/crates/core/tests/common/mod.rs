//! Test-only oracles that share no code with the library.

#![allow(dead_code)]

pub mod ode;

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_greedy-ldp"))
}

pub fn run_cli(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("spawn greedy-ldp")
}

/// Data rows of a CSV output, skipping the header and `#` notes.
pub fn csv_rows(stdout: &[u8]) -> Vec<Vec<String>> {
    let text = String::from_utf8_lossy(stdout);
    text.lines()
        .skip(1)
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

/// Value of a `# key=value` note line.
pub fn csv_note(stdout: &[u8], key: &str) -> Option<String> {
    let text = String::from_utf8_lossy(stdout);
    let prefix = format!("# {key}=");
    text.lines()
        .find_map(|l| l.strip_prefix(&prefix).map(str::to_string))
}

pub fn f(s: &str) -> f64 {
    s.parse().unwrap_or_else(|_| panic!("not a float: {s:?}"))
}
