#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gridrk"))
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn code(o: &Output) -> i32 {
    o.status.code().expect("terminated by signal")
}

pub struct GoldenOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Runs every case in `tests/golden/cases.tsv` and compares exit code and,
/// for non-error cases, the exact stdout listing.
pub fn run_golden_suite() -> Vec<GoldenOutcome> {
    let dir = golden_dir();
    let manifest = std::fs::read_to_string(dir.join("cases.tsv")).unwrap();
    manifest
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let mut cols = line.split('\t');
            let name = cols.next().unwrap().to_string();
            let args: Vec<&str> = cols.next().unwrap().split_whitespace().collect();
            let want: i32 = cols.next().unwrap().parse().unwrap();
            let o = bin()
                .current_dir(&dir)
                .arg("search")
                .args(&args)
                .output()
                .unwrap();
            let got = code(&o);
            let stdout = String::from_utf8_lossy(&o.stdout);
            let mut problems = Vec::new();
            if got != want {
                problems.push(format!("exit {got}, expected {want}"));
            }
            if want == 2 {
                if !stdout.is_empty() {
                    problems.push("error case wrote to stdout".into());
                }
                if o.stderr.is_empty() {
                    problems.push("error case printed no diagnostic".into());
                }
            } else {
                let expect = std::fs::read_to_string(dir.join(format!("{name}.out"))).unwrap();
                if stdout != expect {
                    problems.push(format!(
                        "listing differs:\n--- got\n{stdout}--- want\n{expect}"
                    ));
                }
            }
            GoldenOutcome {
                passed: problems.is_empty(),
                detail: problems.join("; "),
                name,
            }
        })
        .collect()
}
