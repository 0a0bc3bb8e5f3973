mod common;

use std::fs;

use common::{bin, code, run_golden_suite};
use gridrk::datagen::{generate, plant, spread_offsets, DnaSpec};
use sha2::{Digest, Sha256};

#[test]
fn golden_search_suite() {
    let outcomes = run_golden_suite();
    assert!(outcomes.len() >= 20);
    let failed: Vec<_> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| format!("{}: {}", o.name, o.detail))
        .collect();
    assert!(failed.is_empty(), "{failed:#?}");
}

#[test]
fn gen_size_contract_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.bin");
    let b = dir.path().join("b.bin");
    for p in [&a, &b] {
        let o = bin()
            .args(["gen", "--seed", "42", "--size", "2MB", "--out"])
            .arg(p)
            .output()
            .unwrap();
        assert_eq!(code(&o), 0);
        let msg = String::from_utf8(o.stdout).unwrap();
        assert!(
            msg.contains("2097152 bytes") && msg.contains("seed 42"),
            "{msg}"
        );
    }
    let (a, b) = (fs::read(a).unwrap(), fs::read(b).unwrap());
    assert_eq!(a.len(), 2 * 1024 * 1024);
    assert_eq!(Sha256::digest(&a), Sha256::digest(&b));
    assert_eq!(a, generate(&DnaSpec::dna(42, 2 << 20)).unwrap());
}

#[test]
fn gen_zero_size_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("empty.bin");
    let o = bin()
        .args(["gen", "--size", "0", "--out"])
        .arg(&p)
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(fs::metadata(&p).unwrap().len(), 0);

    let o = bin()
        .args(["gen", "--size", "10", "--alphabet", "AA", "--out"])
        .arg(&p)
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    let o = bin()
        .args(["gen", "--size", "10", "--out"])
        .arg(dir.path().join("no/such/dir/x"))
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    let o = bin()
        .args(["gen", "--size", "ten", "--out"])
        .arg(&p)
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn engines_produce_identical_listings() {
    let dir = tempfile::tempdir().unwrap();
    let text = dir.path().join("t.bin");
    fs::write(&text, generate(&DnaSpec::dna(11, 200_000)).unwrap()).unwrap();
    let run = |extra: &[&str]| {
        let o = bin()
            .arg("search")
            .arg(&text)
            .args(["--pattern", "ACGTA"])
            .args(extra)
            .output()
            .unwrap();
        assert_eq!(code(&o), 0);
        o.stdout
    };
    let seq = run(&["--engine", "seq"]);
    assert_eq!(
        seq,
        run(&["--engine", "par", "--workers", "8", "--block-dim", "256"])
    );
    assert_eq!(
        seq,
        run(&["--engine", "par", "--workers", "3", "--block-dim", "1"])
    );
    assert_eq!(seq, run(&["--engine", "naive"]));
}

#[test]
fn verify_planted_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let base = generate(&DnaSpec::dna(5, 100_000)).unwrap();
    let pattern = b"GATTACAGATTACA";
    let offs = spread_offsets(base.len(), pattern.len(), 40, 5);
    let text = plant(&base, pattern, &offs).unwrap();
    let path = dir.path().join("planted.bin");
    fs::write(&path, text).unwrap();

    let o = bin()
        .arg("verify")
        .arg(&path)
        .args(["--pattern", "GATTACAGATTACA", "--list"])
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.lines().last().unwrap().starts_with("PASS "), "{out}");
    let listed: Vec<usize> = out
        .lines()
        .filter_map(|l| l.strip_prefix("MATCH 0 "))
        .map(|x| x.parse().unwrap())
        .collect();
    assert!(listed.len() >= offs.len());
    assert!(offs.iter().all(|x| listed.contains(x)));
}

#[test]
fn verify_error_paths() {
    let o = bin()
        .args(["verify", "/nonexistent/file", "--pattern", "A"])
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    let o = bin()
        .arg("verify")
        .arg(common::golden_dir().join("abab.txt"))
        .args(["--pattern="])
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn bench_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let stem = dir.path().join("report");
    let o = bin()
        .args([
            "bench",
            "--axis",
            "block_dim",
            "--values",
            "32,64,128,256,512,1024",
        ])
        .args([
            "--size",
            "256KB",
            "--pattern-len",
            "7",
            "--workers",
            "2",
            "--out",
        ])
        .arg(&stem)
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(stem.with_extension("csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "axis_value,t_seq_ms,t_par_ms,speedup");
    assert_eq!(lines.len(), 7);
    let axis: Vec<&str> = lines[1..]
        .iter()
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(axis, ["32", "64", "128", "256", "512", "1024"]);
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(stem.with_extension("json")).unwrap()).unwrap();
    assert_eq!(json["rows"].as_array().unwrap().len(), 6);
    assert_eq!(json["environment"]["corpus"]["length"], 256 * 1024);
}

#[test]
fn bench_pattern_axis_single_format() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p.csv");
    let o = bin()
        .args([
            "bench",
            "--axis",
            "pattern_length",
            "--size",
            "64KB",
            "--format",
            "csv",
            "--out",
        ])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 6);
    assert!(!dir.path().join("p.json").exists());
}

#[test]
fn bench_error_paths() {
    let dir = tempfile::tempdir().unwrap();
    let stem = dir.path().join("r");
    for args in [
        &["--axis", "cores"][..],
        &["--axis", "workers", "--values", "0"],
        &["--axis", "block_dim", "--values", "2048"],
        &["--axis", "pattern_length", "--values", "5000"],
        &["--axis", "workers", "--values", "x"],
        &["--axis", "workers", "--reps", "1"],
    ] {
        let o = bin()
            .arg("bench")
            .args(args)
            .args(["--size", "4KB"])
            .arg("--out")
            .arg(&stem)
            .output()
            .unwrap();
        assert_eq!(code(&o), 2, "{args:?}");
    }
}
