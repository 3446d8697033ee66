mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use slc_core::cli::DistributionFile;

fn slcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slcheck"))
        .args(args)
        .output()
        .expect("spawn slcheck")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

const COUNTEREXAMPLE: &str = r#"{"n": 3, "weights": {"": "4/22", "1": "3/22", "2": "3/22", "3": "3/22",
  "1,2": "3/22", "1,3": "3/22", "2,3": "3/22"}}"#;

#[test]
fn nlc_violation_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "g.json", COUNTEREXAMPLE);
    let o = slcheck(&["check", f.to_str().unwrap(), "--property", "nlc"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("verdict: violated"), "{text}");
    assert!(text.contains("9/484"), "{text}");
}

#[test]
fn slc_of_counterexample_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "g.json", COUNTEREXAMPLE);
    let o = slcheck(&["check", f.to_str().unwrap(), "-p", "slc", "--samples", "200"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: holds"));
}

#[test]
fn product_measure_is_nlc() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "p.json", r#"{"n": 2, "weights": {"": 1, "1": 2, "mask:2": 3, "mask:0b11": 6}}"#);
    let o = slcheck(&["check", f.to_str().unwrap(), "-p", "nlc", "--normalize"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: holds"));
}

#[test]
fn lc_violation_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "p.json", r#"{"n": 2, "weights": {"": "1", "1,2": "1"}}"#);
    let o = slcheck(&["check", f.to_str().unwrap(), "-p", "lc"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("verdict: violated"));
}

#[test]
fn bad_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("neg.json", r#"{"n": 2, "weights": {"": "-1/2", "1": "1"}}"#),
        ("float.json", r#"{"n": 2, "weights": {"": 0.5}}"#),
        ("range.json", r#"{"n": 2, "weights": {"3": "1"}}"#),
        ("order.json", r#"{"n": 3, "weights": {"2,1": "1"}}"#),
        ("dup.json", r#"{"n": 2, "weights": {"1,2": "1", "mask:3": "1"}}"#),
        ("syntax.json", "{"),
    ];
    for (name, text) in cases {
        let f = write(dir.path(), name, text);
        let o = slcheck(&["check", f.to_str().unwrap(), "-p", "nlc"]);
        assert_eq!(o.status.code(), Some(2), "{name}");
        assert!(!o.stderr.is_empty(), "{name}");
    }
    let missing = dir.path().join("missing.json");
    assert_eq!(slcheck(&["check", missing.to_str().unwrap(), "-p", "nlc"]).status.code(), Some(2));
    assert_eq!(slcheck(&["check"]).status.code(), Some(2));
    assert_eq!(slcheck(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(slcheck(&["sweep", "--step", "0"]).status.code(), Some(2));
    assert_eq!(slcheck(&["--help"]).status.code(), Some(0));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "g.json", COUNTEREXAMPLE);
    let run = |name: &str| {
        let report = dir.path().join(name);
        let o = slcheck(&[
            "check", f.to_str().unwrap(), "-p", "slc", "--samples", "300", "--seed", "5",
            "--report", report.to_str().unwrap(),
        ]);
        (o.stdout, std::fs::read(report).unwrap())
    };
    let (a, b) = (run("a.json"), run("b.json"));
    assert_eq!(a, b);
    let json: serde_json::Value = serde_json::from_slice(&a.1).unwrap();
    assert_eq!(json["property"], "slc");
}

#[test]
fn repro_counterexample_passes() {
    let o = slcheck(&["repro-counterexample", "--samples", "500"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("9/484 < 12/484"), "{text}");
    assert!(text.contains("M/R scalar: 3/484"), "{text}");
    assert!(!text.contains("[FAIL]"));
}

#[test]
fn sweep_writes_tables() {
    let dir = tempfile::tempdir().unwrap();
    let o = slcheck(&[
        "sweep", "--b-max", "1", "--c-max", "1", "--step", "0.25", "--samples", "20",
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("cells: 25"));
    let nlc = std::fs::read_to_string(dir.path().join("nlc_boundary.txt")).unwrap();
    let rows: Vec<&str> = nlc.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows, ["0.0 0.0", "0.25 0.0", "0.5 0.0", "0.75 0.0", "1.0 0.25"]);
    assert!(dir.path().join("slc_boundary.txt").exists());
    let csv = std::fs::read_to_string(dir.path().join("sweep_full.csv")).unwrap();
    assert_eq!(csv.lines().count(), 26);
}

#[test]
fn distribution_file_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 1..=5 {
        let p = random_poly(&mut rng, n);
        let file = DistributionFile::from_poly(&p);
        let back = DistributionFile::from_json(&file.to_json()).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_poly(false).unwrap(), p);
    }
}

#[test]
fn in_process_runner_matches_binary() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "g.json", COUNTEREXAMPLE);
    let args = ["slcheck", "check", f.to_str().unwrap(), "-p", "nlc"];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = slc_core::cli::run(args, &mut out, &mut err);
    let o = slcheck(&args[1..]);
    assert_eq!(Some(code), o.status.code());
    assert_eq!(out, o.stdout);
}
