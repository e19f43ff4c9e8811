//! End-to-end runs of the `avecert` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use avecert::ensemble::CSV_HEADER;
use avecert::problem_file::ProblemFile;

fn avecert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_avecert"))
        .args(args)
        .env_remove("AVECERT_ORACLE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run_file(dir: &Path, text: &str, args: &[&str]) -> Output {
    let path = write(dir, "problem.txt", text);
    let mut full: Vec<&str> = args.to_vec();
    full.insert(1, path.to_str().unwrap());
    avecert(&full)
}

#[test]
fn check_zero_scalar() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_file(dir.path(), "1\n0\n", &["check"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let wu = out.lines().find(|l| l.starts_with("wu_plus")).unwrap();
    assert!(
        wu.contains("statistic 0.5 < 1 HOLDS KNOWN-INCORRECT"),
        "{wu}"
    );
}

#[test]
fn check_three_identity() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_file(dir.path(), "2\n3 0\n0 3\n", &["check"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let line = out.lines().find(|l| l.starts_with("sigma_plus")).unwrap();
    assert!(line.contains("statistic 4 > 2 HOLDS VALID"), "{line}");
}

#[test]
fn check_malformed_file() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_file(dir.path(), "2\n1 oops\n0 1\n", &["check"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn oracle_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_file(dir.path(), "1\n0\n", &["oracle"]);
    assert_eq!(o.status.code(), Some(10));
    assert!(stdout(&o).contains("NOT_UNIQUE"));

    let o = run_file(dir.path(), "2\n3 0\n0 3\n", &["oracle"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("UNIQUE_FOR_ALL_B"));

    let mut big = String::from("20\n");
    for i in 0..20 {
        let row: Vec<&str> = (0..20).map(|j| if i == j { "3" } else { "0" }).collect();
        big.push_str(&row.join(" "));
        big.push('\n');
    }
    let o = run_file(dir.path(), &big, &["oracle"]);
    assert_eq!(o.status.code(), Some(11));
    assert!(stdout(&o).contains("CAP_EXCEEDED"));

    let o = run_file(dir.path(), "1\n0\n", &["oracle", "--cap", "25"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn oracle_cap_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "p.txt", "2\n3 0\n0 3\n");
    let o = Command::new(env!("CARGO_BIN_EXE_avecert"))
        .args(["oracle", path.to_str().unwrap()])
        .env("AVECERT_ORACLE_CAP", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(11));
}

#[test]
fn solve_methods() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_file(
        dir.path(),
        "2\n3 0\n0 -3\n2 2\n",
        &["solve", "--method", "newton"],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("x: [1, -1]"));

    let o = run_file(
        dir.path(),
        "1\n0\n-1\n",
        &["solve", "--method", "enumerate"],
    );
    assert_eq!(o.status.code(), Some(13));
    let out = stdout(&o);
    assert!(out.contains("count: 2"));
    assert!(out.contains("x = [-1]") && out.contains("x = [1]"));

    let o = run_file(
        dir.path(),
        "1\n3\n2\n",
        &["solve", "--method", "picard-plus"],
    );
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("contraction_estimate: 0.5"), "{out}");
    let x: f64 = out
        .lines()
        .find_map(|l| l.strip_prefix("x: ["))
        .and_then(|l| l.strip_suffix(']'))
        .unwrap()
        .parse()
        .unwrap();
    assert!((x - 1.0).abs() < 1e-9);

    let o = run_file(
        dir.path(),
        "2\n3 0\n0 -3\n2 2\n",
        &["solve", "--method", "enumerate"],
    );
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn solve_failure_paths() {
    let dir = tempfile::tempdir().unwrap();
    // No b line.
    let o = run_file(dir.path(), "1\n3\n", &["solve"]);
    assert_eq!(o.status.code(), Some(2));
    // −|x| = 1 has no solution.
    let o = run_file(
        dir.path(),
        "1\n0\n1\n",
        &["solve", "--method", "picard-minus"],
    );
    assert_eq!(o.status.code(), Some(12));
    // A + I singular.
    let o = run_file(
        dir.path(),
        "1\n-1\n1\n",
        &["solve", "--method", "picard-plus"],
    );
    assert_eq!(o.status.code(), Some(12));
    assert!(stdout(&o).contains("singular"));
    // Newton hits the singular pattern (+,+).
    let o = run_file(
        dir.path(),
        "2\n0 1\n1 0\n0 0\n",
        &["solve", "--method", "newton"],
    );
    assert_eq!(o.status.code(), Some(12));
    assert!(stdout(&o).contains("singular pattern: (+1,+1)"));
    // Degenerate enumeration.
    let o = run_file(
        dir.path(),
        "2\n0 1\n1 0\n0 0\n",
        &["solve", "--method", "enumerate"],
    );
    assert_eq!(o.status.code(), Some(13));
    assert!(stdout(&o).contains("degenerate: true"));
}

#[test]
fn counterexample_report() {
    let o = avecert(&["counterexample"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for id in ["wu_plus", "wu_minus"] {
        let line = out
            .lines()
            .find(|l| l.trim_start().starts_with(id))
            .unwrap();
        assert!(line.contains("KNOWN-INCORRECT"), "{line}");
    }
    assert!(out.contains("b = -1: 2 solutions: -1, +1"));
    assert!(out.contains("b = +1: no solution"));
}

#[test]
fn bench_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for name in ["a.csv", "b.csv"] {
        let out = dir.path().join(name);
        let o = avecert(&[
            "bench",
            "--kind",
            "gaussian",
            "--n",
            "2",
            "--samples",
            "10",
            "--seed",
            "7",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        files.push(std::fs::read_to_string(out).unwrap());
    }
    assert_eq!(files[0], files[1]);
    let lines: Vec<&str> = files[0].lines().collect();
    assert_eq!(lines[0], CSV_HEADER);
    assert_eq!(lines.len(), 11);
}

#[test]
fn bench_fixture_and_usage() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fixture.csv");
    let o = avecert(&["bench", "--kind", "fixture", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("known-incorrect false positives: 1"));
    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("0,1,FAILS,FAILS,FAILS,FAILS,HOLDS,HOLDS,NOT_UNIQUE,true"));

    let o = avecert(&[
        "bench",
        "--kind",
        "gaussian",
        "--n",
        "30",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));

    let o = avecert(&[
        "bench",
        "--kind",
        "shifted-gaussian",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bench_unwritable_output() {
    let o = avecert(&[
        "bench",
        "--kind",
        "fixture",
        "--out",
        "/nonexistent/dir/out.csv",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn emit_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let text = "2\n0.1 -2.5e-7\n3 1e300\n0.3333333333333333 -0\n";
    let o = run_file(dir.path(), text, &["check", "--emit"]);
    assert_eq!(o.status.code(), Some(0));
    let emitted = stdout(&o);
    let original = ProblemFile::parse(text).unwrap();
    let reparsed = ProblemFile::parse(&emitted).unwrap();
    let bits = |f: &ProblemFile| -> Vec<u64> {
        f.a.as_row_major()
            .iter()
            .chain(f.b.as_ref().unwrap().iter())
            .map(|v| v.to_bits())
            .collect()
    };
    assert_eq!(bits(&original), bits(&reparsed));
    // Emitting the emitted file is a fixed point.
    let again = run_file(dir.path(), &emitted, &["solve", "--emit"]);
    assert_eq!(stdout(&again), emitted);
}

#[test]
fn check_leaves_input_untouched() {
    let dir = tempfile::tempdir().unwrap();
    let text = "2\n3 0\n0 3\n";
    let path = write(dir.path(), "p.txt", text);
    for _ in 0..2 {
        let o = avecert(&["check", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read_to_string(path).unwrap(), text);
}
