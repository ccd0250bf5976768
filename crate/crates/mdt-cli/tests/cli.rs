//! End-to-end runs of the `mdt` binary.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use mdt_cli::bench::read_csv;
use mdt_cli::instance::{parse_str, to_plain};
use mdt_cli::{SolutionRecord, EXIT_BOUNDED_GAP, EXIT_OPTIMAL, EXIT_REJECTED};

fn mdt(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mdt"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn record(out: &Output) -> SolutionRecord {
    SolutionRecord::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap()
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", "tsplib", name]
        .iter()
        .collect();
    p.to_str().unwrap().to_owned()
}

const SQUARE: &str = "# unit square\n0 0\n1 0\n1 1\n0 1\n";

#[test]
fn square_from_stdin() {
    let out = mdt(&["-"], SQUARE);
    assert_eq!(out.status.code(), Some(EXIT_OPTIMAL));
    let rec = record(&out);
    assert_eq!(rec.n, 4);
    assert_eq!(rec.edges.len(), 5);
    assert!(rec.dilation.to_interval().unwrap().contains(std::f64::consts::SQRT_2));
}

#[test]
fn algorithms_agree() {
    let path = data("ulysses16.tsp");
    let a = record(&mdt(&[&path, "--algorithm", "inc"], ""));
    let b = record(&mdt(&[&path, "--algorithm", "bin"], ""));
    assert_eq!(a.dilation, b.dilation);
    assert_eq!(a.n, 16);
}

#[test]
fn sequential_run_matches_default() {
    let path = data("burma14.tsp");
    let a = record(&mdt(&[&path, "--threads", "1"], ""));
    let b = record(&mdt(&[&path], ""));
    assert_eq!(a.n, 14);
    assert_eq!((a.dilation, a.edges), (b.dilation, b.edges));
}

#[test]
fn time_limit_reports_gap() {
    let out = mdt(&["--random", "1500", "--time-limit", "0.001"], "");
    assert_eq!(out.status.code(), Some(EXIT_BOUNDED_GAP));
    let rec = record(&out);
    let (lo, hi) = (
        rec.lower_bound.to_interval().unwrap(),
        rec.dilation.to_interval().unwrap(),
    );
    assert!(lo.lo() <= hi.hi());
}

#[test]
fn rejects_bad_input() {
    for text in ["0 0\n1 1\n0 0\n", "0 0\n1 1\n2 2\n", "0 0\n1 x\n", "0 0\n"] {
        let out = mdt(&["-"], text);
        assert_eq!(out.status.code(), Some(EXIT_REJECTED), "{text:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn output_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = mdt(&["--ngon", "7", "-o", path.to_str().unwrap()], "");
    assert_eq!(out.status.code(), Some(EXIT_OPTIMAL));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let rec = SolutionRecord::from_json(&text).unwrap();
    assert_eq!(rec.edges.len(), 2 * 7 - 3);
    assert_eq!(SolutionRecord::from_json(&rec.to_json()).unwrap(), rec);
}

#[test]
fn bench_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("a.txt"), SQUARE).unwrap();
    std::fs::write(dir.path().join("b.txt"), "0 0\n0 0\n1 1\n").unwrap();
    std::fs::write(dir.path().join(".hidden"), "junk").unwrap();
    let out = mdt(&["--bench", dir.path().to_str().unwrap()], "");
    assert_eq!(out.status.code(), Some(0));
    let rows = read_csv(out.stdout.as_slice()).unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].error.is_none() && rows[0].rho.is_some());
    assert!(rows[1].error.is_some());

    let empty = tempfile::tempdir().unwrap();
    let out = mdt(&["--bench", empty.path().to_str().unwrap()], "");
    assert_eq!(out.status.code(), Some(0));
    assert!(read_csv(out.stdout.as_slice()).unwrap().is_empty());
}

#[test]
fn certify_prints_bounds() {
    let out = mdt(&["--ngon", "6", "--certify-ngon"], "");
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let get = |k: &str| -> f64 {
        let line = text.lines().find(|l| l.starts_with(&format!("{k}:"))).unwrap();
        line.split_once(": ").unwrap().1.parse().unwrap()
    };
    assert_eq!(get("n"), 6.0);
    assert!(get("certified_lower") <= get("solver_lo"));
    assert!(get("certified_upper") >= get("solver_hi"));
    assert!(get("epsilon") < 1e-15);
}

#[test]
fn plain_format_round_trips() {
    let inst = parse_str("sq", SQUARE).unwrap();
    let again = parse_str("sq", &to_plain(&inst)).unwrap();
    assert_eq!(inst.points, again.points);
}
