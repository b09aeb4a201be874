use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn stardisc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stardisc")).args(args).env_remove("STARDISC_OUT_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

fn points_file(dir: &Path, name: &str, xs: &[f64]) -> PathBuf {
    let body: String = xs.iter().map(|x| format!("{x}\n")).collect();
    write(dir, name, &body)
}

#[test]
fn bound_optimize_strict() {
    let o = stardisc(&["bound", "--family", "strict", "--optimize"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "strict a_star=3.62079557 c_star=0.0656646796");
}

#[test]
fn bound_records_are_json() {
    let o = stardisc(&["--format", "records", "bound", "--a", "3.62079"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!((v["c_strict"].as_f64().unwrap() - 0.0656646796).abs() < 1e-9);
    assert!(v["strong_bound"].as_f64().unwrap() < v["strict_bound"].as_f64().unwrap());
}

#[test]
fn bound_strong_family_outside_strict_domain() {
    let o = stardisc(&["bound", "--family", "strong", "--a", "3.71866"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("c=0.0646363227"), "{}", stdout(&o));
}

#[test]
fn bound_rejects_out_of_domain() {
    assert_eq!(stardisc(&["bound", "--a", "2.5"]).status.code(), Some(2));
    assert_eq!(stardisc(&["bound"]).status.code(), Some(2));
}

#[test]
fn discrepancy_of_small_sets() {
    let dir = TempDir::new().unwrap();
    for (xs, want) in [
        (&[0.5][..], "0.5"),
        (&[0.125, 0.375, 0.625, 0.875][..], "0.125"),
        (&[0.1, 0.3, 0.8][..], "0.366666667"),
    ] {
        let p = points_file(dir.path(), "pts.txt", xs);
        let o = stardisc(&["discrepancy", p.to_str().unwrap()]);
        assert!(o.status.success());
        assert_eq!(stdout(&o).trim(), want);
    }
}

#[test]
fn discrepancy_prefix_and_missing_file() {
    let dir = TempDir::new().unwrap();
    let p = points_file(dir.path(), "pts.txt", &[0.1, 0.3, 0.8]);
    let o = stardisc(&["--format", "records", "discrepancy", p.to_str().unwrap(), "--n", "1"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["n"], 1);
    assert!((v["dstar"].as_f64().unwrap() - 0.9).abs() < 1e-12);
    let missing = dir.path().join("nope.txt");
    assert_eq!(stardisc(&["discrepancy", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn check_random_set_passes() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("r.txt");
    assert!(stardisc(&["generate", "random", "--count", "9", "--seed", "5", "--output", p.to_str().unwrap()]).status.success());
    let o = stardisc(&["check", "--points", p.to_str().unwrap(), "--a", "3", "--t", "2", "--strict"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains(", 0 failed"));
}

#[test]
fn check_wrong_size_is_usage_error() {
    let dir = TempDir::new().unwrap();
    let p = points_file(dir.path(), "p.txt", &[0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8]);
    let o = stardisc(&["check", "--points", p.to_str().unwrap(), "--a", "3", "--t", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_flags_a_function_without_jumps() {
    let dir = TempDir::new().unwrap();
    let pts = points_file(dir.path(), "p.txt", &[0.05, 0.15, 0.25, 0.35, 0.45, 0.55, 0.65, 0.75, 0.85]);
    let f = write(dir.path(), "f.txt", "# identically zero\nanchor 0\nsegment 0 0 0\n");
    let o = stardisc(&[
        "--format", "records", "check", "--points", pts.to_str().unwrap(), "--a", "3", "--t", "2", "--function",
        f.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let failed: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .filter(|v: &serde_json::Value| v["passed"] == false)
        .collect();
    assert!(failed.iter().any(|v| v["property"] == "vi"));
}

#[test]
fn qp_range_prints_one_record_per_t() {
    let o = stardisc(&["--format", "records", "qp", "--a", "3", "--t", "3..8"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "t,oracle,closed_form,gap");
    assert_eq!(lines.count(), 6);
}

#[test]
fn qp_single_t_and_bad_a() {
    let o = stardisc(&["--format", "records", "qp", "--a", "3.62079", "--t", "5"]);
    let out = stdout(&o);
    let row: Vec<f64> = out.lines().nth(1).unwrap().split(',').map(|s| s.parse().unwrap()).collect();
    assert_eq!(row[0], 5.0);
    assert!(row[1] >= 0.16899, "{out}");
    assert!(row[3] >= 0.0);
    assert_eq!(stardisc(&["qp", "--a", "4", "--t", "3"]).status.code(), Some(2));
}

#[test]
fn sequence_vdc_beats_the_constant() {
    let o = stardisc(&["sequence", "vdc", "--count", "100000"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let max: f64 = out.lines().last().unwrap().strip_prefix("running_max ").unwrap().parse().unwrap();
    assert!(max > 0.0657);
}

#[test]
fn sequence_kronecker_all_stride() {
    let o = stardisc(&["--format", "records", "sequence", "kronecker", "--count", "10", "--stride", "all"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 11);
    assert!(out.lines().nth(1).unwrap().starts_with("1,"));
}

#[test]
fn sequence_rejects_base_one() {
    assert_eq!(stardisc(&["sequence", "vdc", "--count", "10", "--base", "1"]).status.code(), Some(2));
}

#[test]
fn sequence_writes_into_out_dir() {
    let dir = TempDir::new().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_stardisc"))
        .args(["sequence", "vdc", "--count", "64"])
        .env("STARDISC_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    let body = fs::read_to_string(dir.path().join("vdc-64.csv")).unwrap();
    assert!(body.starts_with("N,dstar,scaled,normalized,running_max"));
    assert_eq!(body.lines().count(), 1 + 7);
}

#[test]
fn generate_is_deterministic_for_a_seed() {
    let a = stardisc(&["generate", "random", "--count", "20", "--seed", "42"]);
    let b = stardisc(&["generate", "random", "--count", "20", "--seed", "42"]);
    let c = stardisc(&["generate", "random", "--count", "20", "--seed", "43"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    assert_eq!(stdout(&a).lines().count(), 20);
}
