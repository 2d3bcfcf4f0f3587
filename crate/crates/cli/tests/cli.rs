use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thetabody")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn value(r: &Value, key: &str) -> f64 {
    r["values"][key].as_f64().unwrap_or_else(|| panic!("missing value {key}"))
}

fn all_pass(r: &Value) -> bool {
    r["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass")
}

#[test]
fn theta_on_standard_graphs() {
    let c5 = report(&["theta", "--graph", &data("c5.col"), "--variant", "th"]);
    assert!((value(&c5, "theta") - 2.236068).abs() < 1e-5);
    assert_eq!(c5["schema_version"], 1);
    assert!(all_pass(&c5));
    let k4 = report(&["theta", "--graph", &data("k4.col")]);
    assert!((value(&k4, "theta") - 1.0).abs() < 1e-6);
    let p = report(&["theta", "--graph", &data("petersen.col")]);
    assert!((value(&p, "theta4") - 4.0).abs() < 1e-6);
    assert_eq!(p["certificates"]["xhat_star"].as_array().unwrap().len(), 11);
}

#[test]
fn chain_on_triangle() {
    let r = report(&["chain", "--graph", &data("k3.col")]);
    let expected =
        [("alpha", 1.0), ("theta_prime", 1.0), ("theta", 1.0), ("theta_plus", 1.0), ("qstab", 1.0), ("frac", 1.5)];
    for (k, v) in expected {
        assert!((value(&r, k) - v).abs() < 1e-6, "{k}");
    }
    assert!(all_pass(&r));
}

#[test]
fn remaining_commands_on_c5() {
    let s5 = 5f64.sqrt();
    let h = report(&["hoffman", "--graph", &data("c5.col")]);
    assert!((value(&h, "hoffman_ratio") - s5).abs() < 1e-6);
    assert!((value(&h, "theta_complement") - s5).abs() < 1e-5);
    let l = report(&["luz", "--graph", &data("c5.col")]);
    assert!((value(&l, "luz") - s5).abs() < 1e-5);
    let c = report(&["chifrac", "--graph", &data("c5.col")]);
    assert!((value(&c, "chi_fractional") - 2.5).abs() < 1e-9);
    for cmd in ["duality", "frac"] {
        assert!(all_pass(&report(&[cmd, "--graph", &data("c5.col"), "--samples", "8"])), "{cmd}");
    }
}

#[test]
fn reports_are_reproducible() {
    let args = ["duality", "--graph", &data("c5.col"), "--samples", "6", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn weights_and_output_file() {
    let dir = std::env::temp_dir().join(format!("thetabody-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let w = dir.join("w.txt");
    std::fs::write(&w, "1\n0\n0.5\n\n0\n0.7\n").unwrap();
    let out = dir.join("report.json");
    let status =
        run(&["theta", "--graph", &data("c5.col"), "--weights", w.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(status.status.success());
    assert!(status.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    // Vertices 0, 2 and 4 of C5 carry weight; {0, 2} is the best stable set and 0, 4 are adjacent.
    assert!(value(&r, "theta") >= 1.5 - 1e-6);
    assert_eq!(r["command"]["weights"], w.to_str().unwrap());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bad_inputs_exit_with_code_two() {
    assert_eq!(run(&["theta", "--graph", &data("c5.col"), "--tol", "0.5"]).status.code(), Some(2));
    assert_eq!(run(&["theta", "--graph", "/nonexistent.col"]).status.code(), Some(2));
    let dir = std::env::temp_dir().join(format!("thetabody-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let w = dir.join("w.txt");
    std::fs::write(&w, "1\n2\n").unwrap();
    assert_eq!(run(&["theta", "--graph", &data("c5.col"), "--weights", w.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn unsupported_theta6_is_inconclusive_unless_strict() {
    let args = ["hoffman", "--graph", &data("c5.col"), "--variant", "thplus"];
    let out = run(&args);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(r["checks"].as_array().unwrap().iter().any(|c| c["status"] == "inconclusive"));
    let mut strict = args.to_vec();
    strict.push("--strict");
    assert_eq!(run(&strict).status.code(), Some(1));
}
