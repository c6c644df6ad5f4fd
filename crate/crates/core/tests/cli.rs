use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use inflecta::wavefield::eval_a;

fn inflecta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_inflecta"))
        .args(args)
        .env_remove("INFLECTA_SEED_TOL")
        .output()
        .expect("binary runs")
}

fn inflecta_env(args: &[&str], tol: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_inflecta"))
        .args(args)
        .env("INFLECTA_SEED_TOL", tol)
        .output()
        .expect("binary runs")
}

fn data_rows(csv: &str) -> Vec<&str> {
    csv.lines().skip(3).collect()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn field_two_by_two() {
    let out = inflecta(&["field", "--s", "1:2:2", "--n", "-1:1:2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "frame,gamma,k");
    assert!(lines[1].starts_with("sn,"));
    assert_eq!(lines[2], "coord1,coord2,re,im,abs");
    assert_eq!(data_rows(&text).len(), 4);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["field", "--s", "1:2:2"][..],
        &["field", "--s", "1:2:0", "--n", "0:1:2"],
        &["compare", "--s", "0:1:0"],
        &["field", "--frame", "cartesian", "--x", "0:1:2", "--y", "0:1:2"],
        &["slice", "--s", "0", "--khat", "0:1:3"],
        &["field", "--gamma", "-1", "--s", "1:2:2", "--n", "0:1:2"],
        &["nonsense"],
    ] {
        let out = inflecta(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn gate_failure_exits_one() {
    let out = inflecta(&["compare", "--s", "1:1:1", "--n", "0:0:1", "--gate", "1e-30"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn manifest_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.csv");
    let out = inflecta(&["field", "--s", "-1:2:3", "--n", "0:1:2", "--tol", "1e-9", "-o", path_str(&first)]);
    assert!(out.status.success());
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("a.csv.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "field");
    assert_eq!(manifest["data_file"], "a.csv");
    assert_eq!(manifest["samples"], 6);
    assert_eq!(manifest["unconverged"], 0);

    let second = dir.path().join("b.csv");
    let mut args: Vec<String> =
        manifest["args"].as_array().unwrap().iter().map(|v| v.as_str().unwrap().to_string()).collect();
    args.extend(["-o".to_string(), path_str(&second).to_string()]);
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    assert!(inflecta(&refs).status.success());
    assert_eq!(fs::read(&first).unwrap(), fs::read(&second).unwrap());
}

#[test]
fn jobs_do_not_change_output() {
    let run = |jobs: &str| inflecta(&["field", "--s", "-2:3:4", "--n", "-1:2:5", "--jobs", jobs]).stdout;
    assert_eq!(run("1"), run("8"));
    let slice = |jobs: &str| inflecta(&["slice", "--s", "5", "--khat", "-2:2:7", "--jobs", jobs]).stdout;
    assert_eq!(slice("1"), slice("8"));
}

#[test]
fn tolerance_from_environment_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    let args = ["field", "--s", "1:1:1", "--n", "0:0:1", "-o", path_str(&out)];
    assert!(inflecta_env(&args, "1e-7").status.success());
    let m = fs::read_to_string(dir.path().join("t.csv.manifest.json")).unwrap();
    assert!(m.contains("\"1e-7\""), "{m}");

    let mut with_flag = args.to_vec();
    with_flag.extend(["--tol", "1e-11"]);
    assert!(inflecta_env(&with_flag, "1e-7").status.success());
    let m = fs::read_to_string(dir.path().join("t.csv.manifest.json")).unwrap();
    assert!(m.contains("\"1e-11\"") && !m.contains("\"1e-7\""), "{m}");

    assert_eq!(inflecta_env(&args, "banana").status.code(), Some(2));
}

#[test]
fn single_point_slice_matches_eval_a() {
    let out = inflecta(&["slice", "--s", "3", "--n", "1.5:1.5:1", "--tol", "1e-12"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 1);
    let cols: Vec<&str> = rows[0].split(',').collect();
    let (re, im): (f64, f64) = (cols[2].parse().unwrap(), cols[3].parse().unwrap());
    let want = eval_a(3.0, 1.5, 4.0 / 9.0, 1e-12).unwrap().value;
    assert!((re - want.re).abs() < 1e-12 && (im - want.im).abs() < 1e-12);
}

#[test]
fn selftest_passes_and_is_repeatable() {
    let a = inflecta(&["selftest"]);
    let b = inflecta(&["selftest"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8(a.stdout).unwrap().contains("9 checks, 0 failed"));
}

#[test]
fn injected_fault_names_its_check() {
    let out = inflecta(&["selftest", "--inject-fault", "fresnel-halves"]);
    assert_eq!(out.status.code(), Some(1));
    let report = String::from_utf8(out.stdout).unwrap();
    let failing: Vec<&str> = report.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(failing.len(), 1);
    assert!(failing[0].contains("fresnel-halves"));
    assert!(String::from_utf8(out.stderr).unwrap().contains("fresnel-halves"));
}
