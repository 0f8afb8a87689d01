use std::process::{Command, Output};

fn hecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke")).args(args).env_remove("HECKE_CACHE_DIR").output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = hecke(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn dimensions() {
    assert_eq!(stdout(&["dim", "--level", "89", "--weight", "2"]).trim(), "7");
    assert_eq!(stdout(&["dim", "--level", "1", "--weight", "2"]).trim(), "0");
    assert_eq!(stdout(&["dim", "--level", "1", "--weight", "12"]).trim(), "1");
}

#[test]
fn characteristic_polynomials() {
    let delta = stdout(&["charpoly", "--level", "1", "--weight", "12", "--ell", "2"]);
    assert_eq!(delta.lines().next(), Some("x + 24"));
    assert!(delta.contains("[24, 1]"));
    let v = json(&["charpoly", "--level", "11", "--weight", "2", "--ell", "2", "--format", "json"]);
    assert_eq!(v["poly"], "x + 2");
    assert_eq!(v["coeffs"], serde_json::json!(["2", "1"]));
    let empty = stdout(&["charpoly", "--level", "1", "--weight", "10", "--ell", "3"]);
    assert_eq!(empty.lines().next(), Some("1"));
}

#[test]
fn scan_reports() {
    let v = json(&["scan", "--level", "1", "--p", "13", "--kmax", "40", "--format", "json"]);
    assert_eq!(v["all_split"], true);
    assert!(v["witness"].is_null());
    assert_eq!(v["k_max"], 40);
    assert!(v["assertions_checked"].as_u64().unwrap() > 0);

    let v = json(&["scan", "--level", "13", "--p", "3", "--kmax", "20", "--format", "json"]);
    assert_eq!(v["all_split"], false);
    let coeffs = v["witness"]["factor_coeffs"].as_array().unwrap();
    assert!(coeffs.len() >= 3);
    for key in ["level", "chi", "p", "k_max", "l_policy", "periods"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn scan_output_is_reproducible_and_cache_backed() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["scan", "--level", "11", "--p", "5", "--kmax", "12", "--format", "json", "--cache", cache];
    let first = stdout(&args);
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    assert_eq!(stdout(&args), first);
    let plain = stdout(&args[..9]);
    assert_eq!(plain, first);
    let report: hecke_core::scan::ScanReport = serde_json::from_str(&first).unwrap();
    assert_eq!(serde_json::to_string_pretty(&report).unwrap(), first.trim_end());

    // the environment variable supplies a default directory
    let other = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_hecke"))
        .args(["charpoly", "--level", "7", "--weight", "4", "--ell", "3"])
        .env("HECKE_CACHE_DIR", other.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(std::fs::read_dir(other.path()).unwrap().count(), 1);
}

#[test]
fn tables() {
    let out = stdout(&["table", "--character", "legendre", "--levels", "23,31", "--primes", "2,3", "--kmax", "24"]);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows, vec!["23 | 3", "31 | 3"]);
    let out = stdout(&["table", "--levels", "", "--primes", "2"]);
    assert_eq!(out.lines().count(), 1);
    assert!(out.starts_with("N | "));
    let out = stdout(&["table", "--levels", "11", "--primes", "2,3", "--budget", "0"]);
    assert!(out.contains("untested: 2, 3"));
}

#[test]
fn heuristic_counts() {
    let out = stdout(&["heuristic", "--p", "2", "--dmax", "7"]);
    let counts: Vec<u64> = out.lines().skip(1).map(|l| l.split(" | ").nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(counts, (1..=8).collect::<Vec<_>>());
    let v = json(&["heuristic", "--p", "3", "--dmax", "3", "--format", "json"]);
    let counts: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["count"].as_str().unwrap()).collect();
    assert_eq!(counts, vec!["1", "3", "6", "10"]);
    let probs: Vec<f64> = v.as_array().unwrap().iter().map(|r| r["approx"].as_f64().unwrap()).collect();
    assert!(probs[1..].windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn exit_codes() {
    let out = hecke(&["scan", "--level", "13", "--p", "13", "--kmax", "20"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not dividing N"));
    assert_eq!(hecke(&["scan", "--level", "9", "--p", "2"]).status.code(), Some(1));
    assert_eq!(hecke(&["scan", "--level", "11", "--p", "4"]).status.code(), Some(1));
    assert_eq!(hecke(&["scan", "--level", "11", "--p", "3", "--kmax", "1"]).status.code(), Some(1));
    assert_eq!(hecke(&["dim", "--level", "2", "--weight", "2", "--character", "legendre"]).status.code(), Some(1));
    assert_eq!(hecke(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(hecke(&["--help"]).status.code(), Some(0));
}
