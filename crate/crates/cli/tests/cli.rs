use std::fs;
use std::path::Path;
use std::process::Command;

use serde_json::{json, Value};

fn trs(args: &[&str]) -> (bool, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_trs")).args(args).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let value = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.success(), value, stdout)
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    fs::write(&p, v.to_string()).unwrap();
    p.to_str().unwrap().to_string()
}

/// (*)-shape code over GF(13) on the squares and 0, with eta = 2.
fn star_code() -> Value {
    json!({"field": {"p": 13, "m": 1}, "n": 7, "k": 3, "alpha": [1, 3, 4, 9, 10, 12, 0], "t": [1], "h": [0], "eta": [2]})
}

#[test]
fn construct_and_mds_check() {
    let dir = tempfile::tempdir().unwrap();
    let params = write(dir.path(), "c.json", &star_code());
    let (ok, v, _) = trs(&["construct", "--params", &params, "--emit-generator"]);
    assert!(ok);
    assert_eq!(v["n"], 7);
    assert_eq!(v["generator"].as_array().unwrap().len(), 3);
    for method in ["auto", "star", "exhaustive"] {
        let (ok, v, _) = trs(&["mds-check", "--params", &params, "--method", method]);
        assert!(ok);
        assert_eq!(v["mds"], true);
    }
    let (ok, _, _) = trs(&["mds-check", "--params", &params, "--method", "plus"]);
    assert!(!ok);
}

#[test]
fn dual_and_grs() {
    let dir = tempfile::tempdir().unwrap();
    let c = json!({"field": {"p": 13, "m": 1}, "n": 12, "k": 4, "alpha": [1,2,3,4,5,6,7,8,9,10,11,12], "t": [2], "h": [1], "eta": [5]});
    let params = write(dir.path(), "c.json", &c);
    let (ok, v, _) = trs(&["dual", "--params", &params, "--dump-h"]);
    assert!(ok);
    assert_eq!(v["dual"]["k"], 8);
    assert_eq!(v["dual"]["t"], json!([3]));
    assert_eq!(v["dual"]["h"], json!([6]));
    assert_eq!(v["dual"]["eta"], json!([8]));
    assert_eq!(v["h"].as_array().unwrap().len(), 8);

    let star = write(dir.path(), "s.json", &star_code());
    let (ok, _, _) = trs(&["dual", "--params", &star]);
    assert!(!ok);
    let (ok, v, _) = trs(&["dual", "--params", &star, "--allow-zero-point"]);
    assert!(ok);
    assert_eq!(v["dual"]["k"], 4);

    let (ok, v, _) = trs(&["grs-check", "--params", &params]);
    assert!(ok);
    assert!(v["schur_square_dim"].as_u64().unwrap() >= v["sumset_lower_bound"].as_u64().unwrap());
}

#[test]
fn eta_census() {
    let dir = tempfile::tempdir().unwrap();
    let base = json!({"field": {"p": 11, "m": 1}, "n": 7, "k": 3, "alpha": [1,2,3,4,5,6,7], "t": [2], "h": [1], "eta": [0]});
    let base = write(dir.path(), "b.json", &base);
    let (ok, v, _) = trs(&["eta-census", "--base", &base]);
    assert!(ok);
    assert_eq!(v["total"], 11);
    let list = write(dir.path(), "l.json", &json!([[0], [3]]));
    let (ok, v, _) = trs(&["eta-census", "--base", &base, "--eta-domain", &list]);
    assert!(ok);
    assert_eq!(v["total"], 2);
}

#[test]
fn decode_engines() {
    let dir = tempfile::tempdir().unwrap();
    let c = json!({"field": {"p": 13, "m": 1}, "n": 12, "k": 4, "alpha": [1,2,3,4,5,6,7,8,9,10,11,12], "t": [1], "h": [2], "eta": [3]});
    let params = write(dir.path(), "c.json", &c);
    let (ok, enc, _) = trs(&["construct", "--params", &params, "--emit-generator"]);
    assert!(ok);
    // codeword of message (1, 0, 0, 0), then two errors
    let mut word: Vec<u64> = enc["generator"][0].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    let clean = word.clone();
    word[0] = (word[0] + 1) % 13;
    word[5] = (word[5] + 4) % 13;
    let recv = write(dir.path(), "r.json", &json!(word));
    for engine in ["popov", "linear", "brute"] {
        let (ok, v, _) = trs(&["decode", "--params", &params, "--received", &recv, "--zeta", "2", "--engine", engine]);
        assert!(ok, "{engine}");
        assert_eq!(v["status"], "success");
        assert_eq!(v["codeword"], json!(clean));
        assert_eq!(v["error_weight"], 2);
    }
    let bad = write(dir.path(), "bad.json", &json!([1, 2]));
    let (ok, _, _) = trs(&["decode", "--params", &params, "--received", &bad]);
    assert!(!ok);
}

#[test]
fn simulate_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = json!({"field": {"p": 13, "m": 1}, "n": 12, "ks": [4], "ells": [1], "zetas": [2], "trials": 10, "codes": 2});
    let cfg = write(dir.path(), "sim.json", &cfg);
    let out = dir.path().join("report.json");
    let out = out.to_str().unwrap();
    let (ok, _, table) = trs(&["simulate", "--config", &cfg, "--seed", "5", "--out", out, "--table"]);
    assert!(ok);
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("k\tell\tzeta\ttau_lb\ttau=0"));
    let report: Value = serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(report["config"]["seed"], 5);
    assert_eq!(report["codes"].as_array().unwrap().len(), 2);
    let (ok, again, _) = trs(&["simulate", "--config", &cfg, "--seed", "5"]);
    assert!(ok);
    assert_eq!(again, report);
}

#[test]
fn mds_search() {
    let (ok, v, _) = trs(&["mds-search", "--p", "13", "--n", "7", "--k", "3", "--tries", "20"]);
    assert!(ok);
    assert_eq!(v["tries"], 20);
    assert!(v["mds_found"].as_u64().unwrap() <= 20);
}
