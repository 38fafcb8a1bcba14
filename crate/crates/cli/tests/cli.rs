//! End-to-end tests against the compiled binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dihedral"))
}

fn run_ok(args: &[&str]) -> Value {
    let out = bin().args(args).output().expect("binary runs");
    assert!(
        out.status.success(),
        "expected success for {args:?}: stderr = {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn run_err(args: &[&str]) -> (i32, Value) {
    let Output { status, stderr, .. } = bin().args(args).output().expect("binary runs");
    let code = status.code().unwrap_or(-1);
    let v = serde_json::from_slice(&stderr).expect("stderr is JSON");
    (code, v)
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("dihedral-cli-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn count_commands() {
    let v = run_ok(&["count", "--p", "2", "--m", "1", "--n", "15"]);
    assert_eq!(v, json!({"count": "1070685"}));
    let v = run_ok(&["count", "--p", "2", "--m", "1", "--n", "15", "--self-dual"]);
    assert_eq!(v, json!({"count": "33"}));
    let v = run_ok(&["count", "--p", "2", "--m", "1", "--n", "15", "--self-orthogonal"]);
    assert_eq!(v, json!({"count": "5355"}));
}

#[test]
fn factor_degenerate_and_worked() {
    let v = run_ok(&["factor", "--p", "2", "--m", "1", "--n", "1"]);
    assert_eq!(v["factors"][0]["f"], json!([3, 1]));
    assert_eq!(v["r"], json!(0));

    let v = run_ok(&["factor", "--p", "2", "--m", "1", "--n", "15"]);
    assert_eq!(v["factors"][1]["f"], json!([1, 1, 1]));
    assert_eq!(v["factors"][2]["f"], json!([1, 1, 1, 1, 1]));
    assert_eq!(v["factors"][3]["rho"], json!([1, 3, 2, 0, 1]));
    assert_eq!((v["r"].as_u64(), v["t"].as_u64()), (Some(2), Some(1)));
}

#[test]
fn validation_errors_exit_2() {
    let (code, v) = run_err(&["count", "--p", "4", "--m", "1", "--n", "3"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"], json!("non_prime"));

    let (code, v) = run_err(&["factor", "--p", "3", "--m", "1", "--n", "6"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"], json!("not_coprime"));
}

#[test]
fn enumerate_paging_is_consistent() {
    let unpaged = run_ok(&["enumerate", "--p", "2", "--m", "1", "--n", "15", "--component", "3"]);
    assert_eq!(unpaged["total"], json!(309));
    let all = unpaged["descriptors"].as_array().unwrap();
    assert_eq!(all.len(), 309);

    let mut paged: Vec<Value> = Vec::new();
    let mut offset = 0usize;
    while offset < 309 {
        let page = run_ok(&[
            "enumerate", "--p", "2", "--m", "1", "--n", "15", "--component", "3",
            "--offset", &offset.to_string(), "--limit", "100",
        ]);
        paged.extend(page["descriptors"].as_array().unwrap().iter().cloned());
        offset += 100;
    }
    assert_eq!(&paged, all);
}

fn worked_selection() -> String {
    json!({
        "p": 2, "m": 1, "n": 15,
        "selection": [
            {"i": 0, "case": "zero", "params": {}},
            {"i": 1, "case": "w_theta_plus_y", "params": {"w": [0, 1], "theta": [1]}},
            {"i": 2, "case": "w_theta_plus_y", "params": {"w": [0, 0, 0, 1], "theta": [0, 0, 1, 1]}},
            {"i": 3, "case": "zero", "params": {}}
        ]
    })
    .to_string()
}

#[test]
fn build_dual_distance_roundtrip() {
    let sel = temp_file("sel.json", &worked_selection());
    let sel_arg = sel.to_str().unwrap();

    let built = run_ok(&["build", "--selection", sel_arg]);
    assert_eq!(built["cardinality"], json!("4096"));
    assert_eq!(built["rows"].as_array().unwrap().len(), 6);
    // round-trip: the echoed selection is byte-identical to the canonical input
    let input: Value = serde_json::from_str(&worked_selection()).unwrap();
    assert_eq!(
        serde_json::to_string(&built["selection"]).unwrap(),
        serde_json::to_string(&input["selection"]).unwrap()
    );

    let dual = run_ok(&["dual", "--selection", sel_arg]);
    assert_eq!(dual["cardinality"], json!("281474976710656"));

    let dist = run_ok(&["distance", "--selection", sel_arg, "--lee"]);
    assert_eq!(dist["d_hamming"], json!(12));
    assert_eq!(dist["d_lee"], json!(20));
    assert_eq!(dist["words_scanned"], json!(4096));

    let cls = run_ok(&["classify", "--selection", sel_arg]);
    assert_eq!(cls["self_dual"], json!(false));
    assert_eq!(cls["self_orthogonal"], json!(false));

    std::fs::remove_file(sel).ok();
}

#[test]
fn classify_self_dual_selection() {
    // one self-dual ideal per component: p-scalar everywhere except the pair
    // block, which uses a block idempotent ideal
    let sel = temp_file(
        "sd.json",
        &json!({
            "p": 2, "m": 1, "n": 15,
            "selection": [
                {"i": 0, "case": "p_scalar", "params": {}},
                {"i": 1, "case": "p_scalar", "params": {}},
                {"i": 2, "case": "p_scalar", "params": {}},
                {"i": 3, "case": "eps_plus_p_by", "params": {"j": 1, "b": [0]}}
            ]
        })
        .to_string(),
    );
    let cls = run_ok(&["classify", "--selection", sel.to_str().unwrap()]);
    assert_eq!(cls["self_dual"], json!(true));
    assert_eq!(cls["self_orthogonal"], json!(true));
    std::fs::remove_file(sel).ok();
}

#[test]
fn schema_errors_carry_pointers() {
    let sel = temp_file(
        "bad-case.json",
        &json!({
            "p": 2, "m": 1, "n": 15,
            "selection": [
                {"i": 0, "case": "mystery", "params": {}},
                {"i": 1, "case": "zero", "params": {}},
                {"i": 2, "case": "zero", "params": {}},
                {"i": 3, "case": "zero", "params": {}}
            ]
        })
        .to_string(),
    );
    let (code, v) = run_err(&["build", "--selection", sel.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(v["error"], json!("schema_error"));
    assert!(v["detail"].as_str().unwrap().contains("/selection/0"));
    std::fs::remove_file(sel).ok();

    // a parameter outside the computed solution set is rejected with its path
    let sel = temp_file(
        "bad-w.json",
        &json!({
            "p": 2, "m": 1, "n": 15,
            "selection": [
                {"i": 0, "case": "zero", "params": {}},
                {"i": 1, "case": "p_w_plus_y", "params": {"w": [1, 1]}},
                {"i": 2, "case": "zero", "params": {}},
                {"i": 3, "case": "zero", "params": {}}
            ]
        })
        .to_string(),
    );
    let (code, v) = run_err(&["build", "--selection", sel.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(v["detail"].as_str().unwrap().contains("/selection/1/params/w"));
    std::fs::remove_file(sel).ok();
}

#[test]
fn reproduction_suite_passes() {
    let out = bin().arg("verify-paper-example").output().expect("binary runs");
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["all_pass"], json!(true));
    assert_eq!(v["checks"].as_array().unwrap().len(), 8);
}
