use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

/// Runs the binary from the data directory so report inputs are stable.
fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_buildtrop"))
        .current_dir(data(""))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).expect("utf-8"))
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let (code, text) = run(&all);
    let v: Value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("not JSON ({e}): {text}"));
    (code, v)
}

fn mask_timing(v: &mut Value) {
    match v {
        Value::Array(items) => items.iter_mut().for_each(mask_timing),
        Value::Object(map) => {
            if let Some(t) = map.get_mut("timing") {
                t["elapsed_us"] = Value::from(0);
            }
        }
        _ => {}
    }
}

/// Compares against `tests/golden/<name>.json`; set `UPDATE_GOLDEN=1` to
/// rewrite the files.
fn golden(name: &str, args: &[&str]) -> (i32, Value) {
    let (code, mut v) = run_json(args);
    mask_timing(&mut v);
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"));
    let text = serde_json::to_string_pretty(&v).unwrap() + "\n";
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &text).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(text, expected, "golden mismatch for {name}");
    (code, v)
}

fn strs(v: &Value) -> Vec<String> {
    v.as_array()
        .expect("array")
        .iter()
        .map(|x| x.as_str().expect("string").to_string())
        .collect()
}

#[test]
fn trop_diagonal() {
    let (code, v) = golden("trop_diag", &["trop", "diag_t2.json"]);
    assert_eq!(code, 0);
    assert_eq!(strs(&v["result"]["lambda"]), ["2", "0"]);
    assert_eq!(v["result"]["agree"], true);
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn trop_needs_pivoting() {
    let (code, v) = golden("trop_pivot", &["trop", "pivot.json"]);
    assert_eq!(code, 0);
    assert_eq!(strs(&v["result"]["minors"]), ["1", "0"]);
    assert_eq!(strs(&v["result"]["elimination"]), ["1", "0"]);
}

#[test]
fn trop_singular() {
    let (code, v) = golden("trop_singular", &["trop", "singular.json"]);
    assert_eq!(code, 2);
    assert_eq!(v["verdict"], "error");
    assert!(v["error"].as_str().unwrap().contains("singular"));
}

#[test]
fn malformed_input() {
    let (code, v) = run_json(&["trop", "malformed.json"]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().starts_with("malformed JSON"));
    let (code, _) = run_json(&["trop", "no_such_file.json"]);
    assert_eq!(code, 2);
}

#[test]
fn seeded_bi_invariance() {
    let (code, v) = run_json(&["--seed", "11", "trop", "pivot.json"]);
    assert_eq!(code, 0);
    let w = v["witnesses"].as_array().unwrap();
    assert_eq!(w.len(), 2);
    assert_eq!(w[1]["name"], "bi-invariance");
    assert_eq!(w[1]["holds"], true);
}

#[test]
fn cartan_factors() {
    let (code, v) = golden("cartan_pivot", &["cartan", "pivot.json"]);
    assert_eq!(code, 0);
    assert_eq!(strs(&v["result"]["lambda"]), ["1", "0"]);
    assert_eq!(v["witnesses"][0]["holds"], true);
}

#[test]
fn pi_of_point() {
    let (code, v) = golden("pi_point", &["pi", "point.json"]);
    assert_eq!(code, 0);
    assert_eq!(strs(&v["result"]["pi"]), ["3", "1/2", "-1"]);
    assert_eq!(strs(&v["result"]["normalized"]["lambda"]), ["-1/3", "13/6", "-11/6"]);
}

#[test]
fn diagram_worked_triple() {
    let (code, v) = golden("diagram_worked", &["diagram", "worked_triple.json"]);
    assert_eq!(code, 0);
    let w = &v["witnesses"][0];
    assert_eq!(strs(&w["lhs"]), ["2", "0"]);
    assert_eq!(strs(&w["rhs"]), ["2", "0"]);
    assert_eq!(w["holds"], true);
}

#[test]
fn diagram_identity_and_bad_h() {
    let (code, v) = run_json(&["diagram", "identity_triple.json"]);
    assert_eq!(code, 0);
    assert_eq!(strs(&v["witnesses"][0]["lhs"]), ["0", "0"]);
    let (code, v) = golden("diagram_bad_h", &["diagram", "bad_h_triple.json"]);
    assert_eq!(code, 3);
    assert_eq!(v["exit_code"], 3);
}

#[test]
fn pgl3_weyl_fan() {
    let (code, v) = golden("fan_pgl3", &["fan", "--group", "PGL(3)", "--smooth", "--weyl"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["valid"], true);
    assert_eq!(v["result"]["cones"], 13);
    assert_eq!(v["result"]["all_smooth"], true);
    assert_eq!(v["result"]["weyl_equivariant"], true);
}

#[test]
fn sl3_chamber_is_not_smooth() {
    let (code, v) = golden("fan_sl3_chamber", &["fan", "sl3_chamber.json", "--smooth"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["valid"], true);
    assert_eq!(v["result"]["all_smooth"], false);
    let (_, v) = run_json(&["fan", "--group", "SL(3)", "--smooth", "--weyl"]);
    assert_eq!(v["result"]["all_smooth"], false);
    assert_eq!(v["result"]["weyl_equivariant"], true);
}

#[test]
fn overlapping_fan_is_rejected() {
    let (code, v) = golden("fan_overlapping", &["fan", "overlapping.json"]);
    assert_eq!(code, 4);
    assert_eq!(v["verdict"], "error");
    let c = &v["counterexample"];
    assert!(c["first"].is_array() && c["second"].is_array());
}

#[test]
fn stacky_stabilizers() {
    let (code, v) = golden("fan_stacky", &["fan", "stacky_p1.json", "--stacky"]);
    assert_eq!(code, 0);
    let cones = v["result"]["stacky"]["maximal_cones"].as_array().unwrap();
    let groups: Vec<&str> = cones.iter().map(|c| c["stabilizer"].as_str().unwrap()).collect();
    assert_eq!(groups, ["Z/2", "Z/3"]);
}

#[test]
fn weyl_needs_a_root_datum() {
    let (code, _) = run_json(&["fan", "sl3_chamber.json", "--weyl"]);
    assert_eq!(code, 2);
}

#[test]
fn chain_lengths() {
    let (code, v) = golden("chain_lengths", &["chain", "chain_lengths.json"]);
    assert_eq!(code, 0);
    assert_eq!(strs(&v["result"]["realization"]["point"]), ["3", "2"]);
}

#[test]
fn chain_params() {
    let (code, v) = golden("chain_params", &["chain", "chain_params.json"]);
    assert_eq!(code, 0);
    assert_eq!(strs(&v["result"]["lengths"]), ["3", "1/2"]);
}

#[test]
fn chain_with_infinite_edge() {
    let (code, v) = run_json(&["chain", "chain_pseudo.json"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["realization"]["kind"], "extended");
    assert_eq!(strs(&v["result"]["realization"]["point"]), ["2"]);
}

#[test]
fn chain_order_violation() {
    let (code, v) = golden("chain_order", &["chain", "chain_order.json"]);
    assert_eq!(code, 4);
    assert!(v["error"].as_str().unwrap().starts_with("order violated"));
}

#[test]
fn norm_equality() {
    let (code, v) = golden("norm_eq", &["--seed", "1", "norm-eq", "norms_equal.json", "norms_unequal.json"]);
    assert_eq!(code, 0);
    let reports = v.as_array().unwrap();
    assert_eq!(reports[0]["result"]["equal"], true);
    assert_eq!(reports[0]["result"]["separating_samples"], 0);
    assert_eq!(reports[1]["result"]["equal"], false);
    assert!(reports[1]["result"]["separating_samples"].as_u64().unwrap() > 0);
}

#[test]
fn batches_keep_order_and_worst_exit_code() {
    let (code, v) = run_json(&["trop", "diag_t2.json", "singular.json", "pivot.json"]);
    assert_eq!(code, 2);
    let inputs: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["input"].as_str().unwrap()).collect();
    assert_eq!(inputs, ["diag_t2.json", "singular.json", "pivot.json"]);
}

#[test]
fn reports_are_deterministic() {
    let mut a = run_json(&["--seed", "5", "trop", "pivot.json", "diag_t2.json"]).1;
    let mut b = run_json(&["--seed", "5", "trop", "pivot.json", "diag_t2.json"]).1;
    mask_timing(&mut a);
    mask_timing(&mut b);
    assert_eq!(a, b);
}

#[test]
fn digest_is_sha256_of_the_file() {
    let (_, v) = run_json(&["trop", "diag_t2.json"]);
    let d = v["inputs_digest"].as_str().unwrap();
    assert_eq!(d.len(), 64);
    assert!(d.chars().all(|c| c.is_ascii_hexdigit()));
    let (_, w) = run_json(&["trop", "pivot.json"]);
    assert_ne!(w["inputs_digest"], v["inputs_digest"]);
}

#[test]
fn no_floats_in_reports() {
    fn walk(v: &Value) {
        match v {
            Value::Number(n) => assert!(n.is_u64() || n.is_i64(), "float {n}"),
            Value::Array(a) => a.iter().for_each(walk),
            Value::Object(m) => m.values().for_each(walk),
            _ => {}
        }
    }
    for args in [
        vec!["pi", "point.json"],
        vec!["chain", "chain_params.json"],
        vec!["fan", "stacky_p1.json", "--stacky", "--smooth"],
    ] {
        walk(&run_json(&args).1);
    }
}

#[test]
fn text_output() {
    let (code, text) = run(&["diagram", "worked_triple.json"]);
    assert_eq!(code, 0);
    assert!(text.starts_with("[pass] diagram worked_triple.json"));
    assert!(text.contains("(2, 0)"));
}
