use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_ordroots")).args(args).output().expect("binary runs");
    let code = out.status.code().unwrap_or(-1);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, v)
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ordroots-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn s(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

const DUAL: &str = r#"{"rank": 2, "unit": ["1","0"], "mul": [[["1","0"],["0","1"]],[["0","1"],["0","0"]]]}"#;
const GAUSS: &str = r#"{"rank": 2, "unit": ["1","0"], "mul": [[["1","0"],["0","1"]],[["0","1"],["-1","0"]]]}"#;

#[test]
fn classify_x2_x_1_is_npc() {
    let (code, v) = run(&["classify", "--poly", "X^2+X+1"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "NPC");
}

#[test]
fn classify_accepts_coefficient_files() {
    let f = scratch("f.json", r#"{"coeffs": ["1", "0", "1"]}"#);
    let (code, v) = run(&["classify", "--poly", s(&f)]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "InP");
}

#[test]
fn rootfind_gaussian_units() {
    let a = scratch("gauss.json", GAUSS);
    let (code, v) = run(&["rootfind", "--order", s(&a), "--poly", "X^4-1", "--enumerate"]);
    assert_eq!(code, 0);
    assert_eq!(v["nonempty"], true);
    assert_eq!(v["zeros"].as_array().unwrap().len(), 4);
    assert_eq!(v["zeros"][0], serde_json::json!(["-1", "0"]));
}

#[test]
fn inseparable_on_non_reduced_is_a_precondition_error() {
    let a = scratch("dual.json", DUAL);
    let (code, v) = run(&["rootfind", "--order", s(&a), "--poly", "X^2"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"], "NotSupported");
}

#[test]
fn caps_exit_3() {
    let (code, v) = run(&["--degree-cap", "2", "classify", "--poly", "X^3-3"]);
    assert_eq!(code, 3);
    assert_eq!(v["error"], "DegreeCapExceeded");
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(run(&["frobnicate"]).0, 64);
    assert_eq!(run(&["classify"]).0, 64);
    assert_eq!(run(&["classify", "--poly", "X^^2"]).0, 64);
    assert_eq!(run(&["verify-reduction", "--family", "no-such"]).0, 64);
    assert_eq!(run(&["validate", "--order", "/nonexistent/a.json"]).0, 64);
}

#[test]
fn invalid_order_is_rejected() {
    let bad = scratch("bad.json", r#"{"rank": 2, "unit": ["1","0"], "mul": [[["1","0"],["0","1"]],[["1","1"],["0","0"]]]}"#);
    let (code, v) = run(&["validate", "--order", s(&bad)]);
    assert_eq!(code, 2, "{v}");
}

#[test]
fn reduce_output_round_trips() {
    let params = scratch("qp.json", r#"{"a": "2"}"#);
    let inst = scratch("qi.json", r#"{"t": "1", "H": [["1"]]}"#);
    let dir = std::env::temp_dir().join(format!("ordroots-cli-{}", std::process::id()));
    let out = dir.join("built.json");
    let (code, v) = run(&["reduce", "--family", "quad-even", "--params", s(&params), "--instance", s(&inst), "--out", s(&out)]);
    assert_eq!(code, 0, "{v}");
    let (code, v) = run(&["validate", "--order", s(&out)]);
    assert_eq!(code, 0);
    assert_eq!(v["valid"], true);
    let f = v["rank"].clone();
    assert_eq!(f, "2");
    let (code, v) = run(&["rootfind", "--order", s(&out), "--poly", "X^2-2", "--enumerate"]);
    assert_eq!(code, 0);
    assert_eq!(v["nonempty"], true);
}

#[test]
fn gadget_commands() {
    let inst = scratch("z8.json", r#"{"invariants": ["8"], "S": [["1"],["7"]], "t": "2", "H": [["1","1"]]}"#);
    let (code, v) = run(&["gadget-classify", "--instance", s(&inst)]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "NPC");
    let (code, v) = run(&["gadget-solve", "--instance", s(&inst)]);
    assert_eq!(code, 0);
    assert_eq!(v["yes"], true);
}

#[test]
fn verify_reduction_is_seeded() {
    let args = ["--seed", "5", "verify-reduction", "--family", "x3-minus-3", "--max-t", "2", "--trials", "4"];
    let (code, a) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(a["passed"], true);
    assert_eq!(run(&args).1, a);
}

#[test]
fn htp_build_and_witness() {
    let sys = scratch(
        "sys.json",
        r#"{"n": 1, "polys": [{"monomials": [{"exps":[3], "re": "1", "im": "0"}, {"exps":[0], "re": "0", "im": "1"}]}]}"#,
    );
    let good = scratch("x.json", r#"{"x": [{"re": "0", "im": "1"}]}"#);
    let bad = scratch("y.json", r#"{"x": [{"re": "0", "im": "-1"}]}"#);
    let (code, v) = run(&["htp", "build", "--system", s(&sys)]);
    assert_eq!(code, 0);
    assert_eq!(v["rank"], "12");
    let (code, v) = run(&["htp", "witness", "--system", s(&sys), "--solution", s(&good)]);
    assert_eq!(code, 0);
    assert_eq!(v["verified"], true);
    assert_eq!(run(&["htp", "witness", "--system", s(&sys), "--solution", s(&bad)]).0, 2);
}

#[test]
fn config_file_supplies_flags() {
    let cfg = scratch("cfg.json", r#"{"degree_cap": 2}"#);
    assert_eq!(run(&["--config", s(&cfg), "classify", "--poly", "X^3-3"]).0, 3);
    let cfg = scratch("cfg0.json", r#"{"enum_cap": 0}"#);
    assert_eq!(run(&["--config", s(&cfg), "classify", "--poly", "X^3-3"]).0, 64);
}
