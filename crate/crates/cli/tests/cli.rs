use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn lva(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_lva"))
        .args(args)
        .env("LVA_THREADS", "1")
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn doc(args: &[&str]) -> Value {
    let (code, text) = lva(args);
    assert_eq!(code, 0, "lva {args:?}");
    serde_json::from_str(&text).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

const A2: &str = "[[2,-1],[-1,2]]";

#[test]
fn act_on_vacuum_gives_the_exponential() {
    let d = doc(&["act", "--lattice", "[[2]]", "--v", r#"{"heis":[],"gamma":[1]}"#, "--n", "-1"]);
    assert_eq!(d["schema_version"], "1");
    let terms = d["result"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["charge"], serde_json::json!(["1/1"]));
    assert_eq!(terms[0]["hkey"], serde_json::json!([]));
    assert_eq!(terms[0]["coeff"], "1/1");
}

#[test]
fn garland_first_row_is_complete_homogeneous() {
    let d = doc(&["garland", "--k", "1", "--n", "3"]);
    let terms = d["polynomial"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["key"], serde_json::json!([[3, 1]]));
    assert_eq!(terms[0]["coeff"], "1/1");
    assert_eq!(d["integral"], true);
}

#[test]
fn schur_sides_agree() {
    let d = doc(&["schur", "--partition", "3,1,1", "--basis", "s"]);
    assert_eq!(d["equal"], true);
    assert_eq!(d["jacobi_trudi"], d["vertex"]);
}

#[test]
fn cosets_of_a2() {
    let d = doc(&["cosets", "--lattice", A2]);
    assert_eq!(d["determinant"], 3);
    assert_eq!(d["cosets"].as_array().unwrap().len(), 3);
}

#[test]
fn output_documents_feed_back_as_input() {
    let path = scratch("u.json");
    let p = path.to_str().unwrap();
    let (code, _) = lva(&["act", "--lattice", A2, "--v", r#"{"heis":[{"alpha":[0,1],"n":1}],"gamma":[1,1]}"#, "--n", "-1", "--out", p]);
    assert_eq!(code, 0);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    // the identity word at n = -1 is the identity map
    let again = doc(&["act", "--lattice", A2, "--v", r#"{"heis":[],"gamma":[0,0]}"#, "--n", "-1", "--on", p]);
    assert_eq!(again["result"], written["result"]);
    let modp = doc(&["mod-p", "--lattice", A2, "--on", p, "--p", "3"]);
    assert_eq!(modp["p"], 3);
    assert!(!modp["result"]["terms"].as_array().unwrap().is_empty());
}

#[test]
fn divided_power_reports_the_paired_word() {
    let path = scratch("paired_u.json");
    let p = path.to_str().unwrap();
    lva(&["act", "--lattice", A2, "--v", r#"{"heis":[{"alpha":[0,1],"n":1}],"gamma":[1,1]}"#, "--n", "-1", "--out", p]);
    let v = r#"{"heis":[{"alpha":[1,0],"n":1},{"alpha":[0,1],"n":1}],"gamma":[1,0]}"#;
    let d = doc(&["divided-power", "--lattice", A2, "--v", v, "--n", "-1", "--r", "2", "--on", p]);
    assert_eq!(d["integrality"]["integral"], false);
    assert_eq!(d["integrality"]["witness"]["coeff"], "-23/2");
    let vac = doc(&["divided-power", "--lattice", A2, "--v", r#"{"heis":[],"gamma":[1,0]}"#, "--n", "-3", "--r", "2"]);
    assert_eq!(vac["integrality"]["integral"], true);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(lva(&["act", "--bogus"]).0, 2);
    assert_eq!(lva(&["frobnicate"]).0, 2);
    assert_eq!(lva(&["cosets", "--lattice", "[[1]]"]).0, 2);
    assert_eq!(lva(&["verify", "--preset", "huge"]).0, 2);
    assert_eq!(lva(&["verify", "--suite", "nonsense"]).0, 2);
    assert_eq!(lva(&["garland", "--k", "1", "--n", "2", "--alpha", "[1]"]).0, 2);
}

#[test]
fn verify_is_reproducible() {
    let args = ["verify", "--preset", "quick", "--seed", "3", "--suite", "schur_equivalence", "--suite", "garland_integrality"];
    let (c1, a) = lva(&args);
    let (c2, b) = lva(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let d: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(d["passed"], true);
    assert_eq!(d["schema_version"], "1");
}

#[test]
fn failing_suite_exits_with_one() {
    let (code, text) = lva(&["verify", "--preset", "quick", "--suite", "general_divided_power_integrality"]);
    assert_eq!(code, 1);
    let d: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(d["passed"], false);
}
