use std::process::{Command, Output};

use serde_json::Value;

fn commcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_commcalc"))
        .args(args)
        .env_remove("CC_BUDGET")
        .output()
        .expect("commcalc runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 stdout")
}

fn json(args: &[&str]) -> Value {
    let o = commcalc(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).expect("json report")
}

#[test]
fn expand_prints_bare_names_for_unsided_input() {
    let o = commcalc(&["expand", "[x1,x2]", "--deg", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1 + X1*X2 - X2*X1");
}

#[test]
fn expand_keeps_sides_for_sided_input() {
    let o = commcalc(&["expand", "[xA1,xB1]", "--deg", "2"]);
    assert_eq!(stdout(&o).trim(), "1 + X_A1*X_B1 - X_B1*X_A1");
}

#[test]
fn expand_json_lists_terms() {
    let v = json(&["--format", "json", "expand", "x1^-1", "--deg", "3"]);
    let coeffs: Vec<&str> = v["terms"].as_array().unwrap().iter().map(|t| t["coeff"].as_str().unwrap()).collect();
    assert_eq!(coeffs, ["1", "-1", "1", "-1"]);
    assert_eq!(v["terms"][3]["monomial"], serde_json::json!([1, 1, 1]));
}

#[test]
fn member_weight_and_coeff() {
    assert_eq!(stdout(&commcalc(&["member", "[x1,x2]", "--k", "2"])).trim(), "true");
    assert_eq!(stdout(&commcalc(&["member", "[x1,x2]", "--k", "3"])).trim(), "false");
    assert_eq!(stdout(&commcalc(&["weight", "[[x1,x2],x3]", "--k", "5"])).trim(), "3");
    assert_eq!(stdout(&commcalc(&["weight", "1", "--k", "3"])).trim(), "at_least(3)");
    assert_eq!(stdout(&commcalc(&["coeff", "[x1,x2]", "--target", "x2,x1"])).trim(), "-1");
}

#[test]
fn witt_and_lyndon() {
    assert_eq!(stdout(&commcalc(&["witt", "--n-gens", "2", "--k", "5"])).trim(), "6");
    let basis = stdout(&commcalc(&["lyndon", "--n-gens", "2", "--k", "3"]));
    assert_eq!(basis.lines().collect::<Vec<_>>(), ["[xA1,[xA1,xA2]]", "[[xA1,xA2],xA2]"]);
}

#[test]
fn bing_side_selection() {
    let both = stdout(&commcalc(&["bing", "--stage", "1"]));
    assert!(both.contains("m_A = [xA1,xA2]") && both.contains("m_B = [xB1,xB2]"), "{both}");
    let a = stdout(&commcalc(&["bing", "--stage", "1", "--side", "A"]));
    assert!(a.contains("m_A") && !a.contains("m_B"), "{a}");
}

#[test]
fn verify_certificate_schema() {
    let v = json(&["verify", "--stage", "1", "--k", "5", "--mode", "both", "--format", "json"]);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    for key in [
        "stage_n",
        "l",
        "N",
        "k",
        "ambient_dimension",
        "mode",
        "k_exceeds_N",
        "lowest_degree_found",
        "leaf_order_coeff",
        "lie_cross_check",
        "assumptions",
        "conclusion",
        "budgets",
        "timing_ms",
    ] {
        assert!(keys.contains(&key), "missing {key} in {keys:?}");
    }
    assert_eq!(v["conclusion"], "STICKY_CERTIFIED");
    assert_eq!(v["N"], 4);
    assert_eq!(v["k_exceeds_N"], true);
    assert_eq!(v["budgets"]["monomial_cap"], 10_000_000);
}

#[test]
fn verify_below_threshold_is_inconclusive_with_exit_zero() {
    let v = json(&["verify", "--stage", "1", "--k", "4", "--format", "json"]);
    assert_eq!(v["conclusion"], "INCONCLUSIVE_K_TOO_SMALL");
    assert_eq!(v["in_gamma_k"], true);
}

#[test]
fn dimension_is_metadata_only() {
    let mut a = json(&["verify", "--stage", "1", "--k", "5", "--format", "json"]);
    let mut b = json(&["verify", "--stage", "1", "--k", "5", "--dim", "7", "--format", "json"]);
    assert_eq!(b["ambient_dimension"], 7);
    for v in [&mut a, &mut b] {
        let obj = v.as_object_mut().unwrap();
        obj.remove("timing_ms");
        obj.remove("ambient_dimension");
    }
    assert_eq!(a, b);
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["expand", "x1(", "--deg", "2"][..],
        &["expand", "[x1^2,x2]", "--deg", "2"],
        &["verify", "--stage", "1", "--k", "5", "--dim", "3"],
        &["verify", "--stage", "1", "--k", "5", "--mode", "sideways"],
        &["coeff", "[x1,x2]", "--target", "x1,x1"],
        &["frobnicate"],
    ] {
        let o = commcalc(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?} printed no diagnostic");
    }
}

#[test]
fn budget_errors_exit_two() {
    let o = commcalc(&["--budget", "10000", "verify", "--stage", "3", "--k", "17", "--mode", "full"]);
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_commcalc"))
        .args(["verify", "--stage", "3", "--k", "17", "--mode", "full"])
        .env("CC_BUDGET", "10000")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("commcalc-out-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let o = commcalc(&["witt", "--n-gens", "3", "--k", "4", "--format", "json", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(v["witt_rank"], "18");
}

#[test]
fn selftest_passes() {
    let o = commcalc(&["selftest", "--seed", "11"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().all(|l| l.starts_with("PASS ")), "{text}");
}
