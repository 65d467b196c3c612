use std::process::{Command, Output};

fn cartan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cartan")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = cartan(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

const UNIT_D1: &str = r#"{"degree":0,"terms":[{"coeff":1,"key":[0]},{"coeff":1,"key":[1]}]}"#;

#[test]
fn iota_text_and_json() {
    assert_eq!(stdout(&["iota", "--r", "3", "--n", "2"]), "(0,1,2) + (0,2,0)");
    assert_eq!(stdout(&["iota", "--r", "2", "--n", "2"]), "(0,1,0)");
    let v: serde_json::Value = serde_json::from_str(&stdout(&["--format", "json", "iota", "--r", "3", "--n", "2"])).unwrap();
    assert_eq!(v, serde_json::json!([{"coeff": 1, "key": "(0,1,2)"}, {"coeff": 1, "key": "(0,2,0)"}]));
}

#[test]
fn k3_counts() {
    // the r=4 rows have 27 terms; the reference count is 33
    assert_eq!(stdout(&["k3", "--r", "4", "--n", "4", "--count"]), "27");
    assert_eq!(stdout(&["k3", "--r", "2", "--n", "5", "--count"]), "0");
    assert_eq!(stdout(&["k3", "--r", "3", "--n", "2"]), "(0,1,2)⊗(2,0)");
}

#[test]
fn k1_and_k2_run() {
    assert!(!stdout(&["k1", "--r", "2", "--n", "1"]).is_empty());
    assert!(!stdout(&["k2", "--r", "3", "--n", "2"]).is_empty());
}

#[test]
fn zeta_on_units() {
    let space = r#"{"simplex":1}"#;
    assert_eq!(stdout(&["zeta", "--p", "3", "--i", "0", "--space", space, "--a", UNIT_D1, "--b", UNIT_D1]), "0");
}

#[test]
fn steenrod_p0_on_a_circle() {
    let circle = r#"{"cells":[{"name":"v","dim":0},{"name":"e","dim":1,"faces":["v","v"]}]}"#;
    let e = r#"{"degree":1,"terms":[{"coeff":1,"key":"e"}]}"#;
    assert_eq!(stdout(&["steenrod", "--p", "3", "--s", "0", "--space", circle, "--cocycle", e]), "e");
    let out = stdout(&["--format", "json", "steenrod", "--p", "3", "--s", "0", "--beta", "0", "--space", circle, "--cocycle", e]);
    assert_eq!(out, r#"{"degree":1,"terms":[{"coeff":1,"key":"e"}]}"#);
}

#[test]
fn oracle_compare_agrees() {
    let out = stdout(&["oracle", "compare", "--r", "3", "--max-n", "4"]);
    assert_eq!(out.lines().count(), 5);
    assert!(out.lines().all(|l| l.ends_with("agree")));
}

#[test]
fn verify_cartan_exits_zero() {
    let out = cartan(&["verify", "--suite", "cartan", "--p", "3", "--max-dim", "2"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("cartan PASS"));
}

#[test]
fn verify_table2_reports_the_count() {
    let out = cartan(&["verify", "--suite", "table2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("has 27 terms, reference count 33"));
}

#[test]
fn output_is_stable() {
    let args = ["verify", "--suite", "structure", "--seed", "4", "--samples", "1"];
    assert_eq!(cartan(&args).stdout, cartan(&args).stdout);
}

#[test]
fn malformed_input_is_diagnosed() {
    let out = cartan(&["zeta", "--p", "3", "--i", "0", "--space", "{bad", "--a", UNIT_D1, "--b", UNIT_D1]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed JSON"));
    let not_cocycle = r#"{"degree":0,"terms":[{"coeff":1,"key":[0]}]}"#;
    let out = cartan(&["zeta", "--p", "3", "--i", "0", "--space", r#"{"simplex":1}"#, "--a", not_cocycle, "--b", UNIT_D1]);
    assert_eq!(out.status.code(), Some(2));
    let out = cartan(&["steenrod", "--p", "4", "--s", "0", "--space", r#"{"simplex":0}"#, "--cocycle", r#"{"degree":0,"terms":[]}"#]);
    assert_eq!(out.status.code(), Some(2));
}
