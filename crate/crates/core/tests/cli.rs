use std::process::{Command, Output};

fn qcsso(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcsso"))
        .args(args)
        .env_remove("QCS_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn parse_expands_run_lengths() {
    let o = qcsso(&["parse", "--q", "2", "101^3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1+x^2+x^3+x^4");
}

#[test]
fn parse_error_exits_2() {
    let o = qcsso(&["parse", "1z"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn missing_n_exits_2() {
    let o = qcsso(&["check-sso", "--g", "1", "--f0", "1", "--f1", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn example1_is_self_orthogonal() {
    let o = qcsso(&["check-sso", "--entry", "example-1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["sso"], true);
    assert_eq!(v["gram"], true);
    assert_eq!(v["code"]["dimension"], 35);
}

#[test]
fn non_self_orthogonal_exits_1() {
    let o = qcsso(&["check-sso", "--entry", "example-2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("false"));
}

#[test]
fn explicit_polynomials_match_catalog_entry() {
    // g = 1+x+x^4 and f_0 = 1 give a [30,11] code over n = 15
    let o = qcsso(&["check-sso", "--n", "15", "--g", "11001", "--f0", "1", "--f1", "1", "--json"]);
    assert!(matches!(o.status.code(), Some(0 | 1)), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["code"]["g"], "1+x+x^4");
    assert_eq!(v["code"]["dimension"], 11);
}

#[test]
fn example3_bounds_json() {
    let o = qcsso(&["bounds", "--entry", "example-3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!((v["lower"].as_u64(), v["upper"].as_u64()), (Some(7), Some(12)));
    assert_eq!(v["case_tag"], "primal-empty-s");
}

#[test]
fn example4_quantum_claim_matches() {
    let o = qcsso(&["qecc", "--entry", "example-4", "--claim", "15,4,4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[[15,4,4]]"));
}

#[test]
fn wrong_claim_exits_1() {
    let o = qcsso(&["qecc", "--entry", "example-4", "--claim", "15,4,5"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn search_is_seeded() {
    let args = ["search", "--n", "15", "--g", "11001", "--trials", "200", "--seed", "7", "--json"];
    let a = qcsso(&args);
    let b = qcsso(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let last = stdout(&a).lines().last().unwrap().to_string();
    let v: serde_json::Value = serde_json::from_str(&last).unwrap();
    assert_eq!(v["trials"], 200);
}
