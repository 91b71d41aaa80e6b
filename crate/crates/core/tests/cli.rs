use std::process::{Command, Output};

use serde_json::Value;

fn springerstab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_springerstab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn betti_text_and_json() {
    let o = springerstab(&["betti", "2,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1 2\n");

    let o = springerstab(&["--format", "json", "betti", "2,1"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["partition"], "2,1");
    assert_eq!(v["poincare"], serde_json::json!([1, 2]));
}

#[test]
fn fpoly_matches_table_entry() {
    let o = springerstab(&["fpoly", "--k", "2", "--r", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(x^2-x-2)/2\n");
}

#[test]
fn check_table_exits_zero_with_report() {
    let o = springerstab(&["check", "table", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["check"], "table");
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["vacuous"], false);
    assert!(v["counterexample"].is_null());
    assert!(v["elapsed_ms"].is_number());
}

#[test]
fn recursion_and_kostka_methods_agree_up_to_eight() {
    for n in 0..=8 {
        for lambda in springerstab::partitions(n, None) {
            let lam = lambda.to_string();
            let a = springerstab(&["poincare", &lam, "--method", "recursion"]);
            let b = springerstab(&["poincare", &lam, "--method", "kostka"]);
            assert_eq!(stdout(&a), stdout(&b), "({lam})");
            assert_eq!(a.status.code(), Some(0));
        }
    }
}

#[test]
fn malformed_partition_is_usage_error() {
    let o = springerstab(&["betti", "3,a"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());

    let o = springerstab(&["--format", "json", "decompose", "3,-1", "--degree", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["error"].as_str().unwrap().contains("negative"));

    let o = springerstab(&["check", "dim", "--nmax"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn help_exits_zero() {
    let o = springerstab(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("check"));
}
