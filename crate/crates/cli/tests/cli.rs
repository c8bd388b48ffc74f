use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

use ptrace_cli::{run, verify_all, verify_with, Command as Cmd, Format, Request, VerifyOptions};
use ptrace_core::kostka::maj;
use ptrace_core::poisson::DEFAULT_BUDGET;

fn ptrace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ptrace"))
        .args(args)
        .env_remove("PTRACE_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = ptrace(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn table<'a>(v: &'a Value, name: &str) -> &'a Value {
    v["tables"].as_array().unwrap().iter().find(|t| t["name"] == name).expect("table present")
}

fn value<'a>(v: &'a Value, name: &str) -> &'a Value {
    &v["values"].as_array().unwrap().iter().find(|t| t["name"] == name).expect("value present")["value"]
}

fn entries(t: &Value) -> Vec<(Vec<i64>, u64)> {
    t["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            let exps = e["exponents"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
            (exps, e["value"].as_u64().unwrap())
        })
        .collect()
}

#[test]
fn duval_e8_c2_json() {
    let v = json(&["duval", "E8", "--grading", "c2", "--json"]);
    assert_eq!(value(&v, "jacobi_weights"), &serde_json::json!([0, 12, 20, 24, 32, 36, 44, 56]));
    assert_eq!(value(&v, "milnor"), &serde_json::json!(8));
    assert_eq!(v["provenance"]["grading"], "c2");
    let t = table(&v, "jacobi");
    assert_eq!(t["grading"], "c2");
    assert_eq!(t["formula"], "jacobi-hilbert");
}

#[test]
fn fermat_cubic_hp0() {
    let v = json(&["surface", "--f", "x1^3+x2^3+x3^3", "--weights", "1,1,1", "--hp0", "--json"]);
    let hp0 = entries(table(&v, "hp0"));
    assert_eq!(hp0, vec![(vec![0], 1), (vec![1], 3), (vec![2], 3), (vec![3], 1)]);
    assert!(v["provenance"]["certification"]["certified_through"].as_i64().unwrap() >= 3);
}

#[test]
fn hypertoric_anchor_with_checks() {
    let v = json(&["hypertoric", "--normals", "[[1,1]]", "--verify", "--json"]);
    assert_eq!(entries(table(&v, "hpdr")), vec![(vec![0, 0], 1), (vec![2, -2], 1)]);
    let checks = v["provenance"]["checks"].as_array().unwrap();
    assert!(checks.len() >= 2);
    assert!(checks.iter().all(|c| c["passed"] == true));
    let text = ptrace(&["hypertoric", "--normals", "[[1,1]]"]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("hpdr = 1 + x^2*y^-2"));
}

#[test]
fn hypertoric_from_weights_matches_normals() {
    let a = json(&["hypertoric", "--weights", "[[1,-1,0],[0,1,-1]]", "--json"]);
    let b = json(&["hypertoric", "--normals", "[[1,1,1]]", "--json"]);
    assert_eq!(table(&a, "hpdr"), table(&b, "hpdr"));
}

#[test]
fn json_is_byte_identical_across_runs_and_threads() {
    let args = ["sympow", "D4", "--grading", "c2", "--order", "4", "--verify", "--json"];
    let run_with = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_ptrace"))
            .args(args)
            .env("RAYON_NUM_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    let first = run_with("1");
    assert_eq!(first, run_with("1"));
    assert_eq!(first, run_with("4"));
    let hp0 = ["duval", "E7", "--hp0", "--json"];
    assert_eq!(ptrace(&hp0).stdout, ptrace(&hp0).stdout);
}

#[test]
fn stdin_payload() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ptrace"))
        .args(["surface", "--f", "-", "--weights", "1,1,1", "--hp0", "--json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"x1^3 + x2^3 + x3^3\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value(&v, "hp0_total"), &serde_json::json!(8));
}

#[test]
fn csv_flattens_graded_tables() {
    let out = ptrace(&["nilcone", "2", "--csv"]);
    let s = String::from_utf8(out.stdout).unwrap();
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("table,formula,grading,variables,exponents,value"));
    assert_eq!(lines.next(), Some("hpdr,lusztig-sum,c2,x;y,\"(0,0)\",1"));
    assert_eq!(lines.next(), Some("hpdr,lusztig-sum,c2,x;y,\"(2,-2)\",1"));
}

#[test]
fn exit_codes() {
    assert_eq!(ptrace(&["surface", "--f", "x1^2+*x2", "--weights", "1,1,1"]).status.code(), Some(2));
    assert_eq!(ptrace(&["hypertoric", "--normals", "[[1,1]"]).status.code(), Some(2));
    assert_eq!(ptrace(&["duval", "E8", "--hp0", "--budget", "5"]).status.code(), Some(3));
    let env_budget = Command::new(env!("CARGO_BIN_EXE_ptrace"))
        .args(["duval", "E8", "--hp0"])
        .env("PTRACE_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(env_budget.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&env_budget.stderr).contains("budget"));
    assert_eq!(ptrace(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(ptrace(&["duval", "Z9"]).status.code(), Some(1));
    assert_eq!(ptrace(&["sympow", "A1", "--order", "0"]).status.code(), Some(1));
    assert_eq!(ptrace(&["--help"]).status.code(), Some(0));
    // A truncated brute-force window cannot match the closed form.
    let short = ptrace(&["surface", "--f", "x1^3+x2^3+x3^3", "--weights", "1,1,1", "--hp0", "--wmax", "1", "--verify"]);
    assert_eq!(short.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&short.stdout).contains("FAIL bracket-vs-closed-form"));
}

#[test]
fn non_isolated_input_is_flagged() {
    let v = json(&["surface", "--f", "x1^2*x2+x3^3", "--weights", "1,1,1", "--wmax", "3", "--hp0", "--json"]);
    assert_eq!(value(&v, "isolated"), &serde_json::json!(false));
    let warnings = v["provenance"]["warnings"].as_array().unwrap();
    assert!(warnings.iter().any(|w| w.as_str().unwrap().contains("not isolated")));
}

#[test]
fn every_number_has_a_formula() {
    for args in [
        vec!["duval", "D5", "--hp0", "--verify", "--json"],
        vec!["sympow", "A2", "--order", "3", "--json"],
        vec!["slice", "2,1,1", "--json"],
        vec!["cone-curve", "4", "--json"],
        vec!["multipartition", "5", "--json"],
    ] {
        let v = json(&args);
        let formulas: Vec<&str> =
            v["provenance"]["formulas"].as_array().unwrap().iter().map(|f| f.as_str().unwrap()).collect();
        for item in v["tables"].as_array().unwrap().iter().chain(v["values"].as_array().unwrap()) {
            let f = item["formula"].as_str().unwrap();
            assert!(!f.is_empty() && formulas.contains(&f), "{args:?}: {item}");
        }
        for t in v["tables"].as_array().unwrap() {
            assert!(t["grading"].is_string());
        }
    }
}

#[test]
fn full_suite_passes() {
    let r = verify_all(6, DEFAULT_BUDGET).unwrap();
    assert!(r.passed(), "{}", r.to_text());
    assert!(!r.provenance.weak);
    assert!(r.provenance.checks.len() > 40);
}

#[test]
fn zero_order_suite_is_weak() {
    let r = verify_all(0, DEFAULT_BUDGET).unwrap();
    assert!(r.passed());
    assert!(r.provenance.weak);
    assert!(r
        .provenance
        .checks
        .iter()
        .filter(|c| c.name.starts_with("sympow-specialization"))
        .all(|c| c.weak));
}

#[test]
fn sign_error_in_maj_is_caught() {
    let flipped = |t: &ptrace_core::kostka::StandardTableau| -(maj(t) as i64);
    let r = verify_with(&VerifyOptions {
        order: 2,
        budget: DEFAULT_BUDGET,
        stat: &flipped,
    })
    .unwrap();
    assert!(!r.passed());
    let failed: Vec<&str> = r.provenance.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|n| n.starts_with("kostka-vs-duval")), "{failed:?}");
}

#[test]
fn library_requests_render_in_every_format() {
    let mut req = Request::new(Cmd::ConeCurve { d: 3 });
    req.verify = true;
    let r = run(&req).unwrap();
    for f in [Format::Text, Format::Json, Format::Csv] {
        let s = match f {
            Format::Text => r.to_text(),
            Format::Json => r.to_json(),
            Format::Csv => r.to_csv(),
        };
        assert!(s.contains("milnor") || s.contains("8"));
    }
    assert!(r.passed());
}
