use std::process::{Command, Output};

use serde_json::Value;

fn ffsieve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ffsieve")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

#[test]
fn counterexample_report() {
    let out = ffsieve(&["counterexample", "--p", "3", "--d", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["ratios"]["lhs_over_claim2"], "4");
    assert_eq!(v["result"]["restricted_lhs"], "344373768");
    assert_eq!(v["config"]["command"]["subcommand"], "counterexample");
    assert_eq!(v["verified"], true);
}

#[test]
fn gauss_report() {
    let out = ffsieve(&["gauss", "--p", "3", "--alpha", "1", "--l", "0-poly", "--beta", "0,0,1", "--verify", "--pretty"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["brute"]["abs2"], "9");
    assert_eq!(v["result"]["methods_agree"], true);
    assert_eq!(v["pretty"]["beta"], "t^2");
}

#[test]
fn farey_and_dirichlet_reports() {
    let v = json(&ffsieve(&["farey", "--Q", "1", "--delta-exp", "-1"]));
    assert_eq!(v["result"]["count_p"], 18);
    assert_eq!(v["result"]["points"], 18);
    let out = ffsieve(&["dirichlet", "--p", "5", "--x", "hi=-1;lo=-6;coeffs=1,2,3,4,0,1", "--l", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["holds"], true);
}

#[test]
fn expint_with_oracle() {
    let out = ffsieve(&["expint", "--p", "3", "--a", "hi=-1;lo=-inf;coeffs=2", "--b", "hi=0;lo=-inf;coeffs=1,1", "--Q", "1", "--oracle"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["result"]["agree"], true);
}

#[test]
fn suite_exit_status() {
    let out = ffsieve(&["suite", "--name", "poisson"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["pass"], true);
}

#[test]
fn invalid_field_is_a_config_error() {
    for args in [
        &["farey", "--p", "4"][..],
        &["farey", "--p", "2"],
        &["farey", "--p", "3", "--e", "2"],
        &["gauss", "--alpha", "1"],
        &["farey", "--delta-exp", "0"],
        &["nonsense"],
    ] {
        let out = ffsieve(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn budget_breaches_exit_3() {
    for args in [
        &["gauss", "--alpha", "1", "--beta", "1,0,0,1", "--verify", "--budget", "5"][..],
        &["expint", "--a", "hi=-1;lo=-inf;coeffs=1", "--Q", "3", "--oracle", "--budget", "10"],
        &["expint", "--grid", "--budget", "10"],
        &["counterexample", "--method", "enumerate", "--budget", "1000"],
        &["sieve", "--budget", "10"],
        &["farey", "--Q", "3", "--budget", "10"],
        &["suite", "--name", "dual-path", "--budget", "10"],
    ] {
        let out = ffsieve(args);
        assert_eq!(out.status.code(), Some(3), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn reports_are_deterministic() {
    let args = ["sieve", "--Q", "1", "--N", "2,3", "--count", "6", "--seed", "9", "--dual"];
    let a = ffsieve(&args);
    let b = ffsieve(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let mut threaded = args.to_vec();
    threaded.extend(["--jobs", "4"]);
    let c = json(&ffsieve(&threaded));
    assert_eq!(json(&a)["result"], c["result"]);
}

#[test]
fn csv_and_out_file() {
    let out = ffsieve(&["sieve", "--count", "5", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    assert!(lines[0].starts_with("q,Q,N,seed"));

    let path = std::env::temp_dir().join(format!("ffsieve-cli-{}.json", std::process::id()));
    let out = ffsieve(&["counterexample", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written["result"]["card_SQ"], 8);
    std::fs::remove_file(path).unwrap();
}
