use std::process::Command;

use vantrace::cli::{run, CountOutput, LpolyOutput};
use vantrace::counting::CountReport;
use vantrace::oracle::VerifyReport;
use vantrace::sequences::FamilyBound;

fn go(args: &[&str]) -> (i32, String) {
    run(std::iter::once("vantrace").chain(args.iter().copied()))
}

fn bin(args: &[&str], env: Option<(&str, &str)>) -> std::process::Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_vantrace"));
    cmd.args(args);
    if let Some((k, v)) = env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

#[test]
fn count_outputs() {
    for (p, r, n, f, i) in [("2", "2", "5", "31", "6"), ("3", "2", "5", "801", "160"), ("2", "2", "1", "1", "1")] {
        let (code, out) = go(&["count", "--p", p, "--r", r, "--n", n, "--format", "json"]);
        assert_eq!(code, 0);
        let v: CountOutput = serde_json::from_str(&out).unwrap();
        assert_eq!((v.f_count.to_string(), v.i_count.to_string()), (f.to_string(), i.to_string()));
        assert_eq!(v.method, "formula");
        let raw: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(raw["f_count"].is_string() && raw["q"].is_number());
    }
}

#[test]
fn table_csv_and_json() {
    let (code, csv) = go(&["table", "--p", "2", "--r", "2", "--n-min", "3", "--n-max", "10", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "n,f_count,i_count");
    assert_eq!(lines[1], "3,7,2");
    assert_eq!(lines[8], "10,64684,6366");
    let (_, js) = go(&["table", "--p", "3", "--r", "2", "--n-min", "2", "--n-max", "6", "--format", "json"]);
    let report: CountReport = serde_json::from_str(&js).unwrap();
    let f: Vec<String> = report.rows.iter().map(|r| r.f_count.to_string()).collect();
    assert_eq!(f, ["9", "9", "89", "801", "6561"]);
    let (code, text) = go(&["table", "--p", "2", "--r", "2", "--n-min", "3", "--n-max", "4", "--oracle"]);
    assert_eq!(code, 0);
    assert!(text.contains("note: I: reference table lists 0, formula gives 2"));
}

#[test]
fn verify_runs_pass() {
    for args in [["--p", "2", "--r", "2", "--max-n", "5"], ["--p", "3", "--r", "2", "--max-n", "3"], ["--p", "5", "--r", "1", "--max-n", "3"]] {
        let mut full = vec!["verify"];
        full.extend(args);
        full.extend(["--format", "json"]);
        let (code, out) = go(&full);
        assert_eq!(code, 0, "{out}");
        let report: VerifyReport = serde_json::from_str(&out).unwrap();
        assert!(report.all_passed());
    }
}

#[test]
fn lpoly_and_curve() {
    let (code, out) = go(&["lpoly", "--p", "2", "--r", "2", "--alpha", "1", "--format", "json"]);
    assert_eq!(code, 0);
    let v: LpolyOutput = serde_json::from_str(&out).unwrap();
    assert_eq!(v.lpoly.coeffs().len(), 3);
    let (code, out) = go(&["lpoly", "--p", "3", "--r", "2", "--alpha", "2", "--beta", "1", "--format", "json"]);
    assert_eq!(code, 0, "{out}");
    let v: LpolyOutput = serde_json::from_str(&out).unwrap();
    assert_eq!(v.lpoly.coeffs().len(), 5);
    assert_eq!(v.lpoly.coeffs()[4].to_string(), "81");
    let (code, out) = go(&["curve", "--p", "2", "--alpha", "1", "--m", "3", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("m,count\n1,4\n"));
}

#[test]
fn bound_and_family() {
    let (code, out) = go(&["bound", "--p", "5", "--n", "5", "--format", "json"]);
    assert_eq!(code, 0);
    let b: FamilyBound = serde_json::from_str(&out).unwrap();
    assert!(b.strict && b.bound > b.distinct.into());
    let (code, out) = go(&["family", "--p", "7", "--n", "5", "--ell", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("phi_3:"));
}

#[test]
fn binary_exit_codes_and_determinism() {
    let a = bin(&["count", "--p", "3", "--r", "2", "--n", "40", "--format", "json"], None);
    let b = bin(&["count", "--p", "3", "--r", "2", "--n", "40", "--format", "json"], None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(bin(&["count", "--p", "9", "--n", "3"], None).status.code(), Some(2));
    assert_eq!(bin(&["frobnicate"], None).status.code(), Some(2));
    assert_eq!(bin(&["verify", "--p", "2", "--max-n", "4"], None).status.code(), Some(0));
    // A tiny element cap turns the family oracle into a budget error.
    let small = bin(&["bound", "--p", "7", "--n", "5"], Some(("VANTRACE_MAX_ELEMENTS", "10")));
    assert_eq!(small.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&small.stderr).contains("budget"));
    let bad = bin(&["count", "--p", "2", "--n", "3"], Some(("VANTRACE_MAX_ELEMENTS", "lots")));
    assert_eq!(bad.status.code(), Some(2));
}
