use std::path::Path;
use std::process::{Command, Output};

fn laminations(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_laminations"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn entropy_of_the_airplane() {
    let out = laminations(&["entropy", "--theta", "3/7"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "h(3/7) = 0.481211825060 (tol 1e-9)\n");
}

#[test]
fn monotone_pass_and_precedence_error() {
    let out = laminations(&["monotone", "--from", "1/3", "--to", "3/7", "--period", "10"]);
    assert!(out.status.success());
    assert!(stdout(&out).ends_with("PASS\n"));
    let out = laminations(&["monotone", "--from", "1/2", "--to", "1/3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn lamination_json_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("out.json");
    let svg = dir.path().join("out.svg");
    let out = laminations(&[
        "lamination",
        "--theta",
        "1/7",
        "--period",
        "3",
        "--json",
        json.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let classes = value["classes"].as_array().unwrap();
    assert!(classes.contains(&serde_json::json!(["1/7", "2/7", "4/7"])));
    let picture = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(picture.matches("<polygon").count(), 2);
}

#[test]
fn equiv_exit_codes() {
    assert!(laminations(&["equiv", "1/4", "3/4", "--theta", "1/2"])
        .status
        .success());
    let out = laminations(&["equiv", "1/3", "2/3", "--theta", "1/7"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("distinct, first split at index"));
}

#[test]
fn key_inequality_audit_from_file() {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data/degree4_prefix.txt");
    let out = laminations(&[
        "audit",
        "key-inequality",
        "--orbits",
        data.to_str().unwrap(),
        "--degree",
        "4",
        "--epsilon",
        "1/10",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["witnesses"].as_array().unwrap().len(), 2);
    assert_eq!(report["refined_epsilon"], "3/101");
}

#[test]
fn sweep_writes_csv_with_any_worker_count() {
    let one = laminations(&["--workers", "1", "sweep", "--period", "3"]);
    let four = laminations(&["--workers", "4", "sweep", "--period", "3"]);
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    let text = stdout(&one);
    assert!(text.starts_with("theta,preperiod,period,entropy,dim_estimate\n"));
    assert!(text.contains("\n3/7,0,3,0.481211825060,"));
}

#[test]
fn usage_errors() {
    assert_eq!(laminations(&["entropy"]).status.code(), Some(2));
    assert_eq!(
        laminations(&["entropy", "--theta", "2/0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        laminations(&["sweep", "--period", "2", "--tol", "0"])
            .status
            .code(),
        Some(2)
    );
}
