use serde_json::Value;
use std::process::{Command, Output};

fn qosc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qosc")).args(args).output().expect("run qosc")
}

fn report(args: &[&str]) -> (i32, Value) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let mut all = vec!["run"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let out = qosc(&all);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("no report; stderr: {}", String::from_utf8_lossy(&out.stderr)));
    (out.status.code().unwrap(), serde_json::from_str(&text).unwrap())
}

#[test]
fn ybe_on_two_bosons_passes() {
    let (code, rep) = report(&["--mn", "2,0", "--suites", "ybe", "--weights", "1,0", "--cutoff", "3"]);
    assert_eq!(code, 0);
    let insts = rep["suites"][0]["instances"].as_array().unwrap();
    assert!(!insts.is_empty());
    assert!(insts.iter().all(|i| i["pass"] == true && i.get("counterexample").is_none()));
    assert_eq!(rep["suites"][0]["name"], "ybe");
    assert!(rep["version"].is_string());
}

#[test]
fn appendix_a_on_both_gl11_gradings_passes() {
    let (code, rep) = report(&["--mn", "1,1", "--grading", "all", "--suites", "appendix-a"]);
    assert_eq!(code, 0);
    assert_eq!(rep["config"]["gradings"], serde_json::json!(["01", "10"]));
}

#[test]
fn zero_cutoff_with_ybe_is_refused() {
    let out = qosc(&["run", "--mn", "2,0", "--suites", "ybe", "--cutoff", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--cutoff"));
}

#[test]
fn unknown_suite_exits_2() {
    let out = qosc(&["run", "--mn", "2,0", "--suites", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown suite"));
}

#[test]
fn bad_flags_exit_2() {
    assert_eq!(qosc(&["run", "--mn", "2"]).status.code(), Some(2));
    assert_eq!(qosc(&["run", "--mn", "2,1", "--backend", "float", "--suites", "rational"]).status.code(), Some(2));
    assert_eq!(qosc(&["run", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(qosc(&["run", "--preset", "lab"]).status.code(), Some(2));
}

#[test]
fn reports_are_byte_stable() {
    let args = ["--mn", "2,1", "--suites", "appendix-a,limits", "--weights", "random:2", "--seed", "17"];
    let run = || {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("r.json");
        let mut a = vec!["run"];
        a.extend_from_slice(&args);
        a.extend_from_slice(&["--out", p.to_str().unwrap()]);
        assert_eq!(qosc(&a).status.code(), Some(0));
        std::fs::read(&p).unwrap()
    };
    assert_eq!(run(), run());
}

#[test]
fn seed_is_recorded_and_changes_the_draws() {
    let (_, a) = report(&["--mn", "2,1", "--suites", "highest-weight", "--weights", "random:1", "--seed", "1"]);
    let (_, b) = report(&["--mn", "2,1", "--suites", "highest-weight", "--weights", "random:1", "--seed", "2"]);
    assert_eq!(a["config"]["seed"], 1);
    assert_ne!(a["suites"][0]["instances"][0]["descriptor"], b["suites"][0]["instances"][0]["descriptor"]);
}

#[test]
fn float_backend_run() {
    let (code, rep) = report(&["--mn", "1,1", "--suites", "appendix-a,ybe", "--backend", "float", "--q", "0.5+0.4i", "--weights", "2,-1"]);
    assert_eq!(code, 0);
    assert!(rep["config"]["backend"].as_str().unwrap().starts_with("float"));
}

#[test]
fn list_suites_names_every_suite() {
    let out = qosc(&["list-suites"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["appendix-a", "chevalley", "ybe", "limits", "rational", "factorization", "highest-weight", "appendix-b-chains", "appendix-d"] {
        let block = text.split(&format!("{name}:\n")).nth(1).unwrap_or_else(|| panic!("{name} missing"));
        assert!(block.starts_with("  - "), "{name} lists nothing");
    }
}

#[test]
fn describe_counts_verma_modes() {
    let out = qosc(&["describe", "--mn", "2,1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verma: 3 modes"), "{text}");
    assert!(text.contains("split a=1"));
}

#[test]
fn timings_only_with_the_flag() {
    let (_, rep) = report(&["--mn", "2,0", "--suites", "appendix-b-chains", "--weights", "1,0"]);
    assert_eq!(rep["suites"][0]["instances"][0]["millis"], 0);
}
