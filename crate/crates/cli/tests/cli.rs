use std::path::Path;
use std::process::{Command, Output};

fn whq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_whq")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn example_then_check_passes() {
    let dir = tempfile::tempdir().unwrap();
    let z3 = path(dir.path(), "z3.json");
    assert_eq!(code(&whq(&["example", "group", "--name", "z3", "--out", &z3])), 0);
    let report = path(dir.path(), "report.json");
    let o = whq(&["check", &z3, "--suite", "all", "--json", &report]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS a4-7"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["suites"]["projections"]["lines"].as_array().unwrap().len(), 32);
}

#[test]
fn perturbed_file_fails_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let p2 = path(dir.path(), "p2.json");
    let bad = path(dir.path(), "bad.json");
    whq(&["example", "groupoid-pair", "--out", &p2]);
    assert_eq!(code(&whq(&["perturb", &p2, "--target", "comult", "--seed", "7", "--out", &bad])), 0);
    assert_eq!(code(&whq(&["check", &bad, "--suite", "premises"])), 1);
    assert_eq!(code(&whq(&["synthesize", &bad])), 1);
    assert_eq!(code(&whq(&["classify", &bad])), 1);
}

#[test]
fn synthesize_writes_the_antipode() {
    let dir = tempfile::tempdir().unwrap();
    let s3 = path(dir.path(), "s3.json");
    let out = path(dir.path(), "s3-synth.json");
    whq(&["example", "group", "--name", "s3", "--out", &s3]);
    let o = whq(&["synthesize", &s3, "--out", &out]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("status: Synthesized"));
    assert_eq!(std::fs::read(&s3).unwrap(), std::fs::read(&out).unwrap());
}

#[test]
fn dualize_and_classify() {
    let dir = tempfile::tempdir().unwrap();
    let s = path(dir.path(), "ag3.json");
    let d = path(dir.path(), "ag3-dual.json");
    whq(&["example", "steiner-ag3", "--out", &s]);
    assert_eq!(code(&whq(&["dualize", &s, "--out", &d])), 0);
    let o = whq(&["classify", &d]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("verdict: HopfCoquasigroup"));
    let dd = path(dir.path(), "ag3-dd.json");
    whq(&["dualize", &d, "--out", &dd]);
    assert_eq!(std::fs::read(&s).unwrap(), std::fs::read(&dd).unwrap());
}

#[test]
fn eval_prints_and_compares() {
    let dir = tempfile::tempdir().unwrap();
    let p2 = path(dir.path(), "p2.json");
    whq(&["example", "groupoid-pair", "--out", &p2]);
    let o = whq(&["eval", &p2, "--expr", "mu . (id(1) # eta)"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("H^1 -> H^1\n  [1, 0, 0, 0]"));
    assert_eq!(code(&whq(&["eval", &p2, "--expr", "piL * id(1)", "--equals", "id(1)"])), 0);
    assert_eq!(code(&whq(&["eval", &p2, "--expr", "piL", "--equals", "piR"])), 1);
    let o = whq(&["eval", &p2, "--expr", "mu . ("]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("offset 7"));
    assert_eq!(code(&whq(&["eval", &p2, "--expr", "mu", "--equals", "delta"])), 2);
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&whq(&["check", &path(dir.path(), "missing.json")])), 2);
    let junk = path(dir.path(), "junk.json");
    std::fs::write(&junk, "{\"dim\": 2}").unwrap();
    assert_eq!(code(&whq(&["check", &junk])), 2);
    assert_eq!(code(&whq(&["frobnicate"])), 2);
    let z2 = path(dir.path(), "z2.json");
    whq(&["example", "group", "--out", &z2]);
    let stripped = path(dir.path(), "bare.json");
    let text = std::fs::read_to_string(&z2).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v.as_object_mut().unwrap().remove("antipode");
    std::fs::write(&stripped, serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(code(&whq(&["check", &stripped, "--suite", "axioms"])), 2);
    assert_eq!(code(&whq(&["check", &stripped, "--suite", "all"])), 0);
}

#[test]
fn thread_cap_is_honoured() {
    let dir = tempfile::tempdir().unwrap();
    let z2 = path(dir.path(), "z2.json");
    whq(&["example", "group", "--out", &z2]);
    let o = Command::new(env!("CARGO_BIN_EXE_whq"))
        .args(["check", &z2, "--suite", "projections"])
        .env("WHQ_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
}
