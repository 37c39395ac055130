//! End-to-end checks of the binary: exit codes, report schemas and
//! stdout determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stablek"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn solve_ssm_yes_with_witness() {
    let out = run(&["solve-ssm", fixture("two_loop.lp").to_str().unwrap(), "--k", "1"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["answer"], "yes");
    assert_eq!(v["model"], serde_json::json!(["a"]));
    assert_eq!(v["size"], 1);
    assert_eq!(v["rules"], 2);
}

#[test]
fn solve_lsm_no_exits_one() {
    let out = run(&["solve-lsm", fixture("two_loop.lp").to_str().unwrap(), "--k", "0"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out)["answer"], "no");
}

#[test]
fn solve_lsm_yes_on_chain() {
    let out = run(&["solve-lsm", fixture("chain3.lp").to_str().unwrap(), "--k", "1"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["model"], serde_json::json!(["a", "b", "c"]));
    assert_eq!(v["rules"], 4);
}

#[test]
fn check_agrees_with_stability() {
    let out = run(&["check", fixture("fact.lp").to_str().unwrap(), "--model", "a"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["answer"], "yes");

    let out = run(&["check", fixture("two_loop.lp").to_str().unwrap(), "--model", "a,b"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out)["answer"], "no");

    let out = run(&["check", fixture("fact.lp").to_str().unwrap(), "--model", "zzz"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn parse_errors_exit_two() {
    let out = run(&["enumerate", fixture("bad.lp").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("1:6"), "stderr was: {msg}");
}

#[test]
fn usage_errors_exit_two() {
    let out = run(&["solve-ssm", fixture("fact.lp").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let out = run(&["frobnicate"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn enumerate_matches_oracle_byte_for_byte() {
    let out = run(&["enumerate", fixture("two_loop.lp").to_str().unwrap()]);
    assert_eq!(code(&out), 0);

    let text = std::fs::read_to_string(fixture("two_loop.lp")).unwrap();
    let p = stablek::parse_program(&text).unwrap();
    let models: Vec<Vec<String>> = stablek::oracle::enumerate_stable_models(&p, 20)
        .unwrap()
        .iter()
        .map(|m| p.sorted_names(m))
        .collect();
    let expected = serde_json::json!({ "models": models, "count": models.len() });
    let mut expected_bytes = serde_json::to_vec(&expected).unwrap();
    expected_bytes.push(b'\n');
    assert_eq!(out.stdout, expected_bytes);
}

#[test]
fn stdout_is_deterministic() {
    for args in [
        vec!["solve-ssm", "--k", "2"],
        vec!["solve-lsm", "--k", "1"],
        vec!["enumerate"],
    ] {
        let mut full = args.clone();
        let path = fixture("chain3.lp");
        full.push(path.to_str().unwrap());
        let a = run(&full);
        let b = run(&full);
        assert_eq!(a.stdout, b.stdout, "args: {full:?}");
        assert_eq!(code(&a), code(&b));
    }
}

#[test]
fn encode_t_reports_formula_and_sidecar() {
    let out = run(&["encode", "t", "--k", "1", fixture("fact.lp").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["weight_bound"], 6);
    assert_eq!(v["atoms"], 7);
    let f = stablek::Formula::from_json_str(&v["formula"].to_string()).unwrap();
    assert_eq!(f.var_count(), 7);

    let out = run(&["encode", "tc", "--k", "1", fixture("fact.lp").to_str().unwrap()]);
    let v = stdout_json(&out);
    let f = stablek::Formula::from_json_str(&v["formula"].to_string()).unwrap();
    assert_eq!(f.normalization_depth().unwrap(), 3);
}

#[test]
fn encode_pc_emits_program_text() {
    let out = run(&["encode", "pc", "--k", "1", fixture("or2.cnf").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("x1__1 :- not x2__1."));
    assert!(text.contains("__f :- not x1, not x2, not __f."));

    // the fresh atom is reserved, so the emitted text is for external
    // consumers and is rejected by the parser-side commands
    let dir = std::env::temp_dir().join("stablek_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pc_out.lp");
    std::fs::write(&path, &text).unwrap();
    let back = run(&["solve-ssm", path.to_str().unwrap(), "--k", "2"]);
    assert_eq!(code(&back), 2);
}

#[test]
fn caps_exit_three() {
    let dir = std::env::temp_dir().join("stablek_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("many_heads.lp");
    let text: String = (0..25).map(|i| format!("h{i}. ")).collect();
    std::fs::write(&path, text).unwrap();
    let out = run(&["enumerate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
}

#[test]
fn bench_reports_runs() {
    let out = run(&[
        "bench", "lsm", "--k", "2", "--family", "chain", "--sizes", "50,100",
    ]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["runs"].as_array().unwrap().len(), 2);
    assert_eq!(v["runs"][0]["answer"], "yes");
    assert_eq!(v["runs"][1]["rules"], 101);

    let out = run(&[
        "bench", "ssm", "--k", "1", "--family", "negclique", "--sizes", "6",
    ]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["runs"][0]["answer"], "yes");
}

#[test]
fn pretty_flag_formats_output() {
    let out = run(&["--pretty", "enumerate", fixture("fact.lp").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("{\n"));
}
