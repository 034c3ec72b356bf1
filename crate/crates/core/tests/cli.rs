//! End-to-end runs of the `granule` binary.

mod common;

use std::io::Write;
use std::process::{Command, Output, Stdio};

use common::data;

fn granule(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_granule")).args(args).output().unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_granule"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn path(name: &str) -> String {
    data(name).to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn define_exit_codes() {
    let sample = path("sample.cxt");
    let run = |mode: &str, granule_: &str| granule(&["define", &sample, "--mode", mode, "--granule", granule_]);
    assert_eq!(code(&run("wedge", "2,7")), 0);
    assert_eq!(code(&run("wedge", "1,2")), 1);
    assert_eq!(code(&run("vee", "1,2")), 4);
    assert_eq!(code(&run("three-way", "2")), 0);
    let unknown = run("wedge", "2,99");
    assert_eq!(code(&unknown), 2);
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("unknown object"));
}

#[test]
fn define_json_by_default_off_a_terminal() {
    let out = granule(&["define", &path("sample.cxt"), "--mode", "wedge", "--granule", "1,2"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["status"], "indefinable");
    assert_eq!(doc["witness"], serde_json::json!([1, 2, 7]));
}

#[test]
fn define_text_and_minimal() {
    let out = granule(&[
        "define", &path("sample.cxt"), "--mode", "wedge", "--granule", "6", "--format", "text", "--minimal", "--ascii",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "granule {6}: definable\ndescription: a3 & a4 & a5\nminimal: a3 & a4\nminimal: a3 & a5\n"
    );
}

#[test]
fn cn_needs_a_second_block() {
    let out = granule(&["define", &path("cn_sample_a.cxt"), "--mode", "cn", "--granule", "2,7"]);
    assert_eq!(code(&out), 2);
    let out = granule(&[
        "define", &path("scores_a.cxt"), "--compound", &path("scores_b.cxt"), "--mode", "cn", "--granule", "Grace,Jenny",
        "--format", "text",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("c1 ∧ c2 ∧ c3 ∧ c4 ∧ (ec1 ∨ ec2)"));
}

#[test]
fn approximations() {
    let out = granule(&[
        "approx", &path("covering_sample.cxt"), "--mode", "wedge", "--direction", "lower", "--granule", "4,5,6",
    ]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["exact"], false);
    assert_eq!(doc["results"][0]["granule"], serde_json::json!([4, 5]));
    assert_eq!(doc["results"][1]["description"], "a2 ∧ a5");

    let full = granule(&["approx", &path("sample.cxt"), "--mode", "wedge", "--direction", "lower", "--granule", "1,2,3,4,5,6,7"]);
    assert_eq!(code(&full), 4);
}

#[test]
fn concepts_formats() {
    let sample = path("sample.cxt");
    let json = granule(&["concepts", &sample]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(doc.as_array().unwrap().len(), 11);
    let text = granule(&["concepts", &sample, "--format", "text"]);
    assert_eq!(stdout(&text).lines().count(), 11);
    let dot = stdout(&granule(&["concepts", &sample, "--format", "dot"]));
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("[label=").count(), 11);
}

#[test]
fn output_is_deterministic() {
    let args = ["concepts", "--variant", "three-way", "--format", "json"];
    let sample = path("sample.cxt");
    let first = granule(&[&args[..], &[sample.as_str()]].concat());
    let second = granule(&[&args[..], &[sample.as_str()]].concat());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn reads_stdin() {
    let text = std::fs::read_to_string(data("sample.cxt")).unwrap();
    let out = with_stdin(&["define", "-", "--mode", "wedge", "--granule", "2,7", "--format", "text"], &text);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("a1 ∧ a2"));
}

#[test]
fn size_guard() {
    let mut cxt = String::from("B\n\n1\n31\n\nx\n");
    for j in 0..31 {
        cxt.push_str(&format!("m{j}\n"));
    }
    cxt.push_str(&".".repeat(31));
    cxt.push('\n');
    let out = with_stdin(&["concepts", "-"], &cxt);
    assert_eq!(code(&out), 3);
    let forced = with_stdin(&["concepts", "-", "--force"], &cxt);
    assert_eq!(code(&forced), 0);
}

#[test]
fn convert_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("complement.cxt");
    let out = granule(&["convert", "--op", "complement", &path("sample.cxt"), "-o", target.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let written = std::fs::read_to_string(&target).unwrap();
    let expected = std::fs::read_to_string(data("sample_complement.cxt")).unwrap();
    assert_eq!(written.replace("\nnot_a", "\nb"), expected);

    let json = granule(&["convert", "--op", "appose", &path("sample.cxt"), "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert!(doc.get("a_attributes").is_some());
}

#[test]
fn validate_and_parse_errors() {
    let ok = granule(&["validate", &path("sample.cxt")]);
    assert_eq!(code(&ok), 0);
    assert!(stdout(&ok).contains("7 objects, 5 attributes"));
    let bad = with_stdin(&["validate", "-"], "B\n\n2\n1\n\nx\n");
    assert_eq!(code(&bad), 2);
    let missing = granule(&["validate", "/nonexistent/context.cxt"]);
    assert_eq!(code(&missing), 2);
}
