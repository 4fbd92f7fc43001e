use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn dsp(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_dsp"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(s) = stdin {
        child.stdin.take().unwrap().write_all(s.as_bytes()).unwrap();
    }
    child.wait_with_output().unwrap()
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&o.stdout))
    })
}

fn intro_tuple() -> Value {
    let form = json!({"n": 2, "blocks": {"0": [2]}});
    json!({"forms": [form.clone(), form.clone(), form]})
}

fn intro_spectrum(vals: [&str; 3]) -> String {
    json!({
        "tuple": intro_tuple(),
        "exponents": {
            "version": "multiplicative",
            "values": vals.iter().map(|v| json!({"0": v})).collect::<Vec<_>>(),
        }
    })
    .to_string()
}

#[test]
fn check_intro_from_stdin() {
    let o = dsp(&["check", "-"], Some(&intro_tuple().to_string()));
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json_out(&o);
    assert_eq!(v["good"], json!(true));
    assert_eq!(v["n_s"], json!(1));
}

#[test]
fn verdict_and_genericity_of_intro() {
    let o = dsp(&["verdict", "-"], Some(&intro_spectrum(["1/4", "1/4", "0"])));
    assert!(o.status.success());
    assert_eq!(json_out(&o)["verdict"]["status"], json!("SolvableIrreducible"));

    let o = dsp(&["generic", "-"], Some(&intro_spectrum(["1/4", "3/4", "0"])));
    assert_eq!(o.status.code(), Some(1));
    let v = json_out(&o);
    assert_eq!(v["generic"], json!(false));
    assert_eq!(v["relation"]["kappa"], json!(1));
}

#[test]
fn base_list_has_four_lines() {
    let o = dsp(&["enumerate", "--base-list", "0"], None);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    for l in lines {
        let v: Value = serde_json::from_str(l).unwrap();
        assert_eq!(v["tuple"]["rigidity_index"], json!(0));
    }
}

#[test]
fn construct_then_verify() {
    let o = dsp(&["construct", "--example", "ex2"], None);
    assert!(o.status.success());
    let tuple = String::from_utf8(o.stdout).unwrap();
    let o = dsp(&["verify", "-"], Some(&tuple));
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
    let v = json_out(&o);
    assert_eq!(v["irreducible"], json!(true));
    assert_eq!(v["zero_sum"], json!(true));
    assert_eq!(v["jordan_types"], json!([[3], [3], [3]]));
}

#[test]
fn random_weights_are_seeded() {
    let a = dsp(&["construct", "--example", "ex1", "--n", "5", "--random-alphas", "--seed", "7"], None);
    let b = dsp(&["construct", "--example", "ex1", "--n", "5", "--random-alphas", "--seed", "7"], None);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = dsp(&["construct", "--example", "ex1", "--n", "5", "--random-alphas", "--seed", "8"], None);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn merge_output() {
    let o = dsp(&["merge", "--n", "5", "--r1", "2", "--r2", "1"], None);
    assert!(o.status.success());
    let v = json_out(&o);
    assert!(v["a_merged"].is_object());
    let o = dsp(&["merge", "--n", "4", "--r1", "2", "--r2", "2"], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn errors_are_structured() {
    let o = dsp(&["construct", "--example", "ex3", "--n", "7"], None);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&o.stderr)
        .or_else(|_| serde_json::from_slice(&o.stdout))
        .expect("error document");
    assert_eq!(v["error"]["kind"], json!("SizeUnsupported"));

    let o = dsp(&["check", "-"], Some("{not json"));
    assert_eq!(o.status.code(), Some(2));

    let o = dsp(&["frobnicate"], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_a_special_profile() {
    let form = json!({"n": 4, "blocks": {"0": [2, 2]}});
    let t = json!({"forms": [form.clone(), form.clone(), form.clone(), form]}).to_string();
    let o = dsp(&["classify", "-"], Some(&t));
    assert!(o.status.success());
    assert_eq!(json_out(&o)["label"], json!("special-a"));
}
