use std::process::{Command, Output};

use cgk_core::reps::{left_action, var_space};
use cgk_core::{AlgebraSpec, DiffOp, Extension, Gen, ModuleVector, Params, PbwMonomial};
use serde_json::Value;

fn cgk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cgk")).args(args).env_remove("CGK_CAPS_LEVEL").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn vacuum_power(k: u32) -> ModuleVector {
    ModuleVector::monomial(PbwMonomial { h: 0, a: vec![k], b: vec![] })
}

#[test]
fn emits_the_three_halves_equation_in_latex() {
    let o = cgk(&["pde", "emit", "--d", "1", "--two-ell", "3", "--ext", "mass", "--q", "1", "--render", "latex"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), r"\left( 2\mu \partial_{t} + 2\mu x_{1} \partial_{x_{0}} + \partial_{x_{1}}^{2} \right) \psi = 0");
}

#[test]
fn centerless_search_finds_the_squared_translation() {
    let o = cgk(&["singular", "search", "--d", "1", "--two-ell", "2", "--ext", "none", "--kappa", "0", "--level", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let kernel = json(&o)["kernel"].as_array().unwrap().clone();
    assert_eq!(kernel.len(), 1);
    assert_eq!(ModuleVector::from_json(&kernel[0]).unwrap(), vacuum_power(2));
}

#[test]
fn exotic_jacobi_audit_is_clean() {
    let o = cgk(&["algebra", "jacobi", "--d", "2", "--two-ell", "2", "--ext", "exotic"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["failures"], Value::Array(vec![]));
    assert!(v["triples_checked"].as_u64().unwrap() > 0);
}

#[test]
fn failed_report_exits_one() {
    // δ = 0 is not the q = 1 root for the heat case, so the candidate is not singular
    let o = cgk(&["singular", "verify", "--q", "1", "--delta", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["is_singular"], Value::Bool(false));
    let o = cgk(&["singular", "verify", "--q", "1"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn errors_exit_two() {
    for args in [
        &["pde", "check", "--q", "1", "--delta", "3"][..],
        &["algebra", "show", "--d", "3"],
        &["reps", "left", "--gen", "Q7"],
        &["pde", "emit"],
        &["no-such-command"],
    ] {
        let o = cgk(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn level_cap_comes_from_the_environment() {
    let run = |cap: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_cgk"));
        c.args(["singular", "search", "--d", "1", "--two-ell", "2", "--ext", "none", "--kappa", "0"]).env_remove("CGK_CAPS_LEVEL");
        if let Some(cap) = cap {
            c.env("CGK_CAPS_LEVEL", cap);
        }
        let o = c.output().unwrap();
        assert_eq!(o.status.code(), Some(0));
        json(&o)["kernel"].as_array().unwrap().iter().map(|k| ModuleVector::from_json(k).unwrap()).collect::<Vec<_>>()
    };
    assert_eq!(run(Some("1")), vec![vacuum_power(1)]);
    assert_eq!(run(Some("3")), vec![vacuum_power(3)]);
    assert_eq!(run(None), vec![vacuum_power(4)]);
}

#[test]
fn writes_to_the_output_file() {
    let path = std::env::temp_dir().join(format!("cgk-out-{}.json", std::process::id()));
    let o = cgk(&["algebra", "show", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(written["generators"].as_array().is_some_and(|g| !g.is_empty()));
}

#[test]
fn operator_output_round_trips() {
    let spec = AlgebraSpec::new(1, 3, Extension::Mass).unwrap();
    let expected = left_action(&spec, &Params::symbolic(), Gen::C).unwrap();
    let o = cgk(&["reps", "left", "--two-ell", "3", "--gen", "C"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(DiffOp::from_json(&v["operator"], var_space(&spec)).unwrap(), expected);
    assert_eq!(DiffOp::parse(v["text"].as_str().unwrap(), var_space(&spec)).unwrap(), expected);
}

#[test]
fn verma_action_matches_the_library() {
    // C H|0> = -δ|0> in the heat case
    let o = cgk(&["verma", "act", "--gen", "C", "--monomial", r#"{"h":1,"a":[0],"b":[]}"#]);
    assert_eq!(o.status.code(), Some(0));
    let got = ModuleVector::from_json(&json(&o)).unwrap();
    let expected = ModuleVector::from_json(&serde_json::json!({ r#"{"h":0,"a":[0],"b":[]}"#: "-delta" })).unwrap();
    assert_eq!(got, expected);
}

#[test]
fn selftest_passes() {
    let o = cgk(&["selftest"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<_> = stdout(&o).lines().map(str::to_owned).collect();
    assert_eq!(lines.len(), 8);
    assert!(lines.iter().all(|l| l.starts_with("PASS")), "{lines:?}");
}
