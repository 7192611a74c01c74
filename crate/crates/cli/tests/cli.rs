use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn slicecalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slicecalc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_of(args: &[&str]) -> Value {
    let o = slicecalc(args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn assert_valid(schema: &str, instance: &Value) {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "schemas", schema]
        .iter()
        .collect();
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator
        .iter_errors(instance)
        .map(|e| e.to_string())
        .collect();
    assert!(errors.is_empty(), "{errors:?}\n{instance:#}");
}

#[test]
fn tower_text_for_six() {
    let o = slicecalc(&["slice-tower", "-p", "3", "-q", "5", "6", "--format", "text"]);
    assert!(o.status.success());
    let lines: Vec<String> = stdout(&o).lines().skip(1).map(str::to_string).collect();
    assert_eq!(
        lines,
        vec![
            "15-slice: Σ^3 HK_q⟨Z/q⟩   [u_{ξ-ξ^q}]",
            " 9-slice: Σ^3 HK_p⟨Z/p⟩   [u_{ξ-ξ^p}]",
            " 6-slice: S^{6 + 2ξ - ξ^p - ξ^q} ∧ HZ",
        ]
    );
}

#[test]
fn cohomology_json_row() {
    let v = json_of(&["cohomology", "-p", "3", "-q", "5", "xi", "--format", "json"]);
    assert_eq!(v["functor_name"], "KpZmodP⊕KqZmodQ");
    assert_eq!(v["row"], 4);
    assert_valid("cohomology.schema.json", &v);
}

#[test]
fn gold_relation() {
    let o = slicecalc(&["ring-mul", "-p", "3", "-q", "5", "u_xi * a_xip"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "3·u_xip·a_xi");
}

#[test]
fn ring_output_round_trips() {
    for expr in [
        "u_xi * a_xip",
        "u_xi^2 * a_xiq * a_xi + 7 * u_xiq",
        "a_xip * a_xiq",
        "2 + 3",
    ] {
        let first = stdout(&slicecalc(&["ring-mul", expr])).trim().to_string();
        let second = stdout(&slicecalc(&["ring-mul", &first])).trim().to_string();
        assert_eq!(first, second, "{expr}");
    }
}

#[test]
fn rep_output_round_trips() {
    for rep in ["6", "11xi^5", "xi - xi_p", "-3 + 2xi^7 - xi^10"] {
        let v = json_of(&["slice-tower", rep, "--format", "json"]);
        let text = v["input_text"].as_str().unwrap().to_string();
        let w = json_of(&["slice-tower", &text, "--format", "json"]);
        assert_eq!(v, w, "{rep}");
    }
}

#[test]
fn json_outputs_match_schemas() {
    for rep in ["6", "11 xi_q", "0", "-2 - xi", "xi^3 + 9"] {
        assert_valid(
            "tower.schema.json",
            &json_of(&["slice-tower", rep, "--format", "json"]),
        );
    }
    for (p, q) in [("3", "5"), ("3", "7"), ("5", "7")] {
        for rep in ["xi", "xi_p - xi", "-3 - 3xi + 3xi_p + xi_q", "0"] {
            assert_valid(
                "cohomology.schema.json",
                &json_of(&["cohomology", "-p", p, "-q", q, rep, "--format", "json"]),
            );
        }
    }
    assert_valid(
        "ring_element.schema.json",
        &json_of(&["ring-mul", "u_xi * a_xip + u_xiq", "--format", "json"]),
    );
    assert_valid(
        "ring_element.schema.json",
        &json_of(&["ring-mul", "0", "--format", "json"]),
    );
    assert_valid(
        "ring_basis.schema.json",
        &json_of(&["ring-basis", "1,1,1,1", "--format", "json"]),
    );
    assert_valid(
        "verify.schema.json",
        &json_of(&[
            "verify", "--box", "2,2,2,6", "--towers", "2", "--format", "json",
        ]),
    );
}

#[test]
fn a_wedge_shows_up_in_json() {
    // 24 + 2ξ^q over C_15 has p- and q-cells at equal dimensions
    let v = json_of(&["slice-tower", "24 + 2 xi_q", "--format", "json"]);
    let kinds: Vec<&str> = v["cells"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["kind"].as_str().unwrap())
        .collect();
    assert!(kinds.contains(&"wedge"), "{kinds:?}");
    assert_valid("tower.schema.json", &v);
}

#[test]
fn latex_is_standalone() {
    for args in [
        vec!["slice-tower", "6", "--format", "latex"],
        vec!["cohomology", "xi", "--format", "latex"],
        vec!["ring-basis", "1,1,1,1", "--format", "latex"],
        vec!["ring-mul", "u_xi*a_xip", "--format", "latex"],
    ] {
        let out = stdout(&slicecalc(&args));
        assert!(out.starts_with("\\documentclass{article}"), "{args:?}");
        assert!(out.trim_end().ends_with("\\end{document}"), "{args:?}");
    }
}

#[test]
fn stdin_payload() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_slicecalc"))
        .args(["ring-mul", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"u_xi * a_xiq\n")
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "5·u_xiq·a_xi");
}

#[test]
fn input_errors_exit_one() {
    let cases: [&[&str]; 7] = [
        &["cohomology", "xi^15"],
        &["cohomology", "3 xi 4"],
        &["ring-mul", "b_xi"],
        &["ring-basis", "1,2,3"],
        &["slice-tower", "-p", "4", "-q", "5", "6"],
        &["slice-tower", "-p", "5", "-q", "3", "6"],
        &["cohomology", "xi", "--format", "xml"],
    ];
    for args in cases {
        let o = slicecalc(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn parse_errors_point_at_the_problem() {
    let o = slicecalc(&["cohomology", "2 + xi^15"]);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("position 6"), "{err}");
    assert!(err.contains("        ^"), "{err}");
}

#[test]
fn verify_passes_on_a_small_box() {
    for (p, q) in [("3", "5"), ("3", "7"), ("5", "7")] {
        let o = slicecalc(&[
            "verify", "-p", p, "-q", q, "--box", "3,3,3,9", "--towers", "3",
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(stdout(&o).contains("all match"));
    }
}

#[test]
fn help_exits_zero() {
    assert_eq!(slicecalc(&["--help"]).status.code(), Some(0));
    assert_eq!(slicecalc(&["--version"]).status.code(), Some(0));
}

#[test]
fn deterministic_output() {
    let a = stdout(&slicecalc(&["slice-tower", "11 xi^5", "--format", "json"]));
    let b = stdout(&slicecalc(&["slice-tower", "11 xi^5", "--format", "json"]));
    assert_eq!(a, b);
}
