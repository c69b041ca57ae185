use std::process::{Command, Output};

use serde_json::Value;

fn tmf7(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tmf7"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn without_timing(mut v: Value) -> Value {
    if let Some(checks) = v["checks"].as_array_mut() {
        for c in checks {
            c.as_object_mut().unwrap().remove("elapsed_ms");
        }
    }
    v
}

#[test]
fn verify_all_passes_and_is_deterministic() {
    let a = tmf7(&["verify", "all", "--prec", "25", "--json", "--jobs", "4"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    let b = tmf7(&["verify", "all", "--prec", "25", "--json", "--jobs", "1"]);
    let va: Value = serde_json::from_slice(&a.stdout).unwrap();
    let vb: Value = serde_json::from_slice(&b.stdout).unwrap();
    assert_eq!(va["status"], "pass");
    let checks = va["checks"].as_array().unwrap();
    assert!(checks.len() >= 30);
    let names: Vec<&str> = checks.iter().map(|c| c["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert_eq!(without_timing(va), without_timing(vb));
}

#[test]
fn precision_is_raised_per_check() {
    let o = tmf7(&["verify", "alpha-match", "zbasis-integrality", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["requested_precision"], 16);
    assert_eq!(v["checks"][0]["precision"], 25);
    assert_eq!(v["checks"][1]["precision"], 50);
    let w = &v["checks"][0]["witnesses"];
    let result = w.as_array().unwrap().iter().find(|x| x["key"] == "result").unwrap();
    assert_eq!(result["value"], "matched modulo q^25");
}

#[test]
fn splitting_check() {
    let o = tmf7(&["verify", "splitting"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS splitting"));
}

#[test]
fn usage_errors_exit_2() {
    let o = tmf7(&["verify", "no-such-check"]);
    assert_eq!(o.status.code(), Some(2));
    let o = tmf7(&["mf7", "qexp", "z1^2*("]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 7"));
    let o = tmf7(&["mf7", "qexp", "z1 + w"]);
    assert_eq!(o.status.code(), Some(2));
    let o = tmf7(&["bogus"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn relation_expands_to_zero() {
    let o = tmf7(&["mf7", "qexp", "z1*z2 + z2*z3 + z3*z1"]);
    assert_eq!(stdout(&o).trim(), "O(q^16)");
}

#[test]
fn tate_xy_output() {
    let o = tmf7(&["tate", "xy", "--n", "7", "--k", "1", "--d", "0", "--prec", "9"]);
    let s = stdout(&o);
    assert!(s.contains("X = q + 2*q^2 + 3*q^3 + 4*q^4 + 5*q^5 + 7*q^6 + 5*q^7 + 9*q^8 + O(q^9)"), "{}", s);
    assert!(s.contains("Y = q^2 + 3*q^3 + 6*q^4 + 10*q^5 + 14*q^6 + 22*q^7 + 28*q^8 + O(q^9)"), "{}", s);
}

#[test]
fn inv_commands_emit_json_certificates() {
    for sub in ["basis48", "splitting"] {
        let o = tmf7(&["inv", sub]);
        assert_eq!(o.status.code(), Some(0));
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["status"], "pass");
        assert!(v["elapsed_ms"].is_u64());
    }
    let o = tmf7(&["inv", "transfer", "1"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let t = v["witnesses"].as_array().unwrap().iter().find(|w| w["key"] == "transfer").unwrap();
    assert_eq!(t["value"], "6");
}

#[test]
fn comodule_json_shape() {
    let o = tmf7(&["hopf", "comodule", "mf12", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["basis"].as_array().unwrap().len(), 3);
    assert_eq!(v["coaction"][0][2], "r^2");
}

#[test]
fn level_one_image() {
    let o = tmf7(&["wst", "level1-image", "c4"]);
    assert_eq!(o.status.code(), Some(0));
    let o = tmf7(&["wst", "level1-image", "x"]);
    assert_eq!(o.status.code(), Some(2));
}
