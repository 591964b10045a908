use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn grtwist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grtwist"))
        .current_dir(fixtures())
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn structured(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "structured"]);
    let o = grtwist(&all);
    let v = serde_json::from_str(stdout(&o).trim()).expect("one JSON object");
    (code(&o), v)
}

#[test]
fn identity_twist_passes() {
    let o = grtwist(&["check-twist", "ident.twist.json", "z2.alg.json"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("twist condition: pass"));
}

#[test]
fn twisted_algebra_pipeline() {
    let tmp = TempDir::new().unwrap();
    let out = tmp.path().join("out.alg.json");
    let o = grtwist(&["twist-algebra", "cocycle.twist.json", "z2.alg.json", "-o", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let o = grtwist(&["check-algebra", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["mult"]["1,1"]["entries"][0], "-1");
}

#[test]
fn quantum_plane_demo_prints_relation() {
    let o = grtwist(&["demo", "quantum-plane"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("x★y = 2·(y★x)"), "{s}");
    assert!(s.contains("x★y = [0, 2, 0]"), "{s}");
}

#[test]
fn failing_twist_exits_one_with_witness() {
    let tmp = TempDir::new().unwrap();
    let bad = tmp.path().join("bad.twist.json");
    std::fs::write(
        &bad,
        r#"{"kind": "cocycle", "alpha": {"0,0": "1", "0,1": "2", "1,0": "1", "1,1": "1"}}"#,
    )
    .unwrap();
    let (c, v) = structured(&["check-twist", bad.to_str().unwrap(), "z2.alg.json"]);
    assert_eq!(c, 1);
    assert_eq!(v["status"], "fail");
    assert!(v["witness"]["at"].is_array());
    let o = grtwist(&["twist-algebra", bad.to_str().unwrap(), "z2.alg.json"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn malformed_input_exits_two_with_position() {
    let tmp = TempDir::new().unwrap();
    let bad = tmp.path().join("bad.alg.json");
    std::fs::write(&bad, "{\n  \"field\": \"Q\"\n  \"group\": 1\n}").unwrap();
    let o = grtwist(&["check-algebra", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad.alg.json:3:"), "{err}");
    assert!(err.contains("expected"), "{err}");

    let o = grtwist(&["check-module", "no-such-file.json"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn structured_reports_are_deterministic() {
    for args in [
        &["verify-endo", "s3.alg.json"][..],
        &["shift-props", "s3.regular.mod.json", "s3.regular.mod.json"],
        &["demo", "random-cocycles", "--seed", "11"],
    ] {
        let a = grtwist(args);
        let b = grtwist(args);
        assert_eq!(code(&a), 0, "{args:?}: {}", stdout(&a));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let (_, v) = structured(&["check-algebra", "s3.alg.json"]);
    assert!(v.get("timings").is_none());
    let (_, v) = structured(&["check-algebra", "s3.alg.json", "--timings"]);
    assert!(v["timings"]["total_us"].is_u64());
}

#[test]
fn every_command_runs_on_the_fixtures() {
    let tmp = TempDir::new().unwrap();
    let p = |n: &str| tmp.path().join(n).to_str().unwrap().to_string();
    let runs: Vec<Vec<String>> = vec![
        vec!["check-group".into(), "s3.group.json".into()],
        vec!["check-group".into(), "integers.group.json".into()],
        vec!["check-algebra".into(), "poly23.alg.json".into()],
        vec!["check-module".into(), "z3.regular.mod.json".into()],
        vec!["check-twist".into(), "quantum.twist.json".into(), "poly23.alg.json".into()],
        vec!["twist-module".into(), "cocycle.twist.json".into(), "z2.regular.mod.json".into(), "-o".into(), p("m.json")],
        vec!["check-phi".into(), "sign.phi.json".into()],
        vec!["twist-from-phi".into(), "sign.phi.json".into(), "-o".into(), p("t.json")],
        vec!["hom-space".into(), "z2.regular.mod.json".into(), "z2.regular.mod.json".into(), "-o".into(), p("h.json")],
        vec!["gamma".into(), "z3.alg.json".into(), "-o".into(), p("g.json")],
        vec!["verify-endo".into(), "poly22.alg.json".into()],
        vec!["shift-props".into(), "poly22.regular.mod.json".into(), "poly22.regular.mod.json".into(), "--degree".into(), "1".into()],
        vec!["zm-forward".into(), "cocycle.twist.json".into(), "z2.alg.json".into(), "-o".into(), p("e.json")],
        vec!["gamma-twist".into(), p("e.json"), "-o".into(), p("phi.json")],
        vec!["backward".into(), "sign.equiv.json".into()],
        vec!["demo".into(), "sign-cocycle".into()],
    ];
    for args in &runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = grtwist(&args);
        assert_eq!(code(&o), 0, "{args:?}: {}{}", stdout(&o), String::from_utf8_lossy(&o.stderr));
    }
    let o = grtwist(&["check-module", &p("m.json")]);
    assert_eq!(code(&o), 0);
    let o = grtwist(&["check-phi", &p("phi.json")]);
    assert_eq!(code(&o), 0);
    let h: Value = serde_json::from_str(&std::fs::read_to_string(p("h.json")).unwrap()).unwrap();
    assert_eq!(h.as_array().unwrap().len(), 2);
    assert!(h[0]["basis"][0]["0"]["entries"].is_array());
}

#[test]
fn shift_props_over_z_needs_a_degree() {
    let o = grtwist(&["shift-props", "poly22.regular.mod.json", "poly22.regular.mod.json"]);
    assert_eq!(code(&o), 2);
}
