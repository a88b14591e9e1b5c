use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [
        env!("CARGO_MANIFEST_DIR"),
        "..",
        "core",
        "fixtures",
        &format!("{name}.scene"),
    ]
    .iter()
    .collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_divergent"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json", "--stable"];
    all.extend_from_slice(args);
    let out = run(&all);
    let text = String::from_utf8(out.stdout).unwrap();
    (
        out.status.code().unwrap(),
        serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}")),
    )
}

#[test]
fn sat_exit_codes() {
    let out = run(&["sat", "G a & F !a"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "UNSAT");
    let (code, v) = json(&["sat", "a"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"], "sat");
    assert!(v["witness"]["loop"][0]
        .as_array()
        .unwrap()
        .contains(&Value::from("a")));
    assert_eq!(
        run(&["sat", "G (h -> X p) & G (m -> X !p)"]).status.code(),
        Some(0)
    );
    assert_eq!(run(&["sat", "(!x"]).status.code(), Some(2));
}

#[test]
fn validate_reports_clauses() {
    let mpc = fixture("mpc");
    let (code, v) = json(&["validate", &mpc, "--bc", "h & m"]);
    assert_eq!(code, 0);
    assert_eq!(v["is_bc"], true);
    assert_eq!(v["minimality"], serde_json::json!([true, true]));
    let (code, v) = json(&["validate", &mpc, "--bc", "!(G(h->Xp) & G(m->X!p))"]);
    assert_eq!(code, 1);
    assert_eq!(v["non_triviality"], false);
    let (_, v) = json(&["validate", &mpc, "--bc", "false"]);
    assert_eq!(v["minimality"], serde_json::json!([false, false]));
    assert_eq!(
        run(&["validate", "/nonexistent.scene", "--bc", "a"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn syntacbc_reports() {
    let (code, v) = json(&["syntacbc", &fixture("mpc"), "--no-reduce"]);
    assert_eq!(code, 0);
    assert_eq!(v["algorithm"], "syntacbc");
    assert_eq!(v["bcs"].as_array().unwrap().len(), 2);
    assert_eq!(v["bcs"][0]["kind"], "syntactic");
    assert!(v["stats"]["sat_calls"].as_u64().unwrap() > 0);
    assert_eq!(v["stats"]["elapsed_ms"], 0);

    let (code, v) = json(&["syntacbc", &fixture("extra_goal")]);
    assert_eq!(code, 1);
    assert!(v["bcs"].as_array().unwrap().is_empty());
    assert_eq!(v["reason"], "extra goals: [g2]");

    let (_, v) = json(&["syntacbc", &fixture("elevator"), "--no-reduce"]);
    assert_eq!(v["bcs"].as_array().unwrap().len(), 2);
}

#[test]
fn semanticbc_reports() {
    let (code, v) = json(&["semanticbc", &fixture("elevator")]);
    assert_eq!(code, 0);
    assert_eq!(v["stats"]["bc_t"], 2);
    assert_eq!(v["bcs"][0]["conflict_atom"], "open");
    assert_eq!(v["bcs"][0]["scope"], serde_json::json!(["g1", "g2"]));

    let (code, v) = json(&["semanticbc", &fixture("atm")]);
    assert_eq!(code, 1);
    assert_eq!(
        (v["stats"]["bc_t"].as_u64(), v["stats"]["bc_w"].as_u64()),
        (Some(0), Some(0))
    );

    let (_, v) = json(&["semanticbc", &fixture("atm"), "--all-fusible"]);
    assert_eq!(v["bcs"][0]["conflict_atom"], "passok");

    let (_, v) = json(&["semanticbc", &fixture("mpc")]);
    let trace = v["bcs"]
        .as_array()
        .unwrap()
        .iter()
        .find(|b| b["kind"] == "trace_formula")
        .unwrap();
    assert!(trace["formula"].as_str().unwrap().starts_with("(h & m)"));
    let word = v["bcs"]
        .as_array()
        .unwrap()
        .iter()
        .find(|b| b["kind"] == "word")
        .unwrap();
    assert!(word["word"]["stem"].is_array() && word["word"]["loop"].is_array());

    assert_eq!(
        run(&["semanticbc", &fixture("atm"), "--fusible", "nope"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["semanticbc", &fixture("atm"), "--max-runs-per-edge", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["--json", "--stable", "semanticbc", "--all-fusible"],
        vec!["--json", "--stable", "syntacbc"],
    ] {
        let mut a = args.clone();
        let atm = fixture("atm");
        a.push(&atm);
        let first = run(&a).stdout;
        assert_eq!(first, run(&a).stdout);
    }
}

#[test]
fn dot_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.dot");
    let out = run(&["translate", "G a", "--dot", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.contains("label=\"a\"") && dot.contains("doublecircle"));
    let empty = String::from_utf8(run(&["translate", "false"]).stdout).unwrap();
    assert!(!empty.contains("doublecircle"));

    let dump = dir.path().join("products");
    let out = run(&[
        "semanticbc",
        &fixture("mpc"),
        "--dump-product",
        dump.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let product = std::fs::read_to_string(dump.join("g1_g2.dot")).unwrap();
    assert!(product.contains("fuse:p"));
}

#[test]
fn state_cap_is_a_resource_error() {
    let out = run(&[
        "--state-cap",
        "2",
        "sat",
        "G (a -> F b) & G (b -> F c) & G (c -> F a)",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("limit"));
}

#[test]
fn hidden_oracle() {
    let (code, v) = json(&["oracle", "F a", "--bound", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"], "sat");
    assert_eq!(
        run(&["oracle", "G a & F !a", "--bound", "3"]).status.code(),
        Some(1)
    );
    let help = String::from_utf8(run(&["--help"]).stdout).unwrap();
    assert!(!help.contains("oracle"));
}
