//! Golden output of the installed binary.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trivalent")).args(args).env_remove("TRIVALENT_CATALOG").output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn count_all() {
    assert_eq!(
        stdout(&["count", "--all"]).trim(),
        r#"[{"relation":"ss","count":8192},{"relation":"tt","count":8192},{"relation":"st","count":528},{"relation":"ts","count":0},{"relation":"ss∩tt","count":0}]"#
    );
    assert_eq!(stdout(&["count", "--relation", "st"]).trim(), "528");
}

#[test]
fn check_identity_under_ts() {
    assert_eq!(
        stdout(&["check", "--scheme", "sk", "--relation", "ts", "--sequent", "p |- p"]).trim(),
        r#"{"relation":"ts","sequent":"p |- p","valid":false,"witness":{"p":"n"}}"#
    );
}

#[test]
fn decide_named() {
    assert_eq!(
        stdout(&["decide", "--scheme", "cantwell", "--relation", "tt"]).trim(),
        r#"{"scheme":"NEG:001;AND:1n0nn0000;OR:1111nn1n0","relation":"tt","classical":true,"rationale":"tt: truth-collapsible","witness":null}"#
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&["decide", "--scheme", "sk", "--relation", "ss"])).unwrap();
    assert_eq!(v["classical"], false);
    assert_eq!(v["witness"]["sequent"], "|- p | ~p");
}

#[test]
fn strict_exit_codes() {
    assert_eq!(run(&["--strict", "decide", "--scheme", "sk", "--relation", "ss"]).status.code(), Some(1));
    assert_eq!(run(&["--strict", "decide", "--scheme", "sk", "--relation", "st"]).status.code(), Some(0));
    assert_eq!(run(&["decide", "--scheme", "NEG:0x1", "--relation", "st"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn gentzen_commands() {
    assert_eq!(stdout(&["gentzen-search", "--scheme", "sk", "--relation", "st", "--connective", "and"]).trim(), "P:{(12|-)};C:{(|-1),(|-2)}");
    assert_eq!(stdout(&["gentzen-search", "--scheme", "sk", "--relation", "ss∩tt", "--connective", "neg"]).trim(), "none");
    let with_constants = stdout(&[
        "gentzen-check", "--scheme", "cantwell", "--connective", "neg", "--schema", "P:{(|-1)};C:{(1|-)}", "--relation", "st", "--constants",
    ]);
    let v: serde_json::Value = serde_json::from_str(&with_constants).unwrap();
    assert_eq!(v["holds"], false);
    assert_eq!(v["failure"]["arguments"][0], "const(n)");
}

#[test]
fn output_is_deterministic() {
    let args = ["cross-validate", "--space", "random:40@5", "--jobs", "2"];
    let first = stdout(&args);
    assert_eq!(first, stdout(&args));
    assert_eq!(first, stdout(&["cross-validate", "--space", "random:40@5", "--jobs", "1"]));
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["disagreements"].as_array().unwrap().len(), 0);
}

#[test]
fn export_writes_every_st_classical_scheme() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("st.jsonl");
    stdout(&["export", "--relation", "st", "--out", path.to_str().unwrap()]);
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 528);
    let mut encodings = Vec::new();
    for line in &lines {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let scheme: trivalent::Scheme = v["scheme"].as_str().unwrap().parse().unwrap();
        assert!(trivalent::decide(&scheme, trivalent::NamedRelation::St).classical, "{line}");
        encodings.push(v["scheme"].as_str().unwrap().to_string());
    }
    let mut sorted = encodings.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(encodings, sorted);
}

#[test]
fn export_other_relations() {
    let dir = tempfile::tempdir().unwrap();
    let ts = dir.path().join("ts.jsonl");
    stdout(&["export", "--relation", "ts", "--out", ts.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(&ts).unwrap(), "");
    let ss = dir.path().join("ss.jsonl");
    stdout(&["export", "--relation", "ss", "--out", ss.to_str().unwrap()]);
    let text = std::fs::read_to_string(&ss).unwrap();
    assert_eq!(text.lines().count(), 8192);
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let scheme: trivalent::Scheme = v["scheme"].as_str().unwrap().parse().unwrap();
        assert!(trivalent::classify(&scheme).falsity_collapsible, "{line}");
        assert_eq!(v["classification"]["falsity_collapsible"], true);
    }
}
