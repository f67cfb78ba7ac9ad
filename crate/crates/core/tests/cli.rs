use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_realcoh")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_doc(name: &str, body: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("realcoh-{}-{name}.json", std::process::id()));
    std::fs::File::create(&path).unwrap().write_all(body.as_bytes()).unwrap();
    path
}

#[test]
fn h1_of_su2() {
    let o = run(&["h1", "catalog:su2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("2 classes"), "{s}");
    assert!(s.contains("(neutral)"));
}

#[test]
fn json_is_valid_and_deterministic() {
    let a = run(&["h1", "catalog:Gcq-l8", "--json"]);
    let b = run(&["h1", "catalog:Gcq-l8", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["count"], 9);
    assert_eq!(v["classes"].as_array().unwrap().len(), 9);
}

#[test]
fn torus_document() {
    let p = temp_doc("weil", r#"{"schema_version": 1, "kind": "torus", "gamma": [[0, 1], [1, 0]]}"#);
    let o = run(&["tate", p.to_str().unwrap(), "--k", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("= 0"), "{}", stdout(&o));
    let o = run(&["pi0", "catalog:torus-split", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["order"], 2);
}

#[test]
fn invalid_inputs_exit_2() {
    let bad_json = temp_doc("bad", "{\"schema_version\": 1,\n \"kind\": ");
    let o = run(&["h1", bad_json.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let version = temp_doc("version", r#"{"schema_version": 2, "kind": "torus", "gamma": [[1]]}"#);
    assert_eq!(run(&["h1", version.to_str().unwrap()]).status.code(), Some(2));

    let not_involution = temp_doc("gamma", r#"{"schema_version": 1, "kind": "torus", "gamma": [[2]]}"#);
    assert_eq!(run(&["tate", not_involution.to_str().unwrap(), "--k", "0"]).status.code(), Some(2));

    assert_eq!(run(&["h1", "catalog:no-such-group"]).status.code(), Some(2));
    assert_eq!(run(&["h1", "/nonexistent/file.json"]).status.code(), Some(2));
}

#[test]
fn verify_catalog_passes() {
    let o = run(&["verify", "--catalog"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(" 0 failed"));
}

#[test]
fn catalog_lists_entries() {
    let s = stdout(&run(&["catalog"]));
    for name in ["catalog:su2", "catalog:compact-E8", "catalog:Gsq-l12-r1-rp1"] {
        assert!(s.contains(name), "{name}");
    }
}
