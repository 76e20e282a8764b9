use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn gstab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gstab"))
        .args(args)
        .output()
        .expect("spawn gstab")
}

fn gen(dir: &Path, name: &str, args: &[&str]) -> String {
    let out = dir.join(name);
    let path = out.to_str().unwrap().to_string();
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &path]);
    let o = gstab(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

#[test]
fn gen_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    for kind in [["stabilizer", "--n", "4"], ["haar", "--n", "3"], ["noisy", "--n", "3"]] {
        let a = gen(dir.path(), "a.json", &[kind[0], kind[1], kind[2], "--seed", "9"]);
        let b = gen(dir.path(), "b.json", &[kind[0], kind[1], kind[2], "--seed", "9"]);
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    }
}

#[test]
fn exact_on_t_power() {
    let dir = TempDir::new().unwrap();
    let s = gen(dir.path(), "s.json", &["stabilizer", "--n", "3", "--seed", "1"]);
    let o = gstab(&["exact", &s, "--quantity", "gowers3"]);
    assert!(o.status.success());
    assert!((json(&o)["value"].as_f64().unwrap() - 1.0).abs() < 1e-9);

    let o = gstab(&["exact", &s, "--quantity", "fidelity"]);
    let v = json(&o);
    assert!((v["value"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(v["argmax_generators"].as_array().unwrap().len(), 3);

    let o = gstab(&["exact", &s, "--quantity", "chartable", "--format", "csv"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 1 + 64);
}

#[test]
fn estimate_is_deterministic_and_writes_shots() {
    let dir = TempDir::new().unwrap();
    let s = gen(dir.path(), "h.json", &["haar", "--n", "3", "--seed", "4"]);
    let run = |extra: &[&str]| {
        let mut args = vec!["estimate", &s, "--quantity", "weylq", "--delta", "0.2", "--seed", "5"];
        args.extend_from_slice(extra);
        gstab(&args)
    };
    let a = run(&[]);
    let b = run(&[]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let est = json(&a);
    assert_eq!(est["quantity"], "weyl_expect_q");

    let csv = run(&["--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("shot_index,v_bits,w_bits,outcome"));
    assert_eq!(lines.count() as u64, est["shots"].as_u64().unwrap());
}

#[test]
fn test_exit_codes() {
    let dir = TempDir::new().unwrap();
    let stab = gen(dir.path(), "s.json", &["stabilizer", "--n", "6", "--seed", "2"]);
    let haar = gen(dir.path(), "h.json", &["haar", "--n", "6", "--seed", "2"]);
    let close = gstab(&["test", &stab, "--eps1", "0.9"]);
    assert_eq!(close.status.code(), Some(0));
    assert_eq!(json(&close)["decision"], "close");
    let far = gstab(&["test", &haar, "--eps1", "0.9"]);
    assert_eq!(far.status.code(), Some(3));
    assert_eq!(json(&far)["decision"], "far");
    let bad = gstab(&["test", &stab, "--eps1", "1.5"]);
    assert_eq!(bad.status.code(), Some(2));
    let missing = gstab(&["test", "/nonexistent/state.json", "--eps1", "0.9"]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn caps_exit_four() {
    let o = gstab(&["conjecture", "--n", "9", "--trials", "1"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn unknown_subcommand_is_usage_error() {
    assert_eq!(gstab(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn cover_modes() {
    let dir = TempDir::new().unwrap();
    let sub = dir.path().join("v.json");
    fs::write(&sub, r#"{"n": 2, "basis": ["1000", "0100", "0010", "0001"]}"#).unwrap();
    let sub = sub.to_str().unwrap();
    let mub = json(&gstab(&["cover", sub, "--mode", "mub"]));
    assert_eq!(mub["groups"].as_array().unwrap().len(), 5);
    let paulis = json(&gstab(&["cover", sub, "--mode", "paulis"]));
    assert_eq!(paulis["groups"].as_array().unwrap().len(), 16);

    fs::write(dir.path().join("d.json"), r#"{"n": 1, "basis": ["10", "10"]}"#).unwrap();
    let o = gstab(&["cover", dir.path().join("d.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn conjecture_csv_is_deterministic() {
    let a = gstab(&["conjecture", "--n", "3", "--trials", "30", "--seed", "3"]);
    let b = gstab(&["conjecture", "--n", "3", "--trials", "30", "--seed", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("trial,seed,K,size_S,size_2S,nac_S,nac_2S,flagged"));
    assert_eq!(text.lines().count(), 31);
}
