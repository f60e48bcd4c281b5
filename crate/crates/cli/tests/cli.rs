use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn udmg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_udmg")).args(args).env_remove("UDMG_THREADS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn reference_set_fails_at_genus_one_with_witness() {
    let f = fixture("paper_genus1.json");
    let o = udmg(&["--json", "verify", path(&f), "--genus", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let r = json(&o);
    assert_eq!(r["valid"], false);
    assert_eq!(r["witness"], "0,0,0,0,0,1,1,1,1");
    assert_eq!(r["witness_rank"], 2);
}

#[test]
fn reference_set_fails_at_genus_zero() {
    let o = udmg(&["verify", path(&fixture("paper_genus1.json")), "--genus", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness: 0,0,0,0,0,0,1,1,1"));
}

#[test]
fn corrected_set_verifies() {
    let o = udmg(&["verify", path(&fixture("paper_genus1_corrected.json"))]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = udmg(&["--json", "verify", path(&fixture("paper_genus1_corrected.json")), "--min-genus"]);
    assert_eq!(json(&o)["minimal_genus"], 1);
}

#[test]
fn bounds_example() {
    let o = udmg(&["--json", "bounds", "--K", "4", "--q", "2", "--g", "2", "--lengths", "4,4,4"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["thm_bounddelta"], 9);
    assert_eq!(r["partition_bound"], 8);
    let o = udmg(&["bounds", "--K", "4", "--q", "2", "--g", "2", "--lengths", "4,x"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--lengths"));
}

#[test]
fn construct_reproduces_fixture_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g0.json");
    let o = udmg(&["construct", path(&fixture("genus0_q5_k3_construction.json")), "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let produced = std::fs::read_to_string(&out).unwrap();
    assert_eq!(produced, std::fs::read_to_string(fixture("genus0_q5_k3.json")).unwrap());
    assert!(produced.ends_with("}\n"));
}

#[test]
fn construct_genus_one_verifies_and_is_thread_independent() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let src = fixture("genus1_construction.json");
    let oa = udmg(&["--threads", "1", "--json", "construct", path(&src), "-o", a.to_str().unwrap()]);
    let ob = Command::new(env!("CARGO_BIN_EXE_udmg"))
        .args(["--threads", "1", "--json", "construct", path(&src), "-o", b.to_str().unwrap()])
        .env("UDMG_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(oa.status.code(), Some(0));
    assert_eq!(json(&oa)["valid"], true);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let v = |o: &Output| {
        let mut r = json(o);
        r["output"] = Value::Null;
        r
    };
    assert_eq!(v(&oa), v(&ob));
}

#[test]
fn quotient_reports_and_writes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("q.json");
    let o = udmg(&[
        "--json",
        "quotient",
        path(&fixture("paper_genus1_corrected.json")),
        "--truncate",
        "1,1,0,0,0,0,0,0,0",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!((r["r"].as_u64(), r["d"].as_u64(), r["b_dim"].as_u64()), (Some(1), Some(0), Some(2)));
    assert_eq!(r["verified"], true);
    let v = udmg(&["verify", out.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0));
    let bad = udmg(&["quotient", path(&fixture("paper_genus1_corrected.json")), "--truncate", "3,0,0,0,0,0,0,0,0"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn code_distance() {
    let o = udmg(&["--json", "code", path(&fixture("genus0_q5_k3.json")), "--min-distance"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!((r["n"].as_u64(), r["k"].as_u64(), r["d"].as_u64()), (Some(6), Some(3), Some(4)));
    assert_eq!(r["defect"], 0);
}

#[test]
fn modulate_and_audit_genus_zero() {
    let f = fixture("genus0_q5_k3.json");
    let o = udmg(&["--json", "modulate", path(&f), "--snr", "--audit", "--complexify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let r = json(&o);
    assert_eq!(r["snr"]["snr"], "80768/3");
    assert_eq!(r["weights"], serde_json::json!(["28/15", "8/5", "4/3"]));
    assert_eq!(r["audit"]["pass"], true);
    assert_eq!(r["complexify"]["complex_snr"], "161536/3");
    let a = udmg(&["audit", path(&f)]);
    assert_eq!(a.status.code(), Some(0));
    assert!(stdout(&a).contains("gap check: 15500 pairs, holds"));
}

#[test]
fn modulate_rejects_reference_set() {
    let o = udmg(&["modulate", path(&fixture("paper_genus1.json"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn example_regenerates_fixtures_and_reports_failures() {
    let dir = tempfile::tempdir().unwrap();
    let o = udmg(&["example-paper", "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let fails: Vec<&str> = text.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(fails.len(), 2, "{text}");
    assert!(fails[0].contains("reference set verifies at genus 1"));
    assert!(fails[1].contains("generator row space"));
    for name in ["paper_genus1.json", "paper_genus1_corrected.json", "genus1_construction.json"] {
        assert_eq!(std::fs::read(dir.path().join(name)).unwrap(), std::fs::read(fixture(name)).unwrap(), "{name}");
    }
}

#[test]
fn errors_name_their_source() {
    let o = udmg(&["verify", "/nonexistent/set.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("/nonexistent/set.json"));
    let o = udmg(&["verify", path(&fixture("paper_genus1.json")), "--genus", "x"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--genus"));
    let o = Command::new(env!("CARGO_BIN_EXE_udmg"))
        .args(["bounds", "--K", "4", "--q", "2", "--g", "0"])
        .env("UDMG_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
