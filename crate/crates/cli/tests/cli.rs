use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn kgenus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kgenus"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn instance(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("instances")
        .join(name)
        .display()
        .to_string()
}

fn path_str(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

#[test]
fn compute_verify_round_trip_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let c1 = dir.path().join("c1.json");
    let c2 = dir.path().join("c2.json");
    let out = kgenus(&[
        "compute",
        &instance("golden.json"),
        "--verify",
        "--out",
        path_str(&c1),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let out = kgenus(&["verify", path_str(&c1), "--embed", "--out", path_str(&c2)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read(&c1).unwrap(), std::fs::read(&c2).unwrap());
    let text = std::fs::read_to_string(&c1).unwrap();
    assert!(text.contains("\"-1312\""));
    assert!(text.contains("\"degD\": \"387459855\""));
}

#[test]
fn verify_prints_reports_and_rejects_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c.json");
    kgenus(&[
        "compute",
        &instance("q37_ell3_n2.json"),
        "--out",
        path_str(&c),
    ]);
    let out = kgenus(&["verify", path_str(&c)]);
    assert_eq!(out.status.code(), Some(0));
    let reports: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(reports
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["status"] == "pass"));

    let mut cert: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&c).unwrap()).unwrap();
    cert["m"] = serde_json::json!(cert["m"].as_u64().unwrap() + 1);
    std::fs::write(&c, cert.to_string()).unwrap();
    let out = kgenus(&["verify", path_str(&c)]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn oracle_flag_on_small_instances() {
    for name in ["q13.json", "f13_poly.json", "q37_ell3_n2.json"] {
        let out = kgenus(&["compute", &instance(name), "--oracle", "--emit", "text"]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.contains("0 failed"), "{text}");
    }
}

#[test]
fn explicit_bezout_and_i0() {
    let g = instance("golden.json");
    let out = kgenus(&["compute", &g, "--verify", "--bezout", "5249,-4"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let out = kgenus(&["compute", &g, "--verify", "--bezout", "5,1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = kgenus(&["compute", &g, "--verify", "--i0", "1"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn bad_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"q": 13, "ell": 3}"#).unwrap();
    assert_eq!(kgenus(&["compute", path_str(&bad)]).status.code(), Some(2));
    std::fs::write(
        &bad,
        r#"{"q": 13, "ell": 3, "n": 1, "gamma": 1, "D": {"factors": [{"prime": {"degree": 1}, "exponent": 3}]}}"#,
    )
    .unwrap();
    assert_eq!(kgenus(&["compute", path_str(&bad)]).status.code(), Some(2));
    let out = kgenus(&["compute", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = kgenus(&["random", "--q", "13", "--ell", "3", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn random_is_deterministic() {
    let args = [
        "random",
        "--seed",
        "11",
        "--trials",
        "20",
        "--q",
        "13",
        "--ell",
        "3",
        "--n",
        "1",
        "--max-r",
        "3",
        "--max-deg",
        "5",
        "--json",
    ];
    let a = kgenus(&args);
    let b = kgenus(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["failed_trials"], 0);
    assert_eq!(v["records"].as_array().unwrap().len(), 20);
}

#[test]
fn selftest_tables() {
    let out = kgenus(&["selftest", "--quick", "--json"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let out = kgenus(&["selftest", "--quick", "--table", "published"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("FAIL golden.reproduce"));
    assert!(text.contains("nu: expected 8, got 9"));
}
