use std::io::Write;
use std::process::{Command, Stdio};

fn logsps(args: &[&str], stdin: &str) -> (i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_logsps"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn check_kurtz_exit_codes() {
    let (code, out) = logsps(&["check-kurtz", "-"], "0 1\n1 3\n2 2\n");
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["holds"], true);
    assert_eq!(logsps(&["check-kurtz", "-"], "0 1\n1 2\n2 1\n").0, 1);
}

#[test]
fn newton_on_a_real_rooted_product() {
    // (1 + X)^3
    assert_eq!(logsps(&["check-newton", "-"], "0 1\n1 3\n2 3\n3 1\n").0, 0);
    let (code, out) = logsps(&["sturm", "-"], "0 -1\n2 1\n");
    assert_eq!(code, 0);
    assert!(out.contains("\"distinct_real_roots\": 2"));
}

#[test]
fn identity_and_gen_f() {
    assert_eq!(logsps(&["verify-identity", "--n", "2"], "").0, 0);
    let (code, f3) = logsps(&["gen-f", "--n", "3"], "");
    assert_eq!(code, 0);
    assert_eq!(f3.lines().count(), 8);
    assert_eq!(logsps(&["check-strong", "-"], &f3).0, 0);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(logsps(&["frobnicate"], "").0, 2);
    assert_eq!(logsps(&["expand", "-"], "not json").0, 2);
    assert_eq!(logsps(&["--help"], "").0, 0);
}

#[test]
fn sps_round_trip() {
    let sps = r#"{"products": [[{"terms": [[0, "1"], [2, "3"]]}, {"terms": [[1, "2"]]}], [{"terms": [[0, "5"]]}]]}"#;
    let (code, out) = logsps(&["expand", "-"], sps);
    assert_eq!(code, 0);
    assert_eq!(out, "0 5\n1 2^1\n3 6\n");
    let (_, params) = logsps(&["params", "-"], sps);
    let v: serde_json::Value = serde_json::from_str(&params).unwrap();
    assert_eq!((v["k"].as_u64(), v["m"].as_u64(), v["t"].as_u64(), v["d"].as_u64()), (Some(2), Some(2), Some(2), Some(3)));
}

#[test]
fn search_emits_jsonl() {
    let (code, out) = logsps(&["search", "--seed", "3", "--instances", "20"], "");
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 21);
    for line in out.lines() {
        serde_json::from_str::<serde_json::Value>(line).unwrap();
    }
}
