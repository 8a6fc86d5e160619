//! End-to-end checks of the binary surface: exit codes, the documented
//! output shapes, and the report/replay round trip.

use std::process::Command;

fn burnside(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_burnside"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn eval_sanov_probe() {
    let (code, stdout, _) = burnside(&["eval", "g1", "--ring", "sanov"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "[[1, 2], [0, 1]]");
    let (code, stdout, _) = burnside(&["eval", "g2", "--ring", "sanov"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "[[1, 0], [2, 1]]");
}

#[test]
fn eval_empty_word_is_identity() {
    let (code, stdout, _) = burnside(&["eval", "", "--ring", "R"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "[[1, 0], [0, 1]]");
}

#[test]
fn eval_commutator_at_t1_shows_expected_lambdas() {
    let (code, stdout, _) = burnside(&["decompose", "[g2,g1]"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("u = 1"));
    assert!(stdout.contains("lambda1 = -1 + y"));
    assert!(stdout.contains("lambda2 = 1 - x"));
}

#[test]
fn non_prime_power_is_usage_error() {
    let (code, _, stderr) = burnside(&["ring-info", "--q", "6"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("not a prime power"));
}

#[test]
fn zero_samples_is_usage_error() {
    let (code, _, _) = burnside(&["verify", "lemma1", "--q", "2", "--samples", "0"]);
    assert_eq!(code, 2);
}

#[test]
fn unknown_suite_is_usage_error() {
    let (code, _, stderr) = burnside(&["verify", "lemma99"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown suite"));
}

#[test]
fn order_reports() {
    let (code, stdout, _) = burnside(&["order", "g1", "--q", "2"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("finite, order 2"));
    let (code, stdout, _) = burnside(&["order", "g2", "--q", "3"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("infinite (T-exponent sum 1)"));
    assert!(stdout.contains("t = 1 over S(3): true"));
}

#[test]
fn ring_info_q2_structure() {
    let (code, stdout, _) = burnside(&["ring-info", "--q", "2"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("free rank 1"));
    assert!(stdout.contains("elementary divisors (2,2)"));
    assert!(stdout.contains("basis monomials: 1, a, b"));
}

#[test]
fn verify_report_replay_roundtrip() {
    let dir = std::env::temp_dir().join(format!("burnside-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let report = dir.join("report.json");
    let (code, _, _) = burnside(&[
        "verify",
        "sanov",
        "--samples",
        "25",
        "--format",
        "json",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let (code, stdout, _) = burnside(&["replay", report.to_str().unwrap()]);
    assert_eq!(code, 0, "replay should agree: {stdout}");
    assert!(stdout.contains("0 mismatches"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn config_file_with_flag_override() {
    let dir = std::env::temp_dir().join(format!("burnside-cfg-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("burnside.conf");
    std::fs::write(&cfg, "q=6\nseed=7\n").unwrap();
    // config alone: q=6 is rejected
    let (code, _, _) = burnside(&["ring-info", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 2);
    // flag overrides the file
    let (code, stdout, _) = burnside(&[
        "ring-info",
        "--config",
        cfg.to_str().unwrap(),
        "--q",
        "2",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("free rank 1"));
    let _ = std::fs::remove_dir_all(&dir);
}
