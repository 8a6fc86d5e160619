//! Golden-report regression: a reduced q=2,3 profile must produce a
//! byte-identical report body (timing fields stripped) across runs and
//! against the committed golden file.
//!
//! Regenerate with `UPDATE_GOLDEN=1 cargo test -p burnside-verifier --test
//! golden` after an intentional report change, and review the diff.

use burnside_verifier::{run_profile, Profile, SuiteParams};

fn reduced_profile() -> Profile {
    Profile {
        group_qs: vec![2, 3],
        lattice_qs: vec![2, 3],
        include_slow: false,
        include_nilpotence: true,
        base: SuiteParams::default().with_samples(10).with_seed(0x601D),
        extra_config: Default::default(),
    }
}

fn golden_path() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
        .join("default-q23.json")
}

#[test]
fn report_matches_golden() {
    let report = run_profile(&reduced_profile()).unwrap();
    assert!(!report.has_fail(), "reduced profile must not fail");
    let body = report.normalized_json();
    let path = golden_path();
    if std::env::var("UPDATE_GOLDEN").is_ok() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &body).unwrap();
        eprintln!("golden report updated at {}", path.display());
        return;
    }
    let golden = std::fs::read_to_string(&path)
        .expect("golden file missing; run with UPDATE_GOLDEN=1 to create it");
    assert_eq!(
        body, golden,
        "report body diverged from the golden file; if intentional, regenerate with \
         UPDATE_GOLDEN=1 and review the diff"
    );
}

#[test]
fn report_body_is_deterministic() {
    let a = run_profile(&reduced_profile()).unwrap().normalized_json();
    let b = run_profile(&reduced_profile()).unwrap().normalized_json();
    assert_eq!(a, b);
}

#[test]
fn seed_changes_only_witnesses() {
    let mut p1 = reduced_profile();
    p1.base = p1.base.with_seed(1);
    let mut p2 = reduced_profile();
    p2.base = p2.base.with_seed(2);
    let r1 = run_profile(&p1).unwrap();
    let r2 = run_profile(&p2).unwrap();
    let verdicts1: Vec<_> = r1.suites.iter().map(|s| (s.suite.clone(), s.verdict)).collect();
    let verdicts2: Vec<_> = r2.suites.iter().map(|s| (s.suite.clone(), s.verdict)).collect();
    assert_eq!(verdicts1, verdicts2, "verdicts must be seed-independent");
}
