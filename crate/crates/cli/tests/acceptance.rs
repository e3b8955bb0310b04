//! Acceptance gate, binary side: the batch verifier must be bitwise
//! deterministic. Criteria 1 through 10 live in the core crate's
//! `acceptance` target; this one needs the compiled CLI.

use std::process::Command;

#[test]
fn criterion_11_verify_output_is_byte_identical_across_runs() {
    let args = [
        "verify", "--count", "100", "--n-range", "4..8", "--seed", "7",
    ];
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_hypergon"))
            .args(args)
            .output()
            .expect("binary runs")
    };
    let a = run();
    let b = run();
    assert!(a.status.success(), "first verify run failed");
    assert!(b.status.success(), "second verify run failed");
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout, "summary JSON differs between runs");

    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["all_pass"], true);
    assert_eq!(v["polygons"], 500);

    println!(
        "ACCEPTANCE 11: PASS - two seeded verify runs (500 polygons, seed 7) emitted byte-identical summaries ({} bytes)",
        a.stdout.len()
    );
}
