//! End-to-end runs of the binary: generate -> noise -> redundancy -> learn ->
//! experiment, checking exit codes and output artifacts.

use std::path::Path;
use std::process::{Command, Output};

fn rulewin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rulewin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn full_pipeline_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let krk = dir.path().join("krk.csv");
    let noisy = dir.path().join("krk-noisy.csv");
    let results = dir.path().join("results.csv");

    let out = rulewin(&[
        "generate", "krk",
        "--count", "3000",
        "--seed", "7",
        "--out", krk.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "generate failed: {out:?}");
    assert!(stdout(&out).contains("wrote 3000 examples"));

    let out = rulewin(&[
        "noise",
        "--data", krk.to_str().unwrap(),
        "--positive-class", "illegal",
        "--level", "0.2",
        "--seed", "3",
        "--out", noisy.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "noise failed: {out:?}");

    let out = rulewin(&[
        "redundancy",
        "--data", krk.to_str().unwrap(),
        "--positive-class", "illegal",
    ]);
    assert!(out.status.success(), "redundancy failed: {out:?}");
    assert!(stdout(&out).contains("redundancy:"));

    let out = rulewin(&[
        "learn",
        "--data", krk.to_str().unwrap(),
        "--positive-class", "illegal",
        "--learner", "dos",
        "--strategy", "integrative",
        "--seed", "1",
    ]);
    assert!(out.status.success(), "learn failed: {out:?}");
    let text = stdout(&out);
    assert!(text.contains("IF ") && text.contains("THEN illegal"));
    assert!(text.contains("training accuracy: 1.000000"));

    let out = rulewin(&[
        "experiment",
        "--krk-count", "3000",
        "--krk-seed", "7",
        "--learner", "dos",
        "--strategy", "basic",
        "--sizes", "500,1000",
        "--repeats", "3",
        "--seed", "5",
        "--out", results.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "experiment failed: {out:?}");
    let table = std::fs::read_to_string(&results).unwrap();
    let lines: Vec<&str> = table.lines().collect();
    // header + 2 sizes x 3 repeats + 2 summary rows
    assert_eq!(lines.len(), 1 + 6 + 2);
    assert!(lines[0].starts_with("size,repeat,seed,accuracy"));
}

#[test]
fn experiment_accepts_a_plan_file() {
    let dir = tempfile::tempdir().unwrap();
    let plan = dir.path().join("plan.json");
    let results = dir.path().join("results.csv");
    std::fs::write(
        &plan,
        r#"{
            "source": {"krk": {"count": 2000, "seed": 1}},
            "learner": "irip",
            "strategy": "noise_tolerant",
            "sizes": [800],
            "repeats": 2,
            "init_size": 100,
            "max_inc_size": 50,
            "alpha": 0.5,
            "seed": 9,
            "eval": "full"
        }"#,
    )
    .unwrap();
    let out = rulewin(&[
        "experiment",
        "--plan", plan.to_str().unwrap(),
        "--out", results.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "plan experiment failed: {out:?}");
    assert!(Path::new(&results).exists());
}

#[test]
fn errors_exit_nonzero_with_a_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.csv");
    let out = rulewin(&[
        "redundancy",
        "--data", missing.to_str().unwrap(),
        "--positive-class", "x",
    ]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));

    // noise-tolerant windowing needs the noise-tolerant learner
    let krk = dir.path().join("krk.csv");
    let out = rulewin(&[
        "generate", "krk", "--count", "500", "--seed", "1",
        "--out", krk.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = rulewin(&[
        "learn",
        "--data", krk.to_str().unwrap(),
        "--positive-class", "illegal",
        "--learner", "dos",
        "--strategy", "noise-tolerant",
    ]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("noise-tolerant"));
}
