//! End-to-end checks of the command-line driver.

use std::process::Command;

fn auter(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_auter"))
        .args(args)
        .env(
            "AUTER_CACHE_DIR",
            std::env::temp_dir().join("auter-cli-test"),
        )
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = auter(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn enumerate_rank_two_lists_seven_classes() {
    let text = stdout(&["enumerate", "--rank", "2", "--pointing", "single"]);
    assert!(text.contains("total: 7 classes"));
}

#[test]
fn enumerate_rank_one_lists_one_class() {
    let text = stdout(&["enumerate", "--rank", "1"]);
    assert!(text.contains("total: 1 classes"));
}

#[test]
fn homology_of_the_sphere_truncation() {
    let text = stdout(&[
        "homology",
        "--rank",
        "2",
        "--pointing",
        "double",
        "--deg-max",
        "2",
        "--mod",
        "3",
        "--no-cache",
    ]);
    assert!(text.contains("0,1,,1"), "H_0 row: {text}");
    assert!(text.contains("1,0,,0"), "H_1 row: {text}");
    assert!(text.contains("2,1,,1"), "H_2 row: {text}");
}

#[test]
fn homology_full_double_vanishes() {
    let text = stdout(&[
        "homology",
        "--rank",
        "2",
        "--pointing",
        "double",
        "--mod",
        "3",
        "--no-cache",
    ]);
    for row in ["1,0,,0", "2,0,,0", "3,0,,0"] {
        assert!(text.contains(row), "missing {row} in {text}");
    }
}

#[test]
fn verify_suites_pass() {
    for suite in ["sphere-p3", "classification-p3", "tables-p3"] {
        let out = auter(&["verify", suite]);
        assert!(out.status.success(), "{suite} failed");
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.contains("PASS"));
    }
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let out = auter(&["verify", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_matches_the_closed_form() {
    let text = stdout(&["table", "--p", "3", "--range", "-12", "12"]);
    assert!(text.contains("Z/9 + 3(Z/3)"), "{text}");
    // Degree -8 row carries five summands.
    assert!(text.contains("5(Z/3)"));
}

#[test]
fn table_for_p5_needs_inputs() {
    let out = auter(&["table", "--p", "5", "--range", "0", "8"]);
    assert_eq!(out.status.code(), Some(2));
    // With inputs supplied it runs.
    let dir = std::env::temp_dir().join("auter-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("inputs.json");
    std::fs::write(
        &path,
        serde_json::json!({
            "q_omega": [1, 0, 0, 0, 0, 0, 0],
            "tilde": [[1], [1, 0], [1, 0, 0, 0], [1, 0, 0, 0, 0, 0], [1, 0, 0, 0, 0, 0, 0, 0]],
            "plain": [[1], [1], [1, 0, 0], [1, 0, 0, 0, 0], [1, 0, 0, 0, 0, 0, 0]]
        })
        .to_string(),
    )
    .unwrap();
    let text = stdout(&[
        "table",
        "--p",
        "5",
        "--range",
        "0",
        "8",
        "--inputs",
        path.to_str().unwrap(),
    ]);
    assert!(text.contains("Z/25"));
}

#[test]
fn export_graph_dot() {
    let text = stdout(&["export", "--graph", "psi3", "--format", "dot"]);
    assert!(text.contains("doublecircle"));
    assert!(text.contains("--"));
}

#[test]
fn export_complex_json_and_csv() {
    let json = stdout(&[
        "export",
        "--complex",
        "rank1-single",
        "--format",
        "json",
        "--no-cache",
    ]);
    let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(parsed["dims"][0], 1);
    let csv = stdout(&[
        "export",
        "--complex",
        "rank2-double-deg2",
        "--format",
        "csv",
        "--no-cache",
    ]);
    assert!(csv.starts_with("dimension,cells"));
}

#[test]
fn export_writes_files() {
    let dir = std::env::temp_dir().join("auter-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rose.dot");
    let _ = stdout(&[
        "export",
        "--graph",
        "rose4",
        "--format",
        "dot",
        "--out",
        path.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("graph"));
}

#[test]
fn json_output_parses() {
    for args in [
        vec!["enumerate", "--rank", "1", "--json"],
        vec![
            "homology",
            "--rank",
            "1",
            "--pointing",
            "single",
            "--no-cache",
            "--json",
        ],
        vec!["verify", "q2-contractible", "--json"],
        vec!["table", "--p", "3", "--range", "0", "4", "--json"],
        vec!["nielsen", "--seed", "theta", "--p", "3", "--json"],
    ] {
        let text = stdout(&args);
        serde_json::from_str::<serde_json::Value>(&text)
            .unwrap_or_else(|e| panic!("{args:?} produced invalid JSON: {e}"));
    }
}

#[test]
fn nielsen_closure_of_psi() {
    let text = stdout(&["nielsen", "--seed", "psi", "--p", "3"]);
    assert!(text.contains("2 class(es)"), "{text}");
}

#[test]
fn symmetry_classify_prints_families() {
    let text = stdout(&["symmetry", "--p", "3", "--classify"]);
    for family in ["family A", "family B0", "family C", "family D", "family E"] {
        assert!(text.contains(family), "{text}");
    }
    assert!(text.contains("containment: C < E"));
}

#[test]
fn deterministic_output_with_and_without_cache() {
    let args = [
        "build",
        "--rank",
        "2",
        "--pointing",
        "double",
        "--deg-max",
        "2",
    ];
    let first = stdout(&args);
    let cached = stdout(&args);
    let mut no_cache_args = args.to_vec();
    no_cache_args.push("--no-cache");
    let fresh = stdout(&no_cache_args);
    assert_eq!(first, cached);
    assert_eq!(first, fresh);
}
