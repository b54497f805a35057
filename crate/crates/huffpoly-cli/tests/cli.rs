//! End-to-end tests of the `huffpoly` binary: output contracts, exit codes,
//! and determinism.

use std::process::{Command, Output};

use huffpoly::golden;

fn huffpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_huffpoly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

#[test]
fn polys_matches_canonical_listing() {
    let out = huffpoly(&["polys", "--count", "4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().last(), Some("G_3(x) = x + 2"));

    let out = huffpoly(&["polys", "--count", "1"]);
    assert_eq!(stdout(&out), "G_0(x) = 1\n");

    let out = huffpoly(&["polys"]);
    assert_eq!(stdout(&out), golden::POLYNOMIALS_TXT);
}

#[test]
fn pmin_reports_sequence_and_costs() {
    let out = huffpoly(&["pmin", "3", "3"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("sequence: 1 1 1 2 2 4 4"), "{text}");
    assert!(text.contains("formula cost: 25"), "{text}");
    assert!(text.contains("constructed cost: 25"), "{text}");
    assert!(text.contains("agreement: yes"), "{text}");

    let out = huffpoly(&["pmin", "4", "2"]);
    let text = stdout(&out);
    assert!(text.contains("sequence: 1 1 2 3 5"), "{text}");
    assert!(text.contains("formula cost: 25"), "{text}");

    let out = huffpoly(&["pmin", "1", "2"]);
    let text = stdout(&out);
    assert!(text.contains("sequence: 1 1"), "{text}");
    assert!(text.contains("formula cost: 2"), "{text}");
}

#[test]
fn pmin_rejects_invalid_shapes() {
    assert_eq!(code(&huffpoly(&["pmin", "0", "2"])), 2);
    assert_eq!(code(&huffpoly(&["pmin", "3", "1"])), 2);
}

#[test]
fn huffman_trace_lines() {
    let out = huffpoly(&["huffman", "1 1 1 2 2 4 4", "-m", "3", "--trace"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("  2 2 3 4 4\n"), "{text}");
    assert!(text.contains("  4 4 7\n"), "{text}");
    assert!(text.contains("  15\n"), "{text}");
}

#[test]
fn huffman_smallest_instance() {
    let out = huffpoly(&["huffman", "1 1", "-m", "2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("cost: 2"));
}

#[test]
fn huffman_rejects_bad_size_without_pad() {
    let out = huffpoly(&["huffman", "1 1 2 3", "-m", "3"]);
    assert_eq!(code(&out), 2);
    let text = stderr(&out);
    assert!(text.contains("divisible"), "{text}");
    assert!(text.contains('4'), "{text}");
}

#[test]
fn huffman_pad_fills_the_gap() {
    let out = huffpoly(&["huffman", "1 1 2 3", "-m", "3", "--pad"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("padding: 1 unit weight(s) appended"), "{text}");
    assert!(text.contains("weights: 1 1 1 2 3"), "{text}");
}

#[test]
fn huffman_reads_weights_from_file() {
    let dir = std::env::temp_dir().join("huffpoly-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("weights.txt");
    std::fs::write(&path, "1 1\n2 3 5\n").unwrap();
    let out = huffpoly(&["huffman", "--file", path.to_str().unwrap(), "-m", "2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("cost: 25"));
}

#[test]
fn huffman_sorts_unsorted_input() {
    let out = huffpoly(&["huffman", "5 1 2 1 3", "-m", "2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("weights: 1 1 2 3 5"), "{text}");
    assert!(text.contains("cost: 25"), "{text}");
}

#[test]
fn tables_default_dimensions_match_golden() {
    let out = huffpoly(&["tables", "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), golden::TABLE1_CSV);

    let out = huffpoly(&["tables", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), golden::TABLE2_CSV);
}

#[test]
fn tables_custom_dimensions() {
    let out = huffpoly(&["tables", "2", "--max-arity", "2", "--max-n", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "2,6,13\n");
}

#[test]
fn tables_rejects_cross_table_flags() {
    assert_eq!(code(&huffpoly(&["tables", "1", "--max-arity", "5"])), 2);
    assert_eq!(code(&huffpoly(&["tables", "2", "--max-m", "5"])), 2);
    assert_eq!(code(&huffpoly(&["tables", "3"])), 2);
}

#[test]
fn tables_markdown_rendering() {
    let out = huffpoly(&["tables", "1", "--max-m", "3", "--max-i", "3", "--format", "markdown"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("| m \\ i |"), "{text}");
    assert_eq!(text.lines().count(), 5, "{text}");
}

#[test]
fn verify_tables_passes() {
    let out = huffpoly(&["verify", "tables"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.matches("PASS").count(), 2, "{text}");
    assert!(text.contains("result: 2 passed, 0 failed, 0 skipped"), "{text}");
}

#[test]
fn verify_all_passes() {
    let out = huffpoly(&["verify", "all"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("0 failed"), "{text}");
    assert!(!text.contains("FAIL"), "{text}");
}

#[test]
fn verify_respects_budget_with_explicit_skips() {
    let out = huffpoly(&["verify", "oracle", "--budget", "100"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.matches("SKIP").count(), 2, "{text}");
    assert!(text.contains("exceed budget 100"), "{text}");

    let out = huffpoly(&["verify", "oracle", "--budget", "1e6"]);
    assert_eq!(code(&out), 0);
    assert!(!stdout(&out).contains("SKIP"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec!["tables", "2"],
        vec!["verify", "formulas"],
        vec!["huffman", "1 1 2 2 3 5 5", "-m", "2", "--trace", "--codes"],
        vec!["polys", "--format", "json"],
    ] {
        let first = huffpoly(&args);
        let second = huffpoly(&args);
        assert_eq!(first.stdout, second.stdout, "args: {args:?}");
        assert_eq!(code(&first), code(&second));
    }
}

#[test]
fn json_outputs_parse() {
    for args in [
        vec!["polys", "--count", "5", "--format", "json"],
        vec!["pmin", "2", "3", "--format", "json"],
        vec![
            "huffman", "1 1 2", "-m", "2", "--trace", "--codes", "--format", "json",
        ],
    ] {
        let out = huffpoly(&args);
        assert_eq!(code(&out), 0, "args: {args:?}");
        let parsed: serde_json::Value =
            serde_json::from_str(&stdout(&out)).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        assert!(parsed.is_object(), "args: {args:?}");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&huffpoly(&["frobnicate"])), 2);
    assert_eq!(code(&huffpoly(&["polys", "--count", "x"])), 2);
    assert_eq!(code(&huffpoly(&["huffman", "-m", "2"])), 2);
    assert_eq!(code(&huffpoly(&["huffman", "1 1 oops", "-m", "2"])), 2);
}
