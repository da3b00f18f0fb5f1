//! End-to-end checks of the command-line interface: output text, exit
//! codes, format selection, and determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn models() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("models")
}

fn run(args: &[&str]) -> Output {
    run_with_env(args, &[])
}

fn run_with_env(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_statfol"));
    cmd.args(args).env_remove("STATFOL_FORMAT");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("spawn statfol")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn eval_court_implication_is_true() {
    let model = models().join("court.json");
    let out = run(&[
        "eval",
        "--model",
        model.to_str().unwrap(),
        "--formula",
        "[!X1(x) -> X3(x)]_{x} >= 19/20",
        "--semantics",
        "2v",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out), "true\n");
}

#[test]
fn eval_term_prints_exact_rational_and_marked_decimal() {
    let model = models().join("court.json");
    let out = run(&[
        "eval",
        "--model",
        model.to_str().unwrap(),
        "--formula",
        "[!X1(x) -> X3(x)]_{x}",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "19/20\n");

    let out = run(&[
        "eval",
        "--model",
        model.to_str().unwrap(),
        "--formula",
        "[!X1(x) -> X3(x)]_{x}",
        "--decimal",
    ]);
    assert_eq!(stdout(&out), "19/20 (0.95 approx)\n");
}

#[test]
fn eval_with_no_defined_cases_is_undefined() {
    let model = models().join("no_antecedent.json");
    let out = run(&[
        "eval",
        "--model",
        model.to_str().unwrap(),
        "--formula",
        "P1 x. (p(x) ~> q(x))",
        "--semantics",
        "3v",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out), "UNDEFINED\n");
}

#[test]
fn eval_reads_formula_from_file() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("query.txt");
    std::fs::write(&path, "[X4(x) given !X1(x)]_{x}\n").expect("write query");
    let model = models().join("court.json");
    let out = run(&[
        "eval",
        "--model",
        model.to_str().unwrap(),
        "--file",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out), "0\n");
}

#[test]
fn repro_example4_ends_with_pass() {
    let out = run(&["repro", "example4"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).ends_with("PASS\n"), "got: {}", stdout(&out));
}

#[test]
fn repro_all_reports_the_refuted_properties_and_exits_one() {
    let out = run(&["repro", "all"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("all reproductions: FAIL"), "got: {text}");
    assert!(text.contains("property 4 as stated"), "got: {text}");
}

#[test]
fn repro_unknown_name_is_a_usage_error() {
    let out = run(&["repro", "nosuch"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("unknown reproduction"));
    assert!(stdout(&out).is_empty());
}

#[test]
fn repro_structured_output_is_json() {
    let out = run(&["repro", "example4", "--format", "structured"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(doc["name"], "example4");
    assert_eq!(doc["pass"], true);
}

#[test]
fn derive_prints_the_court_chain() {
    let kb = models().join("court.kb");
    let out = run(&[
        "derive",
        "--kb",
        kb.to_str().unwrap(),
        "--goal",
        "BOUND [X4(x)]_{x} >= 19/20",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("goal: BOUND [X4(x)]_{x} >= 19/20\n"));
    assert!(text.contains("WMP"), "got: {text}");
    assert!(text.contains("gives: BOUND [X4(x)]_{x} >= 19/20"));
}

#[test]
fn derive_check_model_annotates_every_fact() {
    let kb = models().join("court.kb");
    let model = models().join("court.json");
    let out = run(&[
        "derive",
        "--kb",
        kb.to_str().unwrap(),
        "--goal",
        "BOUND [X4(x)]_{x} >= 19/20",
        "--check-model",
        model.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("[true on model]"), "got: {text}");
    assert!(text.contains("every step locally sound on the model: yes"));
}

#[test]
fn derive_unreachable_goal_reports_not_found() {
    let kb = models().join("court.kb");
    let out = run(&[
        "derive",
        "--kb",
        kb.to_str().unwrap(),
        "--goal",
        "BOUND [X2(x)]_{x} >= 1/2",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("NOT FOUND"));
}

#[test]
fn search_found_counterexample_exits_one() {
    let out = run(&[
        "search",
        "--property",
        "theorem4_stated_bound",
        "--max-domain",
        "3",
        "--exhaustive",
    ]);
    assert_eq!(code(&out), 1, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("counterexample:"), "got: {text}");
    assert!(!text.contains("counterexample: none"));
}

#[test]
fn search_without_counterexample_exits_zero() {
    let out = run(&[
        "search",
        "--property",
        "theorem3_violation",
        "--max-domain",
        "2",
        "--exhaustive",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("counterexample: none"));
}

#[test]
fn search_random_mode_is_seeded() {
    let args = [
        "search",
        "--property",
        "contraposition_3v",
        "--max-domain",
        "3",
        "--allow-u",
        "--random",
        "--seed",
        "7",
        "--trials",
        "200",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(code(&a), code(&b));
}

#[test]
fn search_unknown_property_is_a_usage_error() {
    let out = run(&["search", "--property", "nosuch", "--exhaustive"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("unknown property"));
}

#[test]
fn search_over_budget_enumeration_is_refused() {
    let out = run(&[
        "search",
        "--property",
        "p1_additivity",
        "--max-domain",
        "3",
        "--allow-u",
        "--exhaustive",
        "--cap",
        "10",
    ]);
    assert_eq!(code(&out), 2, "stderr: {}", stderr(&out));
}

#[test]
fn missing_model_file_is_a_file_error() {
    let out = run(&[
        "eval",
        "--model",
        "/nonexistent/m.json",
        "--formula",
        "p(a)",
    ]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("/nonexistent/m.json"));
}

#[test]
fn malformed_model_file_is_a_file_error() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{ not json").expect("write file");
    let out = run(&[
        "eval",
        "--model",
        path.to_str().unwrap(),
        "--formula",
        "p(a)",
    ]);
    assert_eq!(code(&out), 3);
}

#[test]
fn syntax_error_diagnostic_points_at_the_offending_token() {
    let model = models().join("court.json");
    let out = run(&[
        "eval",
        "--model",
        model.to_str().unwrap(),
        "--formula",
        "[X9(x]_{x}",
    ]);
    assert_eq!(code(&out), 3);
    let err = stderr(&out);
    assert!(err.contains("syntax error at"), "got: {err}");
    assert!(err.contains('^'), "got: {err}");
}

#[test]
fn missing_required_argument_is_a_usage_error() {
    let out = run(&["eval", "--formula", "p(a)"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn env_var_sets_default_format_and_flag_overrides_it() {
    let model = models().join("court.json");
    let args = [
        "eval",
        "--model",
        model.to_str().unwrap(),
        "--formula",
        "[X4(x) given !X1(x)]_{x}",
    ];
    let out = run_with_env(&args, &[("STATFOL_FORMAT", "structured")]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(doc["value"], "0");

    let mut flagged = args.to_vec();
    flagged.extend(["--format", "text"]);
    let out = run_with_env(&flagged, &[("STATFOL_FORMAT", "structured")]);
    assert_eq!(stdout(&out), "0\n");
}

#[test]
fn parse_prints_canonical_rendering() {
    let out = run(&[
        "parse",
        "--formula",
        "P1 x. (p(x) ~> q(x)) ~> (v(x) ~> z(x)) > 9/10",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let canonical = stdout(&out);
    assert!(canonical.contains("~>"));

    let again = run(&["parse", "--formula", canonical.trim()]);
    assert_eq!(
        stdout(&again),
        canonical,
        "canonical form must be a fixed point"
    );
}

#[test]
fn identical_invocations_produce_byte_identical_output() {
    let args = ["repro", "example5"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(code(&a), code(&b));

    let model = models().join("court.json");
    let eval_args = [
        "eval",
        "--model",
        model.to_str().unwrap(),
        "--formula",
        "[X3(x)]_{x}",
        "--format",
        "structured",
    ];
    let a = run(&eval_args);
    let b = run(&eval_args);
    assert_eq!(a.stdout, b.stdout);
}
