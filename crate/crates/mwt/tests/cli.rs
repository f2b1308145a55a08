//! Behavior of the `mwt` binary: subcommand output shapes and exit
//! codes (0 success, 1 usage, 2 data error).

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mwt"))
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn fixture_config() -> PathBuf {
    fixtures().join("pipeline.toml")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

#[test]
fn stem_reads_stdin_line_by_line() {
    let mut child = bin()
        .arg("stem")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all("التلوث\nالكيميائى\nبرميل من النفط\n\n".as_bytes())
        .unwrap();
    let output = child.wait_with_output().unwrap();
    assert!(output.status.success());
    assert_eq!(stdout_of(&output), "تلوث\nكيميائ\nبرميل من نفط\n\n");
}

#[test]
fn extract_prints_occurrence_tsv() {
    let output = bin()
        .args(["extract", "--config"])
        .arg(fixture_config())
        .output()
        .unwrap();
    assert!(output.status.success());
    let stdout = stdout_of(&output);
    let mut lines = stdout.lines();
    assert_eq!(
        lines.next().unwrap(),
        "doc\tsentence\tstart\tlength\tpattern\tsurface"
    );
    let first = lines.next().unwrap();
    assert_eq!(first.split('\t').count(), 6);
    assert!(first.contains("تلوث الهواء"));
    assert!(stdout.contains("P2"));
}

#[test]
fn rank_top_limits_rows_and_formats_scores() {
    let output = bin()
        .args(["rank", "--measure", "nlc", "--top", "5", "--config"])
        .arg(fixture_config())
        .output()
        .unwrap();
    assert!(output.status.success());
    let stdout = stdout_of(&output);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 6); // header + 5 rows
    assert_eq!(lines[0], "rank\tscore\tf\tlength\tkey\tsurface");
    let score = lines[1].split('\t').nth(1).unwrap();
    // 9 significant digits
    assert_eq!(score.chars().filter(|c| c.is_ascii_digit()).count(), 9);
    assert_eq!(lines[1].split('\t').next().unwrap(), "1");
}

#[test]
fn stats_prints_per_term_counts() {
    let output = bin()
        .args(["stats", "--config"])
        .arg(fixture_config())
        .output()
        .unwrap();
    assert!(output.status.success());
    let stdout = stdout_of(&output);
    assert!(stdout.starts_with("key\tf\tnested_in\tcontext_words\n"));
    assert!(stdout.lines().count() > 100);
}

#[test]
fn evaluate_emits_matrix_and_json() {
    let output = bin()
        .args(["evaluate", "--k", "5,10", "--config"])
        .arg(fixture_config())
        .output()
        .unwrap();
    assert!(output.status.success());
    let stdout = stdout_of(&output);
    assert!(stdout.starts_with("measure\tp@5\tp@10\n"));
    assert!(stdout.contains("\nnlc\t"));
    assert!(stdout.contains("agrovoc\tllr\t"));

    let output = bin()
        .args(["evaluate", "--k", "5,10", "--json", "--config"])
        .arg(fixture_config())
        .output()
        .unwrap();
    assert!(output.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(parsed["ks"], serde_json::json!([5, 10]));
    assert_eq!(parsed["measures"].as_array().unwrap().len(), 6);
}

#[test]
fn evaluate_refs_override_uses_path_label_pairs() {
    let refs = format!(
        "{}:only",
        fixtures().join("refs_iate.txt").display()
    );
    let output = bin()
        .args(["evaluate", "--refs", &refs, "--k", "10", "--config"])
        .arg(fixture_config())
        .output()
        .unwrap();
    assert!(output.status.success());
    let stdout = stdout_of(&output);
    assert!(stdout.contains("only\tllr\t"));
    assert!(!stdout.contains("agrovoc"));
}

#[test]
fn unknown_subcommand_exits_one() {
    let output = bin().arg("bogus").output().unwrap();
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn unknown_measure_exits_one() {
    let output = bin()
        .args(["rank", "--measure", "mi", "--config"])
        .arg(fixture_config())
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("unknown measure"));
}

#[test]
fn invalid_config_values_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.toml");
    std::fs::write(
        &config,
        "[corpus]\npath = \"c.txt\"\n\n[extract]\nl_max = 1\n",
    )
    .unwrap();
    let output = bin()
        .args(["extract", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("l_max"));
}

#[test]
fn missing_corpus_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("missing.toml");
    std::fs::write(&config, "[corpus]\npath = \"nowhere.txt\"\n").unwrap();
    let output = bin()
        .args(["stats", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn empty_corpus_pipeline_exits_two_with_stage() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("empty.txt"), "").unwrap();
    let config = dir.path().join("empty.toml");
    std::fs::write(&config, "[corpus]\npath = \"empty.txt\"\n").unwrap();
    let output = bin()
        .args(["pipeline", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("extract"));
}

#[test]
fn malformed_token_reports_position_and_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.txt"), "fine/NN\nbad token/NN\n").unwrap();
    let config = dir.path().join("bad.toml");
    std::fs::write(&config, "[corpus]\npath = \"bad.txt\"\n").unwrap();
    let output = bin()
        .args(["extract", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("line 2"), "stderr: {stderr}");
    assert!(stderr.contains("column 1"), "stderr: {stderr}");
}

#[test]
fn help_exits_zero() {
    let output = bin().arg("--help").output().unwrap();
    assert_eq!(output.status.code(), Some(0));
}
