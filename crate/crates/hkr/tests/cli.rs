use std::process::Command;

fn verify(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_verify")).args(args).output().expect("binary runs")
}

#[test]
fn passing_suite_exits_zero_with_json_on_stdout() {
    let out = verify(&["--suite", "cycle", "--max-rank", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 2);
}

#[test]
fn failing_required_check_exits_one() {
    let out = verify(&["--suite", "signs", "--max-rank", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sign-census"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(verify(&[]).status.code(), Some(2));
    assert_eq!(verify(&["--suite", "nope"]).status.code(), Some(2));
    assert_eq!(verify(&["--suite", "dg", "--max-rank", "9"]).status.code(), Some(2));
}

#[test]
fn config_file_with_flag_override_and_markdown_output() {
    let dir = std::env::temp_dir().join(format!("verify-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("cfg.json");
    let report = dir.join("report.md");
    std::fs::write(&cfg, r#"{"suite": "signs", "max_rank": 2, "seed": 4}"#).unwrap();
    let out = verify(&["--config", cfg.to_str().unwrap(), "--suite", "koszul", "--format", "md", "--out", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let md = std::fs::read_to_string(&report).unwrap();
    assert!(md.contains("suite `koszul`") && md.contains("seed 4"));
    std::fs::remove_dir_all(&dir).unwrap();
}
