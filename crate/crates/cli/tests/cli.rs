use std::process::{Command, Output};

fn bq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bq")).args(args).env_remove("BQ_CONFIG").output().expect("bq runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn normalize_absorbs_a() {
    let o = bq(&["normalize", "R", "a b x_0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "b x_0");
}

#[test]
fn normalize_json_has_steps() {
    let o = bq(&["--json", "normalize", "R", "c b x0 a"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["input"], "c b x_0 a");
    assert_eq!(v["normal_form"], "b x_1 a");
    assert_eq!(v["steps"].as_array().unwrap().len(), 1);
}

#[test]
fn eq_and_ideal_ops() {
    assert_eq!(stdout(&bq(&["eq", "R", "c b y0", "b y0"])).trim(), "true");
    assert_eq!(stdout(&bq(&["eq", "R", "a b y0", "b y0"])).trim(), "false");
    assert_eq!(stdout(&bq(&["ideal", "intersect", "R", "a R", "b R"])).trim(), "b Z");
    assert_eq!(stdout(&bq(&["ideal", "pullback", "R", "a", "b y_2 R"])).trim(), "b y_1 R");
    assert_eq!(stdout(&bq(&["ideal", "member", "R", "X", "x3 a"])).trim(), "true");
    assert_eq!(stdout(&bq(&["ideal", "member", "R", "X", "x3"])).trim(), "false");
    assert_eq!(stdout(&bq(&["ideal", "subset", "R", "b X", "b Z"])).trim(), "true");
}

#[test]
fn foundation_examples() {
    let o = bq(&["foundation", "R", "--target", "b Z", "--family", "b X", "b Y"]);
    assert_eq!(stdout(&o).trim(), "true");
    let o = bq(&["--json", "foundation", "R", "--target", "b Z", "--family", "b x_0 R"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["holds"], false);
    assert_eq!(v["witness"], "b x_1 R");
}

#[test]
fn products_are_accepted() {
    assert_eq!(stdout(&bq(&["ideal", "member", "prod:R:S5", "(b R, a R)", "(b x0, a b)"])).trim(), "true");
    assert_eq!(stdout(&bq(&["eq", "freeprod:free:1:free:1", "a a'", "a' a"])).trim(), "false");
}

#[test]
fn characters() {
    let o = bq(&["char", "classify", "inf | d f"]);
    assert!(stdout(&o).starts_with("MaxType1"));
    assert_eq!(stdout(&bq(&["char", "classify", "ideal b X"])).lines().next(), Some("IdealX"));
    assert_eq!(stdout(&bq(&["char", "eval", "inf | b x0", "b R \\ b x0 R"])).trim(), "0");
    assert_eq!(stdout(&bq(&["char", "eval", "chi b x0 a", "b x0 R"])).trim(), "1");
}

#[test]
fn regularity_verdicts() {
    let inst = r#"{"target": "b Z", "hs": ["a", "c"]}"#;
    let o = bq(&["--json", "--no-timing", "reg", "check", "strong-boundary", "--instance", inst]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "witness");
    assert_eq!(v["witness"].as_array().unwrap().len(), 2);
    let o = bq(&["--json", "reg", "check", "plain", "--instance", inst]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "proved-impossible");
}

#[test]
fn mean_deviation_prints_fractions() {
    let o = bq(&["mean", "dev", "--char", "ideal X", "--elt", "b^-1 c b", "--n", "2,4,8"]);
    assert_eq!(stdout(&o), "n = 2: 1/1\nn = 4: 1/2\nn = 8: 1/4\n");
}

#[test]
fn usage_errors_exit_2() {
    let o = bq(&["normalize", "R", "a q"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("byte 2"));
    assert_eq!(bq(&["normalize", "S7", "a"]).status.code(), Some(2));
    assert_eq!(bq(&["verify", "--check", "nope"]).status.code(), Some(2));
    assert_eq!(bq(&["reg", "check", "plain", "--instance", "{"]).status.code(), Some(2));
}

#[test]
fn verify_selected_checks() {
    let o = bq(&["verify", "--check", "confluence", "--check", "ideal-tables", "--check", "mean-decay"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 3);
}

#[test]
fn output_is_byte_stable() {
    let args = ["--json", "--no-timing", "verify", "--check", "ideal-tables", "--check", "foundation-sets"];
    assert_eq!(bq(&args).stdout, bq(&args).stdout);
}

#[test]
fn config_file_and_overrides() {
    let dir = std::env::temp_dir().join(format!("bq-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.conf");
    std::fs::write(&good, "# bounds\nwindow = [-2, 2]\nprefix = 2\n").unwrap();
    let bad = dir.join("bad.conf");
    std::fs::write(&bad, "window = 3\n").unwrap();
    let run = |path: &std::path::Path, extra: &[&str]| {
        let mut args = vec!["normalize", "R", "a"];
        args.extend_from_slice(extra);
        Command::new(env!("CARGO_BIN_EXE_bq")).args(&args).env("BQ_CONFIG", path).output().unwrap()
    };
    assert_eq!(run(&good, &[]).status.code(), Some(0));
    assert_eq!(run(&bad, &[]).status.code(), Some(2));
    assert_eq!(run(&bad, &["--config", good.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(run(&good, &["--window", "3,1"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}
