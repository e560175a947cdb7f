use std::process::Command;

fn gstruve(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_gstruve")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = gstruve(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn re(v: &serde_json::Value) -> f64 {
    v["re"].as_str().unwrap().parse().unwrap()
}

#[test]
fn eval_at_origin_is_the_leading_term() {
    let d = json(&["eval", "--a", "0.5", "--nu", "0.25", "--z", "0"]);
    let row = &d["rows"][0];
    // 1 / (Gamma(3/2) Gamma(7/4))
    let want = 1.0 / (0.886_226_925_452_758 * 0.919_062_526_848_883);
    assert!((re(&row["series_value"]) - want).abs() < 1e-14);
    assert!(row["asym_value"].is_null());
}

#[test]
fn eval_with_asymptotics_agrees() {
    let d = json(&["eval", "--a", "0.5", "--nu", "0.25", "--z", "15", "--asym"]);
    assert!(d["rows"][0]["matched_digits"].as_u64().unwrap() >= 9);
}

#[test]
fn decimal_parameters_on_the_negative_branch() {
    let d = json(&["eval", "--a", "-0.2", "--nu", "0.3333333333", "--z", "15", "--asym"]);
    let v = re(&d["rows"][0]["asym_value"]);
    assert!((v / -2.287676991e22 - 1.0).abs() < 1e-9, "{v}");
}

#[test]
fn table_four_as_json() {
    let d = json(&["table", "4"]);
    assert_eq!(d["rows"].as_array().unwrap().len(), 8);
    assert_eq!(d["params"].as_array().unwrap().len(), 4);
}

#[test]
fn csv_has_a_header_and_one_line_per_row() {
    let out = gstruve(&["eval", "--a", "1", "--nu", "1/2", "--z", "3", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 2);
}

#[test]
fn usage_errors_exit_nonzero() {
    let out = gstruve(&["eval", "--a", "0.5", "--bogus"]);
    assert!(!out.status.success());
    assert!(!out.stderr.is_empty());
    let out = gstruve(&["table", "9"]);
    assert!(!out.status.success());
}

#[test]
fn strict_mode_flags_numeric_errors() {
    // The a = -3/5 series cancels past any working precision here.
    let args = ["eval", "--a", "-3/5", "--nu", "1/4", "--z", "12"];
    assert!(gstruve(&args).status.success());
    let mut strict = args.to_vec();
    strict.push("--strict");
    assert!(!gstruve(&strict).status.success());
}
