use std::process::{Command, Output};

use approx::assert_abs_diff_eq;

fn gtm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gtm"))
        .args(args)
        .env_remove("GTM_CONFIG")
        .output()
        .expect("run gtm")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field(text: &str, key: &str) -> String {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("missing {key} in {text}"))
        .to_string()
}

#[test]
fn gelfond_half() {
    let o = gtm(&["gelfond", "--q", "2", "--c", "1/2"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(field(&s, "period"), "2");
    assert_abs_diff_eq!(
        field(&s, "gamma").parse::<f64>().unwrap(),
        0.79248125036058,
        epsilon = 1e-13
    );
    assert_abs_diff_eq!(
        field(&s, "beta").parse::<f64>().unwrap(),
        3f64.sqrt().ln(),
        epsilon = 1e-13
    );
}

#[test]
fn gelfond_zero_is_full_growth() {
    let o = gtm(&["gelfond", "--c", "0"]);
    assert!(o.status.success());
    assert_abs_diff_eq!(
        field(&stdout(&o), "gamma").parse::<f64>().unwrap(),
        1.0,
        epsilon = 1e-13
    );
}

#[test]
fn nonperiodic_exit_code() {
    let o = gtm(&["gelfond", "--c", "8/21"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(field(&stdout(&o), "status"), "nonperiodic");
}

#[test]
fn json_envelope() {
    let o = gtm(&["--json", "gelfond", "--c", "0.25"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["kind"], "gelfond_certificate");
    assert_eq!(v["data"]["cycle"]["period"], 4);
}

#[test]
fn json_errors_are_machine_readable() {
    let o = gtm(&["--json", "gelfond", "--q", "1", "--c", "0.5"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["kind"], "error");
    assert_eq!(v["data"]["error"], "config");
}

#[test]
fn cycles_listing() {
    let o = gtm(&["cycles", "--q", "2", "--max-period", "13"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines.len(), 58);
    assert_eq!(
        lines[0],
        "q,period,rotation_num,rotation_den,base_digit,s_min,s_max,window_lo,window_hi"
    );
}

#[test]
fn validity_period_two() {
    let o = gtm(&["validity", "--period", "2"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let row: Vec<&str> = s.lines().nth(1).unwrap().split(',').collect();
    let (lo, hi): (f64, f64) = (row[4].parse().unwrap(), row[5].parse().unwrap());
    assert!(lo < 0.428133329021334 && hi > 0.571866670978666);
    assert_abs_diff_eq!(lo + hi, 1.0, epsilon = 1e-12);
}

#[test]
fn table2_marks_gap_rows_skipped() {
    let o = gtm(&["table2", "--c-list", "1/2,8/21,1/4"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines
        .iter()
        .any(|l| l.starts_with("8/21,") && l.ends_with("SKIPPED")));
}

#[test]
fn staircase_is_monotone() {
    let o = gtm(&["staircase", "--points", "64", "--iterations", "4000"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let est: Vec<f64> = s
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(est.len(), 64);
    assert!(est.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn output_is_deterministic_across_threads() {
    let a = gtm(&["--threads", "1", "beta-curve", "--resolution", "40"]);
    let b = gtm(&["--threads", "4", "beta-curve", "--resolution", "40"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_flag_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("curve.csv");
    let svg = dir.path().join("curve.svg");
    let o = gtm(&[
        "beta-curve",
        "--resolution",
        "20",
        "--out",
        csv.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&csv)
        .unwrap()
        .starts_with("c,beta,gamma,period,flag\n"));
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<polyline"));
}

#[test]
fn config_file_from_env() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gtm.conf");
    std::fs::write(&path, "max_period = 4\nformat = json\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_gtm"))
        .args(["cycles"])
        .env("GTM_CONFIG", &path)
        .output()
        .unwrap();
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    // Periods 2, 3 and 4 give 1 + 2 + 2 cycles.
    assert_eq!(v["data"].as_array().unwrap().len(), 5);

    // Flags win over the file.
    let o = Command::new(env!("CARGO_BIN_EXE_gtm"))
        .args(["cycles", "--max-period", "3"])
        .env("GTM_CONFIG", &path)
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["data"].as_array().unwrap().len(), 3);
}

#[test]
fn bad_config_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.conf");
    std::fs::write(&path, "colour = red\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_gtm"))
        .args(["cycles"])
        .env("GTM_CONFIG", &path)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("colour"));
}

#[test]
fn verify_and_checks_pass() {
    assert!(gtm(&["verify"]).status.success());
    assert!(gtm(&["checks", "--grid", "60"]).status.success());
}

#[test]
fn fit_and_sigma_outputs() {
    let o = gtm(&["fit", "--c", "1/2", "--n-max", "8", "--grid", "2048"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 9);
    let o = gtm(&["sigma", "--c", "1/3", "--levels", "5", "--grid", "16"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("x,abs_sigma"));
    let o = gtm(&["profile", "--lambda", "0.2", "--grid", "16"]);
    assert_eq!(stdout(&o).lines().next(), Some("x,e"));
}
