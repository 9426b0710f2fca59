use std::f64::consts::SQRT_2;
use std::process::{Command, Output};

use serde_json::Value;
use squeeze_core::pollaczek::PollaczekWeight;

fn squeeze(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_squeeze"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = squeeze(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn code(args: &[&str]) -> i32 {
    squeeze(args).status.code().expect("exit code")
}

fn rho(b: f64, lambda: f64) -> f64 {
    PollaczekWeight::new(b).unwrap().density(lambda)
}

fn close(a: &Value, b: f64, tol: f64) -> bool {
    (a.as_f64().unwrap() - b).abs() <= tol * b.abs().max(1.0)
}

#[test]
fn pollaczek_table() {
    let v = json(&["pollaczek", "--n", "0", "--b", "0.25", "--lambda", "-2:2:5"]);
    let values = v["values"].as_array().unwrap();
    assert_eq!(values.len(), 5);
    assert!(values.iter().all(|r| r["output_re"].as_f64() == Some(1.0)));
    let v = json(&["pollaczek", "--n", "1", "--b", "0.25", "--lambda", "1"]);
    assert!(close(&v["values"][0]["output_re"], 2.0 * SQRT_2, 1e-15));
    assert_eq!(v["parameters"]["n"], 1);
}

#[test]
fn pollaczek_rejects_bad_input() {
    assert_eq!(code(&["pollaczek", "--n", "1", "--b", "0"]), 1);
    assert_eq!(code(&["pollaczek", "--n", "1", "--b", "-1"]), 1);
    assert_eq!(
        code(&["pollaczek", "--n", "1", "--b", "0.5", "--lambda", "1:2"]),
        1
    );
    assert_eq!(
        code(&["pollaczek", "--n", "1", "--b", "0.5", "--lambda", "a:b:3"]),
        1
    );
    assert_eq!(code(&["pollaczek", "--b", "0.5"]), 1);
}

#[test]
fn numbers_carry_seventeen_digits() {
    let out = squeeze(&["weight", "--b", "0.5", "--lambda", "0.3"]);
    let s = String::from_utf8(out.stdout).unwrap();
    let v: Value = serde_json::from_str(&s).unwrap();
    let printed = v["values"][0]["output_re"].to_string();
    let digits: String = printed
        .split('e')
        .next()
        .unwrap()
        .chars()
        .filter(|c| c.is_ascii_digit())
        .collect();
    assert_eq!(digits.len(), 17);
    assert!(close(&v["values"][0]["output_re"], rho(0.5, 0.3), 1e-15));
}

#[test]
fn csv_output() {
    let out = squeeze(&[
        "--format",
        "csv",
        "pollaczek",
        "--n",
        "2",
        "--b",
        "1",
        "--lambda",
        "0:1:3",
    ]);
    let s = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "input,output_re,output_im");
    assert_eq!(lines.len(), 4);
}

#[test]
fn moments_command() {
    let v = json(&["moments", "--b", "0.25", "--max-order", "4"]);
    let values = v["values"].as_array().unwrap();
    assert_eq!(values.len(), 5);
    assert!(close(&values[0]["output_re"], 1.0, 1e-15));
    assert_eq!(values[1]["output_re"].as_f64(), Some(0.0));
    assert!(close(&values[2]["output_re"], 0.125, 1e-15));
}

#[test]
fn eigvec_examples() {
    let v = json(&[
        "eigvec",
        "--generator",
        "j2",
        "--lambda",
        "0",
        "--rep",
        "n",
        "--len",
        "4",
    ]);
    assert!(close(
        &v["values"][0]["output_re"],
        rho(0.25, 0.0).sqrt(),
        1e-15
    ));
    assert_eq!(v["metadata"]["truncation"], 4);

    let eta: f64 = 0.7;
    let v = json(&[
        "eigvec",
        "--generator",
        "kplus",
        "--rep",
        "q",
        "--eta",
        "0.7",
    ]);
    let pair = &v["delta_pair"];
    let x = (2.0 * eta).sqrt();
    assert!(close(&pair["locations"][0], -x, 1e-15));
    assert!(close(&pair["locations"][1], x, 1e-15));
    assert!(close(&pair["amplitude"], 1.0 / (2.0 * x), 1e-15));
    let v = json(&[
        "eigvec",
        "--generator",
        "kplus",
        "--rep",
        "q",
        "--eta",
        "0.7",
        "--parity",
        "odd",
    ]);
    assert_eq!(v["delta_pair"]["signs"][0].as_f64(), Some(-1.0));

    let v = json(&[
        "eigvec",
        "--generator",
        "j2",
        "--mode",
        "two",
        "--rep",
        "z",
        "--lambda",
        "0.4",
        "--z",
        "0,0",
        "--z2",
        "0,0",
    ]);
    assert!(close(
        &v["values"][0]["output_re"],
        rho(0.5, 0.4).sqrt(),
        1e-15
    ));

    let v = json(&[
        "eigvec",
        "--generator",
        "j2",
        "--mode",
        "two",
        "--delta-n",
        "-2",
        "--lambda",
        "1",
        "--len",
        "3",
    ]);
    assert_eq!(v["values"][1]["input"], serde_json::json!([1, 3]));

    let v = json(&[
        "eigvec",
        "--generator",
        "j2",
        "--rep",
        "q",
        "--lambda",
        "0.5",
        "--q",
        "-2:2:4",
    ]);
    assert_eq!(v["values"].as_array().unwrap().len(), 4);

    let v = json(&[
        "eigvec",
        "--generator",
        "j2",
        "--mode",
        "two",
        "--rep",
        "q",
        "--lambda",
        "0.5",
        "--q",
        "0.3",
        "--q2",
        "1.7",
    ]);
    assert!(v["values"][0]["output_re"].as_f64().unwrap().is_finite());
}

#[test]
fn eigvec_errors() {
    assert_eq!(
        code(&[
            "eigvec",
            "--generator",
            "j2",
            "--rep",
            "q",
            "--lambda",
            "1",
            "--q",
            "0"
        ]),
        1
    );
    assert_eq!(code(&["eigvec", "--generator", "kplus", "--eta", "0"]), 1);
    assert_eq!(
        code(&[
            "eigvec",
            "--generator",
            "kplus",
            "--eta",
            "-1",
            "--rep",
            "q"
        ]),
        1
    );
    assert_eq!(code(&["eigvec", "--generator", "j2"]), 1);
    assert_eq!(
        code(&["eigvec", "--generator", "j2", "--lambda", "1", "--rep", "z"]),
        1
    );
    assert_eq!(
        code(&[
            "eigvec",
            "--generator",
            "j2",
            "--mode",
            "two",
            "--delta-n",
            "1",
            "--rep",
            "q",
            "--lambda",
            "1",
            "--q",
            "1",
            "--q2",
            "2"
        ]),
        1
    );
}

#[test]
fn classify_examples() {
    let kind = |args: &[&str]| {
        let mut full = vec!["classify"];
        full.extend_from_slice(args);
        json(&full)["result"]["kind"].as_str().unwrap().to_string()
    };
    assert_eq!(kind(&["--a", "1"]), "DiscreteEquidistant");
    assert_eq!(kind(&["--b", "1"]), "DoubledRealLine");
    assert_eq!(kind(&["--a", "0.5", "--b", "0.5"]), "DoubledHalfAxis");
    assert_eq!(
        kind(&[
            "--a",
            "0.5",
            "--b",
            "0.5",
            "--c",
            "1",
            "--psi",
            "1.5707963267948966"
        ]),
        "FullRealLine"
    );
    let v = json(&["classify", "--a", "1"]);
    assert!(close(&v["result"]["scale"], 4.0, 1e-15));
    assert_eq!(v["result"]["multiplicity"], 1);
    assert_eq!(code(&["classify", "--a", "-1"]), 1);
    assert_eq!(code(&["classify", "--a", "1", "--tol", "0"]), 1);
}

#[test]
fn verify_exit_codes() {
    assert_eq!(code(&["verify", "nonsense"]), 1);
    assert_eq!(code(&["verify", "bessel", "--tol", "0"]), 2);
    let v = json(&["verify", "classifier"]);
    assert_eq!(v["suite"], "classifier");
    assert_eq!(v["pass"], true);
    assert!(v.get("runtime_seconds").is_none());
    assert!(v["cases"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["pass"] == true));
}

#[test]
fn verify_all_passes() {
    let v = json(&["verify", "all"]);
    assert_eq!(v["pass"], true);
    assert_eq!(v["reports"].as_array().unwrap().len(), 8);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["verify", "parseval", "--seed", "7", "--trials", "4"];
    assert_eq!(squeeze(&args).stdout, squeeze(&args).stdout);
    let args = [
        "eigvec",
        "--generator",
        "kplus",
        "--mode",
        "two",
        "--eta",
        "0.3",
        "--delta-n",
        "2",
    ];
    assert_eq!(squeeze(&args).stdout, squeeze(&args).stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("squeeze-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("w.json");
    let out = squeeze(&["weight", "--b", "0.75", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "weight");
    std::fs::remove_dir_all(&dir).unwrap();
}
