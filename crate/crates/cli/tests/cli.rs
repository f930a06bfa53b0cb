//! End-to-end tests of the `evidence` binary: golden values, table shapes,
//! exit codes, config-file merging, and byte-level determinism.

use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evidence"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    assert!(
        output.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("valid JSON on stdout")
}

#[test]
fn ppv_prior_20_percent_hits_one_half() {
    let out = run(&["ppv", "--alpha", "0.05", "--gamma", "0.2", "--prior", "0.2"]);
    let json = stdout_json(&out);
    assert_eq!(json["single"]["likelihood_ratio"], 4.0);
    assert_eq!(json["single"]["posterior"], 0.5);
}

#[test]
fn ppv_at_least_one_of_five() {
    let out = run(&[
        "ppv", "--alpha", "0.05", "--gamma", "0.2", "--prior", "0.1", "--n", "5",
    ]);
    let json = stdout_json(&out);
    let posterior = json["at_least_one"]["posterior"].as_f64().unwrap();
    assert!((posterior - 0.2482).abs() < 5e-3);
}

#[test]
fn ppv_uninformative_preserves_prior() {
    let out = run(&["ppv", "--alpha", "0.1", "--gamma", "0.1", "--prior", "0.3"]);
    let json = stdout_json(&out);
    assert_eq!(json["single"]["posterior"], 0.3);
}

#[test]
fn ppv_missing_flags_is_usage_error() {
    let out = run(&["ppv", "--alpha", "0.05"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing required parameter"));
}

const FRAMEWORK: &[&str] = &[
    "--alpha-weak", "0.05", "--gamma-weak", "0.2", "--alpha-strong", "0.01",
    "--gamma-strong", "0.9", "--cw", "1", "--prior", "0.5",
];

fn with_framework<'a>(mut head: Vec<&'a str>, tail: &[&'a str]) -> Vec<String> {
    head.extend_from_slice(FRAMEWORK);
    head.extend_from_slice(tail);
    head.into_iter().map(String::from).collect()
}

fn run_owned(args: &[String]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evidence"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn posterior_column_decreases_below_threshold() {
    let args = with_framework(
        vec!["posterior"],
        &["--interest", "gamma:1,0.05", "--j-max", "5", "--k", "0"],
    );
    let json = stdout_json(&run_owned(&args));
    assert_eq!(json["paradoxical"], true);
    let cells = json["cells"].as_array().unwrap();
    let posteriors: Vec<f64> = cells
        .iter()
        .map(|c| c["posterior"].as_f64().unwrap())
        .collect();
    assert_eq!(posteriors.len(), 6);
    for pair in posteriors.windows(2) {
        assert!(pair[1] < pair[0], "column not decreasing: {posteriors:?}");
    }
}

#[test]
fn posterior_column_increases_above_threshold() {
    let args = with_framework(
        vec!["posterior"],
        &["--interest", "gamma:1,10", "--j-max", "5", "--k", "0"],
    );
    let json = stdout_json(&run_owned(&args));
    assert_eq!(json["paradoxical"], false);
    let cells = json["cells"].as_array().unwrap();
    let posteriors: Vec<f64> = cells
        .iter()
        .map(|c| c["posterior"].as_f64().unwrap())
        .collect();
    for pair in posteriors.windows(2) {
        assert!(pair[1] > pair[0], "column not increasing: {posteriors:?}");
    }
}

#[test]
fn observing_nothing_is_evidence_against() {
    let args = with_framework(
        vec!["posterior"],
        &["--interest", "gamma:1,0.1", "--j", "0", "--k", "0"],
    );
    let json = stdout_json(&run_owned(&args));
    let posterior = json["cells"][0]["posterior"].as_f64().unwrap();
    assert!(posterior < 0.5);
}

#[test]
fn posterior_strength_ordering_violation_exits_2() {
    let out = run(&[
        "posterior", "--alpha-weak", "0.05", "--gamma-weak", "0.2", "--alpha-strong",
        "0.01", "--gamma-strong", "0.03", "--cw", "1", "--prior", "0.5", "--interest",
        "gamma:1,0.1", "--j", "0", "--k", "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("strength ordering"));
}

#[test]
fn region_flips_exactly_once_at_the_threshold() {
    let args = with_framework(
        vec!["region"],
        &["--beta-grid", "0.05,0.5,10", "--format", "csv"],
    );
    let out = run_owned(&args);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "beta,kappa,paradox,posterior_1_0,posterior_0_0,beta_star"
    );
    let flags: Vec<bool> = lines
        .map(|l| l.split(',').nth(2).unwrap() == "true")
        .collect();
    let flips = flags.windows(2).filter(|w| w[0] != w[1]).count();
    assert_eq!(flips, 1, "expected a single flip, got {flags:?}");
    assert!(flags[0], "grid starts below the threshold");
}

#[test]
fn region_flip_point_ignores_kappa() {
    let args = with_framework(
        vec!["region"],
        &[
            "--beta-grid", "0.05,0.5,10", "--kappa-grid", "0.5,3,3", "--format", "csv",
        ],
    );
    let out = run_owned(&args);
    let text = String::from_utf8(out.stdout).unwrap();
    // paradox flag per (kappa, beta) row: identical flag sequence per kappa
    let rows: Vec<(String, bool)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let mut fields = l.split(',');
            let beta = fields.next().unwrap().to_string();
            let flag = fields.nth(1).unwrap() == "true";
            (beta, flag)
        })
        .collect();
    let per_kappa = rows.len() / 3;
    for chunk in rows.chunks(per_kappa).skip(1) {
        for (a, b) in rows[..per_kappa].iter().zip(chunk) {
            assert_eq!(a.0, b.0, "beta grids differ between kappa slices");
            assert_eq!(a.1, b.1, "paradox flag moved with kappa at beta {}", a.0);
        }
    }
}

#[test]
fn region_empty_grid_is_usage_error() {
    let args = with_framework(vec!["region"], &["--beta-grid", "0.1,0.5,0"]);
    let out = run_owned(&args);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn simulate_small_run_passes_both_oracles() {
    let args = with_framework(
        vec!["simulate"],
        &[
            "--interest", "gamma:1,0.1", "--samples", "50000", "--seed", "7",
        ],
    );
    let out = run_owned(&args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["model"], "framework");
    assert_eq!(json["passed"], true);
    assert!(json["monte_carlo"]["cells"].as_array().unwrap().len() > 3);
    assert!(json["quadrature"].as_array().unwrap().len() == 72);
}

#[test]
fn simulate_single_sample_warns_and_exits_zero() {
    let args = with_framework(
        vec!["simulate"],
        &[
            "--interest", "gamma:1,0.1", "--samples", "1", "--seed", "0", "--oracle",
            "montecarlo",
        ],
    );
    let out = run_owned(&args);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("inconclusive"));
}

#[test]
fn simulate_uniform_prior_reports_indexing() {
    let args = with_framework(
        vec!["simulate"],
        &["--interest", "uniform:3", "--oracle", "quadrature"],
    );
    let out = run_owned(&args);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["indexing_check"]["matched"], "standard");
    assert!(String::from_utf8_lossy(&out.stderr).contains("standard form matched"));
}

#[test]
fn simulate_homogeneous_mode() {
    let out = run(&[
        "simulate", "--alpha", "0.05", "--p", "0.025", "--shift", "1", "--interest",
        "gamma:1,0.1", "--prior", "0.5", "--samples", "50000", "--seed", "3",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["model"], "homogeneous");
    assert_eq!(json["passed"], true);
}

#[test]
fn homogeneous_zero_shift_has_no_paradox() {
    let out = run(&[
        "homogeneous", "--alpha", "0.05", "--p", "0.025", "--shift", "0", "--interest",
        "gamma:1,0.01", "--prior", "0.5",
    ]);
    let json = stdout_json(&out);
    assert_eq!(json["threshold_exact"]["kind"], "no_rates");
    assert_eq!(json["paradoxical"], false);
}

#[test]
fn homogeneous_derives_shift_from_design() {
    let out = run(&[
        "homogeneous", "--alpha", "0.05", "--p", "0.025", "--effect", "0.5", "--sd", "1",
        "--n", "16", "--interest", "gamma:1,0.5", "--prior", "0.5",
    ]);
    let json = stdout_json(&out);
    assert_eq!(json["shift"], 2.0);
}

#[test]
fn homogeneous_rejects_p_at_alpha() {
    let out = run(&[
        "homogeneous", "--alpha", "0.05", "--p", "0.05", "--shift", "1", "--interest",
        "gamma:1,0.1", "--prior", "0.5",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn homogeneous_power_table_from_csv() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "x,gamma_x").unwrap();
    writeln!(file, "0.005,0.10").unwrap();
    writeln!(file, "0.025,0.22").unwrap();
    writeln!(file, "0.05,0.30").unwrap();
    let out = run(&[
        "homogeneous", "--alpha", "0.05", "--p", "0.025",
        "--power-table", file.path().to_str().unwrap(),
        "--interest", "gamma:1,0.05", "--prior", "0.5",
    ]);
    let json = stdout_json(&out);
    assert_eq!(json["gamma_p"], 0.22);
    assert_eq!(json["gamma_alpha"], 0.3);
}

#[test]
fn config_file_supplies_parameters_and_flags_override() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(
        file,
        r#"{{"alpha": 0.05, "gamma": 0.2, "prior": 0.2}}"#
    )
    .unwrap();
    let path = file.path().to_str().unwrap();
    // config alone
    let out = run(&["ppv", "--config", path]);
    let json = stdout_json(&out);
    assert_eq!(json["single"]["posterior"], 0.5);
    // flag overrides the config prior
    let out = run(&["ppv", "--config", path, "--prior", "0.1"]);
    let json = stdout_json(&out);
    let posterior = json["single"]["posterior"].as_f64().unwrap();
    assert!((posterior - 0.3077).abs() < 5e-4);
}

#[test]
fn config_rejects_unknown_keys() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, r#"{{"alpha": 0.05, "turbo": true}}"#).unwrap();
    let out = run(&["ppv", "--config", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = with_framework(
        vec!["simulate"],
        &[
            "--interest", "gamma:1,0.1", "--samples", "20000", "--seed", "11",
        ],
    );
    let first = run_owned(&args);
    let second = run_owned(&args);
    assert_eq!(first.stdout, second.stdout);
    let csv_args: Vec<String> = args
        .iter()
        .cloned()
        .chain(["--format".to_string(), "csv".to_string()])
        .collect();
    let first = run_owned(&csv_args);
    let second = run_owned(&csv_args);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn output_goes_to_file_when_requested() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let out = run(&[
        "ppv", "--alpha", "0.05", "--gamma", "0.2", "--prior", "0.2", "--format", "csv",
        "--output", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.starts_with("scenario,n,j,likelihood_ratio,posterior\n"));
}
