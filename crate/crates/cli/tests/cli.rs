//! End-to-end tests against the built binary: output shapes, exit codes,
//! environment overrides, and the closed-vs-eval round trip.

use std::process::{Command, Output};

use serde_json::Value;

fn plmv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plmv"))
        .args(args)
        .env_remove("PLMV_PRECISION")
        .env_remove("PLMV_TRUNCATION")
        .output()
        .expect("binary runs")
}

fn plmv_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_plmv"));
    cmd.args(args)
        .env_remove("PLMV_PRECISION")
        .env_remove("PLMV_TRUNCATION");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

#[test]
fn closed_normalized_prints_exact_pi_power() {
    let doc = stdout_json(&plmv(&["closed", "--n", "2", "--k", "3", "--normalize"]));
    assert_eq!(doc["command"], "closed");
    assert_eq!(doc["result"]["rendered"], "-1/30240 * pi^6");
    assert!(doc["runtime_ms"].is_u64());

    let text = plmv(&["closed", "--n", "2", "--k", "3", "--normalize", "--output", "text"]);
    assert_eq!(
        String::from_utf8_lossy(&text.stdout).trim(),
        "-1/30240 * pi^6"
    );
}

#[test]
fn eval_reproduces_the_alternating_harmonic_limit() {
    let doc = stdout_json(&plmv(&[
        "eval", "--N", "2", "--M", "2", "--weights", "1", "--T", "200000", "--precision", "20",
    ]));
    assert_eq!(doc["inputs"]["weights"], serde_json::json!([1]));
    assert_eq!(doc["result"]["averaged"], true);
    let re: f64 = doc["result"]["re"].as_str().unwrap().parse().unwrap();
    assert!((re - (-std::f64::consts::LN_2)).abs() < 1e-9, "re = {re}");
    let est: f64 = doc["error_estimate"].as_str().unwrap().parse().unwrap();
    assert!(est > 0.0 && est < 1e-6);
}

#[test]
fn json_output_is_deterministic_up_to_runtime() {
    let strip = |out: &Output| {
        let mut doc = stdout_json(out);
        doc.as_object_mut().unwrap().remove("runtime_ms");
        serde_json::to_string(&doc).unwrap()
    };
    let a = strip(&plmv(&["closed", "--n", "3", "--k", "2"]));
    let b = strip(&plmv(&["closed", "--n", "3", "--k", "2"]));
    assert_eq!(a, b);
}

#[test]
fn usage_errors_exit_two() {
    let missing = plmv(&["eval", "--N", "2", "--M", "2"]);
    assert_eq!(missing.status.code(), Some(2));

    let divergent = plmv(&["eval", "--N", "2", "--M", "1", "--weights", "1"]);
    assert_eq!(divergent.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&divergent.stderr).contains("divergent"));

    let precision = plmv(&["closed", "--n", "2", "--k", "3", "--precision", "5"]);
    assert_eq!(precision.status.code(), Some(2));

    let truncation = plmv(&[
        "eval", "--N", "2", "--M", "2", "--weights", "2", "--T", "999999999",
    ]);
    assert_eq!(truncation.status.code(), Some(2));
}

#[test]
fn failing_verification_exits_one_and_names_the_check() {
    // T = 50 leaves oracle tails far above the acceptance gate
    let out = plmv(&[
        "verify", "--check", "oracle_vs_closed_forms", "--T", "50", "--precision", "10",
        "--max-k", "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("[FAIL] oracle_vs_closed_forms"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("oracle_vs_closed_forms"));
}

#[test]
fn passing_verification_exits_zero() {
    let out = plmv(&[
        "verify", "--check", "decomposition_lemmas", "--precision", "15", "--max-k", "1",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("[PASS] decomposition_lemmas"));
}

#[test]
fn table_emits_csv_grid() {
    let out = plmv(&["table", "--n-max", "2", "--k-max", "2", "--precision", "15"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,n=1,n=2"));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "1");
    let s12: f64 = first[2].parse().unwrap();
    assert!((s12 - (-0.8224670334241132)).abs() < 1e-12);
}

#[test]
fn environment_overrides_apply() {
    let doc = stdout_json(&plmv_env(
        &["closed", "--n", "2", "--k", "1"],
        &[("PLMV_PRECISION", "12")],
    ));
    assert_eq!(doc["inputs"]["precision"], 12);

    let doc = stdout_json(&plmv_env(
        &["eval", "--N", "2", "--M", "2", "--weights", "2"],
        &[("PLMV_TRUNCATION", "5000")],
    ));
    assert_eq!(doc["inputs"]["T"], 5000);
}

#[test]
fn genfun_exact_lists_grid_coefficients() {
    let doc = stdout_json(&plmv(&[
        "genfun", "--N", "2", "--M", "2", "--n", "2", "--k", "2",
    ]));
    let series = doc["result"]["series"].as_array().unwrap();
    assert_eq!(series.len(), 2);
    assert_eq!(series[0]["degree"], 2);
    assert_eq!(series[0]["coefficient"]["rendered"], "-1/2 * zeta(2)");
    assert_eq!(series[1]["degree"], 4);
    assert_eq!(
        series[1]["coefficient"]["rendered"],
        "1/8 * zeta(2)^2 - 7/16 * zeta(4)"
    );
}

/// Evaluate a closed-form JSON document the way a downstream consumer would:
/// parse each term's rational coefficient and generator powers, multiply out
/// against independently computed constants.
fn reevaluate_terms(result: &Value) -> f64 {
    use plmv::bigfloat::BigFloat;
    use plmv::constants;
    let bits = 96;
    let mut acc = 0f64;
    for term in result["terms"].as_array().unwrap() {
        let coeff = plmv::rational::parse_rational(term["coefficient"].as_str().unwrap()).unwrap();
        let mut value = BigFloat::from_rational(&coeff, bits).to_f64();
        for factor in term["monomial"].as_array().unwrap() {
            let power = factor["power"].as_u64().unwrap() as i32;
            let base = match factor["gen"].as_str().unwrap() {
                "log2" => constants::log2(bits).to_f64(),
                "pi" => constants::pi(bits).to_f64(),
                "gamma" => constants::euler_gamma(bits).to_f64(),
                "zeta" => constants::zeta_int(factor["m"].as_u64().unwrap() as u32, bits)
                    .unwrap()
                    .to_f64(),
                other => panic!("unknown generator {other}"),
            };
            value *= base.powi(power);
        }
        acc += value;
    }
    acc
}

#[test]
fn closed_json_round_trips_against_eval() {
    let closed = stdout_json(&plmv(&["closed", "--n", "2", "--k", "2"]));
    let target = reevaluate_terms(&closed["result"]);

    let eval = stdout_json(&plmv(&[
        "eval", "--N", "2", "--M", "2", "--weights", "2,2", "--T", "100000", "--precision", "20",
    ]));
    let value: f64 = eval["result"]["re"].as_str().unwrap().parse().unwrap();
    let estimate: f64 = eval["error_estimate"].as_str().unwrap().parse().unwrap();
    assert!(
        (target - value).abs() <= estimate,
        "closed {target} vs eval {value}, estimate {estimate}"
    );
}

#[test]
fn parallel_verify_matches_serial_output() {
    let run = |jobs: &str| {
        let out = plmv(&[
            "verify", "--suite", "exact", "--jobs", jobs, "--output", "json",
        ]);
        let mut doc = stdout_json(&out);
        doc.as_object_mut().unwrap().remove("runtime_ms");
        doc["inputs"].as_object_mut().unwrap().remove("jobs");
        serde_json::to_string(&doc).unwrap()
    };
    assert_eq!(run("1"), run("4"));
}
