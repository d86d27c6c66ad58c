use std::path::PathBuf;
use std::process::{Command, Output};

use pvlab::bsc::{bsc_joint, BlockCode, BscParams};
use pvlab::hypothesis::bound_report;
use pvlab::io::bound_report_json;
use pvlab::ExactProbability;
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn pvlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pvlab")).args(args).env("RUST_LOG", "warn").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json_of(o: &Output) -> Value {
    assert!(o.status.success(), "stderr: {}", stderr(o));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn bounds_on_repetition_fixture() {
    let v = json_of(&pvlab(&["bounds", "--dist", &fixture("bsc2.json")]));
    assert_eq!(v["p_e"], "1/4");
    assert_eq!(v["asymptotic_pv"], "1/16");
    assert_eq!(v["gvh_value"], "1/4");
    assert_eq!(v["gvh_gamma_star"], "3/4");
    assert_eq!(v["all_bounds_below_p_e"], true);

    let v = json_of(&pvlab(&["bounds", "--dist", &fixture("bsc2.json"), "--alpha", "1"]));
    assert_eq!(v["generalized_pv"][0]["value"], "0");
    let v = json_of(&pvlab(&["bounds", "--dist", &fixture("bsc2.json"), "--theta", "1,50", "--alpha", "0.25"]));
    assert_eq!(v["generalized_pv"].as_array().unwrap().len(), 2);
}

#[test]
fn malformed_inputs_exit_with_errors() {
    let o = pvlab(&["bounds", "--dist", &fixture("bad_prob.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("1/0"));

    let o = pvlab(&["bounds", "--dist", &fixture("unnormalized.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("total mass is 3/4"));

    let o = pvlab(&["bsc", "--code", &fixture("single.code"), "--p", "1/4"]);
    assert_eq!(o.status.code(), Some(2));
    let o = pvlab(&["bsc", "--code", &fixture("mixed.code"), "--p", "1/4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"));

    for bad in ["1/2", "0.6", "1e-1", "nan"] {
        let o = pvlab(&["bsc", "--code", &fixture("rep2.code"), "--p", bad]);
        assert_eq!(o.status.code(), Some(2), "--p {bad}");
    }
}

#[test]
fn sweep_rows_reach_the_footer() {
    let o = pvlab(&["sweep-theta", "--dist", &fixture("bsc2.json"), "--alpha", "1/3", "--theta-max", "12", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "theta,event_mass,bound");
    assert_eq!(*lines.last().unwrap(), "asymptotic,1/16,1/16");
    assert_eq!(lines[12], "12,1/16,1/24");
    assert_eq!(lines.len(), 14);

    let v = json_of(&pvlab(&["sweep-theta", "--dist", &fixture("bsc2.json"), "--alpha", "1/3"]));
    assert_eq!(v["asymptotic"], "1/16");
    assert!(v["theta0"].is_u64());
}

#[test]
fn sweep_on_erasure_channel_is_flat() {
    let o = pvlab(&["sweep-theta", "--dist", &fixture("bec2.json"), "--alpha", "0.4", "--theta-max", "30", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).take(30).map(|l| l.split_once(',').unwrap().1).collect();
    assert!(rows.windows(2).all(|w| w[0] == w[1]));

    let o = pvlab(&["sweep-theta", "--dist", &fixture("bec2.json"), "--alpha", "1/2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn single_theta_sweep_is_the_plain_bound() {
    let o = pvlab(&["sweep-theta", "--dist", &fixture("bsc2.json"), "--alpha", "1/10", "--theta-max", "1", "--format", "csv"]);
    let text = stdout(&o);
    let row = text.lines().nth(1).unwrap();
    let v = json_of(&pvlab(&["bounds", "--dist", &fixture("bsc2.json"), "--alpha", "1/10"]));
    assert_eq!(row.rsplit(',').next().unwrap(), v["generalized_pv"][0]["value"].as_str().unwrap());
}

#[test]
fn bsc_report_and_certificates() {
    let v = json_of(&pvlab(&["bsc", "--code", &fixture("rep2.code"), "--p", "1/4"]));
    assert_eq!((v["a_n"].as_str(), v["b_n"].as_str(), v["delta_n"].as_str()), (Some("1/4"), Some("1/16"), Some("3/8")));
    assert_eq!(v["sandwich_holds"], true);
    assert_eq!(v["gap_check"]["holds"], true);
    assert_eq!(v["gap_check"]["slack"], "0");

    let o = pvlab(&["bsc", "--code", &fixture("rep2.code"), "--p", "1/4"]);
    assert_eq!(o.stdout, pvlab(&["bsc", "--code", &fixture("rep2.code"), "--p", "1/4"]).stdout);
}

#[test]
fn ceiling_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_pvlab"))
        .args(["bsc", "--code", &fixture("three.code"), "--p", "1/4"])
        .env("PVLAB_ENUM_CEILING", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("ceiling"));
}

#[test]
fn pairwise_values() {
    let v = json_of(&pvlab(&["pairwise", "--n", "2", "--d", "2", "--p", "1/4"]));
    assert_eq!((v["b_prob"].as_str(), v["omega_exact"].as_str(), v["omega_lower"].as_str()), (Some("3/8"), Some("1/16"), Some("1/16")));
    assert_eq!(v["ratio_check"], true);
    let v = json_of(&pvlab(&["pairwise", "--n", "5", "--d", "1", "--p", "1/4"]));
    assert_eq!((v["b_prob"].as_str(), v["omega_lower"].as_str()), (Some("0"), Some("0")));
    let v = json_of(&pvlab(&["pairwise", "--n", "6", "--d", "4", "--p", "1/10"]));
    assert_eq!((v["b_prob"].as_str(), v["omega_exact"].as_str(), v["omega_lower"].as_str()), (Some("243/5000"), Some("37/10000"), Some("9/2500")));
    assert_eq!(pvlab(&["pairwise", "--n", "3", "--d", "4", "--p", "1/4"]).status.code(), Some(2));
}

#[test]
fn exponent_outputs() {
    let o = pvlab(&["exponent", "--family", "antipodal", "--p", "1/4", "--n-min", "2", "--n-max", "16", "--n-step", "2", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), "n,M,a_n,b_n,delta_n,rate_a,rate_b,rate_delta,gap,rate_cap");
    assert_eq!(text.lines().count(), 9);
    let summary: Value = serde_json::from_str(&stderr(&o)).unwrap();
    assert!((summary["e0_reference"].as_f64().unwrap() - 0.0719205).abs() < 1e-6);
    let gaps: Vec<f64> = text.lines().skip(1).map(|l| l.split(',').nth(8).unwrap().parse().unwrap()).collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]));

    let args = ["exponent", "--family", "random", "--m", "4", "--seed", "1", "--p", "1/10", "--n-min", "8", "--n-max", "20", "--n-step", "1"];
    let first = pvlab(&args);
    let v = json_of(&first);
    assert_eq!(v["summary"]["theorem1_satisfied"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 13);
    assert_eq!(first.stdout, pvlab(&args).stdout);

    let o = pvlab(&["exponent", "--p", "1/4", "--n-min", "6", "--n-max", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("empty"));
}

#[test]
fn odd_antipodal_rows_mark_infinite_tie_rate() {
    let o = pvlab(&["exponent", "--p", "1/10", "--n-min", "3", "--n-max", "5", "--format", "csv"]);
    let text = stdout(&o);
    for line in text.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        if cols[0] == "3" || cols[0] == "5" {
            assert_eq!(cols[4], "0");
            assert_eq!(cols[7], "inf");
        }
    }
}

#[test]
fn verify_checks_every_pair() {
    let v = json_of(&pvlab(&["verify", "--code", &fixture("four.code"), "--p", "2/5"]));
    assert_eq!(v["pairs"].as_array().unwrap().len(), 6);
    assert_eq!(v["all_hold"], true);
}

#[test]
fn exported_joint_round_trips_through_bounds() {
    let dir = std::env::temp_dir().join(format!("pvlab-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("three.json");
    let o = pvlab(&["joint", "--code", &fixture("three.code"), "--p", "1/10", "--out", path.to_str().unwrap()]);
    assert!(o.status.success() && o.stdout.is_empty());
    let from_cli = json_of(&pvlab(&["bounds", "--dist", path.to_str().unwrap()]));

    let code = BlockCode::from_strs(&["000", "111", "011"]).unwrap();
    let params = BscParams::new(ExactProbability::parse("1/10").unwrap()).unwrap();
    let joint = bsc_joint(&code, &params).unwrap();
    let mut expected = bound_report_json(&joint, &bound_report(&joint).unwrap());
    expected.as_object_mut().unwrap().insert("all_bounds_below_p_e".into(), Value::Bool(true));
    assert_eq!(from_cli, expected);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn csv_flattening_of_reports() {
    let o = pvlab(&["bsc", "--code", &fixture("rep2.code"), "--p", "1/4", "--format", "csv"]);
    let text = stdout(&o);
    assert!(text.starts_with("key,value\n"));
    assert!(text.contains("\ngap_check.slack,0\n"));
    assert!(text.contains("\nper_codeword.1.tie,3/8\n"));
}
