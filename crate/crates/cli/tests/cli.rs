//! End-to-end tests of the simctl binary: exit codes, output formats,
//! config-file handling and byte-level determinism.

use std::process::{Command, Output};

fn simctl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_simctl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn help_and_version_exit_zero() {
    assert!(simctl(&["--help"]).status.success());
    assert!(simctl(&["--version"]).status.success());
    assert!(simctl(&["sweep", "--help"]).status.success());
}

#[test]
fn valid_uncoded_run_exits_zero() {
    let out = simctl(&[
        "uncoded", "--scheme", "qam64", "--ebn0", "12", "--symbols", "2000", "--seed", "3",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("qam64"));
    assert!(text.contains("elapsed"));
}

#[test]
fn config_errors_exit_one() {
    // unknown scheme
    let out = simctl(&["uncoded", "--scheme", "qam32"]);
    assert_eq!(out.status.code(), Some(1));
    // unknown flag
    let out = simctl(&["uncoded", "--nonsense"]);
    assert_eq!(out.status.code(), Some(1));
    // conflicting noise refs
    let out = simctl(&["uncoded", "--ebn0", "10", "--esn0", "12"]);
    assert_eq!(out.status.code(), Some(1));
    // missing config file
    let out = simctl(&["uncoded", "--config", "/nonexistent/sim.toml"]);
    assert_eq!(out.status.code(), Some(1));
    // semantic config error, with the field path in the message
    let out = simctl(&["uncoded", "--symbols", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n_symbols"));
    // sweep without a grid
    let out = simctl(&["sweep", "--scheme", "qpsk"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sweep_csv_header_is_pinned() {
    let out = simctl(&[
        "sweep", "--scheme", "qam16", "--ebn0-list", "0,9", "--symbols", "2000", "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(
        text.lines().next().unwrap(),
        "ebn0_db,scheme,n_symbols,symbol_errors,ser,ser_ci_lo,ser_ci_hi,bit_errors,ber,analytic_ser,analytic_ber,seed"
    );
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "sweep", "--scheme", "qam64", "--ebn0-list", "3,9,15", "--symbols", "5000", "--seed",
        "42", "--format", "json",
    ];
    let a = simctl(&args);
    let b = simctl(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let c = simctl(&["table1", "--seeds", "3", "--format", "csv"]);
    let d = simctl(&["table1", "--seeds", "3", "--format", "csv"]);
    assert!(c.status.success());
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn config_file_drives_scenario_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scenario.toml");
    std::fs::write(
        &path,
        r#"
mode = "uncoded"
scheme = "qam64"
n_symbols = 3000
seed = 9

[channel]
noise_ref = "ebn0_db"
noise_value_db = 12.0

[channel.phase_noise]
level_dbc_hz = -76.0
"#,
    )
    .unwrap();
    let base = simctl(&["uncoded", "--config", path.to_str().unwrap(), "--format", "json"]);
    assert!(base.status.success(), "{}", String::from_utf8_lossy(&base.stderr));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&base)).unwrap();
    assert_eq!(parsed["config"]["scheme"], "qam64");
    assert_eq!(parsed["config"]["n_symbols"], 3000);
    assert_eq!(parsed["config"]["seed"], 9);
    assert_eq!(parsed["config"]["channel"]["phase_noise"]["level_dbc_hz"], -76.0);

    // flag overrides beat file values
    let over = simctl(&[
        "uncoded", "--config", path.to_str().unwrap(), "--scheme", "qpsk", "--seed", "11",
        "--format", "json",
    ]);
    assert!(over.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&over)).unwrap();
    assert_eq!(parsed["config"]["scheme"], "qpsk");
    assert_eq!(parsed["config"]["seed"], 11);
    assert_eq!(parsed["config"]["n_symbols"], 3000, "file value survives");
}

#[test]
fn scatter_emits_index_i_q_rows() {
    let out = simctl(&["scatter", "--scheme", "qam16", "--points", "50", "--seed", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "index,i,q");
    assert_eq!(lines.count(), 50);
}

#[test]
fn coded_run_with_echo_reports_recovery() {
    let out = simctl(&[
        "coded", "--scheme", "qam16", "--payload-bytes", "100", "--echo-delay", "64",
        "--echo-gain", "0.5,-0.2", "--format", "json",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        parsed["results"][0]["coded"]["payload_recovered_exactly"],
        true
    );
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let out = simctl(&[
        "sweep", "--scheme", "qpsk", "--ebn0-list", "6", "--symbols", "1000", "--format", "csv",
        "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("ebn0_db,"));
}

#[test]
fn table1_csv_lists_one_row_per_seed() {
    let out = simctl(&["table1", "--seeds", "4", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(
        text.lines().next().unwrap(),
        "scheme,ebn0_db,phase_noise_dbc_hz,n_symbols,seed_index,seed,symbol_errors,ser"
    );
    // 6 rows x 4 seeds
    assert_eq!(text.lines().count(), 1 + 24);
}

#[test]
fn coded_config_file_with_ofdm_and_echo() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("coded.toml");
    std::fs::write(
        &path,
        r#"
mode = "coded"
scheme = "qam16"
payload_bytes = 150
seed = 4

[ofdm]
fft_size = 2048
active_carriers = 1705
guard_fraction = "1/16"

[channel.echo]
delay_samples = 80
gain_re = 0.4
gain_im = 0.1
"#,
    )
    .unwrap();
    let out = simctl(&["coded", "--config", path.to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["config"]["ofdm"]["guard_fraction"], "1/16");
    assert_eq!(parsed["config"]["channel"]["echo"]["delay_samples"], 80);
    assert_eq!(parsed["results"][0]["coded"]["payload_recovered_exactly"], true);

    // an echo outside the guard interval is a config error with a path
    let over = simctl(&[
        "coded", "--config", path.to_str().unwrap(), "--echo-delay", "200",
    ]);
    assert_eq!(over.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&over.stderr).contains("channel.echo.delay_samples"));
}
