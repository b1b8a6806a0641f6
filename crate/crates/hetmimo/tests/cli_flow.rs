//! End-to-end command flow: config file -> simulate -> result file -> cdf ->
//! percentiles, plus the validate gate, driven through the same entry point
//! the binary uses.

use clap::Parser;
use hetmimo::cli::{run, Cli};
use hetmimo::results::CampaignResultFile;
use std::path::PathBuf;

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hetmimo-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run_args(args: &[&str]) -> hetmimo::Result<u8> {
    run(Cli::try_parse_from(args).expect("args parse"))
}

#[test]
fn simulate_then_cdf_then_percentiles() {
    let dir = temp_dir("flow");
    let config_path = dir.join("scenario.cfg");
    std::fs::write(
        &config_path,
        "total_antennas = 32\ncbs_antennas = 8\nusers = 4\nepochs = 50\nrng_seed = 42\nserial = true\n",
    )
    .unwrap();
    let out = dir.join("results.json");
    let csv = dir.join("samples.csv");

    let code = run_args(&[
        "hetmimo",
        "simulate",
        "--config",
        config_path.to_str().unwrap(),
        "--schemes",
        "hmmimo,cfmmimo",
        "--out",
        out.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ])
    .unwrap();
    assert_eq!(code, 0);

    let file = CampaignResultFile::load(&out).unwrap();
    assert_eq!(file.seed, 42);
    assert_eq!(file.epochs, 50);
    assert_eq!(file.schemes.len(), 2);
    assert_eq!(file.config.get("epochs").unwrap(), "50");
    // 2 schemes x (2 * 4 * 50 + 2 * 50)
    assert_eq!(file.csv_row_count(), 1000);

    let csv_text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(csv_text.lines().count(), 1001);
    assert!(csv_text.starts_with("scheme,metric,user,epoch,value\n"));

    // cdf from the result file reproduces the same rows.
    let csv2 = dir.join("samples2.csv");
    let code = run_args(&[
        "hetmimo",
        "cdf",
        "--results",
        out.to_str().unwrap(),
        "--out",
        csv2.to_str().unwrap(),
    ])
    .unwrap();
    assert_eq!(code, 0);
    assert_eq!(std::fs::read_to_string(&csv2).unwrap(), csv_text);

    let code = run_args(&["hetmimo", "percentiles", "--results", out.to_str().unwrap()]).unwrap();
    assert_eq!(code, 0);

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn seed_override_reproduces_bitwise() {
    let dir = temp_dir("repro");
    let out_a = dir.join("a.json");
    let out_b = dir.join("b.json");
    for out in [&out_a, &out_b] {
        let code = run_args(&[
            "hetmimo",
            "simulate",
            "--epochs",
            "20",
            "--seed",
            "7",
            "--nb",
            "8",
            "--schemes",
            "hmmimo,ucmmimo",
            "--serial",
            "--out",
            out.to_str().unwrap(),
        ])
        .unwrap();
        assert_eq!(code, 0);
    }
    let a = CampaignResultFile::load(&out_a).unwrap();
    let b = CampaignResultFile::load(&out_b).unwrap();
    for (sa, sb) in a.schemes.iter().zip(&b.schemes) {
        assert_eq!(sa.scheme, sb.scheme);
        for (ma, mb) in sa.metrics.iter().zip(&sb.metrics) {
            assert_eq!(ma.samples, mb.samples);
        }
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn validate_passes_at_reduced_scale() {
    let dir = temp_dir("validate");
    let report = dir.join("report.json");
    let code = run_args(&[
        "hetmimo",
        "validate",
        "--trials",
        "100000",
        "--seed",
        "1",
        "--out",
        report.to_str().unwrap(),
    ])
    .unwrap();
    assert_eq!(code, 0, "oracle suite must pass at the default trial count");
    let text = std::fs::read_to_string(&report).unwrap();
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["passed"], serde_json::Value::Bool(true));
    assert!(json["paths"].as_array().unwrap().len() >= 4);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn invalid_config_names_the_key() {
    let dir = temp_dir("badcfg");
    let config_path = dir.join("bad.cfg");
    std::fs::write(&config_path, "cbs_antennas = 300\n").unwrap();
    let err = run_args(&[
        "hetmimo",
        "simulate",
        "--config",
        config_path.to_str().unwrap(),
        "--out",
        dir.join("x.json").to_str().unwrap(),
    ])
    .unwrap_err();
    assert!(err.to_string().contains("cbs_antennas"), "{err}");
    std::fs::remove_dir_all(&dir).ok();
}
