//! Command-line front end: `simulate`, `validate`, `cdf`, and `percentiles`.
//!
//! The binary is a thin wrapper over the library; everything here is also
//! callable programmatically (the integration tests drive [`run`] directly).

use crate::config::NetworkConfig;
use crate::error::{Error, Result};
use crate::harness::run_campaign;
use crate::oracle::{self, ValidationReport, DEFAULT_TRIALS};
use crate::results::{format_percentile_table, write_cdf_csv, CampaignResultFile};
use crate::sinr::Scheme;
use clap::{Args, Parser, Subcommand};
use std::io::Write;
use std::path::PathBuf;

/// The reference scenario's five curves.
pub const DEFAULT_SCHEMES: &str = "hmmimo-half,hmmimo-quarter,mmimo,cfmmimo,ucmmimo";

#[derive(Debug, Parser)]
#[command(
    name = "hetmimo",
    about = "Monte Carlo simulator for heterogeneous cell-free massive MIMO",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a full campaign and write a self-describing JSON result file.
    Simulate(SimulateArgs),
    /// Run the signal-level oracle suite and report per-term relative errors.
    Validate(ValidateArgs),
    /// Emit plot-ready CSV (one row per sample) from a result file or a fresh run.
    Cdf(CdfArgs),
    /// Print the p05/p50/p95 table per scheme and metric.
    Percentiles(PercentilesArgs),
}

/// Scenario selection shared by the campaign-driven subcommands.
#[derive(Debug, Args, Clone)]
pub struct ScenarioArgs {
    /// Flat key-value config file; defaults apply when omitted.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Override the RNG seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Override the epoch count.
    #[arg(long)]
    pub epochs: Option<usize>,
    /// Comma-separated schemes: mmimo, cfmmimo, ucmmimo, hmmimo,
    /// `hmmimo:<antennas>`, `hmmimo-half`, `hmmimo-quarter`.
    #[arg(long)]
    pub schemes: Option<String>,
    /// Override the CBS antenna count (consumed by the `hmmimo` token).
    #[arg(long)]
    pub nb: Option<usize>,
    /// Force deterministic single-threaded epoch execution.
    #[arg(long)]
    pub serial: bool,
    /// Scale spectral efficiencies by the pilot-overhead factor.
    #[arg(long)]
    pub overhead: bool,
}

impl ScenarioArgs {
    pub fn build(&self) -> Result<(NetworkConfig, Vec<Scheme>)> {
        let mut config = match &self.config {
            Some(path) => NetworkConfig::load(path)?,
            None => NetworkConfig::default(),
        };
        if let Some(seed) = self.seed {
            config.rng_seed = seed;
        }
        if let Some(epochs) = self.epochs {
            config.epochs = epochs;
        }
        if let Some(nb) = self.nb {
            config.cbs_antennas = nb;
        }
        if self.serial {
            config.serial = true;
        }
        if self.overhead {
            config.pilot_overhead = true;
        }
        config.validate()?;
        let schemes =
            Scheme::parse_list(self.schemes.as_deref().unwrap_or(DEFAULT_SCHEMES), &config)?;
        if schemes.is_empty() {
            return Err(Error::SchemeSetup("empty scheme list".into()));
        }
        Ok((config, schemes))
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// Result file to write (JSON).
    #[arg(long, default_value = "results.json")]
    pub out: PathBuf,
    /// Also emit the per-sample CSV here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Config file for the oracle scenario; defaults to the reduced scale
    /// (16 antennas, 4 users, 8 at the CBS).
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Signal-level trials per path.
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    pub trials: usize,
    /// Write the machine-readable report here (JSON).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CdfArgs {
    /// Read samples from an existing result file instead of running.
    #[arg(long)]
    pub results: Option<PathBuf>,
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PercentilesArgs {
    /// Read an existing result file instead of running.
    #[arg(long)]
    pub results: Option<PathBuf>,
    #[command(flatten)]
    pub scenario: ScenarioArgs,
}

/// Execute a parsed command. Returns the process exit code.
pub fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Simulate(args) => {
            let (config, schemes) = args.scenario.build()?;
            let result = run_campaign(&config, &schemes)?;
            let file = CampaignResultFile::build(&config, &result)?;
            file.save(&args.out)?;
            println!(
                "wrote {} ({} schemes, {} epochs, seed {})",
                args.out.display(),
                file.schemes.len(),
                file.epochs,
                file.seed
            );
            if let Some(csv_path) = &args.csv {
                let mut f = std::fs::File::create(csv_path)?;
                write_cdf_csv(&mut f, &file)?;
                println!(
                    "wrote {} ({} rows)",
                    csv_path.display(),
                    file.csv_row_count()
                );
            }
            print!("{}", format_percentile_table(&file));
            Ok(0)
        }
        Command::Validate(args) => {
            let config = match &args.config {
                Some(path) => NetworkConfig::load(path)?,
                None => oracle::validation_config(),
            };
            let seed = args.seed.unwrap_or(config.rng_seed);
            let report = oracle::run_validation(&config, args.trials, seed)?;
            print!("{}", format_validation_report(&report));
            if let Some(path) = &args.out {
                std::fs::write(path, validation_report_json(&report)?)?;
                println!("wrote {}", path.display());
            }
            if report.passed() {
                println!("validation: PASS ({} paths)", report.paths.len());
                Ok(0)
            } else {
                println!("validation: FAIL");
                Ok(1)
            }
        }
        Command::Cdf(args) => {
            let file = load_or_run(&args.results, &args.scenario)?;
            match &args.out {
                Some(path) => {
                    let mut f = std::fs::File::create(path)?;
                    write_cdf_csv(&mut f, &file)?;
                    println!("wrote {} ({} rows)", path.display(), file.csv_row_count());
                }
                None => {
                    let stdout = std::io::stdout();
                    let mut lock = stdout.lock();
                    write_cdf_csv(&mut lock, &file)?;
                    lock.flush()?;
                }
            }
            Ok(0)
        }
        Command::Percentiles(args) => {
            let file = load_or_run(&args.results, &args.scenario)?;
            print!("{}", format_percentile_table(&file));
            Ok(0)
        }
    }
}

fn load_or_run(results: &Option<PathBuf>, scenario: &ScenarioArgs) -> Result<CampaignResultFile> {
    match results {
        Some(path) => CampaignResultFile::load(path),
        None => {
            let (config, schemes) = scenario.build()?;
            let result = run_campaign(&config, &schemes)?;
            CampaignResultFile::build(&config, &result)
        }
    }
}

fn format_validation_report(report: &ValidationReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "oracle suite: {} trials per path, seed {}\n",
        report.trials, report.seed
    ));
    for p in &report.paths {
        out.push_str(&format!(
            "[{}] path {} user {}: sinr {:.6} vs closed form {:.6} (rel err {:.4})\n",
            if p.passed() { "pass" } else { "FAIL" },
            p.path,
            p.user,
            p.empirical_sinr,
            p.closed_form_sinr,
            p.sinr_rel_err
        ));
        for t in &p.terms {
            out.push_str(&format!(
                "    {:<6} empirical {:.6e}  expected {:.6e}  rel err {:.4}\n",
                t.name, t.empirical, t.expected, t.rel_err
            ));
        }
        out.push_str(&format!(
            "    decomposition gap {:.4}, max cross-corr {:.2} se, reconstruction {:.2e}\n",
            p.decomposition_gap, p.max_cross_sigma, p.reconstruction_max_rel
        ));
        if let Some(power) = p.tx_power_per_antenna {
            out.push_str(&format!("    per-antenna tx power {power:.4}\n"));
        }
        if let Some(psi) = p.psi_rel_err {
            out.push_str(&format!(
                "    dl-pilot estimate variance rel err {psi:.4}\n"
            ));
        }
    }
    out
}

fn validation_report_json(report: &ValidationReport) -> Result<String> {
    let paths: Vec<serde_json::Value> = report
        .paths
        .iter()
        .map(|p| {
            serde_json::json!({
                "path": p.path,
                "user": p.user,
                "passed": p.passed(),
                "empirical_sinr": p.empirical_sinr,
                "closed_form_sinr": p.closed_form_sinr,
                "sinr_rel_err": p.sinr_rel_err,
                "decomposition_gap": p.decomposition_gap,
                "max_cross_sigma": p.max_cross_sigma,
                "reconstruction_max_rel": p.reconstruction_max_rel,
                "tx_power_per_antenna": p.tx_power_per_antenna,
                "psi_rel_err": p.psi_rel_err,
                "terms": p.terms.iter().map(|t| serde_json::json!({
                    "name": t.name,
                    "empirical": t.empirical,
                    "expected": t.expected,
                    "rel_err": t.rel_err,
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(serde_json::to_string_pretty(&serde_json::json!({
        "trials": report.trials,
        "seed": report.seed,
        "passed": report.passed(),
        "paths": paths,
    }))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scenario_overrides_apply() {
        let args = ScenarioArgs {
            config: None,
            seed: Some(7),
            epochs: Some(3),
            schemes: Some("cfmmimo".into()),
            nb: Some(32),
            serial: true,
            overhead: true,
        };
        let (config, schemes) = args.build().unwrap();
        assert_eq!(config.rng_seed, 7);
        assert_eq!(config.epochs, 3);
        assert_eq!(config.cbs_antennas, 32);
        assert!(config.serial);
        assert!(config.pilot_overhead);
        assert_eq!(schemes, vec![Scheme::CfMimo]);
    }

    #[test]
    fn default_scheme_list_is_the_five_curves() {
        let args = ScenarioArgs {
            config: None,
            seed: None,
            epochs: None,
            schemes: None,
            nb: None,
            serial: false,
            overhead: false,
        };
        let (config, schemes) = args.build().unwrap();
        assert_eq!(schemes.len(), 5);
        assert_eq!(schemes[0], Scheme::HmMimo { cbs_antennas: 128 });
        assert_eq!(schemes[1], Scheme::HmMimo { cbs_antennas: 64 });
        assert_eq!(config.total_antennas, 256);
    }

    #[test]
    fn cli_parses_subcommands() {
        let cli = Cli::try_parse_from([
            "hetmimo",
            "simulate",
            "--epochs",
            "10",
            "--seed",
            "3",
            "--out",
            "/tmp/x.json",
        ])
        .unwrap();
        match cli.command {
            Command::Simulate(args) => {
                assert_eq!(args.scenario.epochs, Some(10));
                assert_eq!(args.out, PathBuf::from("/tmp/x.json"));
            }
            _ => panic!("wrong subcommand"),
        }
        assert!(Cli::try_parse_from(["hetmimo", "bogus"]).is_err());
    }
}
