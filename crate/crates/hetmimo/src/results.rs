//! Result files and plot-ready exports.
//!
//! A campaign result file is self-describing JSON: it echoes the full config
//! in canonical key-value form plus the seed, so re-running `simulate` from
//! the echo reproduces the sample vectors bit-for-bit. Samples are stored in
//! generation order (epoch-major, user-minor), which keeps the (user, epoch)
//! provenance recoverable by index; percentiles are extracted over a sorted
//! copy.
//!
//! The CSV export is one row per sample with a fixed header,
//! `scheme,metric,user,epoch,value`, decimal-point floats, no locale
//! dependence. Spectral-efficiency rows carry the user index; capacity rows
//! leave the user column blank.

use crate::config::NetworkConfig;
use crate::error::Result;
use crate::harness::{percentile, CampaignResult, Metric};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

pub const RESULT_FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MetricRecord {
    pub metric: Metric,
    pub p05: f64,
    pub p50: f64,
    pub p95: f64,
    /// Epoch-major generation order (not sorted).
    pub samples: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SchemeRecord {
    pub scheme: String,
    pub metrics: Vec<MetricRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CampaignResultFile {
    pub version: String,
    pub crate_version: String,
    pub timestamp_unix: u64,
    pub seed: u64,
    pub epochs: usize,
    pub users: usize,
    pub serial: bool,
    /// Canonical key-value echo of the full configuration.
    pub config: BTreeMap<String, String>,
    pub schemes: Vec<SchemeRecord>,
}

impl CampaignResultFile {
    pub fn build(config: &NetworkConfig, result: &CampaignResult) -> Result<Self> {
        let mut schemes = Vec::with_capacity(result.schemes.len());
        for pool in &result.schemes {
            let mut metrics = Vec::with_capacity(Metric::ALL.len());
            for metric in Metric::ALL {
                let samples = pool.metric_samples(metric);
                let mut sorted = samples.to_vec();
                sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite samples"));
                metrics.push(MetricRecord {
                    metric,
                    p05: percentile(&sorted, 0.05)?,
                    p50: percentile(&sorted, 0.50)?,
                    p95: percentile(&sorted, 0.95)?,
                    samples: samples.to_vec(),
                });
            }
            schemes.push(SchemeRecord {
                scheme: pool.scheme.clone(),
                metrics,
            });
        }
        Ok(CampaignResultFile {
            version: RESULT_FORMAT_VERSION.to_string(),
            crate_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            seed: config.rng_seed,
            epochs: config.epochs,
            users: config.users,
            serial: config.serial,
            config: config.to_kv(),
            schemes,
        })
    }

    /// Reconstruct the exact configuration this file was produced with.
    pub fn config(&self) -> Result<NetworkConfig> {
        let text: String = self
            .config
            .iter()
            .map(|(k, v)| format!("{k} = {v}\n"))
            .collect();
        NetworkConfig::from_kv_text(&text)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let json = serde_json::to_string(self)?;
        std::fs::write(path, json)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    /// Rows written by [`write_cdf_csv`]: one per sample.
    pub fn csv_row_count(&self) -> usize {
        self.schemes
            .iter()
            .flat_map(|s| s.metrics.iter())
            .map(|m| m.samples.len())
            .sum()
    }
}

/// Emit every sample as CSV with the fixed header
/// `scheme,metric,user,epoch,value`.
pub fn write_cdf_csv(w: &mut impl Write, file: &CampaignResultFile) -> Result<()> {
    writeln!(w, "scheme,metric,user,epoch,value")?;
    for scheme in &file.schemes {
        for record in &scheme.metrics {
            if record.metric.is_capacity() {
                for (epoch, value) in record.samples.iter().enumerate() {
                    writeln!(
                        w,
                        "{},{},,{},{}",
                        scheme.scheme, record.metric, epoch, value
                    )?;
                }
            } else {
                for (idx, value) in record.samples.iter().enumerate() {
                    let epoch = idx / file.users;
                    let user = idx % file.users;
                    writeln!(
                        w,
                        "{},{},{},{},{}",
                        scheme.scheme, record.metric, user, epoch, value
                    )?;
                }
            }
        }
    }
    Ok(())
}

/// Render the percentile table. Capacity metrics are reported both in
/// aggregate bits/s/Hz and scaled by the configured bandwidth to Mbit/s.
pub fn format_percentile_table(file: &CampaignResultFile) -> String {
    let bandwidth: f64 = file
        .config
        .get("bandwidth_hz")
        .and_then(|v| v.parse().ok())
        .unwrap_or(0.0);
    let mut out = String::new();
    out.push_str(&format!(
        "{:<12} {:<12} {:>12} {:>12} {:>12}  {}\n",
        "scheme", "metric", "p05", "p50", "p95", "unit"
    ));
    for scheme in &file.schemes {
        for record in &scheme.metrics {
            out.push_str(&format!(
                "{:<12} {:<12} {:>12.4} {:>12.4} {:>12.4}  {}\n",
                scheme.scheme, record.metric, record.p05, record.p50, record.p95, "bit/s/Hz"
            ));
            if record.metric.is_capacity() && bandwidth > 0.0 {
                let scale = bandwidth / 1e6;
                out.push_str(&format!(
                    "{:<12} {:<12} {:>12.2} {:>12.2} {:>12.2}  {}\n",
                    "",
                    "",
                    record.p05 * scale,
                    record.p50 * scale,
                    record.p95 * scale,
                    "Mbit/s"
                ));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::run_campaign;
    use crate::sinr::Scheme;

    fn tiny_campaign() -> (NetworkConfig, CampaignResultFile) {
        let config = NetworkConfig {
            total_antennas: 24,
            cbs_antennas: 8,
            users: 3,
            epochs: 5,
            rng_seed: 4242,
            serial: true,
            ..NetworkConfig::default()
        };
        let schemes = vec![Scheme::HmMimo { cbs_antennas: 8 }, Scheme::CfMimo];
        let result = run_campaign(&config, &schemes).unwrap();
        let file = CampaignResultFile::build(&config, &result).unwrap();
        (config, file)
    }

    #[test]
    fn file_round_trips_and_reproduces() {
        let (config, file) = tiny_campaign();
        let dir = std::env::temp_dir().join(format!("hetmimo-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("results.json");
        file.save(&path).unwrap();
        let loaded = CampaignResultFile::load(&path).unwrap();
        assert_eq!(loaded.schemes.len(), file.schemes.len());
        assert_eq!(loaded.config, file.config);
        // Sample vectors survive the JSON round trip bit-for-bit.
        for (a, b) in loaded.schemes.iter().zip(&file.schemes) {
            for (ma, mb) in a.metrics.iter().zip(&b.metrics) {
                assert_eq!(ma.samples, mb.samples);
            }
        }

        // The echoed config reproduces identical samples.
        let echoed = loaded.config().unwrap();
        assert_eq!(echoed, config);
        let rerun = run_campaign(&echoed, &[Scheme::HmMimo { cbs_antennas: 8 }]).unwrap();
        assert_eq!(
            rerun.schemes[0].ul_se, file.schemes[0].metrics[0].samples,
            "echoed config must reproduce the sample vector bit-for-bit"
        );
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn csv_accounting_and_format() {
        let (config, file) = tiny_campaign();
        let mut buf = Vec::new();
        write_cdf_csv(&mut buf, &file).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "scheme,metric,user,epoch,value");
        // schemes * (2 * K * epochs + 2 * epochs) data rows.
        let expected = 2 * (2 * config.users * config.epochs + 2 * config.epochs);
        assert_eq!(lines.len() - 1, expected);
        assert_eq!(file.csv_row_count(), expected);
        // Locale-independent floats: decimal points, no commas inside values.
        assert!(lines[1].matches(',').count() == 4);
        assert!(!text.contains(";"));
    }

    #[test]
    fn percentile_table_contains_capacity_scaling() {
        let (_, file) = tiny_campaign();
        let table = format_percentile_table(&file);
        assert!(table.contains("Mbit/s"));
        assert!(table.contains("bit/s/Hz"));
        assert!(table.contains("CFmMIMO"));
    }
}
