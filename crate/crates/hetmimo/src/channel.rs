//! Propagation model: three-slope COST-Hata path loss, log-normal shadowing,
//! thermal noise, and per-resource-block Rayleigh small-scale fading.
//!
//! Large-scale fading is `beta = 10^((L + X)/10)` with `L` the path loss in dB
//! and `X ~ N(0, sigma_sd^2)` an independent shadowing draw per
//! (antenna-site, user) pair. The CBS array counts as a single site, so all of
//! its antennas share one `beta` per user.

use crate::config::NetworkConfig;
use crate::deployment::{NetworkDrop, Point, Topology};
use crate::mat::{CMat, Mat};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

/// Large-scale power gains for one deployment.
#[derive(Debug, Clone, PartialEq)]
pub struct LargeScaleFading {
    /// Gain toward the CBS, one entry per user (shared by all CBS antennas).
    pub beta_cbs: Vec<f64>,
    /// Gain per (AP, user) pair, row = AP.
    pub beta_ap: Mat,
}

/// Frequency-domain small-scale coefficients for one resource block,
/// i.i.d. unit-variance circularly-symmetric complex Gaussian entries.
#[derive(Debug, Clone, PartialEq)]
pub struct SmallScaleRealization {
    /// CBS antennas x users.
    pub h_cbs: CMat,
    /// APs x users.
    pub h_ap: CMat,
}

/// Three-slope COST-Hata path loss in dB (a negative gain).
///
/// With `d_km` the distance in kilometers and breakpoints `d0 < d1`:
///
/// ```text
/// d > d1:        L = -Lbar - 35 log10(d_km)
/// d0 < d <= d1:  L = -Lbar - 15 log10(d1_km) - 20 log10(d_km)
/// d <= d0:       L = -Lbar - 15 log10(d1_km) - 20 log10(d0_km)
/// ```
///
/// The constant term depends on the carrier frequency (MHz) and antenna
/// heights (m):
///
/// ```text
/// Lbar = 46.3 + 33.9 log10(f) - 13.82 log10(h_ap)
///        - (1.1 log10(f) - 0.7) h_ue + (1.56 log10(f) - 0.8)
/// ```
///
/// Distances at or below `d0` clamp to the `d0` value, so the gain stays
/// finite for users sampled arbitrarily close to a site.
pub fn path_loss_db(distance_m: f64, config: &NetworkConfig) -> f64 {
    debug_assert!(distance_m >= 0.0);
    let f_mhz = config.carrier_frequency_ghz * 1e3;
    let log_f = f_mhz.log10();
    let l_bar = 46.3 + 33.9 * log_f
        - 13.82 * config.ap_height_m.log10()
        - (1.1 * log_f - 0.7) * config.ue_height_m
        + (1.56 * log_f - 0.8);

    let d_km = distance_m / 1e3;
    let d0_km = config.breakpoint_d0_m / 1e3;
    let d1_km = config.breakpoint_d1_m / 1e3;

    if distance_m > config.breakpoint_d1_m {
        -l_bar - 35.0 * d_km.log10()
    } else if distance_m > config.breakpoint_d0_m {
        -l_bar - 15.0 * d1_km.log10() - 20.0 * d_km.log10()
    } else {
        -l_bar - 15.0 * d1_km.log10() - 20.0 * d0_km.log10()
    }
}

/// Receiver noise power in watts:
/// `10^((noise_density_dbm_hz + noise_figure + 10 log10(bandwidth) - 30)/10)`.
pub fn noise_power(config: &NetworkConfig) -> f64 {
    let dbm =
        config.noise_density_dbm_hz + config.noise_figure_db + 10.0 * config.bandwidth_hz.log10();
    10f64.powf((dbm - 30.0) / 10.0)
}

/// One large-scale gain draw: path loss plus a fresh shadowing term.
fn sample_beta(distance_m: f64, config: &NetworkConfig, rng: &mut impl Rng) -> f64 {
    let shadow_db = if config.shadowing_stddev_db > 0.0 {
        let z: f64 = StandardNormal.sample(rng);
        config.shadowing_stddev_db * z
    } else {
        0.0
    };
    10f64.powf((path_loss_db(distance_m, config) + shadow_db) / 10.0)
}

/// Large-scale fading for a topology. Draw order is fixed: the CBS column
/// first (user 0..K-1), then APs row-major, which pins the stream layout for
/// reproducibility.
pub fn large_scale(
    topology: &Topology,
    config: &NetworkConfig,
    rng: &mut impl Rng,
) -> LargeScaleFading {
    large_scale_for_sites(
        topology.cbs_position,
        &topology.ap_positions,
        &topology.user_positions,
        config,
        rng,
    )
}

/// Large-scale fading over an explicit site list (row = site).
pub fn large_scale_for_sites(
    cbs: Point,
    sites: &[Point],
    users: &[Point],
    config: &NetworkConfig,
    rng: &mut impl Rng,
) -> LargeScaleFading {
    let beta_cbs = users
        .iter()
        .map(|u| sample_beta(u.distance(&cbs), config, rng))
        .collect();
    let mut beta_ap = Mat::zeros(sites.len(), users.len());
    for (m, site) in sites.iter().enumerate() {
        for (k, user) in users.iter().enumerate() {
            beta_ap.set(m, k, sample_beta(site.distance(user), config, rng));
        }
    }
    LargeScaleFading { beta_cbs, beta_ap }
}

/// Large-scale fading over the full site pool of an epoch drop.
pub fn large_scale_for_drop(
    drop: &NetworkDrop,
    config: &NetworkConfig,
    rng: &mut impl Rng,
) -> LargeScaleFading {
    large_scale_for_sites(
        drop.cbs_position,
        &drop.site_positions,
        &drop.user_positions,
        config,
        rng,
    )
}

/// One unit-variance circularly-symmetric complex Gaussian sample.
pub fn complex_gaussian(rng: &mut impl Rng) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Small-scale coefficients for one resource block.
pub fn sample_small_scale(
    cbs_antennas: usize,
    aps: usize,
    users: usize,
    rng: &mut impl Rng,
) -> SmallScaleRealization {
    SmallScaleRealization {
        h_cbs: CMat::from_fn(cbs_antennas, users, |_, _| complex_gaussian(rng)),
        h_ap: CMat::from_fn(aps, users, |_, _| complex_gaussian(rng)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn path_loss_matches_hand_evaluation_at_1km() {
        // Independent evaluation of the closed form at the default scenario
        // (f = 2 GHz, h_ap = 12 m, h_ue = 1.7 m): Lbar = 142.65731273397495,
        // and log10(1 km) = 0 so L(1000 m) = -Lbar.
        let config = NetworkConfig::default();
        assert!((path_loss_db(1000.0, &config) - (-142.65731273397495)).abs() < 1e-9);
    }

    #[test]
    fn path_loss_middle_and_clamped_branches() {
        let config = NetworkConfig::default();
        // Hand-evaluated: L(30) = -Lbar - 15 log10(0.05) - 20 log10(0.03).
        assert!((path_loss_db(30.0, &config) - (-92.68428789340848)).abs() < 1e-9);
        // At and below d0 the value clamps to the d0 evaluation.
        let at_d0 = path_loss_db(10.0, &config);
        assert!((at_d0 - (-83.14186279901523)).abs() < 1e-9);
        assert_eq!(path_loss_db(3.0, &config), at_d0);
        assert_eq!(path_loss_db(0.0, &config), at_d0);
    }

    #[test]
    fn path_loss_continuous_at_breakpoints() {
        let config = NetworkConfig::default();
        let eps = 1e-9;
        for d in [config.breakpoint_d0_m, config.breakpoint_d1_m] {
            let below = path_loss_db(d - eps, &config);
            let above = path_loss_db(d + eps, &config);
            assert!((below - above).abs() < 1e-6, "jump at {d} m");
        }
    }

    #[test]
    fn path_loss_non_increasing() {
        let config = NetworkConfig::default();
        let mut prev = f64::INFINITY;
        for i in 0..2000 {
            let d = i as f64 * 0.75;
            let l = path_loss_db(d, &config);
            assert!(l <= prev + 1e-12, "increase at {d} m");
            prev = l;
        }
    }

    #[test]
    fn path_loss_slope_is_35db_per_decade_beyond_d1() {
        let config = NetworkConfig::default();
        let l1 = path_loss_db(100.0, &config);
        let l2 = path_loss_db(1000.0, &config);
        assert!((l1 - l2 - 35.0).abs() < 1e-9);
    }

    #[test]
    fn noise_power_matches_hand_evaluation() {
        // -174 dBm/Hz + 9 dB NF + 10 log10(5 MHz) = -98.0103 dBm = 1.5811e-13 W.
        let config = NetworkConfig::default();
        let w = noise_power(&config);
        assert!((w - 1.5811388300841893e-13).abs() / 1.5811388300841893e-13 < 1e-12);
    }

    #[test]
    fn noise_power_definition_and_log_law() {
        let config = NetworkConfig {
            noise_figure_db: 0.0,
            bandwidth_hz: 1.0,
            ..NetworkConfig::default()
        };
        let dbm = 10.0 * noise_power(&config).log10() + 30.0;
        assert!((dbm - (-174.0)).abs() < 1e-9);

        let doubled = NetworkConfig {
            bandwidth_hz: NetworkConfig::default().bandwidth_hz * 2.0,
            ..NetworkConfig::default()
        };
        let ratio_db =
            10.0 * (noise_power(&doubled) / noise_power(&NetworkConfig::default())).log10();
        assert!((ratio_db - 3.010299956639812).abs() < 1e-9);
    }

    #[test]
    fn beta_without_shadowing_is_pure_path_loss() {
        let config = NetworkConfig {
            shadowing_stddev_db: 0.0,
            ..NetworkConfig::default()
        };
        let beta = sample_beta(300.0, &config, &mut rng(1));
        let expected = 10f64.powf(path_loss_db(300.0, &config) / 10.0);
        assert_eq!(beta, expected);
    }

    #[test]
    fn shadowing_has_zero_mean_in_db() {
        // Mean of 10 log10(beta) - L over many draws should vanish.
        let config = NetworkConfig::default();
        let mut r = rng(2);
        let n = 100_000;
        let l = path_loss_db(500.0, &config);
        let mean_db: f64 = (0..n)
            .map(|_| 10.0 * sample_beta(500.0, &config, &mut r).log10() - l)
            .sum::<f64>()
            / n as f64;
        // Standard error is 8 / sqrt(n) = 0.025 dB.
        assert!(mean_db.abs() < 0.1, "mean shadowing {mean_db} dB");
    }

    #[test]
    fn large_scale_entries_positive_and_cbs_shared() {
        let config = NetworkConfig::default();
        let topo = crate::deployment::sample_topology(&config, &mut rng(3));
        let ls = large_scale(&topo, &config, &mut rng(4));
        assert_eq!(ls.beta_cbs.len(), config.users);
        assert_eq!(ls.beta_ap.rows(), config.ap_count());
        assert_eq!(ls.beta_ap.cols(), config.users);
        assert!(ls.beta_cbs.iter().all(|&b| b > 0.0 && b.is_finite()));
        assert!(ls.beta_ap.data().iter().all(|&b| b > 0.0 && b.is_finite()));
    }

    #[test]
    fn small_scale_dimensions_and_variance() {
        let mut r = rng(6);
        let ss = sample_small_scale(8, 24, 4, &mut r);
        assert_eq!((ss.h_cbs.rows(), ss.h_cbs.cols()), (8, 4));
        assert_eq!((ss.h_ap.rows(), ss.h_ap.cols()), (24, 4));
        let n = 2000;
        let mut sum_sq = 0.0;
        for _ in 0..n {
            let ss = sample_small_scale(2, 2, 2, &mut r);
            sum_sq += ss.h_cbs.data().iter().map(|z| z.norm_sqr()).sum::<f64>() / 4.0;
        }
        assert!((sum_sq / n as f64 - 1.0).abs() < 0.05);
    }

    #[test]
    fn small_scale_statistics() {
        let mut r = rng(5);
        let n = 100_000usize;
        let mut sum = Complex64::new(0.0, 0.0);
        let mut sum_sq = 0.0;
        let mut cross = Complex64::new(0.0, 0.0);
        for _ in 0..n {
            let a = complex_gaussian(&mut r);
            let b = complex_gaussian(&mut r);
            sum += a;
            sum_sq += a.norm_sqr();
            cross += a * b.conj();
        }
        let mean = sum / n as f64;
        let var = sum_sq / n as f64;
        let xcorr = cross / n as f64;
        // Per-entry variance 1.0 within 1%, mean and cross-correlation within
        // a few standard errors (se ~ 1/sqrt(n) ~ 0.0032).
        assert!((var - 1.0).abs() < 0.01, "variance {var}");
        assert!(mean.norm() < 3.0 * (1.0 / (n as f64).sqrt()), "mean {mean}");
        assert!(
            xcorr.norm() < 3.5 * (1.0 / (n as f64).sqrt()),
            "xcorr {xcorr}"
        );
    }
}
