//! MMSE channel estimation: closed-form estimate variances and explicit
//! estimate/error realizations for the signal-level oracle.
//!
//! With a unit-modulus pilot, transmit power `p`, gain `beta`, and noise
//! `sigma_z^2`, the MMSE estimate of a `CN(0, beta)` coefficient has variance
//! `alpha = p beta^2 / (p beta + sigma_z^2)` and the estimation error is
//! independent with variance `beta - alpha`.

use crate::channel::{complex_gaussian, LargeScaleFading};
use crate::config::NetworkConfig;
use crate::mat::Mat;
use num_complex::Complex64;
use rand::Rng;

/// Estimate variances for one deployment: `alpha` from uplink pilots at power
/// `p_u`, `psi` from downlink pilots at power `p_d`. The closed-form bounds
/// consume `alpha`; `psi` backs the oracle's check of the downlink-pilot
/// estimate distribution at the far users.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimationStats {
    pub alpha_cbs: Vec<f64>,
    pub alpha_ap: Mat,
    pub psi_ap: Mat,
}

impl EstimationStats {
    pub fn compute(ls: &LargeScaleFading, config: &NetworkConfig, sigma_z_sq: f64) -> Self {
        let p_u = config.uplink_power_w;
        let p_d = config.downlink_power_w;
        EstimationStats {
            alpha_cbs: ls
                .beta_cbs
                .iter()
                .map(|&b| mmse_variance(b, p_u, sigma_z_sq))
                .collect(),
            alpha_ap: ls.beta_ap.map(|b| mmse_variance(b, p_u, sigma_z_sq)),
            psi_ap: ls.beta_ap.map(|b| mmse_variance(b, p_d, sigma_z_sq)),
        }
    }
}

/// Variance of the MMSE estimate: `p beta^2 / (p beta + sigma_z^2)`.
pub fn mmse_variance(beta: f64, power: f64, sigma_z_sq: f64) -> f64 {
    debug_assert!(beta > 0.0 && power >= 0.0 && sigma_z_sq > 0.0);
    power * beta * beta / (power * beta + sigma_z_sq)
}

/// Elementwise [`mmse_variance`] over a gain matrix.
pub fn mmse_variances(beta: &Mat, power: f64, sigma_z_sq: f64) -> Mat {
    beta.map(|b| mmse_variance(b, power, sigma_z_sq))
}

/// Elementwise [`mmse_variance`] over a gain vector.
pub fn mmse_variances_vec(beta: &[f64], power: f64, sigma_z_sq: f64) -> Vec<f64> {
    beta.iter()
        .map(|&b| mmse_variance(b, power, sigma_z_sq))
        .collect()
}

/// Simulate one pilot observation and return `(estimate, error)`.
///
/// The received pilot is `r = sqrt(p) g + z` (pilot symbol fixed to 1) and
/// the estimate is `g_hat = sqrt(p) beta / (p beta + sigma_z^2) * r`; the
/// error `xi = g - g_hat` is uncorrelated with `g_hat`.
pub fn mmse_estimate_realization(
    g_true: Complex64,
    beta: f64,
    power: f64,
    sigma_z_sq: f64,
    rng: &mut impl Rng,
) -> (Complex64, Complex64) {
    let noise = complex_gaussian(rng) * sigma_z_sq.sqrt();
    let received = power.sqrt() * g_true + noise;
    let g_hat = (power.sqrt() * beta / (power * beta + sigma_z_sq)) * received;
    (g_hat, g_true - g_hat)
}
