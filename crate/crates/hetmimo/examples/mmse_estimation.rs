//! Monte Carlo check of the MMSE channel estimator: empirical estimate
//! variance against the closed form, the variance decomposition, and the
//! orthogonality of estimate and error.
//!
//! Run with: cargo run -p hetmimo --example mmse_estimation

use hetmimo::channel::{complex_gaussian, noise_power};
use hetmimo::estimation::{mmse_estimate_realization, mmse_variance};
use hetmimo::NetworkConfig;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let config = NetworkConfig::default();
    let sigma = noise_power(&config);
    let p = config.uplink_power_w;
    let mut rng = ChaCha8Rng::seed_from_u64(9);

    println!("pilot power {p} W, noise {sigma:.3e} W");
    println!(
        "\n{:>12} {:>12} {:>12} {:>12} {:>10}",
        "beta", "alpha", "empirical", "rel err", "pilot snr"
    );

    let trials = 200_000;
    for beta in [1e-13, 1e-12, 1e-11, 1e-10] {
        let alpha = mmse_variance(beta, p, sigma);
        let mut est_power = 0.0;
        let mut err_power = 0.0;
        let mut cross = Complex64::new(0.0, 0.0);
        for _ in 0..trials {
            let g = complex_gaussian(&mut rng) * beta.sqrt();
            let (g_hat, xi) = mmse_estimate_realization(g, beta, p, sigma, &mut rng);
            est_power += g_hat.norm_sqr();
            err_power += xi.norm_sqr();
            cross += g_hat * xi.conj();
        }
        let empirical = est_power / trials as f64;
        let err_var = err_power / trials as f64;
        println!(
            "{beta:>12.1e} {alpha:>12.4e} {empirical:>12.4e} {:>12.4} {:>10.1}",
            (empirical - alpha).abs() / alpha,
            p * beta / sigma
        );
        println!(
            "{:>12} error variance {err_var:.4e} vs beta - alpha = {:.4e}; Var(est) + Var(err) = {:.4e} vs beta",
            "",
            beta - alpha,
            empirical + err_var
        );
        let se = (alpha * (beta - alpha) / trials as f64).sqrt();
        println!(
            "{:>12} |E[est * err*]| = {:.3e} ({:.2} standard errors)",
            "",
            (cross / trials as f64).norm(),
            (cross / trials as f64).norm() / se
        );
    }
}
