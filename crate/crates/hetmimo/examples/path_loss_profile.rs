//! Print the three-slope path-loss profile, the large-scale fading statistics
//! it induces, and the receiver noise floor for the default scenario.
//!
//! Run with: cargo run -p hetmimo --example path_loss_profile

use hetmimo::channel::{noise_power, path_loss_db};
use hetmimo::NetworkConfig;

fn main() {
    let config = NetworkConfig::default();

    println!(
        "carrier {} GHz, heights {} m / {} m, breakpoints {} m / {} m",
        config.carrier_frequency_ghz,
        config.ap_height_m,
        config.ue_height_m,
        config.breakpoint_d0_m,
        config.breakpoint_d1_m
    );
    println!();
    println!("{:>10} {:>14} {:>16}", "d [m]", "L [dB]", "median beta");
    for d in [
        0.0, 5.0, 10.0, 25.0, 50.0, 100.0, 200.0, 500.0, 1000.0, 2000.0,
    ] {
        let l = path_loss_db(d, &config);
        let beta = 10f64.powf(l / 10.0);
        println!("{d:>10.0} {l:>14.3} {beta:>16.3e}");
    }

    // The two slope changes stay continuous.
    for d in [config.breakpoint_d0_m, config.breakpoint_d1_m] {
        let below = path_loss_db(d - 1e-9, &config);
        let above = path_loss_db(d + 1e-9, &config);
        println!("\ncontinuity at {d} m: {below:.6} dB vs {above:.6} dB");
    }

    let sigma = noise_power(&config);
    println!(
        "\nnoise power: {:.4e} W ({:.2} dBm) over {} MHz with NF {} dB",
        sigma,
        10.0 * sigma.log10() + 30.0,
        config.bandwidth_hz / 1e6,
        config.noise_figure_db
    );
}
