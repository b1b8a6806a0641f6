//! Run the signal-level oracle at reduced scale and print every term
//! variance next to its closed form.
//!
//! Run with: cargo run --release -p hetmimo --example oracle_validation

use hetmimo::oracle::{run_validation, validation_config, DEFAULT_TRIALS};

fn main() {
    let config = validation_config();
    // The 3%/5% gates are calibrated for the default trial count; fewer
    // trials leave the slowest-converging term variances in the noise.
    let trials = DEFAULT_TRIALS;
    println!(
        "oracle scenario: {} antennas ({} at the CBS), {} users, {} trials per path",
        config.total_antennas, config.cbs_antennas, config.users, trials
    );

    let report = run_validation(&config, trials, 1).expect("oracle suite");
    for p in &report.paths {
        println!(
            "\n[{}] {} user {}: assembled SINR {:.5} vs closed form {:.5} (rel err {:.4})",
            if p.passed() { "pass" } else { "FAIL" },
            p.path,
            p.user,
            p.empirical_sinr,
            p.closed_form_sinr,
            p.sinr_rel_err
        );
        for t in &p.terms {
            println!(
                "    {:<6} empirical {:>12.5e}  closed form {:>12.5e}  rel err {:.4}",
                t.name, t.empirical, t.expected, t.rel_err
            );
        }
        println!(
            "    decomposition gap {:.4}, max pairwise cross-correlation {:.2} se",
            p.decomposition_gap, p.max_cross_sigma
        );
        if let Some(power) = p.tx_power_per_antenna {
            println!("    simulated per-antenna tx power {power:.4} (full-power rule -> 1)");
        }
        if let Some(psi) = p.psi_rel_err {
            println!("    dl-pilot estimate variance rel err {psi:.4}");
        }
    }
    println!(
        "\noracle suite: {}",
        if report.passed() { "PASS" } else { "FAIL" }
    );
}
