//! Run a reduced Monte Carlo campaign over random topologies and print the
//! per-scheme percentile table.
//!
//! Run with: cargo run --release -p hetmimo --example percentile_campaign

use hetmimo::harness::run_campaign;
use hetmimo::results::{format_percentile_table, CampaignResultFile};
use hetmimo::sinr::Scheme;
use hetmimo::NetworkConfig;

fn main() {
    let config = NetworkConfig {
        epochs: 2_000,
        rng_seed: 1,
        ..NetworkConfig::default()
    };
    let schemes = vec![
        Scheme::HmMimo { cbs_antennas: 128 },
        Scheme::HmMimo { cbs_antennas: 64 },
        Scheme::MMimo,
        Scheme::CfMimo,
        Scheme::UcMimo,
    ];

    println!(
        "campaign: {} epochs, {} users, {} antennas, seed {}",
        config.epochs, config.users, config.total_antennas, config.rng_seed
    );
    let result = run_campaign(&config, &schemes).expect("campaign");
    let file = CampaignResultFile::build(&config, &result).expect("summaries");
    print!("{}", format_percentile_table(&file));

    println!(
        "\nsamples per scheme: {} spectral-efficiency values per direction, {} capacity values",
        config.epochs * config.users,
        config.epochs
    );
    println!("(the 5th percentile of the per-user SE pool is the user-experienced rate)");
}
