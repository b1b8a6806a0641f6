//! Evaluate the closed-form effective SINRs of every scheme on a single
//! epoch and print the per-user table plus sum capacities.
//!
//! Run with: cargo run -p hetmimo --example sinr_closed_forms

use hetmimo::harness::run_epoch;
use hetmimo::sinr::Scheme;
use hetmimo::NetworkConfig;

fn main() {
    let config = NetworkConfig::default();
    let schemes = vec![
        Scheme::HmMimo { cbs_antennas: 128 },
        Scheme::HmMimo { cbs_antennas: 64 },
        Scheme::MMimo,
        Scheme::CfMimo,
        Scheme::UcMimo,
    ];
    let reports = run_epoch(&config, &schemes, 0).expect("epoch evaluation");

    for report in &reports {
        println!("=== {} ===", report.scheme);
        println!(
            "{:>6} {:>14} {:>12} {:>14} {:>12}",
            "user", "ul sinr", "ul se", "dl sinr", "dl se"
        );
        for k in 0..config.users {
            println!(
                "{k:>6} {:>14.4} {:>12.4} {:>14.4} {:>12.4}",
                report.ul_sinr[k], report.ul_se[k], report.dl_sinr[k], report.dl_se[k]
            );
        }
        println!(
            "sum capacity: UL {:.3} bit/s/Hz ({:.1} Mbit/s), DL {:.3} bit/s/Hz ({:.1} Mbit/s)\n",
            report.ul_capacity,
            report.ul_capacity * config.bandwidth_hz / 1e6,
            report.dl_capacity,
            report.dl_capacity * config.bandwidth_hz / 1e6
        );
    }
}
