//! Sample one network drop, classify users as near/far, and select the
//! activated AP set for the far users.
//!
//! Run with: cargo run -p hetmimo --example topology_drop

use hetmimo::channel::{large_scale_for_drop, noise_power};
use hetmimo::deployment::{sample_drop, select_ucm_clusters, UserPartition};
use hetmimo::NetworkConfig;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let config = NetworkConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    rng.set_stream(0);

    let drop = sample_drop(&config, &mut rng);
    let ls = large_scale_for_drop(&drop, &config, &mut rng);
    let topo = drop.topology_with_aps(config.ap_count());
    let beta_ap = ls.beta_ap.top_rows(config.ap_count());
    let partition = UserPartition::build(&topo, &ls.beta_cbs, &beta_ap, &config);
    let (near, far) = (partition.near_users.clone(), partition.far_users.clone());

    println!(
        "drop: {} candidate AP sites, {} users in a {} m disk ({})",
        drop.site_positions.len(),
        drop.user_positions.len(),
        config.coverage_radius_m,
        config.disk_sampling
    );
    println!(
        "near users (within {} m of the CBS): {near:?}",
        config.nu_distance_threshold_m
    );
    println!("far users: {far:?}");

    for &k in near.iter().chain(far.iter()).take(4) {
        let p = drop.user_positions[k];
        println!(
            "  user {k}: ({:>7.1}, {:>7.1}) m, distance {:>6.1} m, beta_cbs {:.3e}",
            p.x,
            p.y,
            p.distance(&drop.cbs_position),
            ls.beta_cbs[k]
        );
    }

    // Activated APs for the heterogeneous deployment: each far user's
    // strongest AP, duplicates collapsed.
    println!(
        "\nactivated APs serving {} far users: {} of {} ({:?})",
        far.len(),
        partition.activated_aps.len(),
        config.ap_count(),
        partition.activated_aps
    );

    // Clusters for the user-centric benchmark use the full site pool.
    let clusters = select_ucm_clusters(&ls.beta_ap, config.ucm_cluster_size);
    println!(
        "user-centric clusters ({} APs each): user 0 -> {:?}",
        config.ucm_cluster_size, clusters[0]
    );

    println!("\nnoise power: {:.3e} W", noise_power(&config));
}
