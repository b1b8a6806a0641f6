//! Network deployment: random topologies, near/far user classification, and
//! AP activation for far users.
//!
//! All randomness flows through explicit RNG handles so epochs can run on
//! independent streams and reproduce bit-for-bit under a fixed seed.

use crate::config::{DiskSampling, NetworkConfig, NuCriterion};
use crate::mat::Mat;
use rand::Rng;

/// 2-D position in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// One deployment view: the CBS at the disk center, `M - N_b` distributed
/// APs, and `K` users.
#[derive(Debug, Clone, PartialEq)]
pub struct Topology {
    pub cbs_position: Point,
    pub ap_positions: Vec<Point>,
    pub user_positions: Vec<Point>,
}

/// Epoch-level site layout shared by every scheme under comparison.
///
/// `site_positions` holds `M` candidate AP sites: an all-AP benchmark uses
/// every site, while a heterogeneous deployment with `N_b` CBS antennas uses
/// the first `M - N_b` sites. Sharing one drop keeps the comparison paired on
/// common randomness.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkDrop {
    pub cbs_position: Point,
    pub site_positions: Vec<Point>,
    pub user_positions: Vec<Point>,
}

impl NetworkDrop {
    /// Deployment view with the first `ap_count` sites as active AP locations.
    pub fn topology_with_aps(&self, ap_count: usize) -> Topology {
        assert!(ap_count <= self.site_positions.len());
        Topology {
            cbs_position: self.cbs_position,
            ap_positions: self.site_positions[..ap_count].to_vec(),
            user_positions: self.user_positions.clone(),
        }
    }
}

/// Near/far split plus the activated AP set serving the far users.
#[derive(Debug, Clone, PartialEq)]
pub struct UserPartition {
    pub near_users: Vec<usize>,
    pub far_users: Vec<usize>,
    pub activated_aps: Vec<usize>,
}

impl UserPartition {
    /// Classify against the configured criterion and activate each far
    /// user's strongest AP. `beta_cbs` and `beta_ap` must describe the same
    /// deployment as `topology`.
    pub fn build(
        topology: &Topology,
        beta_cbs: &[f64],
        beta_ap: &Mat,
        config: &NetworkConfig,
    ) -> UserPartition {
        let (near_users, far_users) = classify(topology, beta_cbs, config);
        let activated_aps = select_activated_aps(beta_ap, &far_users);
        UserPartition {
            near_users,
            far_users,
            activated_aps,
        }
    }

    pub fn is_near(&self, user: usize) -> bool {
        self.near_users.binary_search(&user).is_ok()
    }
}

/// Random point in the disk of `radius` centered at the origin, for the
/// configured radial law: a uniform angle with either `r = radius * u`
/// (radius-uniform, denser toward the center) or `r = radius * sqrt(u)`
/// (area-uniform).
pub fn sample_disk_point(radius: f64, law: DiskSampling, rng: &mut impl Rng) -> Point {
    let u = rng.random::<f64>();
    let r = match law {
        DiskSampling::RadiusUniform => radius * u,
        DiskSampling::AreaUniform => radius * u.sqrt(),
    };
    let theta = 2.0 * std::f64::consts::PI * rng.random::<f64>();
    Point {
        x: r * theta.cos(),
        y: r * theta.sin(),
    }
}

pub fn sample_disk_points(
    n: usize,
    radius: f64,
    law: DiskSampling,
    rng: &mut impl Rng,
) -> Vec<Point> {
    (0..n)
        .map(|_| sample_disk_point(radius, law, rng))
        .collect()
}

/// Draw a topology for the configured heterogeneous deployment: CBS at the
/// center, `M - N_b` APs and `K` users i.i.d. over the coverage disk.
pub fn sample_topology(config: &NetworkConfig, rng: &mut impl Rng) -> Topology {
    let law = config.disk_sampling;
    Topology {
        cbs_position: Point::ORIGIN,
        ap_positions: sample_disk_points(config.ap_count(), config.coverage_radius_m, law, rng),
        user_positions: sample_disk_points(config.users, config.coverage_radius_m, law, rng),
    }
}

/// Draw the epoch-level drop with the full pool of `M` candidate AP sites.
pub fn sample_drop(config: &NetworkConfig, rng: &mut impl Rng) -> NetworkDrop {
    let law = config.disk_sampling;
    NetworkDrop {
        cbs_position: Point::ORIGIN,
        site_positions: sample_disk_points(
            config.total_antennas,
            config.coverage_radius_m,
            law,
            rng,
        ),
        user_positions: sample_disk_points(config.users, config.coverage_radius_m, law, rng),
    }
}

/// Distance rule: user `k` is near iff its CBS distance is at most the
/// threshold (boundary inclusive). Returns `(near, far)` as sorted index sets.
pub fn classify_users(topology: &Topology, config: &NetworkConfig) -> (Vec<usize>, Vec<usize>) {
    classify_by_distance(
        &topology.user_positions,
        topology.cbs_position,
        config.nu_distance_threshold_m,
    )
}

pub fn classify_by_distance(
    users: &[Point],
    cbs: Point,
    threshold_m: f64,
) -> (Vec<usize>, Vec<usize>) {
    let mut near = Vec::new();
    let mut far = Vec::new();
    for (k, p) in users.iter().enumerate() {
        if p.distance(&cbs) <= threshold_m {
            near.push(k);
        } else {
            far.push(k);
        }
    }
    (near, far)
}

/// Alternative rule: user `k` is near iff its CBS large-scale fading meets the
/// threshold (boundary inclusive), both in linear units.
pub fn classify_by_beta(beta_cbs: &[f64], threshold_linear: f64) -> (Vec<usize>, Vec<usize>) {
    let mut near = Vec::new();
    let mut far = Vec::new();
    for (k, &b) in beta_cbs.iter().enumerate() {
        if b >= threshold_linear {
            near.push(k);
        } else {
            far.push(k);
        }
    }
    (near, far)
}

/// Dispatch on the configured criterion. `beta_cbs` is only consulted for the
/// beta rule.
pub fn classify(
    topology: &Topology,
    beta_cbs: &[f64],
    config: &NetworkConfig,
) -> (Vec<usize>, Vec<usize>) {
    match config.nu_criterion {
        NuCriterion::Distance => classify_users(topology, config),
        NuCriterion::Beta => {
            let threshold = 10f64.powf(config.nu_beta_threshold_db / 10.0);
            classify_by_beta(beta_cbs, threshold)
        }
    }
}

/// Activated AP set: each far user contributes the AP with the largest
/// large-scale fading toward it; duplicates collapse and ties break toward the
/// lowest AP index. Returns a sorted, deduplicated index set.
pub fn select_activated_aps(beta_ap: &Mat, far_users: &[usize]) -> Vec<usize> {
    let mut selected: Vec<usize> = far_users
        .iter()
        .map(|&k| argmax_in_col(beta_ap, k))
        .collect();
    selected.sort_unstable();
    selected.dedup();
    selected
}

fn argmax_in_col(beta_ap: &Mat, user: usize) -> usize {
    let mut best = 0;
    let mut best_val = f64::NEG_INFINITY;
    for m in 0..beta_ap.rows() {
        let v = beta_ap.get(m, user);
        if v > best_val {
            best_val = v;
            best = m;
        }
    }
    best
}

/// Per-user clusters for the user-centric benchmark: the `cluster_size` APs
/// with the largest large-scale fading toward each user, ties toward the
/// lowest AP index. Each cluster is returned sorted by AP index.
pub fn select_ucm_clusters(beta_ap: &Mat, cluster_size: usize) -> Vec<Vec<usize>> {
    assert!(cluster_size >= 1, "cluster size must be at least 1");
    let size = cluster_size.min(beta_ap.rows());
    (0..beta_ap.cols())
        .map(|k| {
            let mut order: Vec<usize> = (0..beta_ap.rows()).collect();
            // Descending by beta; stable ordering breaks ties toward lower index.
            order.sort_by(|&a, &b| {
                beta_ap
                    .get(b, k)
                    .partial_cmp(&beta_ap.get(a, k))
                    .expect("beta entries must be finite")
            });
            let mut cluster = order[..size].to_vec();
            cluster.sort_unstable();
            cluster
        })
        .collect()
}
