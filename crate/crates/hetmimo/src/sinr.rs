//! Closed-form effective-SINR lower bounds, spectral efficiencies, and sum
//! capacities for the heterogeneous deployment and its three homogeneous
//! benchmarks.
//!
//! All bounds share one proof framework: the matched-filter (uplink) or
//! conjugate-beamforming (downlink) output is split into a desired term plus
//! mutually uncorrelated interference terms, and the effective SINR is the
//! ratio of the desired power to the summed interference variances. The
//! per-term closed forms live here as well ([`ul_nu_terms`] and friends) so
//! the signal-level oracle and the arithmetic identity checks consume the
//! exact same expressions the SINR functions assemble.
//!
//! Conventions:
//! - `alpha` is the MMSE estimate variance, `beta` the large-scale gain,
//!   `alpha <= beta` elementwise.
//! - Coherent paths (CBS uplink, far-user downlink with DL pilots) track the
//!   array-gain fluctuation at the receiver, so it is *not* interference;
//!   non-coherent paths (AP uplink, near-user downlink) absorb the same
//!   fluctuation as a channel-uncertainty term in the denominator.

use crate::config::{DlResourceSplit, NetworkConfig};
use crate::deployment::{select_activated_aps, select_ucm_clusters};
use crate::error::{Error, Result};
use crate::mat::Mat;

/// Scheme under evaluation. `HmMimo` carries its own CBS split so several
/// antenna allocations can be compared within one campaign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// Heterogeneous deployment: CBS with `cbs_antennas` antennas serving the
    /// near users, the remaining antennas as distributed APs for far users.
    HmMimo { cbs_antennas: usize },
    /// All antennas collocated in one central array.
    MMimo,
    /// All antennas as distributed single-antenna APs, all serving everyone.
    CfMimo,
    /// Distributed APs, each user served by its strongest cluster.
    UcMimo,
}

impl Scheme {
    /// Parse a CLI token. `hmmimo` uses the configured CBS split; explicit
    /// splits are spelled `hmmimo:<antennas>`, `hmmimo-half`, or
    /// `hmmimo-quarter`.
    pub fn parse(token: &str, config: &NetworkConfig) -> Result<Scheme> {
        let t = token.trim().to_ascii_lowercase();
        match t.as_str() {
            "mmimo" => Ok(Scheme::MMimo),
            "cfmmimo" => Ok(Scheme::CfMimo),
            "ucmmimo" => Ok(Scheme::UcMimo),
            "hmmimo" => Ok(Scheme::HmMimo {
                cbs_antennas: config.cbs_antennas,
            }),
            "hmmimo-half" => Ok(Scheme::HmMimo {
                cbs_antennas: config.total_antennas / 2,
            }),
            "hmmimo-quarter" => Ok(Scheme::HmMimo {
                cbs_antennas: config.total_antennas / 4,
            }),
            _ => {
                if let Some(rest) = t.strip_prefix("hmmimo:") {
                    let nb: usize = rest
                        .parse()
                        .map_err(|_| Error::UnknownScheme(token.to_string()))?;
                    Ok(Scheme::HmMimo { cbs_antennas: nb })
                } else {
                    Err(Error::UnknownScheme(token.to_string()))
                }
            }
        }
    }

    /// Parse a comma-separated scheme list.
    pub fn parse_list(list: &str, config: &NetworkConfig) -> Result<Vec<Scheme>> {
        list.split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| Scheme::parse(t, config))
            .collect()
    }

    /// Human-readable label used in reports and result files.
    pub fn label(&self, total_antennas: usize) -> String {
        match self {
            Scheme::MMimo => "mMIMO".to_string(),
            Scheme::CfMimo => "CFmMIMO".to_string(),
            Scheme::UcMimo => "UCmMIMO".to_string(),
            Scheme::HmMimo { cbs_antennas } => {
                if 2 * cbs_antennas == total_antennas {
                    "HmMIMO-1/2".to_string()
                } else if 4 * cbs_antennas == total_antennas {
                    "HmMIMO-1/4".to_string()
                } else {
                    format!("HmMIMO-Nb{cbs_antennas}")
                }
            }
        }
    }
}

/// Per-epoch channel state shared by every scheme: large-scale gains and MMSE
/// variances over the full site pool, plus the near/far partition.
#[derive(Debug, Clone)]
pub struct EpochChannel {
    pub beta_cbs: Vec<f64>,
    pub alpha_cbs: Vec<f64>,
    /// M x K, row = candidate AP site.
    pub beta_sites: Mat,
    pub alpha_sites: Mat,
    pub near_users: Vec<usize>,
    pub far_users: Vec<usize>,
    pub sigma_z_sq: f64,
}

/// Per-user effective SINRs and spectral efficiencies for one scheme on one
/// epoch, plus the resource-weighted sum capacities.
#[derive(Debug, Clone)]
pub struct SinrReport {
    pub scheme: String,
    pub ul_sinr: Vec<f64>,
    pub dl_sinr: Vec<f64>,
    /// bits/s/Hz per user.
    pub ul_se: Vec<f64>,
    pub dl_se: Vec<f64>,
    /// Aggregate bits/s/Hz after resource weighting.
    pub ul_capacity: f64,
    pub dl_capacity: f64,
}

/// Full-power rule: every antenna in `aps` spends its whole budget across the
/// `served` users, `eta_m = (sum_{k in served} alpha_mk)^-1`. Returns one
/// coefficient per AP in `aps` order; an AP with nothing to serve gets 0.
pub fn full_power_control(alpha: &Mat, aps: &[usize], served: &[usize]) -> Vec<f64> {
    aps.iter()
        .map(|&m| {
            let s: f64 = served.iter().map(|&k| alpha.get(m, k)).sum();
            if s > 0.0 {
                1.0 / s
            } else {
                0.0
            }
        })
        .collect()
}

/// Uplink effective SINR of a user detected coherently by the `cbs_antennas`
/// collocated array. The interference sum spans every user in the system.
pub fn ul_sinr_nu(
    alpha0_k: f64,
    beta0: &[f64],
    cbs_antennas: usize,
    p_u: f64,
    sigma_z_sq: f64,
) -> f64 {
    let interference = beta0.iter().sum::<f64>() - alpha0_k + sigma_z_sq / p_u;
    cbs_antennas as f64 * alpha0_k / interference
}

/// Uplink effective SINR of a user whose signal is matched-filtered across
/// `combine_aps` and combined non-coherently (statistics-only CSI at the
/// combiner). Interference spans all users heard by the combining APs.
pub fn ul_sinr_fu(
    user: usize,
    combine_aps: &[usize],
    alpha: &Mat,
    beta: &Mat,
    p_u: f64,
    sigma_z_sq: f64,
) -> f64 {
    let sum_alpha: f64 = combine_aps.iter().map(|&m| alpha.get(m, user)).sum();
    if sum_alpha <= 0.0 {
        return 0.0;
    }
    let mut interference = 0.0;
    for &m in combine_aps {
        interference += alpha.get(m, user) * beta.row(m).iter().sum::<f64>();
    }
    sum_alpha * sum_alpha / (interference + sigma_z_sq / p_u * sum_alpha)
}

/// Downlink effective SINR of a user served by the CBS array under conjugate
/// beamforming with a uniform power coefficient `eta` and no DL pilots
/// (statistical CSI at the user).
#[allow(clippy::too_many_arguments)]
pub fn dl_sinr_nu(
    user: usize,
    nu_set: &[usize],
    alpha0: &[f64],
    beta0_k: f64,
    eta: f64,
    cbs_antennas: usize,
    p_d: f64,
    sigma_z_sq: f64,
) -> f64 {
    let nb = cbs_antennas as f64;
    let num = nb * eta.sqrt() * alpha0[user];
    let served_power: f64 = nu_set.iter().map(|&k| eta * alpha0[k]).sum();
    num * num / (nb * beta0_k * served_power + sigma_z_sq / p_d)
}

/// Downlink effective SINR of a far user served by the `active_aps` under
/// conjugate beamforming, detected coherently thanks to DL pilots: the
/// array-gain fluctuation is tracked by the receiver and subtracted from the
/// interference.
///
/// `eta` is aligned with `active_aps`. Errors if the subtraction drives the
/// denominator non-positive, which the full-power rule rules out but a broken
/// caller could provoke.
#[allow(clippy::too_many_arguments)]
pub fn dl_sinr_fu_coherent(
    user: usize,
    active_aps: &[usize],
    eta: &[f64],
    fu_set: &[usize],
    alpha: &Mat,
    beta: &Mat,
    p_d: f64,
    sigma_z_sq: f64,
) -> Result<f64> {
    debug_assert_eq!(active_aps.len(), eta.len());
    let mut num = 0.0;
    let mut interference = 0.0;
    let mut tracked_gain = 0.0;
    for (&m, &eta_m) in active_aps.iter().zip(eta) {
        let a = alpha.get(m, user);
        num += eta_m.sqrt() * a;
        let served: f64 = fu_set.iter().map(|&k| eta_m * alpha.get(m, k)).sum();
        interference += beta.get(m, user) * served;
        tracked_gain += eta_m * a * a;
    }
    let den = interference - tracked_gain + sigma_z_sq / p_d;
    if den <= 0.0 {
        return Err(Error::Numerical(format!(
            "coherent DL denominator non-positive ({den}) for user {user}"
        )));
    }
    Ok(num * num / den)
}

/// Same link as [`dl_sinr_fu_coherent`] but without DL pilots: the user only
/// knows channel statistics, so the array-gain fluctuation stays in the
/// denominator. This is the all-AP benchmark's downlink bound.
#[allow(clippy::too_many_arguments)]
pub fn dl_sinr_fu_statistical(
    user: usize,
    active_aps: &[usize],
    eta: &[f64],
    fu_set: &[usize],
    alpha: &Mat,
    beta: &Mat,
    p_d: f64,
    sigma_z_sq: f64,
) -> f64 {
    debug_assert_eq!(active_aps.len(), eta.len());
    let mut num = 0.0;
    let mut interference = 0.0;
    for (&m, &eta_m) in active_aps.iter().zip(eta) {
        num += eta_m.sqrt() * alpha.get(m, user);
        let served: f64 = fu_set.iter().map(|&k| eta_m * alpha.get(m, k)).sum();
        interference += beta.get(m, user) * served;
    }
    if num <= 0.0 {
        return 0.0;
    }
    num * num / (interference + sigma_z_sq / p_d)
}

/// Clustered downlink bound: user `k` combines only its own cluster, while
/// interference arrives from every transmitting AP weighted by what that AP
/// actually serves. `eta_by_ap` and `served_by_ap` cover the full site pool.
#[allow(clippy::too_many_arguments)]
pub fn dl_sinr_clustered(
    user: usize,
    cluster: &[usize],
    eta_by_ap: &[f64],
    served_by_ap: &[Vec<usize>],
    alpha: &Mat,
    beta: &Mat,
    p_d: f64,
    sigma_z_sq: f64,
) -> f64 {
    let num: f64 = cluster
        .iter()
        .map(|&m| eta_by_ap[m].sqrt() * alpha.get(m, user))
        .sum();
    if num <= 0.0 {
        return 0.0;
    }
    let mut interference = 0.0;
    for (m, served) in served_by_ap.iter().enumerate() {
        if served.is_empty() {
            continue;
        }
        let served_power: f64 = served.iter().map(|&k| eta_by_ap[m] * alpha.get(m, k)).sum();
        interference += beta.get(m, user) * served_power;
    }
    num * num / (interference + sigma_z_sq / p_d)
}

/// Closed-form variances of the decomposition terms behind one effective-SINR
/// bound: desired power `s0`, estimation error `i1`, inter-user interference
/// `i2`, noise `i3`, and the array-gain fluctuation, which lands in `i4` on
/// non-coherent paths (counted as interference) or in `gain_fluct` on
/// coherent paths (tracked by the receiver, excluded from the denominator).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TermClosedForms {
    pub s0: f64,
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
    pub i4: Option<f64>,
    pub gain_fluct: Option<f64>,
}

impl TermClosedForms {
    /// Effective SINR implied by the terms.
    pub fn assembled_sinr(&self) -> f64 {
        self.s0 / (self.i1 + self.i2 + self.i3 + self.i4.unwrap_or(0.0))
    }
}

/// Term variances for the coherent CBS uplink (desired `p_u (N_b alpha)^2`,
/// noise `sigma^2 N_b alpha`, ...). Assembling them reproduces
/// [`ul_sinr_nu`] exactly.
pub fn ul_nu_terms(
    user: usize,
    alpha0: &[f64],
    beta0: &[f64],
    cbs_antennas: usize,
    p_u: f64,
    sigma_z_sq: f64,
) -> TermClosedForms {
    let nb = cbs_antennas as f64;
    let a = alpha0[user];
    let b = beta0[user];
    let other_beta: f64 = beta0
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != user)
        .map(|(_, &x)| x)
        .sum();
    TermClosedForms {
        s0: p_u * (nb * a) * (nb * a),
        i1: p_u * nb * a * (b - a),
        i2: p_u * nb * a * other_beta,
        i3: sigma_z_sq * nb * a,
        i4: None,
        gain_fluct: Some(p_u * nb * a * a),
    }
}

/// Term variances for the non-coherent AP uplink, including the
/// channel-uncertainty term `i4 = p_u sum_m alpha_mk^2`. Assembling them
/// reproduces [`ul_sinr_fu`] exactly.
pub fn ul_fu_terms(
    user: usize,
    combine_aps: &[usize],
    alpha: &Mat,
    beta: &Mat,
    p_u: f64,
    sigma_z_sq: f64,
) -> TermClosedForms {
    let mut sum_alpha = 0.0;
    let mut i1 = 0.0;
    let mut i2 = 0.0;
    let mut i4 = 0.0;
    for &m in combine_aps {
        let a = alpha.get(m, user);
        let b = beta.get(m, user);
        sum_alpha += a;
        i1 += a * (b - a);
        let other_beta: f64 = beta.row(m).iter().sum::<f64>() - b;
        i2 += a * other_beta;
        i4 += a * a;
    }
    TermClosedForms {
        s0: p_u * sum_alpha * sum_alpha,
        i1: p_u * i1,
        i2: p_u * i2,
        i3: sigma_z_sq * sum_alpha,
        i4: Some(p_u * i4),
        gain_fluct: None,
    }
}

/// Term variances for the non-coherent CBS downlink under uniform `eta`.
/// Assembling them reproduces [`dl_sinr_nu`] exactly (after dividing the
/// printed form's noise through by `p_d`).
#[allow(clippy::too_many_arguments)]
pub fn dl_nu_terms(
    user: usize,
    nu_set: &[usize],
    alpha0: &[f64],
    beta0_k: f64,
    eta: f64,
    cbs_antennas: usize,
    p_d: f64,
    sigma_z_sq: f64,
) -> TermClosedForms {
    let nb = cbs_antennas as f64;
    let a = alpha0[user];
    let served_alpha: f64 = nu_set.iter().map(|&k| alpha0[k]).sum();
    let other_alpha = served_alpha - a;
    TermClosedForms {
        s0: p_d * (nb * eta.sqrt() * a) * (nb * eta.sqrt() * a),
        i1: p_d * (beta0_k - a) * nb * eta * served_alpha,
        i2: p_d * a * nb * eta * other_alpha,
        i3: sigma_z_sq,
        i4: Some(p_d * nb * eta * a * a),
        gain_fluct: None,
    }
}

/// Term variances for the far-user downlink. With `coherent = true` the
/// array-gain fluctuation sits in `gain_fluct` and the assembly reproduces
/// [`dl_sinr_fu_coherent`]; with `coherent = false` it moves into `i4` and
/// the assembly reproduces [`dl_sinr_fu_statistical`].
#[allow(clippy::too_many_arguments)]
pub fn dl_fu_terms(
    user: usize,
    active_aps: &[usize],
    eta: &[f64],
    fu_set: &[usize],
    alpha: &Mat,
    beta: &Mat,
    p_d: f64,
    sigma_z_sq: f64,
    coherent: bool,
) -> TermClosedForms {
    let mut num = 0.0;
    let mut i1 = 0.0;
    let mut i2 = 0.0;
    let mut fluct = 0.0;
    for (&m, &eta_m) in active_aps.iter().zip(eta) {
        let a = alpha.get(m, user);
        let b = beta.get(m, user);
        num += eta_m.sqrt() * a;
        i1 += eta_m * a * (b - a);
        let other_alpha: f64 = fu_set
            .iter()
            .filter(|&&k| k != user)
            .map(|&k| eta_m * alpha.get(m, k))
            .sum();
        i2 += b * other_alpha;
        fluct += eta_m * a * a;
    }
    TermClosedForms {
        s0: p_d * num * num,
        i1: p_d * i1,
        i2: p_d * i2,
        i3: sigma_z_sq,
        i4: if coherent { None } else { Some(p_d * fluct) },
        gain_fluct: if coherent { Some(p_d * fluct) } else { None },
    }
}

/// Downlink resource weights `(w_near, w_far)` for the configured split.
/// An empty group hands its share to the other.
pub fn dl_split_weights(split: DlResourceSplit, n_near: usize, n_far: usize) -> (f64, f64) {
    if n_far == 0 {
        (1.0, 0.0)
    } else if n_near == 0 {
        (0.0, 1.0)
    } else {
        match split {
            DlResourceSplit::Proportional => {
                let k = (n_near + n_far) as f64;
                (n_near as f64 / k, n_far as f64 / k)
            }
            DlResourceSplit::Equal => (0.5, 0.5),
        }
    }
}

/// Sum capacities in aggregate bits/s/Hz. Uplink shares the full resource
/// (weight 1 for everyone); downlink weights the two groups by `(w_n, w_f)`.
pub fn sum_capacity(
    ul_se: &[f64],
    dl_se: &[f64],
    near: &[usize],
    far: &[usize],
    weights: (f64, f64),
) -> (f64, f64) {
    let ul: f64 = near.iter().chain(far).map(|&k| ul_se[k]).sum();
    let dl_near: f64 = near.iter().map(|&k| dl_se[k]).sum();
    let dl_far: f64 = far.iter().map(|&k| dl_se[k]).sum();
    (ul, weights.0 * dl_near + weights.1 * dl_far)
}

fn se_from_sinr(sinr: &[f64], overhead: f64) -> Vec<f64> {
    sinr.iter().map(|&g| overhead * (1.0 + g).log2()).collect()
}

/// Evaluate one scheme on an epoch's channel state.
pub fn scheme_sinrs(
    scheme: &Scheme,
    chan: &EpochChannel,
    config: &NetworkConfig,
) -> Result<SinrReport> {
    let k_total = chan.beta_cbs.len();
    let p_u = config.uplink_power_w;
    let p_d = config.downlink_power_w;
    let sigma = chan.sigma_z_sq;
    let m_total = chan.beta_sites.rows();
    if k_total != chan.beta_sites.cols() || k_total != chan.alpha_cbs.len() {
        return Err(Error::SchemeSetup("channel dimensions disagree".into()));
    }
    let all_users: Vec<usize> = (0..k_total).collect();

    let mut ul_sinr = vec![0.0; k_total];
    let mut dl_sinr = vec![0.0; k_total];
    let near;
    let far;

    match scheme {
        Scheme::MMimo => {
            // One collocated array hosting every antenna; all users are near.
            near = all_users.clone();
            far = Vec::new();
            let eta = full_power_scalar(&chan.alpha_cbs, &near);
            for &k in &near {
                ul_sinr[k] = ul_sinr_nu(chan.alpha_cbs[k], &chan.beta_cbs, m_total, p_u, sigma);
                dl_sinr[k] = dl_sinr_nu(
                    k,
                    &near,
                    &chan.alpha_cbs,
                    chan.beta_cbs[k],
                    eta,
                    m_total,
                    p_d,
                    sigma,
                );
            }
        }
        Scheme::CfMimo => {
            near = Vec::new();
            far = all_users.clone();
            let aps: Vec<usize> = (0..m_total).collect();
            let eta = full_power_control(&chan.alpha_sites, &aps, &far);
            for &k in &far {
                ul_sinr[k] = ul_sinr_fu(k, &aps, &chan.alpha_sites, &chan.beta_sites, p_u, sigma);
                dl_sinr[k] = dl_sinr_fu_statistical(
                    k,
                    &aps,
                    &eta,
                    &far,
                    &chan.alpha_sites,
                    &chan.beta_sites,
                    p_d,
                    sigma,
                );
            }
        }
        Scheme::UcMimo => {
            near = Vec::new();
            far = all_users.clone();
            if config.ucm_cluster_size > m_total {
                return Err(Error::SchemeSetup(format!(
                    "ucm_cluster_size {} exceeds the {} available APs",
                    config.ucm_cluster_size, m_total
                )));
            }
            let clusters = select_ucm_clusters(&chan.beta_sites, config.ucm_cluster_size);
            // Invert cluster membership: which users each AP serves.
            let mut served_by_ap: Vec<Vec<usize>> = vec![Vec::new(); m_total];
            for (k, cluster) in clusters.iter().enumerate() {
                for &m in cluster {
                    served_by_ap[m].push(k);
                }
            }
            let eta_by_ap: Vec<f64> = (0..m_total)
                .map(|m| {
                    let s: f64 = served_by_ap[m]
                        .iter()
                        .map(|&k| chan.alpha_sites.get(m, k))
                        .sum();
                    if s > 0.0 {
                        1.0 / s
                    } else {
                        0.0
                    }
                })
                .collect();
            for &k in &far {
                ul_sinr[k] = ul_sinr_fu(
                    k,
                    &clusters[k],
                    &chan.alpha_sites,
                    &chan.beta_sites,
                    p_u,
                    sigma,
                );
                dl_sinr[k] = dl_sinr_clustered(
                    k,
                    &clusters[k],
                    &eta_by_ap,
                    &served_by_ap,
                    &chan.alpha_sites,
                    &chan.beta_sites,
                    p_d,
                    sigma,
                );
            }
        }
        Scheme::HmMimo { cbs_antennas } => {
            let nb = *cbs_antennas;
            if nb == 0 || nb > m_total {
                return Err(Error::SchemeSetup(format!(
                    "cbs_antennas {nb} outside 1..={m_total}"
                )));
            }
            let n_aps = m_total - nb;
            near = chan.near_users.clone();
            far = chan.far_users.clone();
            let aps: Vec<usize> = (0..n_aps).collect();

            for &k in &near {
                ul_sinr[k] = ul_sinr_nu(chan.alpha_cbs[k], &chan.beta_cbs, nb, p_u, sigma);
            }
            for &k in &far {
                ul_sinr[k] = ul_sinr_fu(k, &aps, &chan.alpha_sites, &chan.beta_sites, p_u, sigma);
            }

            if !near.is_empty() {
                let eta = full_power_scalar(&chan.alpha_cbs, &near);
                for &k in &near {
                    dl_sinr[k] = dl_sinr_nu(
                        k,
                        &near,
                        &chan.alpha_cbs,
                        chan.beta_cbs[k],
                        eta,
                        nb,
                        p_d,
                        sigma,
                    );
                }
            }
            if !far.is_empty() && n_aps > 0 {
                let beta_ap_view = chan.beta_sites.top_rows(n_aps);
                let activated = select_activated_aps(&beta_ap_view, &far);
                let eta = full_power_control(&chan.alpha_sites, &activated, &far);
                for &k in &far {
                    dl_sinr[k] = dl_sinr_fu_coherent(
                        k,
                        &activated,
                        &eta,
                        &far,
                        &chan.alpha_sites,
                        &chan.beta_sites,
                        p_d,
                        sigma,
                    )?;
                }
            }
        }
    }

    for (&u, &d) in ul_sinr.iter().zip(dl_sinr.iter()) {
        if !(u >= 0.0 && u.is_finite() && d >= 0.0 && d.is_finite()) {
            return Err(Error::Numerical(format!(
                "non-finite or negative SINR (ul {u}, dl {d})"
            )));
        }
    }

    let overhead = config.overhead_factor();
    let ul_se = se_from_sinr(&ul_sinr, overhead);
    let dl_se = se_from_sinr(&dl_sinr, overhead);
    let weights = match scheme {
        Scheme::HmMimo { .. } => dl_split_weights(config.dl_resource_split, near.len(), far.len()),
        // Homogeneous benchmarks keep the whole downlink resource.
        _ => {
            if far.is_empty() {
                (1.0, 0.0)
            } else {
                (0.0, 1.0)
            }
        }
    };
    let (ul_capacity, dl_capacity) = sum_capacity(&ul_se, &dl_se, &near, &far, weights);

    Ok(SinrReport {
        scheme: scheme.label(m_total),
        ul_sinr,
        dl_sinr,
        ul_se,
        dl_se,
        ul_capacity,
        dl_capacity,
    })
}

/// Uniform CBS power coefficient: one budget shared across the served set.
fn full_power_scalar(alpha0: &[f64], served: &[usize]) -> f64 {
    let s: f64 = served.iter().map(|&k| alpha0[k]).sum();
    if s > 0.0 {
        1.0 / s
    } else {
        0.0
    }
}
