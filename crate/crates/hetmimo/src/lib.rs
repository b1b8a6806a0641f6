//! System-level Monte Carlo simulator for a heterogeneous cell-free massive
//! MIMO deployment: a central base station (CBS) array serving nearby users
//! plus distributed single-antenna access points (APs) serving far users,
//! evaluated per OFDM resource block under block fading.
//!
//! The crate computes closed-form effective-SINR lower bounds and sum
//! capacities for the heterogeneous design and three homogeneous benchmarks
//! (collocated massive MIMO, all-participating cell-free, and user-centric
//! clustering), aggregates them into per-user CDFs across random topology
//! epochs, and cross-validates every closed form against a signal-level
//! statistical oracle that simulates the actual transmit/receive equations.
//!
//! Modules:
//! - [`config`]: scenario description, flat key-value config files, defaults.
//! - [`deployment`]: random topologies, near/far classification, AP selection.
//! - [`channel`]: COST-Hata path loss, shadowing, noise, small-scale fading.
//! - [`estimation`]: MMSE estimate variances and realizations.
//! - [`sinr`]: closed-form bounds, proof-term variances, schemes, capacities.
//! - [`oracle`]: signal-level Monte Carlo validation of every bound.
//! - [`harness`]: epoch campaigns, CDF aggregation, percentile extraction.
//! - [`results`]: result files (JSON) and plot-ready CSV emission.
//! - [`cli`]: the `simulate` / `validate` / `cdf` / `percentiles` commands.
//!
//! Start with the `examples/` directory: each example is a runnable tour of
//! one capability, from path-loss profiles to a full percentile campaign.

pub mod channel;
pub mod cli;
pub mod config;
pub mod deployment;
pub mod error;
pub mod estimation;
pub mod harness;
pub mod mat;
pub mod oracle;
pub mod results;
pub mod sinr;

pub use config::{DlResourceSplit, NetworkConfig, NuCriterion};
pub use error::{Error, Result};
