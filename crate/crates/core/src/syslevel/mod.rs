//! System-level Monte Carlo: a serving cell with six first-tier
//! interferers, user drops, per-snapshot SINR vectors and the two ways of
//! turning them into packet error rates.

mod deployment;
mod evaluate;
mod stats;

pub use deployment::{
    drop_ue, drop_ues, generate_deployment, Deployment, SectorAntenna, SystemParams, UeDrop, INTERFERERS, SITES,
};
pub use evaluate::{
    adaptive_mcs, evaluate_link_abstraction, evaluate_link_bitlevel, rate_mbps, sample_rate_hz, Case, DropResult,
    McsEstimate, SystemModel,
};
pub use stats::{cdf_at, empirical_cdf, sup_distance};
