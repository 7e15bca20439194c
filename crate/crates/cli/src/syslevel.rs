//! System-level runs: per-user results for both methods and both cases.

use gfdm::linkquality::LinkAbstraction;
use gfdm::modem::GfdmConfig;
use gfdm::sim::LinkSimulator;
use gfdm::syslevel::{
    evaluate_link_abstraction, evaluate_link_bitlevel, Case, DropResult, McsEstimate, SystemModel, UeDrop,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Abstraction results for `ues`, in input order.
pub fn abstraction_results(
    model: &SystemModel,
    abstractions: &[LinkAbstraction<'_>],
    rates: &[f64],
    ues: &[UeDrop],
    snapshots: u64,
    case: Case,
) -> Result<Vec<DropResult>, CliError> {
    ues.par_iter()
        .map(|ue| {
            let est = evaluate_link_abstraction(model, ue, abstractions, snapshots, case)?;
            DropResult::select(ue.id, case, &est, rates)
        })
        .collect::<gfdm::Result<Vec<_>>>()
        .map_err(CliError::runtime)
}

/// Bit-level results for `ues`, in input order. The effective SINR column
/// is NaN: the bit-level path has no effective SINR.
pub fn bitlevel_results(
    model: &SystemModel,
    sims: &[LinkSimulator],
    rates: &[f64],
    ues: &[UeDrop],
    snapshots: u64,
    packets: u64,
    case: Case,
) -> Result<Vec<DropResult>, CliError> {
    ues.par_iter()
        .map(|ue| {
            let counts = evaluate_link_bitlevel(model, ue, sims, snapshots, packets, case)?;
            let est: Vec<McsEstimate> = counts
                .iter()
                .map(|c| McsEstimate {
                    per: c.bler(),
                    esinr_db: f64::NAN,
                })
                .collect();
            DropResult::select(ue.id, case, &est, rates)
        })
        .collect::<gfdm::Result<Vec<_>>>()
        .map_err(CliError::runtime)
}

/// One row of `results_<case>.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub ue: u64,
    pub method: String,
    pub mcs: String,
    pub per: f64,
    pub throughput_mbps: f64,
    pub esinr_db: f64,
}

/// One row of `per_by_mcs_<case>.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McsRow {
    pub ue: u64,
    pub method: String,
    pub mcs: String,
    pub per: f64,
    pub esinr_db: f64,
}

pub fn result_rows(results: &[DropResult], method: &str, labels: &[String]) -> Vec<ResultRow> {
    results
        .iter()
        .map(|r| ResultRow {
            ue: r.ue,
            method: method.to_string(),
            mcs: labels[r.chosen].clone(),
            per: r.per,
            throughput_mbps: r.throughput_mbps,
            esinr_db: r.esinr_db_by_mcs[r.chosen],
        })
        .collect()
}

pub fn mcs_rows(results: &[DropResult], method: &str, labels: &[String]) -> Vec<McsRow> {
    results
        .iter()
        .flat_map(|r| {
            labels.iter().enumerate().map(move |(i, l)| McsRow {
                ue: r.ue,
                method: method.to_string(),
                mcs: l.clone(),
                per: r.per_by_mcs[i],
                esinr_db: r.esinr_db_by_mcs[i],
            })
        })
        .collect()
}

/// Allocation of the coded block on the waveform's frequency samples.
pub fn allocation(config: &GfdmConfig) -> Result<Vec<usize>, CliError> {
    Ok(gfdm::modem::GfdmModem::new(config.clone())
        .map_err(CliError::runtime)?
        .allocation()
        .to_vec())
}
