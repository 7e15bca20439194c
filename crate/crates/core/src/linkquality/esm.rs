//! Effective SINR mappings.

use super::si::SiTable;
use crate::channel::SinrVector;
use crate::error::{Error, Result};

/// Where the coding correction factor acts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GammaCodeMode {
    /// SI is evaluated at `gamma_code * gamma_j`; the effective SINR is
    /// divided by `gamma_code` afterwards.
    #[default]
    SnrDomain,
    /// SI values are multiplied by `gamma_code` (capped at `m`).
    SiDomain,
}

fn check_gamma_code(gamma_code: f64) -> Result<()> {
    if gamma_code > 0.0 && gamma_code.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("gamma_code {gamma_code} must be positive")))
    }
}

fn log_mean_exp(v: impl Iterator<Item = f64>) -> f64 {
    let v: Vec<f64> = v.collect();
    let mx = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let s: f64 = v.iter().map(|x| (x - mx).exp()).sum();
    mx + s.ln() - (v.len() as f64).ln()
}

/// Mean SI and log of the mean deficit over the block, SNR-domain scaling.
fn block_information(sinrs: &SinrVector, table: &SiTable, gamma_code: f64) -> (f64, f64) {
    let g = sinrs.as_slice();
    let mean_si = g.iter().map(|x| table.si(gamma_code * x)).sum::<f64>() / g.len() as f64;
    let ln_mean_d = log_mean_exp(g.iter().map(|x| table.ln_deficit_at(gamma_code * x)));
    (mean_si, ln_mean_d)
}

/// Received bit information rate,
/// `sum_j min(SI(gamma_code * gamma_j), m) / (J m)`, in `[0, 1]`.
pub fn rbir(sinrs: &SinrVector, table: &SiTable, gamma_code: f64) -> Result<f64> {
    check_gamma_code(gamma_code)?;
    if sinrs.is_empty() {
        return Err(Error::Empty("SINR vector"));
    }
    let m = table.bits() as f64;
    let (mean_si, ln_mean_d) = block_information(sinrs, table, gamma_code);
    // Near saturation the deficit is the accurate quantity.
    let r = if mean_si > 0.5 * m { 1.0 - ln_mean_d.exp() / m } else { mean_si / m };
    Ok(r.clamp(0.0, 1.0))
}

/// Mutual-information effective SINR in dB.
pub fn esinr_miesm(sinrs: &SinrVector, table: &SiTable, gamma_code: f64, mode: GammaCodeMode) -> Result<f64> {
    check_gamma_code(gamma_code)?;
    if sinrs.is_empty() {
        return Err(Error::Empty("SINR vector"));
    }
    let g = sinrs.as_slice();
    let lo = g.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = g.iter().cloned().fold(0.0, f64::max);
    let m = table.bits() as f64;
    // With gamma_code = 1 both modes are the same mapping.
    let eff = if mode == GammaCodeMode::SnrDomain || gamma_code == 1.0 {
        let (mean_si, ln_mean_d) = block_information(sinrs, table, gamma_code);
        // The exact mean lies between the extremes; clamp away rounding.
        (table.inverse_mean(mean_si, ln_mean_d) / gamma_code).clamp(lo, hi)
    } else {
        let total: f64 = g.iter().map(|x| (gamma_code * table.si(*x)).min(m)).sum();
        let mean_si = total / g.len() as f64;
        if mean_si >= m {
            log::warn!("RBIR saturated at 1; effective SINR clamped to the table top");
            10f64.powf(table.snr_db()[table.snr_db().len() - 1] / 10.0)
        } else {
            table.inverse(mean_si)
        }
    };
    Ok(10.0 * eff.log10())
}

/// Exponential effective SINR in dB, `-beta ln((1/J) sum exp(-gamma_j / beta))`.
pub fn esinr_eesm(sinrs: &SinrVector, beta: f64) -> Result<f64> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::InvalidConfig(format!("beta {beta} must be positive")));
    }
    if sinrs.is_empty() {
        return Err(Error::Empty("SINR vector"));
    }
    let g = sinrs.as_slice();
    let lo = g.iter().cloned().fold(f64::INFINITY, f64::min);
    // Shift by the smallest SINR so the exponentials cannot all underflow.
    let s: f64 = g.iter().map(|x| (-(x - lo) / beta).exp()).sum::<f64>() / g.len() as f64;
    let hi = g.iter().cloned().fold(0.0, f64::max);
    let eff = (lo - beta * s.ln()).clamp(lo, hi);
    Ok(10.0 * eff.log10())
}
