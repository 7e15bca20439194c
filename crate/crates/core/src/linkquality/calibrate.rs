//! AWGN LUT calibration, the assembled abstraction, and the coding
//! correction search.

use rayon::prelude::*;

use super::esm::{esinr_miesm, rbir, GammaCodeMode};
use super::lut::{max_snr_gap, BlerCurve, BlerLut, LutPoint};
use super::si::SiTable;
use crate::channel::{ChannelRealization, SinrVector};
use crate::error::{Error, Result};
use crate::rng::{domain, label_id, quantize_db, stream};
use crate::sim::{ErrorCounts, LinkSimulator, PacketChannel};

/// Stopping rules and search window for [`calibrate_bler_lut`].
#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationOptions {
    pub seed: u64,
    /// A point stops once it has this many packets...
    pub min_packets: u64,
    /// ...or this many block errors, whichever comes first.
    pub min_errors: u64,
    pub step_db: f64,
    /// SNR window (dB) the waterfall must lie in.
    pub window_db: (f64, f64),
    /// Packets per independently seeded chunk.
    pub chunk: u64,
}

impl Default for CalibrationOptions {
    fn default() -> Self {
        Self {
            seed: 1,
            min_packets: 2000,
            min_errors: 100,
            step_db: 0.25,
            window_db: (-15.0, 40.0),
            chunk: 50,
        }
    }
}

/// Table key identifying the waveform and code a LUT was calibrated for.
pub fn lut_key(sim: &LinkSimulator) -> String {
    let c = sim.config();
    format!(
        "{} {} {}x{} on={} info={}",
        sim.mcs().label(),
        c.filter.label(),
        c.subcarriers,
        c.sub_symbols,
        c.active.len(),
        sim.mcs().info_len
    )
}

/// Simulates one AWGN point. Chunks are seeded by index and run in fixed
/// rounds, so the result does not depend on the thread count.
fn simulate_point(sim: &LinkSimulator, snr_db: f64, key: u64, opts: &CalibrationOptions) -> Result<LutPoint> {
    const ROUND: u64 = 4;
    let n = sim.config().block_len();
    let ch = ChannelRealization::flat(num_complex::Complex64::new(1.0, 0.0), n, 10f64.powf(-snr_db / 10.0))?;
    let mut total = ErrorCounts::default();
    let mut next = 0u64;
    while total.packets < opts.min_packets && total.block_errors < opts.min_errors {
        let counts = (next..next + ROUND)
            .into_par_iter()
            .map(|c| {
                let mut rng = stream(opts.seed, &[domain::CALIBRATION, key, quantize_db(snr_db), c]);
                sim.run_packets(PacketChannel::Waveform(&ch), opts.chunk, &mut rng)
            })
            .collect::<Result<Vec<_>>>()?;
        counts.into_iter().for_each(|c| total.add(c));
        next += ROUND;
    }
    Ok(LutPoint {
        snr_db,
        packets: total.packets,
        block_errors: total.block_errors,
        bits: total.bits,
        bit_errors: total.bit_errors,
    })
}

/// Sweeps the bit-level chain over AWGN on a grid around the waterfall:
/// downwards until every packet fails (or BLER >= 0.99), upwards until a
/// point completes with no block error.
pub fn calibrate_bler_lut(sim: &LinkSimulator, opts: &CalibrationOptions) -> Result<BlerLut> {
    let key = lut_key(sim);
    let id = label_id(&key);
    let spec = sim.mcs().spec;
    // Start where the modulation's SI equals the code rate.
    let table = SiTable::standard(spec.bits)?;
    let start = 10.0 * table.inverse(spec.rate.value() * spec.bits as f64).log10();
    let start = (start / opts.step_db).round() * opts.step_db;
    let (lo, hi) = opts.window_db;
    let not_found = || Error::WaterfallNotFound { lo, hi };
    let mut points = Vec::new();

    let mut s = start;
    loop {
        if s < lo {
            return Err(not_found());
        }
        let p = simulate_point(sim, s, id, opts)?;
        log::debug!("{key}: {s:.2} dB BLER {:.4} ({} packets)", p.bler(), p.packets);
        points.push(p);
        if p.block_errors == p.packets || p.bler() >= 0.99 {
            break;
        }
        s -= opts.step_db;
    }
    s = start + opts.step_db;
    if points[0].block_errors > 0 {
        loop {
            if s > hi {
                return Err(not_found());
            }
            let p = simulate_point(sim, s, id, opts)?;
            log::debug!("{key}: {s:.2} dB BLER {:.4} ({} packets)", p.bler(), p.packets);
            points.push(p);
            if p.block_errors == 0 {
                break;
            }
            s += opts.step_db;
        }
    } else {
        // The first point was already error free; add one above it so the
        // table ends on a clean point with a neighbour.
        points.push(simulate_point(sim, s, id, opts)?);
    }
    BlerLut::new(key, points)
}

/// Result of mapping one SINR vector through the abstraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EsinrReport {
    pub rbir: f64,
    pub esinr_db: f64,
    pub gamma_code: f64,
    pub bler: f64,
}

/// SI table, AWGN LUT and coding correction for one MCS.
#[derive(Debug, Clone)]
pub struct LinkAbstraction<'a> {
    pub table: &'a SiTable,
    pub lut: &'a BlerLut,
    pub gamma_code: f64,
    pub mode: GammaCodeMode,
}

impl<'a> LinkAbstraction<'a> {
    pub fn new(table: &'a SiTable, lut: &'a BlerLut, gamma_code: f64) -> Self {
        Self {
            table,
            lut,
            gamma_code,
            mode: GammaCodeMode::SnrDomain,
        }
    }

    pub fn evaluate(&self, sinrs: &SinrVector) -> Result<EsinrReport> {
        let esinr_db = esinr_miesm(sinrs, self.table, self.gamma_code, self.mode)?;
        Ok(EsinrReport {
            rbir: rbir(sinrs, self.table, self.gamma_code)?,
            esinr_db,
            gamma_code: self.gamma_code,
            bler: self.lut.predict_bler(esinr_db),
        })
    }

    /// Predicted BLER only.
    pub fn bler(&self, sinrs: &SinrVector) -> Result<f64> {
        Ok(self
            .lut
            .predict_bler(esinr_miesm(sinrs, self.table, self.gamma_code, self.mode)?))
    }
}

/// Predicted ensemble BLER curve: at each SNR the mean predicted BLER over
/// realisations whose per-sample SINR is `snr * gains[j]`.
pub fn predict_curve(abstraction: &LinkAbstraction<'_>, gains: &[Vec<f64>], snr_db: &[f64]) -> Result<BlerCurve> {
    if gains.is_empty() {
        return Err(Error::Empty("channel ensemble"));
    }
    let bler = snr_db
        .iter()
        .map(|&s| {
            let lin = 10f64.powf(s / 10.0);
            let total: f64 = gains
                .iter()
                .map(|g| abstraction.bler(&SinrVector::new(g.iter().map(|x| (x * lin).max(f64::MIN_POSITIVE)).collect())?))
                .sum::<Result<f64>>()?;
            Ok(total / gains.len() as f64)
        })
        .collect::<Result<Vec<_>>>()?;
    BlerCurve::new(snr_db.to_vec(), bler)
}

/// Candidate correction factors, 0.5 to 2.0 in steps of 0.02.
pub fn gamma_code_grid() -> Vec<f64> {
    (0..=75).map(|i| 0.5 + 0.02 * i as f64).collect()
}

/// Grid search for the coding correction minimising the largest SNR gap
/// between the reference curve and the prediction over 1-10 % BLER. Ties go
/// to the value closest to 1. Returns `(gamma_code, gap_db)`.
pub fn calibrate_gamma_code(
    reference: &BlerCurve,
    mut predict: impl FnMut(f64) -> Result<BlerCurve>,
) -> Result<(f64, f64)> {
    let (lo, hi) = (0.01, 0.1);
    if reference.snr_at(lo).is_none() || reference.snr_at(hi).is_none() {
        return Err(Error::OutsideBand { lo, hi });
    }
    let mut best: Option<(f64, f64)> = None;
    for g in gamma_code_grid() {
        let gap = match max_snr_gap(reference, &predict(g)?, lo, hi) {
            Ok(x) => x,
            Err(Error::OutsideBand { .. }) => continue,
            Err(e) => return Err(e),
        };
        let better = match best {
            None => true,
            Some((bg, bgap)) => gap < bgap - 1e-12 || ((gap - bgap).abs() <= 1e-12 && (g - 1.0).abs() < (bg - 1.0).abs()),
        };
        if better {
            best = Some((g, gap));
        }
    }
    best.ok_or(Error::OutsideBand { lo, hi })
}
