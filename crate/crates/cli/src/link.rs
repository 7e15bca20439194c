//! Link-level sweeps: bit-level and abstraction curves over a channel
//! ensemble.

use gfdm::channel::{draw_channel, ChannelKind, ChannelRealization, SinrVector, TdlProfile};
use gfdm::linkquality::{calibrate_gamma_code, lut_key, predict_curve, BlerCurve, LinkAbstraction};
use gfdm::rng::{domain, label_id, quantize_db, stream};
use gfdm::sim::{ErrorCounts, LinkSimulator, PacketChannel};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{ExperimentConfig, Scenario};
use crate::CliError;

/// Packets per independently seeded work item.
const CHUNK: u64 = 50;

pub type Taps = Vec<(usize, Complex64)>;

pub fn channel_kind(scenario: Scenario) -> ChannelKind {
    match scenario {
        Scenario::Awgn | Scenario::Syslevel => ChannelKind::Awgn,
        Scenario::Rayleigh => ChannelKind::FlatRayleigh,
        Scenario::Tdl => ChannelKind::Tdl(TdlProfile::urban_default()),
    }
}

/// Tap sets of `count` realisations (one for AWGN). The stream depends on
/// the channel kind and index only, so every MCS, filter and SNR sees the
/// same ensemble.
pub fn draw_ensemble(kind: &ChannelKind, count: u64, seed: u64) -> Result<Vec<Taps>, CliError> {
    let count = if *kind == ChannelKind::Awgn { 1 } else { count };
    // Only the taps are kept; the grid just has to hold the longest delay.
    let n = match kind {
        ChannelKind::Tdl(p) => p.max_delay() + 1,
        _ => 1,
    };
    (0..count)
        .map(|r| {
            let mut rng = stream(seed, &[domain::CHANNEL, label_id(kind.label()), r]);
            draw_channel(kind, n, 1.0, &mut rng).map(|c| c.taps).map_err(CliError::runtime)
        })
        .collect()
}

/// `|H(f)|^2` on the allocated frequency samples of each realisation.
pub fn allocation_gains(sim: &LinkSimulator, ensemble: &[Taps]) -> Result<Vec<Vec<f64>>, CliError> {
    let n = sim.config().block_len();
    ensemble
        .iter()
        .map(|t| {
            let ch = ChannelRealization::from_taps(t.clone(), n, 1.0).map_err(CliError::runtime)?;
            Ok(sim.modem().allocation().iter().map(|&f| ch.h[f].norm_sqr()).collect())
        })
        .collect()
}

/// Bit-level error counts at each SNR, pooled over the ensemble with
/// `packets` packets per realisation. Work items are seeded by
/// `(key, SNR, realisation, chunk)`, so results do not depend on threads.
pub fn bitlevel_sweep(
    sim: &LinkSimulator,
    ensemble: &[Taps],
    snr_db: &[f64],
    packets: u64,
    seed: u64,
) -> Result<Vec<ErrorCounts>, CliError> {
    let n = sim.config().block_len();
    let key = label_id(&lut_key(sim));
    let chunks = packets.div_ceil(CHUNK);
    let items: Vec<(usize, usize, u64)> = (0..snr_db.len())
        .flat_map(|i| (0..ensemble.len()).flat_map(move |r| (0..chunks).map(move |c| (i, r, c))))
        .collect();
    let counts = items
        .par_iter()
        .map(|&(i, r, c)| {
            let sigma2 = 10f64.powf(-snr_db[i] / 10.0);
            let ch = ChannelRealization::from_taps(ensemble[r].clone(), n, sigma2)?;
            let mut rng = stream(seed, &[domain::LINK, key, quantize_db(snr_db[i]), r as u64, c]);
            let k = CHUNK.min(packets - c * CHUNK);
            sim.run_packets(PacketChannel::Waveform(&ch), k, &mut rng)
        })
        .collect::<gfdm::Result<Vec<_>>>()
        .map_err(CliError::runtime)?;
    let mut out = vec![ErrorCounts::default(); snr_db.len()];
    for (&(i, _, _), c) in items.iter().zip(counts) {
        out[i].add(c);
    }
    Ok(out)
}

/// Mean predicted `(BLER, BER)` over the ensemble at each SNR.
pub fn abstraction_sweep(
    abstraction: &LinkAbstraction<'_>,
    gains: &[Vec<f64>],
    snr_db: &[f64],
) -> Result<Vec<(f64, f64)>, CliError> {
    snr_db
        .iter()
        .map(|&s| {
            let lin = 10f64.powf(s / 10.0);
            let mut bler = 0.0;
            let mut ber = 0.0;
            for g in gains {
                let v = SinrVector::new(g.iter().map(|x| (x * lin).max(f64::MIN_POSITIVE)).collect())
                    .map_err(CliError::runtime)?;
                let r = abstraction.evaluate(&v).map_err(CliError::runtime)?;
                bler += r.bler;
                ber += abstraction.lut.predict_ber(r.esinr_db);
            }
            let n = gains.len() as f64;
            Ok((bler / n, ber / n))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkRow {
    pub snr_db: f64,
    pub method: String,
    pub mcs: String,
    pub filter: String,
    pub ber: f64,
    pub bler: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaRow {
    pub mcs: String,
    pub filter: String,
    pub gamma_code: f64,
    pub max_gap_db: f64,
}

#[derive(Debug, Clone, Default)]
pub struct LinkOutput {
    pub rows: Vec<LinkRow>,
    pub gammas: Vec<GammaRow>,
    pub bitlevel_seconds: f64,
    pub abstraction_seconds: f64,
}

/// Runs both methods for every (filter, MCS) of a link scenario. `luts`
/// supplies the AWGN table of each simulator.
pub fn run_link(
    cfg: &ExperimentConfig,
    mut lut_for: impl FnMut(&LinkSimulator) -> Result<gfdm::linkquality::BlerLut, CliError>,
) -> Result<LinkOutput, CliError> {
    let sweep = cfg.sweep.as_ref().ok_or_else(|| CliError::Config("missing [sweep]".into()))?;
    let snr = cfg.snr_grid();
    let kind = channel_kind(cfg.scenario);
    let ensemble = draw_ensemble(&kind, sweep.realizations, cfg.seed)?;
    let mut out = LinkOutput::default();
    for filter in cfg.filters()? {
        for (i, spec) in cfg.mcs_specs()?.into_iter().enumerate() {
            let sim = LinkSimulator::new(cfg.gfdm(filter), spec).map_err(CliError::runtime)?;
            let lut = lut_for(&sim)?;
            let table = gfdm::linkquality::SiTable::standard(spec.bits).map_err(CliError::runtime)?;
            let (mcs, flt) = (sim.mcs().label(), filter.label());

            let t = std::time::Instant::now();
            let bit = bitlevel_sweep(&sim, &ensemble, &snr, sweep.packets, cfg.seed)?;
            out.bitlevel_seconds += t.elapsed().as_secs_f64();

            let t = std::time::Instant::now();
            let gains = allocation_gains(&sim, &ensemble)?;
            let gamma = match cfg.gamma_code.fixed(i) {
                Some(g) => g,
                None => {
                    let reference = BlerCurve::new(snr.clone(), bit.iter().map(|c| c.bler()).collect())
                        .map_err(CliError::runtime)?;
                    let (g, gap) = calibrate_gamma_code(&reference, |g| {
                        predict_curve(&LinkAbstraction::new(table, &lut, g), &gains, &snr)
                    })
                    .map_err(CliError::runtime)?;
                    out.gammas.push(GammaRow {
                        mcs: mcs.clone(),
                        filter: flt.clone(),
                        gamma_code: g,
                        max_gap_db: gap,
                    });
                    g
                }
            };
            let abs = abstraction_sweep(&LinkAbstraction::new(table, &lut, gamma), &gains, &snr)?;
            out.abstraction_seconds += t.elapsed().as_secs_f64();

            for (i, &s) in snr.iter().enumerate() {
                out.rows.push(LinkRow {
                    snr_db: s,
                    method: "bitlevel".into(),
                    mcs: mcs.clone(),
                    filter: flt.clone(),
                    ber: bit[i].ber(),
                    bler: bit[i].bler(),
                });
                out.rows.push(LinkRow {
                    snr_db: s,
                    method: "abstraction".into(),
                    mcs: mcs.clone(),
                    filter: flt.clone(),
                    ber: abs[i].1,
                    bler: abs[i].0,
                });
            }
        }
    }
    Ok(out)
}
