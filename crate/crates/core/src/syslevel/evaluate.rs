use num_complex::Complex64;

use super::deployment::{Deployment, UeDrop, SITES};
use crate::channel::{SinrVector, TdlProfile};
use crate::error::{Error, Result};
use crate::fec::McsMode;
use crate::linkquality::LinkAbstraction;
use crate::modem::GfdmConfig;
use crate::rng::{complex_normal, domain, stream};
use crate::sim::{ErrorCounts, LinkSimulator, PacketChannel};

/// Interference-free or interference-included evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    Snr,
    Sinr,
}

impl Case {
    pub fn label(&self) -> &'static str {
        match self {
            Case::Snr => "snr",
            Case::Sinr => "sinr",
        }
    }
}

/// Frequency response of a fixed set of tap delays on chosen bins, with
/// the twiddles precomputed.
#[derive(Debug, Clone)]
struct TapResponse {
    taps: usize,
    bins: usize,
    /// `twiddle[b * taps + l] = exp(-j 2 pi f_b d_l / N)`
    twiddle: Vec<Complex64>,
}

impl TapResponse {
    fn new(delays: &[usize], bins: &[usize], n: usize) -> Self {
        let mut twiddle = Vec::with_capacity(delays.len() * bins.len());
        for &f in bins {
            for &d in delays {
                let ph = -2.0 * std::f64::consts::PI * ((f * d) % n) as f64 / n as f64;
                twiddle.push(Complex64::from_polar(1.0, ph));
            }
        }
        Self {
            taps: delays.len(),
            bins: bins.len(),
            twiddle,
        }
    }

    /// Adds `power * |H(f)|^2` for every bin to `out`.
    fn accumulate_power(&self, gains: &[Complex64], power: f64, out: &mut [f64]) {
        for (b, o) in out.iter_mut().enumerate().take(self.bins) {
            let tw = &self.twiddle[b * self.taps..(b + 1) * self.taps];
            let h: Complex64 = tw.iter().zip(gains).map(|(t, g)| t * g).sum();
            *o += power * h.norm_sqr();
        }
    }
}

/// Everything needed to turn a user drop into per-snapshot SINRs.
#[derive(Debug, Clone)]
pub struct SystemModel {
    pub deployment: Deployment,
    pub config: GfdmConfig,
    pub profile: TdlProfile,
    pub seed: u64,
    noise_mw: f64,
    allocation: Vec<usize>,
    on_allocation: TapResponse,
    on_all_bins: TapResponse,
}

impl SystemModel {
    /// `allocation` lists the frequency samples of the coded block.
    pub fn new(
        deployment: Deployment,
        config: GfdmConfig,
        allocation: Vec<usize>,
        profile: TdlProfile,
        seed: u64,
    ) -> Result<Self> {
        config.validate()?;
        let n = config.block_len();
        if allocation.is_empty() || allocation.iter().any(|&f| f >= n) {
            return Err(Error::InvalidConfig("allocation outside the block".into()));
        }
        if profile.max_delay() > config.cp_len {
            log::warn!("delay spread exceeds the cyclic prefix");
        }
        let spacing_hz = sample_rate_hz(&config) / config.subcarriers as f64;
        let bandwidth = config.active.len() as f64 * spacing_hz;
        let noise_mw = 10f64.powf(deployment.params.noise_dbm(bandwidth) / 10.0);
        let all: Vec<usize> = (0..n).collect();
        Ok(Self {
            on_allocation: TapResponse::new(profile.delays(), &allocation, n),
            on_all_bins: TapResponse::new(profile.delays(), &all, n),
            deployment,
            config,
            profile,
            seed,
            noise_mw,
            allocation,
        })
    }

    pub fn noise_mw(&self) -> f64 {
        self.noise_mw
    }

    pub fn allocation(&self) -> &[usize] {
        &self.allocation
    }

    /// Serving link below the sensitivity threshold.
    pub fn in_outage(&self, ue: &UeDrop) -> bool {
        ue.rx_power_dbm(0) < self.deployment.params.sensitivity_dbm
    }

    /// Small-scale tap gains of all seven links for one snapshot. Both
    /// evaluation paths draw from this stream.
    fn taps(&self, ue: &UeDrop, snapshot: u64) -> [Vec<Complex64>; SITES] {
        let mut rng = stream(self.seed, &[domain::CHANNEL, ue.id, snapshot]);
        std::array::from_fn(|_| self.profile.powers().iter().map(|&p| complex_normal(&mut rng, p)).collect())
    }

    fn ratio(&self, ue: &UeDrop, snapshot: u64, case: Case, resp: &TapResponse) -> (Vec<f64>, Vec<f64>) {
        let taps = self.taps(ue, snapshot);
        let mut signal = vec![0.0; resp.bins];
        resp.accumulate_power(&taps[0], ue.eirp_mw[0] * ue.path_gain[0], &mut signal);
        let mut noise = vec![self.noise_mw; resp.bins];
        if case == Case::Sinr {
            for i in 1..SITES {
                resp.accumulate_power(&taps[i], ue.eirp_mw[i] * ue.path_gain[i], &mut noise);
            }
        }
        (signal, noise)
    }

    /// Per-sample SINR of one snapshot on the allocation.
    pub fn sinr(&self, ue: &UeDrop, snapshot: u64, case: Case) -> Result<SinrVector> {
        let (s, n) = self.ratio(ue, snapshot, case, &self.on_allocation);
        SinrVector::new(s.iter().zip(&n).map(|(s, n)| (s / n).max(f64::MIN_POSITIVE)).collect())
    }

    /// Equalised noise variance `1 / SINR(f)` on all `N` samples, relative
    /// to unit symbol energy; the allocated entries are the reciprocals of
    /// [`SystemModel::sinr`].
    pub fn equalized_noise(&self, ue: &UeDrop, snapshot: u64, case: Case) -> Vec<f64> {
        let (s, n) = self.ratio(ue, snapshot, case, &self.on_all_bins);
        s.iter().zip(&n).map(|(s, n)| (n / s).min(1e300)).collect()
    }
}

/// Sample rate implied by the waveform: 240 kHz subcarrier spacing for the
/// 128-subcarrier system block (30.72 MHz), scaled with `K`.
pub fn sample_rate_hz(config: &GfdmConfig) -> f64 {
    config.subcarriers as f64 * 240e3
}

/// Information rate (Mbps) of `mcs`: one code block per GFDM block plus CP.
pub fn rate_mbps(mcs: &McsMode, config: &GfdmConfig) -> f64 {
    mcs.bit_rate(config.block_len() + config.cp_len, sample_rate_hz(config)) / 1e6
}

/// Per-MCS outcome of one user.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McsEstimate {
    pub per: f64,
    /// Mean effective SINR over snapshots (dB); NaN for the bit-level path.
    pub esinr_db: f64,
}

/// Abstraction path: mean predicted BLER over `snapshots` snapshots, for
/// every MCS at once.
pub fn evaluate_link_abstraction(
    model: &SystemModel,
    ue: &UeDrop,
    abstractions: &[LinkAbstraction<'_>],
    snapshots: u64,
    case: Case,
) -> Result<Vec<McsEstimate>> {
    if snapshots == 0 {
        return Err(Error::InvalidConfig("snapshot count must be positive".into()));
    }
    if model.in_outage(ue) {
        return Ok(vec![McsEstimate { per: 1.0, esinr_db: f64::NEG_INFINITY }; abstractions.len()]);
    }
    let mut per = vec![0.0; abstractions.len()];
    let mut esinr = vec![0.0; abstractions.len()];
    for s in 0..snapshots {
        let v = model.sinr(ue, s, case)?;
        for (i, a) in abstractions.iter().enumerate() {
            let r = a.evaluate(&v)?;
            per[i] += r.bler;
            esinr[i] += r.esinr_db;
        }
    }
    let n = snapshots as f64;
    Ok(per
        .iter()
        .zip(&esinr)
        .map(|(p, e)| McsEstimate {
            per: p / n,
            esinr_db: e / n,
        })
        .collect())
}

/// Bit-level path: `packets` packets per snapshot through the full chain,
/// interference as coloured Gaussian noise. Packet streams depend on the
/// user, snapshot and MCS but not on the case, so both cases see the same
/// information bits and standard normal draws.
pub fn evaluate_link_bitlevel(
    model: &SystemModel,
    ue: &UeDrop,
    sims: &[LinkSimulator],
    snapshots: u64,
    packets: u64,
    case: Case,
) -> Result<Vec<ErrorCounts>> {
    if snapshots == 0 || packets == 0 {
        return Err(Error::InvalidConfig("snapshot and packet counts must be positive".into()));
    }
    let mut out = vec![ErrorCounts::default(); sims.len()];
    if model.in_outage(ue) {
        for (o, sim) in out.iter_mut().zip(sims) {
            *o = ErrorCounts {
                packets: snapshots * packets,
                block_errors: snapshots * packets,
                bits: snapshots * packets * sim.mcs().info_len as u64,
                bit_errors: snapshots * packets * sim.mcs().info_len as u64 / 2,
            };
        }
        return Ok(out);
    }
    for s in 0..snapshots {
        let bin_var = model.equalized_noise(ue, s, case);
        for (i, sim) in sims.iter().enumerate() {
            let mut rng = stream(model.seed, &[domain::PACKET, ue.id, s, i as u64]);
            out[i].add(sim.run_packets(PacketChannel::Equalized { bin_var: &bin_var }, packets, &mut rng)?);
        }
    }
    Ok(out)
}

/// Index of the MCS maximising `rate * (1 - per)`; ties go to the earlier
/// (lower-order) entry.
pub fn adaptive_mcs(rates: &[f64], pers: &[f64]) -> Result<usize> {
    if rates.is_empty() || rates.len() != pers.len() {
        return Err(Error::InvalidConfig("need one PER per MCS".into()));
    }
    let mut best = 0;
    let mut best_tp = rates[0] * (1.0 - pers[0]);
    for i in 1..rates.len() {
        let tp = rates[i] * (1.0 - pers[i]);
        if tp > best_tp {
            best = i;
            best_tp = tp;
        }
    }
    Ok(best)
}

/// Outcome of one user for one method and case.
#[derive(Debug, Clone, PartialEq)]
pub struct DropResult {
    pub ue: u64,
    pub case: Case,
    pub per_by_mcs: Vec<f64>,
    pub esinr_db_by_mcs: Vec<f64>,
    pub chosen: usize,
    pub per: f64,
    pub throughput_mbps: f64,
}

impl DropResult {
    /// Applies adaptive MCS selection to per-MCS estimates.
    pub fn select(ue: u64, case: Case, estimates: &[McsEstimate], rates: &[f64]) -> Result<Self> {
        let pers: Vec<f64> = estimates.iter().map(|e| e.per).collect();
        let chosen = adaptive_mcs(rates, &pers)?;
        Ok(Self {
            ue,
            case,
            per_by_mcs: pers.clone(),
            esinr_db_by_mcs: estimates.iter().map(|e| e.esinr_db).collect(),
            chosen,
            per: pers[chosen],
            throughput_mbps: rates[chosen] * (1.0 - pers[chosen]),
        })
    }
}
