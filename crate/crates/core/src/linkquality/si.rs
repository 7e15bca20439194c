//! Symbol information of square QAM over complex AWGN and its table.
//!
//! Square QAM with independent in-phase and quadrature noise is two
//! independent PAM channels, so a tensor-product Gauss-Hermite rule over
//! the complex noise collapses exactly into twice a one-dimensional sum
//! over the PAM levels. Everything is computed through the deficit
//! `D = m - SI`, kept in the log domain so it stays representable (and
//! strictly monotone) long after `SI` itself rounds to `m`.

use std::io::{BufRead, Write};
use std::sync::OnceLock;

use super::quadrature::gauss_hermite;
use crate::error::{Error, Result};

/// Quadrature nodes per axis.
pub const QUADRATURE_NODES: usize = 64;
/// Table grid: -20 dB to +40 dB in 0.25 dB steps.
pub const TABLE_MIN_DB: f64 = -20.0;
pub const TABLE_MAX_DB: f64 = 40.0;
pub const TABLE_STEP_DB: f64 = 0.25;

fn check_bits(m: usize) -> Result<()> {
    if matches!(m, 2 | 4 | 6) {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("unsupported modulation order {m}")))
    }
}

fn log_sum_exp(v: &[f64]) -> f64 {
    let mx = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if mx == f64::NEG_INFINITY {
        return mx;
    }
    mx + v.iter().map(|x| (x - mx).exp()).sum::<f64>().ln()
}

/// `ln(ln(1 + e^s))` without overflow or underflow.
fn ln_ln1p_exp(s: f64) -> f64 {
    if s < -36.0 {
        s
    } else if s > 36.0 {
        // ln(1 + e^s) = s + ln(1 + e^-s)
        (s + (-s).exp().ln_1p()).ln()
    } else {
        s.exp().ln_1p().ln()
    }
}

/// Natural log of the deficit `m - SI(gamma, m)` for `m`-bit square QAM at
/// linear SNR `gamma`, using `nodes` Gauss-Hermite nodes per axis.
pub fn ln_deficit_with(gamma: f64, m: usize, nodes: usize) -> Result<f64> {
    check_bits(m)?;
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::InvalidConfig(format!("SNR {gamma} must be positive and finite")));
    }
    let levels_per_axis = 1usize << (m / 2);
    // Unit-energy square QAM: per-axis levels (2i - L + 1) * a.
    let a = (3.0 / (2.0 * ((levels_per_axis * levels_per_axis) as f64 - 1.0))).sqrt();
    let levels: Vec<f64> = (0..levels_per_axis)
        .map(|i| (2.0 * i as f64 - levels_per_axis as f64 + 1.0) * a)
        .collect();
    // Complex noise of variance 1/gamma: each axis N(0, 1/(2 gamma)), i.e.
    // z = sigma * t with weight exp(-t^2) / sqrt(pi) and sigma^2 = 1/gamma.
    let sigma = gamma.recip().sqrt();
    let (t, w) = gauss_hermite(nodes);
    let ln_norm = 0.5 * std::f64::consts::PI.ln();
    let mut terms = Vec::with_capacity(levels.len() * nodes);
    let mut exps = vec![0.0; levels.len() - 1];
    for (xi, &x) in levels.iter().enumerate() {
        for (&tk, &wk) in t.iter().zip(&w) {
            let z = sigma * tk;
            // log-likelihood ratios of every other level against x
            let mut e = 0;
            for (xj, &xp) in levels.iter().enumerate() {
                if xj == xi {
                    continue;
                }
                let d = x - xp;
                exps[e] = -(d * d + 2.0 * d * z) * gamma;
                e += 1;
            }
            terms.push(wk.ln() - ln_norm + ln_ln1p_exp(log_sum_exp(&exps)));
        }
    }
    // D_axis = (1/L) sum_x E[log2(1 + sum_{x' != x} ...)]; D = 2 D_axis.
    Ok(log_sum_exp(&terms) - (levels_per_axis as f64).ln() - std::f64::consts::LN_2.ln()
        + std::f64::consts::LN_2)
}

/// Symbol information in bits, `SI(gamma, m)`, by Gauss-Hermite quadrature.
pub fn compute_si(gamma: f64, m: usize) -> Result<f64> {
    if gamma == 0.0 {
        check_bits(m)?;
        return Ok(0.0);
    }
    Ok((m as f64 - ln_deficit_with(gamma, m, QUADRATURE_NODES)?.exp()).clamp(0.0, m as f64))
}

/// SI curve for one modulation order on a fixed dB grid.
///
/// Evaluation is piecewise linear in `ln D` against dB between nodes. Below
/// the grid SI is proportional to the linear SNR, above it `ln D` continues
/// linearly in the linear SNR; both extensions keep the curve strictly
/// monotone.
#[derive(Debug, Clone, PartialEq)]
pub struct SiTable {
    bits: usize,
    snr_db: Vec<f64>,
    ln_deficit: Vec<f64>,
}

impl SiTable {
    /// Evaluates the quadrature on the standard grid.
    pub fn build(m: usize) -> Result<Self> {
        check_bits(m)?;
        let steps = ((TABLE_MAX_DB - TABLE_MIN_DB) / TABLE_STEP_DB).round() as usize;
        let snr_db: Vec<f64> = (0..=steps).map(|i| TABLE_MIN_DB + i as f64 * TABLE_STEP_DB).collect();
        let ln_deficit = snr_db
            .iter()
            .map(|&db| ln_deficit_with(10f64.powf(db / 10.0), m, QUADRATURE_NODES))
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(m, snr_db, ln_deficit)
    }

    /// Process-wide shared table for `m`, built on first use.
    pub fn standard(m: usize) -> Result<&'static SiTable> {
        static TABLES: [OnceLock<SiTable>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
        check_bits(m)?;
        let slot = &TABLES[m / 2 - 1];
        if let Some(t) = slot.get() {
            return Ok(t);
        }
        let t = Self::build(m)?;
        Ok(slot.get_or_init(|| t))
    }

    fn from_parts(bits: usize, snr_db: Vec<f64>, ln_deficit: Vec<f64>) -> Result<Self> {
        check_bits(bits)?;
        if snr_db.len() < 2 || snr_db.len() != ln_deficit.len() {
            return Err(Error::Parse("SI table needs at least two matching rows".into()));
        }
        if !snr_db.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Parse("SI table SNR grid not increasing".into()));
        }
        if !ln_deficit.windows(2).all(|w| w[0] > w[1]) {
            return Err(Error::Parse("SI table deficit not strictly decreasing".into()));
        }
        if ln_deficit[0] >= (bits as f64).ln() {
            return Err(Error::Parse("SI table starts at or below zero information".into()));
        }
        Ok(Self { bits, snr_db, ln_deficit })
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn snr_db(&self) -> &[f64] {
        &self.snr_db
    }

    pub fn ln_deficit(&self) -> &[f64] {
        &self.ln_deficit
    }

    /// Tabulated SI values.
    pub fn si_values(&self) -> Vec<f64> {
        self.ln_deficit.iter().map(|l| self.bits as f64 - l.exp()).collect()
    }

    fn m(&self) -> f64 {
        self.bits as f64
    }

    fn low_anchor(&self) -> (f64, f64) {
        let g0 = 10f64.powf(self.snr_db[0] / 10.0);
        (g0, self.m() - self.ln_deficit[0].exp())
    }

    /// Slope of `ln D` against linear SNR beyond the grid.
    fn high_slope(&self) -> (f64, f64, f64) {
        let n = self.snr_db.len();
        let g1 = 10f64.powf(self.snr_db[n - 1] / 10.0);
        let g0 = 10f64.powf(self.snr_db[n - 2] / 10.0);
        let slope = (self.ln_deficit[n - 1] - self.ln_deficit[n - 2]) / (g1 - g0);
        (g1, self.ln_deficit[n - 1], slope)
    }

    /// `ln(m - SI(gamma))` for linear `gamma > 0`.
    pub fn ln_deficit_at(&self, gamma: f64) -> f64 {
        let (g0, si0) = self.low_anchor();
        if gamma <= g0 {
            return (self.m() - si0 * gamma / g0).ln();
        }
        let (g1, l1, slope) = self.high_slope();
        if gamma >= g1 {
            return l1 + slope * (gamma - g1);
        }
        let db = 10.0 * gamma.log10();
        let i = self.segment(db);
        let t = (db - self.snr_db[i]) / (self.snr_db[i + 1] - self.snr_db[i]);
        self.ln_deficit[i] + t * (self.ln_deficit[i + 1] - self.ln_deficit[i])
    }

    /// Interpolated SI in bits.
    pub fn si(&self, gamma: f64) -> f64 {
        let (g0, si0) = self.low_anchor();
        if gamma <= g0 {
            return (si0 * gamma / g0).max(0.0);
        }
        (self.m() - self.ln_deficit_at(gamma).exp()).clamp(0.0, self.m())
    }

    fn segment(&self, db: f64) -> usize {
        let idx = self.snr_db.partition_point(|&x| x <= db);
        idx.saturating_sub(1).min(self.snr_db.len() - 2)
    }

    /// Linear SNR whose SI equals `si` (low side, where SI is small and the
    /// deficit carries no precision).
    fn inverse_low(&self, si: f64) -> f64 {
        let (g0, si0) = self.low_anchor();
        g0 * si / si0
    }

    /// Linear SNR with `ln(m - SI) = ln_d`, for `ln_d` not above the first
    /// table node.
    pub fn inverse_ln_deficit(&self, ln_d: f64) -> f64 {
        if ln_d >= self.ln_deficit[0] {
            let si = self.m() - ln_d.exp();
            return self.inverse_low(si.max(0.0));
        }
        let (g1, l1, slope) = self.high_slope();
        if ln_d <= l1 {
            return g1 + (ln_d - l1) / slope;
        }
        // ln_deficit is strictly decreasing; find i with d[i] > ln_d >= d[i+1]
        let i = self.ln_deficit.partition_point(|&x| x > ln_d).saturating_sub(1);
        let i = i.min(self.ln_deficit.len() - 2);
        let t = (ln_d - self.ln_deficit[i]) / (self.ln_deficit[i + 1] - self.ln_deficit[i]);
        let db = self.snr_db[i] + t * (self.snr_db[i + 1] - self.snr_db[i]);
        10f64.powf(db / 10.0)
    }

    /// Linear SNR of a block average given both its mean SI and the log of
    /// its mean deficit; each is used where it carries the precision.
    pub(crate) fn inverse_mean(&self, mean_si: f64, ln_mean_deficit: f64) -> f64 {
        let (_, si0) = self.low_anchor();
        if mean_si <= si0 {
            self.inverse_low(mean_si.max(0.0))
        } else {
            self.inverse_ln_deficit(ln_mean_deficit)
        }
    }

    /// Linear SNR whose SI is `si`, `0 < si < m`.
    pub fn inverse(&self, si: f64) -> f64 {
        let (_, si0) = self.low_anchor();
        if si <= si0 {
            return self.inverse_low(si.max(0.0));
        }
        self.inverse_ln_deficit((self.m() - si).ln())
    }

    /// Writes `snr_db,si,ln_deficit` rows after `#`-prefixed header lines.
    pub fn write<W: Write>(&self, mut w: W, header: &[String]) -> Result<()> {
        for h in header {
            writeln!(w, "# {h}")?;
        }
        writeln!(w, "# table=si")?;
        writeln!(w, "# bits={}", self.bits)?;
        writeln!(w, "# nodes={QUADRATURE_NODES}")?;
        writeln!(w, "snr_db,si,ln_deficit")?;
        for ((db, si), ld) in self.snr_db.iter().zip(self.si_values()).zip(&self.ln_deficit) {
            writeln!(w, "{db},{si},{ld}")?;
        }
        Ok(())
    }

    /// Reads a table written by [`SiTable::write`]. The `ln_deficit`
    /// column is authoritative; `si` is checked against it.
    pub fn read<R: BufRead>(r: R) -> Result<Self> {
        let mut bits = None;
        let mut snr_db = Vec::new();
        let mut ln_deficit = Vec::new();
        let mut seen_columns = false;
        for line in r.lines() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(h) = line.strip_prefix('#') {
                if let Some(v) = h.trim().strip_prefix("bits=") {
                    bits = Some(v.parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?);
                }
                continue;
            }
            if !seen_columns {
                if line != "snr_db,si,ln_deficit" {
                    return Err(Error::Parse(format!("unexpected SI table columns {line:?}")));
                }
                seen_columns = true;
                continue;
            }
            let f: Vec<f64> = line
                .split(',')
                .map(|s| s.parse::<f64>().map_err(|e| Error::Parse(format!("{s:?}: {e}"))))
                .collect::<Result<_>>()?;
            if f.len() != 3 {
                return Err(Error::Parse(format!("bad SI table row {line:?}")));
            }
            let m = bits.ok_or_else(|| Error::Parse("SI table missing bits header".into()))? as f64;
            if (f[1] - (m - f[2].exp())).abs() > 1e-12 * m {
                return Err(Error::Parse(format!("inconsistent SI row {line:?}")));
            }
            snr_db.push(f[0]);
            ln_deficit.push(f[2]);
        }
        let bits = bits.ok_or_else(|| Error::Parse("SI table missing bits header".into()))?;
        Self::from_parts(bits, snr_db, ln_deficit)
    }
}
