//! AWGN SNR-to-BLER lookup tables and curve comparison.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// Weighted pool-adjacent-violators fit, non-increasing.
pub fn isotonic_decreasing(values: &[f64], weights: &[f64]) -> Vec<f64> {
    assert_eq!(values.len(), weights.len());
    // blocks of (mean, weight, count)
    let mut blocks: Vec<(f64, f64, usize)> = Vec::with_capacity(values.len());
    for (&v, &w) in values.iter().zip(weights) {
        blocks.push((v, w.max(f64::MIN_POSITIVE), 1));
        while blocks.len() >= 2 {
            let (b2, b1) = (blocks[blocks.len() - 1], blocks[blocks.len() - 2]);
            if b1.0 >= b2.0 {
                break;
            }
            blocks.pop();
            let w = b1.1 + b2.1;
            *blocks.last_mut().unwrap() = ((b1.0 * b1.1 + b2.0 * b2.1) / w, w, b1.2 + b2.2);
        }
    }
    blocks.into_iter().flat_map(|(v, _, c)| std::iter::repeat_n(v, c)).collect()
}

/// One simulated SNR point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LutPoint {
    pub snr_db: f64,
    pub packets: u64,
    pub block_errors: u64,
    pub bits: u64,
    pub bit_errors: u64,
}

impl LutPoint {
    pub fn bler(&self) -> f64 {
        self.block_errors as f64 / self.packets as f64
    }

    pub fn ber(&self) -> f64 {
        self.bit_errors as f64 / self.bits.max(1) as f64
    }
}

/// Calibrated AWGN BLER (and BER) curve for one MCS and filter.
#[derive(Debug, Clone, PartialEq)]
pub struct BlerLut {
    /// Free-form key, e.g. `qpsk-1/3 dirichlet 64x9 info=384`.
    pub key: String,
    points: Vec<LutPoint>,
    bler: Vec<f64>,
    ber: Vec<f64>,
    floor: f64,
}

impl BlerLut {
    /// Sorts the points by SNR and fits non-increasing BLER and BER curves.
    pub fn new(key: impl Into<String>, mut points: Vec<LutPoint>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::Empty("BLER LUT needs at least two points"));
        }
        if points.iter().any(|p| p.packets == 0 || p.block_errors > p.packets || p.bit_errors > p.bits) {
            return Err(Error::InvalidConfig("inconsistent LUT point counts".into()));
        }
        points.sort_by(|a, b| a.snr_db.total_cmp(&b.snr_db));
        if points.windows(2).any(|w| w[0].snr_db == w[1].snr_db) {
            return Err(Error::InvalidConfig("duplicate SNR in LUT".into()));
        }
        let w: Vec<f64> = points.iter().map(|p| p.packets as f64).collect();
        let bler = isotonic_decreasing(&points.iter().map(LutPoint::bler).collect::<Vec<_>>(), &w);
        let ber = isotonic_decreasing(&points.iter().map(LutPoint::ber).collect::<Vec<_>>(), &w);
        let max_packets = points.iter().map(|p| p.packets).max().unwrap_or(1);
        Ok(Self {
            key: key.into(),
            points,
            bler,
            ber,
            floor: 1.0 / (10.0 * max_packets as f64),
        })
    }

    pub fn points(&self) -> &[LutPoint] {
        &self.points
    }

    /// Smoothed BLER at each point.
    pub fn bler(&self) -> &[f64] {
        &self.bler
    }

    pub fn ber(&self) -> &[f64] {
        &self.ber
    }

    /// Smallest predictable BLER, `1 / (10 * packets)`.
    pub fn floor(&self) -> f64 {
        self.floor
    }

    pub fn snr_range(&self) -> (f64, f64) {
        (self.points[0].snr_db, self.points[self.points.len() - 1].snr_db)
    }

    fn interpolate(&self, values: &[f64], snr_db: f64, below: f64) -> f64 {
        let (lo, hi) = self.snr_range();
        if snr_db.is_nan() || snr_db < lo {
            return below;
        }
        if snr_db > hi {
            return self.floor;
        }
        let i = self.points.partition_point(|p| p.snr_db <= snr_db).saturating_sub(1);
        let i = i.min(self.points.len() - 2);
        let (x0, x1) = (self.points[i].snr_db, self.points[i + 1].snr_db);
        let (y0, y1) = (values[i].max(self.floor).ln(), values[i + 1].max(self.floor).ln());
        let t = (snr_db - x0) / (x1 - x0);
        (y0 + t * (y1 - y0)).exp().clamp(self.floor, 1.0)
    }

    /// Log-linear interpolation of the smoothed BLER, 1 below the table and
    /// the floor above it.
    pub fn predict_bler(&self, snr_db: f64) -> f64 {
        self.interpolate(&self.bler, snr_db, 1.0)
    }

    /// As [`BlerLut::predict_bler`] for the bit error rate; below the table
    /// the first tabulated BER is returned.
    pub fn predict_ber(&self, snr_db: f64) -> f64 {
        let first = self.ber[0].max(self.floor);
        self.interpolate(&self.ber, snr_db, first)
    }

    /// Writes `#` header lines then `snr_db,bler,packets,block_errors,bits,bit_errors,ber`.
    pub fn write<W: Write>(&self, mut w: W, header: &[String]) -> Result<()> {
        for h in header {
            writeln!(w, "# {h}")?;
        }
        writeln!(w, "# table=bler")?;
        writeln!(w, "# key={}", self.key)?;
        writeln!(w, "snr_db,bler,packets,block_errors,bits,bit_errors,ber")?;
        for (p, (b, e)) in self.points.iter().zip(self.bler.iter().zip(&self.ber)) {
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                p.snr_db, b, p.packets, p.block_errors, p.bits, p.bit_errors, e
            )?;
        }
        Ok(())
    }

    /// Reads a LUT written by [`BlerLut::write`]; smoothing is recomputed
    /// from the raw counts.
    pub fn read<R: BufRead>(r: R) -> Result<Self> {
        let mut key = None;
        let mut points = Vec::new();
        let mut seen_columns = false;
        for line in r.lines() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(h) = line.strip_prefix('#') {
                if let Some(v) = h.trim().strip_prefix("key=") {
                    key = Some(v.to_string());
                }
                continue;
            }
            if !seen_columns {
                if line != "snr_db,bler,packets,block_errors,bits,bit_errors,ber" {
                    return Err(Error::Parse(format!("unexpected LUT columns {line:?}")));
                }
                seen_columns = true;
                continue;
            }
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 7 {
                return Err(Error::Parse(format!("bad LUT row {line:?}")));
            }
            let num = |s: &str| s.parse::<u64>().map_err(|e| Error::Parse(format!("{s:?}: {e}")));
            points.push(LutPoint {
                snr_db: f[0].parse().map_err(|e| Error::Parse(format!("{:?}: {e}", f[0])))?,
                packets: num(f[2])?,
                block_errors: num(f[3])?,
                bits: num(f[4])?,
                bit_errors: num(f[5])?,
            });
        }
        Self::new(key.ok_or_else(|| Error::Parse("LUT missing key header".into()))?, points)
    }
}

/// A BLER-versus-SNR curve, SNR ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct BlerCurve {
    pub snr_db: Vec<f64>,
    pub bler: Vec<f64>,
}

impl BlerCurve {
    pub fn new(snr_db: Vec<f64>, bler: Vec<f64>) -> Result<Self> {
        if snr_db.len() != bler.len() {
            return Err(Error::DimensionMismatch {
                expected: snr_db.len(),
                actual: bler.len(),
            });
        }
        if snr_db.len() < 2 {
            return Err(Error::Empty("BLER curve needs at least two points"));
        }
        if !snr_db.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidConfig("curve SNR grid not increasing".into()));
        }
        Ok(Self { snr_db, bler })
    }

    /// SNR (dB) at which the non-increasing fit of the curve first reaches
    /// `level`, interpolating log-BLER linearly. `None` if it never does.
    pub fn snr_at(&self, level: f64) -> Option<f64> {
        let fit = isotonic_decreasing(&self.bler, &vec![1.0; self.bler.len()]);
        for i in 0..fit.len() - 1 {
            let (a, b) = (fit[i], fit[i + 1]);
            if a >= level && b <= level && a > b {
                if b <= 0.0 {
                    // log-linear towards zero is undefined; fall back to linear
                    let t = (a - level) / (a - b);
                    return Some(self.snr_db[i] + t * (self.snr_db[i + 1] - self.snr_db[i]));
                }
                let t = (a.ln() - level.ln()) / (a.ln() - b.ln());
                return Some(self.snr_db[i] + t * (self.snr_db[i + 1] - self.snr_db[i]));
            }
            if a == level {
                return Some(self.snr_db[i]);
            }
        }
        None
    }
}

/// Largest horizontal distance (dB) between two curves over BLER levels in
/// `[lo, hi]`, sampled at 21 log-spaced levels.
pub fn max_snr_gap(reference: &BlerCurve, candidate: &BlerCurve, lo: f64, hi: f64) -> Result<f64> {
    let mut worst = 0.0f64;
    let steps = 20;
    for s in 0..=steps {
        let level = (lo.ln() + (hi.ln() - lo.ln()) * s as f64 / steps as f64).exp();
        let a = reference.snr_at(level).ok_or(Error::OutsideBand { lo, hi })?;
        let b = candidate.snr_at(level).ok_or(Error::OutsideBand { lo, hi })?;
        worst = worst.max((a - b).abs());
    }
    Ok(worst)
}
