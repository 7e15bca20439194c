use crate::error::{Error, Result};

/// Power-delay profile of a tapped delay line, delays in samples.
#[derive(Debug, Clone, PartialEq)]
pub struct TdlProfile {
    delays: Vec<usize>,
    powers: Vec<f64>,
}

impl TdlProfile {
    /// Taps must be distinct, powers non-negative and sum to one.
    pub fn new(delays: Vec<usize>, powers: Vec<f64>) -> Result<Self> {
        if delays.is_empty() {
            return Err(Error::Empty("tap delays"));
        }
        if delays.len() != powers.len() {
            return Err(Error::DimensionMismatch {
                expected: delays.len(),
                actual: powers.len(),
            });
        }
        let mut sorted = delays.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != delays.len() {
            return Err(Error::InvalidConfig("duplicate tap delay".into()));
        }
        if powers.iter().any(|p| !(*p >= 0.0)) {
            return Err(Error::InvalidConfig("negative tap power".into()));
        }
        let total: f64 = powers.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidConfig(format!("tap powers sum to {total}, expected 1")));
        }
        Ok(Self { delays, powers })
    }

    /// Exponential profile `p_l ~ exp(-d_l / tau)` on `taps` taps spaced
    /// `spacing` samples, with `tau` chosen so the RMS delay spread equals
    /// `rms` samples.
    pub fn exponential(taps: usize, spacing: usize, rms: f64) -> Result<Self> {
        if taps < 2 || spacing == 0 {
            return Err(Error::InvalidConfig("exponential profile needs >= 2 spaced taps".into()));
        }
        let delays: Vec<usize> = (0..taps).map(|l| l * spacing).collect();
        let spread = |tau: f64| rms_of(&delays, &weights(&delays, tau));
        // The spread grows monotonically from 0 (tau -> 0) to that of a flat
        // profile (tau -> inf).
        let (mut lo, mut hi) = (1e-3, 1e6);
        if rms <= spread(lo) || rms >= spread(hi) {
            return Err(Error::InvalidConfig(format!("RMS delay spread {rms} unreachable")));
        }
        for _ in 0..200 {
            let mid = (lo * hi).sqrt();
            if spread(mid) < rms {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let powers = weights(&delays, (lo * hi).sqrt());
        Self::new(delays, powers)
    }

    /// Six taps, 12 samples apart, 0.5 us RMS delay spread at 30.72 MHz.
    pub fn urban_default() -> Self {
        Self::exponential(6, 12, 0.5e-6 * 30.72e6).expect("valid default profile")
    }

    pub fn delays(&self) -> &[usize] {
        &self.delays
    }

    pub fn powers(&self) -> &[f64] {
        &self.powers
    }

    pub fn max_delay(&self) -> usize {
        *self.delays.iter().max().unwrap_or(&0)
    }

    pub fn rms_delay_spread(&self) -> f64 {
        rms_of(&self.delays, &self.powers)
    }
}

fn weights(delays: &[usize], tau: f64) -> Vec<f64> {
    let w: Vec<f64> = delays.iter().map(|&d| (-(d as f64) / tau).exp()).collect();
    let s: f64 = w.iter().sum();
    w.into_iter().map(|x| x / s).collect()
}

fn rms_of(delays: &[usize], powers: &[f64]) -> f64 {
    let mean: f64 = delays.iter().zip(powers).map(|(&d, p)| d as f64 * p).sum();
    let second: f64 = delays.iter().zip(powers).map(|(&d, p)| (d as f64).powi(2) * p).sum();
    (second - mean * mean).max(0.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_profile() {
        let p = TdlProfile::urban_default();
        assert_eq!(p.delays(), &[0, 12, 24, 36, 48, 60]);
        assert!((p.rms_delay_spread() - 15.36).abs() < 1e-9);
        assert!((p.powers().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(p.powers().windows(2).all(|w| w[0] > w[1]));
        assert_eq!(p.max_delay(), 60);
    }

    #[test]
    fn rejects_bad_profiles() {
        assert!(TdlProfile::new(vec![], vec![]).is_err());
        assert!(TdlProfile::new(vec![0, 1], vec![0.5]).is_err());
        assert!(TdlProfile::new(vec![0, 0], vec![0.5, 0.5]).is_err());
        assert!(TdlProfile::new(vec![0, 1], vec![0.7, 0.7]).is_err());
        assert!(TdlProfile::exponential(6, 12, 100.0).is_err());
    }
}
