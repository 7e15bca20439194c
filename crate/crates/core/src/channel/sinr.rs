use num_complex::Complex64;

use crate::error::{Error, Result};

/// Gain of one transmitter towards the receiver.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkGain {
    /// Transmit power, linear.
    pub p_tx: f64,
    /// Path gain including shadowing, linear, in `(0, 1]`.
    pub p_loss: f64,
    /// Small-scale frequency response over the `N` frequency samples.
    pub h: Vec<Complex64>,
}

impl LinkGain {
    pub fn new(p_tx: f64, p_loss: f64, h: Vec<Complex64>) -> Result<Self> {
        if !(p_tx > 0.0) {
            return Err(Error::InvalidConfig(format!("transmit power {p_tx} must be positive")));
        }
        if !(p_loss > 0.0 && p_loss <= 1.0) {
            return Err(Error::InvalidConfig(format!("path gain {p_loss} outside (0, 1]")));
        }
        Ok(Self { p_tx, p_loss, h })
    }

    /// Received power on frequency sample `f`.
    pub fn power(&self, f: usize) -> f64 {
        self.p_tx * self.p_loss * self.h[f].norm_sqr()
    }
}

/// Linear SINR on each frequency sample that carries the coded block.
#[derive(Debug, Clone, PartialEq)]
pub struct SinrVector {
    gamma: Vec<f64>,
}

impl SinrVector {
    pub fn new(gamma: Vec<f64>) -> Result<Self> {
        if gamma.is_empty() {
            return Err(Error::Empty("SINR vector"));
        }
        if let Some(g) = gamma.iter().find(|g| !(**g > 0.0) || g.is_nan()) {
            return Err(Error::InvalidConfig(format!("SINR entry {g} must be positive")));
        }
        Ok(Self { gamma })
    }

    /// `J` copies of one SNR.
    pub fn uniform(gamma: f64, len: usize) -> Result<Self> {
        Self::new(vec![gamma; len])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.gamma
    }

    pub fn len(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.gamma
    }
}

fn check_lengths(serving: &LinkGain, interferers: &[LinkGain]) -> Result<()> {
    for i in interferers {
        if i.h.len() != serving.h.len() {
            return Err(Error::DimensionMismatch {
                expected: serving.h.len(),
                actual: i.h.len(),
            });
        }
    }
    Ok(())
}

/// `sigma2 + sum_q P_q |H_q(f)|^2` on every frequency sample.
pub fn interference_plus_noise(serving: &LinkGain, interferers: &[LinkGain], sigma2: f64) -> Result<Vec<f64>> {
    if !(sigma2 > 0.0) {
        return Err(Error::NonPositiveVariance(sigma2));
    }
    check_lengths(serving, interferers)?;
    Ok((0..serving.h.len())
        .map(|f| sigma2 + interferers.iter().map(|q| q.power(f)).sum::<f64>())
        .collect())
}

/// Post-processing SINR per frequency sample,
/// `P |H(f)|^2 / (sigma2 + sum_q P_q |H_q(f)|^2)`, on `allocation` only.
pub fn compute_sinr(
    serving: &LinkGain,
    interferers: &[LinkGain],
    sigma2: f64,
    allocation: &[usize],
) -> Result<SinrVector> {
    if allocation.is_empty() {
        return Err(Error::Empty("allocation"));
    }
    if !(sigma2 > 0.0) {
        return Err(Error::NonPositiveVariance(sigma2));
    }
    check_lengths(serving, interferers)?;
    let n = serving.h.len();
    let mut gamma = Vec::with_capacity(allocation.len());
    for &f in allocation {
        if f >= n {
            return Err(Error::InvalidConfig(format!("allocation index {f} outside {n} samples")));
        }
        let i: f64 = interferers.iter().map(|q| q.power(f)).sum();
        // A deep fade can underflow to zero; keep the vector strictly positive.
        gamma.push((serving.power(f) / (sigma2 + i)).max(f64::MIN_POSITIVE));
    }
    SinrVector::new(gamma)
}
