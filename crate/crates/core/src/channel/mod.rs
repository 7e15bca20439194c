//! Channel realisations, the channel applied to sample blocks, and the
//! per-frequency-sample SINR with interferers.
//!
//! Noise convention: `sigma2` is the variance of the complex noise on each
//! time sample. With unit-energy symbols the link SNR is `1 / sigma2`.

mod profile;
mod sinr;
mod snapshot;

use num_complex::Complex64;
use rand::Rng;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::modem::SampleBlock;
use crate::rng::complex_normal;

pub use profile::TdlProfile;
pub use sinr::{compute_sinr, interference_plus_noise, LinkGain, SinrVector};
pub use snapshot::{read_snapshots, write_snapshots, SNAPSHOT_MAGIC};

/// Kind of channel to draw.
#[derive(Debug, Clone, PartialEq)]
pub enum ChannelKind {
    Awgn,
    FlatRayleigh,
    Tdl(TdlProfile),
}

impl ChannelKind {
    pub fn label(&self) -> &'static str {
        match self {
            ChannelKind::Awgn => "awgn",
            ChannelKind::FlatRayleigh => "rayleigh",
            ChannelKind::Tdl(_) => "tdl",
        }
    }
}

/// One channel draw: impulse response, its `N`-point frequency response and
/// the noise variance.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    /// `(delay in samples, complex gain)` per tap.
    pub taps: Vec<(usize, Complex64)>,
    pub h: Vec<Complex64>,
    pub sigma2: f64,
}

impl ChannelRealization {
    /// Builds a realisation from taps, computing `H(f) = sum_l h_l e^{-j 2 pi f d_l / N}`.
    pub fn from_taps(taps: Vec<(usize, Complex64)>, n: usize, sigma2: f64) -> Result<Self> {
        if sigma2 <= 0.0 || !sigma2.is_finite() {
            return Err(Error::NonPositiveVariance(sigma2));
        }
        if taps.is_empty() {
            return Err(Error::Empty("channel taps"));
        }
        if let Some(&(d, _)) = taps.iter().find(|(d, _)| *d >= n) {
            return Err(Error::InvalidConfig(format!("tap delay {d} exceeds block length {n}")));
        }
        let mut h = vec![Complex64::new(0.0, 0.0); n];
        for &(d, g) in &taps {
            h[d] += g;
        }
        FftPlanner::new().plan_fft_forward(n).process(&mut h);
        Ok(Self { taps, h, sigma2 })
    }

    /// Flat channel with gain `g` on every frequency sample.
    pub fn flat(g: Complex64, n: usize, sigma2: f64) -> Result<Self> {
        Self::from_taps(vec![(0, g)], n, sigma2)
    }

    pub fn max_delay(&self) -> usize {
        self.taps.iter().map(|t| t.0).max().unwrap_or(0)
    }

    /// `sum_l |h_l|^2`.
    pub fn tap_energy(&self) -> f64 {
        self.taps.iter().map(|t| t.1.norm_sqr()).sum()
    }

    /// Noise variance per frequency sample after zero-forcing equalisation,
    /// `sigma2 / |H(f)|^2` (unitary DFT scale).
    pub fn equalized_noise(&self) -> Vec<f64> {
        self.h.iter().map(|h| self.sigma2 / h.norm_sqr()).collect()
    }
}

/// Draws a channel of `kind` over `n` frequency samples.
pub fn draw_channel<R: Rng + ?Sized>(
    kind: &ChannelKind,
    n: usize,
    sigma2: f64,
    rng: &mut R,
) -> Result<ChannelRealization> {
    let taps = match kind {
        ChannelKind::Awgn => vec![(0, Complex64::new(1.0, 0.0))],
        ChannelKind::FlatRayleigh => vec![(0, complex_normal(rng, 1.0))],
        ChannelKind::Tdl(profile) => profile
            .delays()
            .iter()
            .zip(profile.powers())
            .map(|(&d, &p)| (d, complex_normal(rng, p)))
            .collect(),
    };
    ChannelRealization::from_taps(taps, n, sigma2)
}

/// Passes a block through the channel: linear convolution with the taps
/// (samples before the block are taken as zero) plus white noise of
/// variance `sigma2`. With a cyclic prefix at least as long as the channel
/// this is circular convolution on the payload.
pub fn apply_channel<R: Rng + ?Sized>(
    x: &SampleBlock,
    ch: &ChannelRealization,
    cp_len: usize,
    rng: &mut R,
) -> Result<SampleBlock> {
    if !x.has_cp && cp_len > 0 {
        return Err(Error::InvalidConfig("apply_channel expects a block with cyclic prefix".into()));
    }
    if ch.max_delay() > cp_len {
        log::warn!(
            "channel delay {} exceeds cyclic prefix {}; inter-symbol interference is not modelled",
            ch.max_delay(),
            cp_len
        );
    }
    let len = x.samples.len();
    let mut y = vec![Complex64::new(0.0, 0.0); len];
    for &(d, g) in &ch.taps {
        for i in d..len {
            y[i] += g * x.samples[i - d];
        }
    }
    for v in y.iter_mut() {
        *v += complex_normal(rng, ch.sigma2);
    }
    Ok(SampleBlock::new(y, x.has_cp))
}

/// Adds independent complex noise to an unnormalised `N`-point spectrum.
/// `bin_var[f]` is the variance in the unitary-DFT scale, so bin `f`
/// receives variance `N * bin_var[f]`.
pub fn add_spectral_noise<R: Rng + ?Sized>(spec: &mut [Complex64], bin_var: &[f64], rng: &mut R) -> Result<()> {
    if spec.len() != bin_var.len() {
        return Err(Error::DimensionMismatch {
            expected: spec.len(),
            actual: bin_var.len(),
        });
    }
    let n = spec.len() as f64;
    for (s, &v) in spec.iter_mut().zip(bin_var) {
        if !(v >= 0.0) {
            return Err(Error::NonPositiveVariance(v));
        }
        *s += complex_normal(rng, n * v);
    }
    Ok(())
}
