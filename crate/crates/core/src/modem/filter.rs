use num_complex::Complex64;
use rustfft::FftPlanner;

use super::config::{FilterKind, GfdmConfig};
use crate::error::{Error, Result};

/// Unit-energy prototype pulse `g[n]` of length `N`, together with its
/// (unnormalised) DFT `G[f] = sum_n g[n] exp(-j 2 pi f n / N)`.
#[derive(Debug, Clone)]
pub struct PrototypeFilter {
    pub taps: Vec<Complex64>,
    pub spectrum: Vec<Complex64>,
}

impl PrototypeFilter {
    pub fn len(&self) -> usize {
        self.taps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taps.is_empty()
    }

    pub fn energy(&self) -> f64 {
        self.taps.iter().map(|t| t.norm_sqr()).sum()
    }

    /// Non-zero spectral bins as `(bin, G[bin])`.
    pub fn support(&self) -> Vec<(usize, Complex64)> {
        self.spectrum
            .iter()
            .enumerate()
            .filter(|(_, g)| g.norm_sqr() > 0.0)
            .map(|(f, g)| (f, *g))
            .collect()
    }
}

/// Maps DFT bin `f` of an `n`-point transform onto `[-n/2, n/2)`.
pub(crate) fn signed_bin(f: usize, n: usize) -> i64 {
    if f < n.div_ceil(2) {
        f as i64
    } else {
        f as i64 - n as i64
    }
}

fn dirichlet_shape(fs: i64, m: usize) -> f64 {
    let m = m as i64;
    let (lo, hi) = if m % 2 == 1 {
        (-(m - 1) / 2, (m - 1) / 2)
    } else {
        (-m / 2, m / 2 - 1)
    };
    if (lo..=hi).contains(&fs) {
        1.0
    } else {
        0.0
    }
}

/// Raised-cosine amplitude at normalised frequency `nu` (in subcarrier
/// spacings).
fn raised_cosine_shape(nu: f64, rolloff: f64) -> f64 {
    let nu = nu.abs();
    let inner = 0.5 * (1.0 - rolloff);
    let outer = 0.5 * (1.0 + rolloff);
    if nu <= inner {
        1.0
    } else if nu <= outer {
        0.5 * (1.0 + (std::f64::consts::PI / rolloff * (nu - inner)).cos())
    } else {
        0.0
    }
}

/// Builds the prototype filter selected by `config.filter`.
///
/// A raised cosine with zero roll-off is the Dirichlet pulse, bit for bit.
pub fn build_filter(config: &GfdmConfig) -> Result<PrototypeFilter> {
    config.filter.validate()?;
    let n = config.block_len();
    let m = config.sub_symbols;
    if n == 0 {
        return Err(Error::InvalidConfig("empty block".into()));
    }
    let shape: Vec<f64> = (0..n)
        .map(|f| {
            let fs = signed_bin(f, n);
            match config.filter {
                FilterKind::RaisedCosine { rolloff } if rolloff > 0.0 => {
                    raised_cosine_shape(fs as f64 / m as f64, rolloff)
                }
                _ => dirichlet_shape(fs, m),
            }
        })
        .collect();
    let power: f64 = shape.iter().map(|s| s * s).sum();
    // Parseval with an unnormalised DFT: sum |g|^2 = (1/N) sum |G|^2.
    let scale = (n as f64 / power).sqrt();
    let spectrum: Vec<Complex64> = shape.iter().map(|&s| Complex64::new(s * scale, 0.0)).collect();

    let mut taps = spectrum.clone();
    FftPlanner::new().plan_fft_inverse(n).process(&mut taps);
    let inv_n = 1.0 / n as f64;
    taps.iter_mut().for_each(|t| *t *= inv_n);
    Ok(PrototypeFilter { taps, spectrum })
}
