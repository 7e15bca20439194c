use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::config::GfdmConfig;
use super::filter::{build_filter, signed_bin, PrototypeFilter};
use super::grid::{SampleBlock, SymbolGrid};
use crate::error::{Error, Result};

/// Largest admissible condition number of the modulation matrix.
pub const MAX_CONDITION_NUMBER: f64 = 1e12;

/// Channel magnitudes below this are treated as spectral nulls.
pub const MIN_CHANNEL_MAGNITUDE: f64 = 1e-12;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Reference modulator: evaluates
///
/// ```text
/// x[n] = sum_k sum_m g[(n - m K) mod N] exp(-j 2 pi k n / K) d[k][m]
/// ```
///
/// term by term. Quadratic in `N`; kept as the oracle for [`GfdmModem::modulate`].
pub fn modulate_direct(
    grid: &SymbolGrid,
    filter: &PrototypeFilter,
    config: &GfdmConfig,
) -> Result<SampleBlock> {
    grid.check(config)?;
    let (k_count, m_count, n) = (config.subcarriers, config.sub_symbols, config.block_len());
    if filter.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: filter.len(),
        });
    }
    let phase: Vec<Complex64> = (0..k_count)
        .map(|q| Complex64::from_polar(1.0, -2.0 * PI * q as f64 / k_count as f64))
        .collect();
    let mut x = vec![ZERO; n];
    for (i, xn) in x.iter_mut().enumerate() {
        let mut acc = ZERO;
        for k in 0..k_count {
            let rot = phase[(k * i) % k_count];
            let mut sub = ZERO;
            for m in 0..m_count {
                sub += filter.taps[(i + n - (m * k_count) % n) % n] * grid.get(k, m);
            }
            acc += rot * sub;
        }
        *xn = acc;
    }
    Ok(SampleBlock::new(x, false))
}

/// GFDM transmitter and zero-forcing receiver for one configuration.
///
/// Modulation works in the frequency domain: each subcarrier's sub-symbols
/// go through an `M`-point DFT, are weighted by the filter spectrum, placed
/// at the subcarrier's bins and summed; one `N`-point inverse DFT finishes
/// the block. Demodulation inverts this exactly. For every residue
/// `r = f mod M` the `K` bins `r, r + M, ...` form a circulant system in the
/// subcarriers' spectra, so the inverse is a `K`-point DFT division.
///
/// The modem is immutable once built and can be shared between threads.
#[derive(Clone)]
pub struct GfdmModem {
    config: GfdmConfig,
    filter: PrototypeFilter,
    support: Vec<(usize, Complex64)>,
    /// `1 / lambda_r[p]` at `r * K + p`.
    inv_eigs: Vec<Complex64>,
    /// Non-zero `|b_r[q]|^2` of the circulant inverse kernel, per residue.
    inv_kernel: Vec<Vec<(usize, f64)>>,
    condition_number: f64,
    used_bins: Vec<bool>,
    allocation: Vec<usize>,
    fft_n: Arc<dyn Fft<f64>>,
    ifft_n: Arc<dyn Fft<f64>>,
    fft_m: Arc<dyn Fft<f64>>,
    ifft_m: Arc<dyn Fft<f64>>,
    fft_k: Arc<dyn Fft<f64>>,
    ifft_k: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for GfdmModem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GfdmModem")
            .field("config", &self.config)
            .field("condition_number", &self.condition_number)
            .finish()
    }
}

impl GfdmModem {
    /// Validates `config`, builds its filter and checks that the modulation
    /// matrix is invertible.
    pub fn new(config: GfdmConfig) -> Result<Self> {
        config.validate()?;
        let filter = build_filter(&config)?;
        let (k_count, m_count, n) = (config.subcarriers, config.sub_symbols, config.block_len());
        let mut planner = FftPlanner::new();
        let fft_n = planner.plan_fft_forward(n);
        let ifft_n = planner.plan_fft_inverse(n);
        let fft_m = planner.plan_fft_forward(m_count);
        let ifft_m = planner.plan_fft_inverse(m_count);
        let fft_k = planner.plan_fft_forward(k_count);
        let ifft_k = planner.plan_fft_inverse(k_count);

        let mut inv_eigs = Vec::with_capacity(n);
        let mut inv_kernel = Vec::with_capacity(m_count);
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for r in 0..m_count {
            let mut lambda: Vec<Complex64> =
                (0..k_count).map(|j| filter.spectrum[r + j * m_count]).collect();
            fft_k.process(&mut lambda);
            for l in &lambda {
                lo = lo.min(l.norm());
                hi = hi.max(l.norm());
            }
            let inv: Vec<Complex64> = lambda
                .iter()
                .map(|l| if l.norm() > 0.0 { l.inv() } else { ZERO })
                .collect();
            let mut kernel = inv.clone();
            ifft_k.process(&mut kernel);
            let peak = kernel.iter().map(|b| b.norm_sqr()).fold(0.0, f64::max);
            let scale = 1.0 / (k_count * k_count) as f64;
            inv_kernel.push(
                kernel
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| b.norm_sqr() > 1e-24 * peak)
                    .map(|(q, b)| (q, b.norm_sqr() * scale))
                    .collect(),
            );
            inv_eigs.extend(inv);
        }
        let condition_number = if lo > 0.0 { hi / lo } else { f64::INFINITY };
        if !(condition_number <= MAX_CONDITION_NUMBER) {
            return Err(Error::SingularModulation(condition_number));
        }

        let support = filter.support();
        let mut used_bins = vec![false; n];
        let mut allocation = Vec::with_capacity(config.active_symbols());
        let half = (m_count as i64 - 1) / 2;
        let first = if m_count % 2 == 1 { -half } else { -(m_count as i64) / 2 };
        for &k in &config.active {
            let shift = k * m_count;
            for &(fg, _) in &support {
                used_bins[(fg + n - shift) % n] = true;
            }
            for off in 0..m_count as i64 {
                let fs = first + off;
                let f = (fs.rem_euclid(n as i64) as usize + n - shift) % n;
                allocation.push(f);
            }
        }
        debug_assert!(allocation
            .iter()
            .all(|&f| signed_bin(f, n).unsigned_abs() as usize <= n / 2));

        Ok(Self {
            config,
            filter,
            support,
            inv_eigs,
            inv_kernel,
            condition_number,
            used_bins,
            allocation,
            fft_n,
            ifft_n,
            fft_m,
            ifft_m,
            fft_k,
            ifft_k,
        })
    }

    pub fn config(&self) -> &GfdmConfig {
        &self.config
    }

    pub fn filter(&self) -> &PrototypeFilter {
        &self.filter
    }

    /// Ratio of largest to smallest singular value of the modulation matrix.
    pub fn condition_number(&self) -> f64 {
        self.condition_number
    }

    /// Frequency samples carrying the active subcarriers: the `M` bins of
    /// each active subcarrier's own spectral slot, `K_on * M` in total.
    pub fn allocation(&self) -> &[usize] {
        &self.allocation
    }

    /// Fast modulator; agrees with [`modulate_direct`] to rounding error.
    pub fn modulate(&self, grid: &SymbolGrid) -> Result<SampleBlock> {
        grid.check(&self.config)?;
        let (m_count, n) = (self.config.sub_symbols, self.config.block_len());
        let mut spec = vec![ZERO; n];
        let mut sub = vec![ZERO; m_count];
        for &k in &self.config.active {
            sub.copy_from_slice(grid.row(k));
            self.fft_m.process(&mut sub);
            let shift = k * m_count;
            for &(fg, g) in &self.support {
                let f = (fg + n - shift) % n;
                spec[f] += g * sub[f % m_count];
            }
        }
        self.ifft_n.process(&mut spec);
        let inv_n = 1.0 / n as f64;
        spec.iter_mut().for_each(|s| *s *= inv_n);
        Ok(SampleBlock::new(spec, false))
    }

    /// Unnormalised DFT of a block without cyclic prefix.
    pub fn spectrum(&self, block: &SampleBlock) -> Result<Vec<Complex64>> {
        if block.has_cp {
            return Err(Error::InvalidConfig("remove the cyclic prefix first".into()));
        }
        block.check(&self.config)?;
        let mut spec = block.samples.clone();
        self.fft_n.process(&mut spec);
        Ok(spec)
    }

    /// Inverse of [`GfdmModem::spectrum`]: time block from an unnormalised
    /// `N`-point spectrum.
    pub fn from_spectrum(&self, spectrum: &[Complex64]) -> Result<SampleBlock> {
        let n = self.config.block_len();
        if spectrum.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: spectrum.len(),
            });
        }
        let mut x = spectrum.to_vec();
        self.ifft_n.process(&mut x);
        let inv_n = 1.0 / n as f64;
        x.iter_mut().for_each(|s| *s *= inv_n);
        Ok(SampleBlock::new(x, false))
    }

    /// Frequency-domain zero-forcing equaliser, `Y(f) = R(f) / H(f)`.
    ///
    /// Fails if `H` vanishes on a bin that carries an active subcarrier.
    /// Bins outside the active band are divided where possible and zeroed
    /// otherwise.
    pub fn equalize_zf(&self, received: &SampleBlock, h: &[Complex64]) -> Result<SampleBlock> {
        let n = self.config.block_len();
        if h.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: h.len(),
            });
        }
        let mut spec = self.spectrum(received)?;
        for (f, (y, hf)) in spec.iter_mut().zip(h).enumerate() {
            if hf.norm() < MIN_CHANNEL_MAGNITUDE {
                if self.used_bins[f] {
                    return Err(Error::SingularChannel(f));
                }
                *y = ZERO;
            } else {
                *y /= hf;
            }
        }
        self.ifft_n.process(&mut spec);
        let inv_n = 1.0 / n as f64;
        spec.iter_mut().for_each(|s| *s *= inv_n);
        Ok(SampleBlock::new(spec, false))
    }

    /// Zero-forcing demodulator: applies the exact inverse of the modulation
    /// matrix. Inactive subcarriers come back as zeros.
    pub fn demodulate(&self, block: &SampleBlock) -> Result<SymbolGrid> {
        let spec = self.spectrum(block)?;
        let (k_count, m_count) = (self.config.subcarriers, self.config.sub_symbols);
        // per-subcarrier spectra D_k[r], subcarrier-major
        let mut dk = vec![ZERO; k_count * m_count];
        let mut buf = vec![ZERO; k_count];
        let inv_k = 1.0 / k_count as f64;
        for r in 0..m_count {
            for (i, b) in buf.iter_mut().enumerate() {
                *b = spec[r + i * m_count];
            }
            self.fft_k.process(&mut buf);
            for (b, l) in buf.iter_mut().zip(&self.inv_eigs[r * k_count..(r + 1) * k_count]) {
                *b *= l;
            }
            self.ifft_k.process(&mut buf);
            for &k in &self.config.active {
                dk[k * m_count + r] = buf[(k_count - k) % k_count] * inv_k;
            }
        }
        let mut grid = SymbolGrid::zeros(&self.config);
        let inv_m = 1.0 / m_count as f64;
        for &k in &self.config.active {
            let row = grid.row_mut(k);
            row.copy_from_slice(&dk[k * m_count..(k + 1) * m_count]);
            self.ifft_m.process(row);
            row.iter_mut().for_each(|v| *v *= inv_m);
        }
        Ok(grid)
    }

    /// Noise variance of each demodulated symbol, per subcarrier.
    ///
    /// `bin_var[f]` is the variance of independent noise on frequency sample
    /// `f` after equalisation, in the unitary-DFT scale (for white noise of
    /// per-sample variance `s` through channel `H` this is `s / |H(f)|^2`).
    /// All sub-symbols of a subcarrier see the same variance; inactive
    /// subcarriers report zero.
    pub fn zf_noise_variance(&self, bin_var: &[f64]) -> Result<Vec<f64>> {
        let (k_count, m_count, n) = (self.config.subcarriers, self.config.sub_symbols, self.config.block_len());
        if bin_var.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: bin_var.len(),
            });
        }
        let mut out = vec![0.0; k_count];
        let scale = n as f64 / (m_count * m_count) as f64;
        for &k in &self.config.active {
            let target = (k_count - k) % k_count;
            let mut acc = 0.0;
            for (r, kernel) in self.inv_kernel.iter().enumerate() {
                for &(q, p) in kernel {
                    // b[(target - i) mod K] = b[q]  =>  i = target - q
                    let i = (target + k_count - q) % k_count;
                    acc += p * bin_var[r + i * m_count];
                }
            }
            out[k] = acc * scale;
        }
        Ok(out)
    }
}

/// One-shot fast modulation; builds a [`GfdmModem`] for `config`.
pub fn modulate_fast(grid: &SymbolGrid, config: &GfdmConfig) -> Result<SampleBlock> {
    GfdmModem::new(config.clone())?.modulate(grid)
}

/// One-shot zero-forcing demodulation; builds a [`GfdmModem`] for `config`.
pub fn demodulate_zf(block: &SampleBlock, config: &GfdmConfig) -> Result<SymbolGrid> {
    GfdmModem::new(config.clone())?.demodulate(block)
}
