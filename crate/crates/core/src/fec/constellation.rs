//! Gray-labelled square QAM and max-log soft demapping.
//!
//! Labelling: for a symbol carrying bits `b0 b1 ... b(m-1)`, the even bits
//! `b0 b2 ...` select the in-phase level and the odd bits `b1 b3 ...` the
//! quadrature level. On each axis the first bit is the sign (0 -> positive)
//! and the level index, counted from the most positive level, is the
//! binary-reflected Gray code of the axis bits. QPSK `00` is `(1 + j)/sqrt 2`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// LLRs are clipped to this magnitude.
pub const LLR_CLIP: f64 = 50.0;

#[derive(Debug, Clone)]
pub struct Constellation {
    bits: usize,
    /// Amplitude levels of one axis indexed by axis label.
    axis: Vec<f64>,
    points: Vec<Complex64>,
}

impl Constellation {
    /// Square QAM with `bits` in {2, 4, 6} bits per symbol.
    pub fn qam(bits: usize) -> Result<Self> {
        if !matches!(bits, 2 | 4 | 6) {
            return Err(Error::InvalidConfig(format!("unsupported modulation order {bits}")));
        }
        let per_axis = bits / 2;
        let levels = 1usize << per_axis;
        let norm = (2.0 * ((levels * levels) as f64 - 1.0) / 3.0).sqrt();
        let mut axis = vec![0.0; levels];
        for idx in 0..levels {
            let label = idx ^ (idx >> 1);
            axis[label] = ((levels - 1) as f64 - 2.0 * idx as f64) / norm;
        }
        let points = (0..1usize << bits)
            .map(|label| {
                let (mut i_lab, mut q_lab) = (0usize, 0usize);
                for b in 0..bits {
                    let bit = (label >> (bits - 1 - b)) & 1;
                    if b % 2 == 0 {
                        i_lab = (i_lab << 1) | bit;
                    } else {
                        q_lab = (q_lab << 1) | bit;
                    }
                }
                Complex64::new(axis[i_lab], axis[q_lab])
            })
            .collect();
        Ok(Self { bits, axis, points })
    }

    pub fn bits_per_symbol(&self) -> usize {
        self.bits
    }

    /// Points indexed by label, `b0` being the most significant bit.
    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn map(&self, bits: &[u8]) -> Result<Vec<Complex64>> {
        if bits.len() % self.bits != 0 {
            return Err(Error::DimensionMismatch {
                expected: bits.len().div_ceil(self.bits) * self.bits,
                actual: bits.len(),
            });
        }
        Ok(bits
            .chunks_exact(self.bits)
            .map(|c| {
                let label = c.iter().fold(0usize, |acc, &b| (acc << 1) | (b & 1) as usize);
                self.points[label]
            })
            .collect())
    }

    /// Max-log LLRs (positive means bit 0) for each symbol, using the
    /// per-symbol complex noise variance `noise_var[i]`.
    pub fn demap_llr(&self, symbols: &[Complex64], noise_var: &[f64]) -> Result<Vec<f64>> {
        if symbols.len() != noise_var.len() {
            return Err(Error::DimensionMismatch {
                expected: symbols.len(),
                actual: noise_var.len(),
            });
        }
        let per_axis = self.bits / 2;
        let mut out = vec![0.0; symbols.len() * self.bits];
        let mut axis_llr = [0.0f64; 3];
        for (s, (y, &var)) in symbols.iter().zip(noise_var).enumerate() {
            if !(var > 0.0) {
                return Err(Error::NonPositiveVariance(var));
            }
            let dst = &mut out[s * self.bits..(s + 1) * self.bits];
            for (comp, offset) in [(y.re, 0usize), (y.im, 1usize)] {
                self.axis_llr(comp, var, &mut axis_llr[..per_axis]);
                for (b, &l) in axis_llr[..per_axis].iter().enumerate() {
                    dst[2 * b + offset] = l;
                }
            }
        }
        Ok(out)
    }

    /// The complex metric `|y - x|^2 / var` splits into one term per axis,
    /// so each axis bit only needs a search over that axis' levels.
    fn axis_llr(&self, y: f64, var: f64, out: &mut [f64]) {
        let per_axis = out.len();
        let mut best = [[f64::INFINITY; 2]; 3];
        for (label, &a) in self.axis.iter().enumerate() {
            let d = (y - a) * (y - a);
            for (b, slot) in best.iter_mut().enumerate().take(per_axis) {
                let bit = (label >> (per_axis - 1 - b)) & 1;
                if d < slot[bit] {
                    slot[bit] = d;
                }
            }
        }
        for (b, o) in out.iter_mut().enumerate() {
            *o = ((best[b][1] - best[b][0]) / var).clamp(-LLR_CLIP, LLR_CLIP);
        }
    }
}
