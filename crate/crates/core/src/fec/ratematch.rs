//! Rate matching and the channel bit interleaver.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::turbo::TAIL_BITS;
use crate::error::{Error, Result};

/// Selects `coded_len` positions of a mother codeword.
///
/// All systematic and tail bits are sent. The parity budget is split
/// evenly between the two encoders and each parity stream is sampled at
/// evenly spaced positions. If the target exceeds the mother length, the
/// mother codeword repeats cyclically.
#[derive(Debug, Clone)]
pub struct RateMatcher {
    mother_len: usize,
    positions: Vec<usize>,
}

impl RateMatcher {
    pub fn new(block_len: usize, coded_len: usize) -> Result<Self> {
        let k = block_len;
        let mother_len = 3 * k + TAIL_BITS;
        let base = k + TAIL_BITS;
        if coded_len < base {
            return Err(Error::InvalidConfig(format!(
                "{coded_len} coded bits cannot carry {k} information bits"
            )));
        }
        let positions = if coded_len >= mother_len {
            (0..coded_len).map(|i| i % mother_len).collect()
        } else {
            // half the parity budget from each encoder, evenly spaced
            let parity = coded_len - base;
            let n1 = parity.div_ceil(2);
            let n2 = parity / 2;
            let mut pos: Vec<usize> = (0..k).collect();
            pos.extend((0..n1).map(|i| k + i * k / n1));
            pos.extend((0..n2).map(|i| 2 * k + i * k / n2));
            pos.extend(3 * k..mother_len);
            pos
        };
        Ok(Self {
            mother_len,
            positions,
        })
    }

    pub fn coded_len(&self) -> usize {
        self.positions.len()
    }

    pub fn select(&self, mother: &[u8]) -> Vec<u8> {
        self.positions.iter().map(|&p| mother[p]).collect()
    }

    /// Scatters LLRs back onto the mother codeword, summing repeats;
    /// unsent positions get 0.
    pub fn restore(&self, llr: &[f64]) -> Result<Vec<f64>> {
        if llr.len() != self.positions.len() {
            return Err(Error::DimensionMismatch {
                expected: self.positions.len(),
                actual: llr.len(),
            });
        }
        let mut mother = vec![0.0; self.mother_len];
        for (&p, &l) in self.positions.iter().zip(llr) {
            mother[p] += l;
        }
        Ok(mother)
    }
}

/// Fixed pseudo-random permutation of the coded bits, spreading each code
/// block over the whole time-frequency grid.
#[derive(Debug, Clone)]
pub struct BitInterleaver {
    perm: Vec<usize>,
}

impl BitInterleaver {
    pub fn new(len: usize) -> Self {
        let mut perm: Vec<usize> = (0..len).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(0x6766_646d_0000_0000 ^ len as u64);
        perm.shuffle(&mut rng);
        Self { perm }
    }

    pub fn interleave<T: Copy>(&self, data: &[T]) -> Vec<T> {
        self.perm.iter().map(|&p| data[p]).collect()
    }

    pub fn deinterleave<T: Copy + Default>(&self, data: &[T]) -> Vec<T> {
        let mut out = vec![T::default(); data.len()];
        for (&p, &v) in self.perm.iter().zip(data) {
            out[p] = v;
        }
        out
    }
}
