//! Rate-1/3 parallel concatenated convolutional code.
//!
//! Two identical 8-state recursive systematic encoders (feedback
//! `1 + D^2 + D^3`, feedforward `1 + D + D^3`) are joined by a quadratic
//! permutation polynomial interleaver `pi(i) = (f1 i + f2 i^2) mod K`. Each
//! encoder is driven back to the zero state by three tail steps. The mother
//! codeword is laid out as
//!
//! ```text
//! [ systematic (K) | parity 1 (K) | parity 2 (K) | tail 1 (6) | tail 2 (6) ]
//! ```
//!
//! where each tail holds `x0 z0 x1 z1 x2 z2`. Decoding is max-log-MAP with
//! up to [`MAX_ITERATIONS`] iterations; it stops early once both
//! constituent decoders agree on every hard decision.

use super::qpp_table::QPP_TABLE;
use crate::error::{Error, Result};

pub const MAX_ITERATIONS: usize = 8;
pub const TAIL_BITS: usize = 12;

const STATES: usize = 8;
const NEG: f64 = -1e300;

/// `(f1, f2)` for a supported block length.
fn qpp_parameters(k: usize) -> Option<(usize, usize)> {
    QPP_TABLE
        .binary_search_by_key(&k, |&(len, _, _)| len)
        .ok()
        .map(|i| (QPP_TABLE[i].1, QPP_TABLE[i].2))
}

/// Block lengths with an interleaver, ascending.
pub fn supported_block_lengths() -> impl Iterator<Item = usize> {
    QPP_TABLE.iter().map(|&(k, _, _)| k)
}

/// Largest supported block length not above `limit`.
pub fn largest_block_length(limit: usize) -> Option<usize> {
    supported_block_lengths().take_while(|&k| k <= limit).last()
}

/// `perm[i]` is the input index read at interleaved position `i`.
#[derive(Debug, Clone)]
pub struct QppInterleaver {
    perm: Vec<usize>,
}

impl QppInterleaver {
    pub fn new(k: usize) -> Result<Self> {
        let (f1, f2) = qpp_parameters(k).ok_or(Error::UnsupportedBlockLength(k))?;
        let perm = (0..k as u64)
            .map(|i| ((f1 as u64 * i + f2 as u64 * i * i) % k as u64) as usize)
            .collect();
        Ok(Self { perm })
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }
}

#[derive(Debug, Clone, Copy)]
struct Trellis {
    next: [[usize; 2]; STATES],
    parity: [[u8; 2]; STATES],
    /// Input that drives the feedback to zero from each state.
    tail_input: [u8; STATES],
}

impl Trellis {
    const fn build() -> Self {
        let mut next = [[0usize; 2]; STATES];
        let mut parity = [[0u8; 2]; STATES];
        let mut tail_input = [0u8; STATES];
        let mut s = 0;
        while s < STATES {
            let (r1, r2, r3) = ((s >> 2) & 1, (s >> 1) & 1, s & 1);
            let mut u = 0;
            while u < 2 {
                let a = u ^ r2 ^ r3;
                parity[s][u] = (a ^ r1 ^ r3) as u8;
                next[s][u] = (a << 2) | (r1 << 1) | r2;
                u += 1;
            }
            tail_input[s] = (r2 ^ r3) as u8;
            s += 1;
        }
        Self {
            next,
            parity,
            tail_input,
        }
    }
}

const TRELLIS: Trellis = Trellis::build();

/// Encodes one constituent stream; returns parity bits and the 6 tail bits.
fn rsc_encode(bits: &[u8]) -> (Vec<u8>, [u8; 6]) {
    let mut state = 0usize;
    let parity = bits
        .iter()
        .map(|&u| {
            let u = (u & 1) as usize;
            let p = TRELLIS.parity[state][u];
            state = TRELLIS.next[state][u];
            p
        })
        .collect();
    let mut tail = [0u8; 6];
    for step in 0..3 {
        let u = TRELLIS.tail_input[state] as usize;
        tail[2 * step] = u as u8;
        tail[2 * step + 1] = TRELLIS.parity[state][u];
        state = TRELLIS.next[state][u];
    }
    debug_assert_eq!(state, 0);
    (parity, tail)
}

/// Turbo code of a fixed block length.
#[derive(Debug, Clone)]
pub struct TurboCode {
    interleaver: QppInterleaver,
}

impl TurboCode {
    pub fn new(block_len: usize) -> Result<Self> {
        Ok(Self {
            interleaver: QppInterleaver::new(block_len)?,
        })
    }

    pub fn block_len(&self) -> usize {
        self.interleaver.len()
    }

    /// `3 K + 12`.
    pub fn mother_len(&self) -> usize {
        3 * self.block_len() + TAIL_BITS
    }

    pub fn encode(&self, info: &[u8]) -> Result<Vec<u8>> {
        let k = self.block_len();
        if info.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                actual: info.len(),
            });
        }
        let interleaved: Vec<u8> = self.interleaver.perm.iter().map(|&p| info[p]).collect();
        let (p1, t1) = rsc_encode(info);
        let (p2, t2) = rsc_encode(&interleaved);
        let mut out = Vec::with_capacity(self.mother_len());
        out.extend(info.iter().map(|b| b & 1));
        out.extend_from_slice(&p1);
        out.extend_from_slice(&p2);
        out.extend_from_slice(&t1);
        out.extend_from_slice(&t2);
        Ok(out)
    }

    /// Decodes mother-codeword LLRs (positive means bit 0; punctured
    /// positions carry 0). Returns hard decisions on the information bits.
    pub fn decode(&self, llr: &[f64]) -> Result<Vec<u8>> {
        let k = self.block_len();
        if llr.len() != self.mother_len() {
            return Err(Error::DimensionMismatch {
                expected: self.mother_len(),
                actual: llr.len(),
            });
        }
        let perm = &self.interleaver.perm;
        let sys = &llr[..k];
        let par1 = &llr[k..2 * k];
        let par2 = &llr[2 * k..3 * k];
        let tail1 = &llr[3 * k..3 * k + 6];
        let tail2 = &llr[3 * k + 6..];
        let sys_int: Vec<f64> = perm.iter().map(|&p| sys[p]).collect();

        let mut work = Bcjr::new(k);
        let mut apriori1 = vec![0.0; k];
        let mut apriori2 = vec![0.0; k];
        let mut input = vec![0.0; k];
        let mut app1 = vec![0.0; k];
        let mut app2 = vec![0.0; k];
        let mut app_nat = vec![0.0; k];
        for _ in 0..MAX_ITERATIONS {
            for i in 0..k {
                input[i] = sys[i] + apriori1[i];
            }
            work.run(&input, par1, tail1, &mut app1);
            for i in 0..k {
                let p = perm[i];
                apriori2[i] = app1[p] - sys[p] - apriori1[p];
                input[i] = sys_int[i] + apriori2[i];
            }
            work.run(&input, par2, tail2, &mut app2);
            for i in 0..k {
                let p = perm[i];
                apriori1[p] = app2[i] - sys_int[i] - apriori2[i];
                app_nat[p] = app2[i];
            }
            if app1.iter().zip(&app_nat).all(|(a, b)| (*a < 0.0) == (*b < 0.0)) {
                break;
            }
        }
        Ok(app_nat.iter().map(|&l| u8::from(l < 0.0)).collect())
    }
}

/// Max-log BCJR over one constituent trellis, terminated at both ends.
struct Bcjr {
    alpha: Vec<[f64; STATES]>,
}

impl Bcjr {
    fn new(k: usize) -> Self {
        Self {
            alpha: vec![[NEG; STATES]; k + 4],
        }
    }

    /// `input[t]` is the total systematic LLR (channel + a priori) of step
    /// `t`; writes the a posteriori LLR of every information bit to `app`.
    fn run(&mut self, input: &[f64], parity: &[f64], tail: &[f64], app: &mut [f64]) {
        let k = input.len();
        let alpha = &mut self.alpha;
        alpha[0] = [NEG; STATES];
        alpha[0][0] = 0.0;
        // Information section: every branch allowed. Metrics are indexed
        // by (u << 1) | p; state 0 is always reachable and serves as the
        // normalisation reference.
        for t in 0..k {
            let g = gammas(input[t], parity[t]);
            let a = &alpha[t];
            let mut next = [0.0; STATES];
            for (ns, v) in next.iter_mut().enumerate() {
                let [(s0, g0), (s1, g1)] = PRED[ns];
                *v = (a[s0] + g[g0]).max(a[s1] + g[g1]);
            }
            let norm = next[0];
            next.iter_mut().for_each(|v| *v -= norm);
            alpha[t + 1] = next;
        }
        // Termination: only the input that clears the register.
        for t in k..k + 3 {
            let g = gammas(tail[2 * (t - k)], tail[2 * (t - k) + 1]);
            let mut next = [NEG; STATES];
            for s in 0..STATES {
                let u = TRELLIS.tail_input[s] as usize;
                let ns = TRELLIS.next[s][u];
                next[ns] = next[ns].max(alpha[t][s] + g[(u << 1) | TRELLIS.parity[s][u] as usize]);
            }
            alpha[t + 1] = next;
        }

        let mut beta = [NEG; STATES];
        beta[0] = 0.0;
        for t in (k..k + 3).rev() {
            let g = gammas(tail[2 * (t - k)], tail[2 * (t - k) + 1]);
            let mut prev = [NEG; STATES];
            for (s, p) in prev.iter_mut().enumerate() {
                let u = TRELLIS.tail_input[s] as usize;
                *p = g[(u << 1) | TRELLIS.parity[s][u] as usize] + beta[TRELLIS.next[s][u]];
            }
            beta = prev;
        }
        for t in (0..k).rev() {
            let g = gammas(input[t], parity[t]);
            let a = &alpha[t];
            let mut prev = [0.0; STATES];
            let (mut best0, mut best1) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
            for (s, p) in prev.iter_mut().enumerate() {
                let [(n0, g0), (n1, g1)] = SUCC[s];
                let b0 = g[g0] + beta[n0];
                let b1 = g[g1] + beta[n1];
                *p = b0.max(b1);
                best0 = best0.max(a[s] + b0);
                best1 = best1.max(a[s] + b1);
            }
            app[t] = best0 - best1;
            let norm = prev[0];
            prev.iter_mut().for_each(|v| *v -= norm);
            beta = prev;
        }
    }
}

/// Branch metrics `[+ls+lp, +ls-lp, -ls+lp, -ls-lp]` for systematic and
/// parity LLRs, indexed by `(u << 1) | p`.
#[inline]
fn gammas(sys: f64, par: f64) -> [f64; 4] {
    let (ls, lp) = (0.5 * sys, 0.5 * par);
    [ls + lp, ls - lp, -ls + lp, -ls - lp]
}

/// `(next state, metric index)` for inputs 0 and 1 from each state.
const SUCC: [[(usize, usize); 2]; STATES] = {
    let mut t = [[(0usize, 0usize); 2]; STATES];
    let mut s = 0;
    while s < STATES {
        let mut u = 0;
        while u < 2 {
            t[s][u] = (TRELLIS.next[s][u], (u << 1) | TRELLIS.parity[s][u] as usize);
            u += 1;
        }
        s += 1;
    }
    t
};

/// The two `(previous state, metric index)` pairs entering each state.
const PRED: [[(usize, usize); 2]; STATES] = {
    let mut t = [[(0usize, 0usize); 2]; STATES];
    let mut filled = [0usize; STATES];
    let mut s = 0;
    while s < STATES {
        let mut u = 0;
        while u < 2 {
            let ns = TRELLIS.next[s][u];
            t[ns][filled[ns]] = (s, (u << 1) | TRELLIS.parity[s][u] as usize);
            filled[ns] += 1;
            u += 1;
        }
        s += 1;
    }
    t
};
