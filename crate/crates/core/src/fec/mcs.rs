use std::fmt;

use super::turbo::largest_block_length;
use crate::error::{Error, Result};

/// Code rate as a reduced fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CodeRate {
    pub num: usize,
    pub den: usize,
}

impl CodeRate {
    pub const ONE_THIRD: CodeRate = CodeRate { num: 1, den: 3 };
    pub const ONE_HALF: CodeRate = CodeRate { num: 1, den: 2 };
    pub const TWO_THIRDS: CodeRate = CodeRate { num: 2, den: 3 };

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

/// Modulation order and code rate, independent of block size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct McsSpec {
    /// Bits per symbol: 2, 4 or 6.
    pub bits: usize,
    pub rate: CodeRate,
}

impl McsSpec {
    pub const QPSK_1_3: McsSpec = McsSpec { bits: 2, rate: CodeRate::ONE_THIRD };
    pub const QAM16_1_3: McsSpec = McsSpec { bits: 4, rate: CodeRate::ONE_THIRD };
    pub const QAM16_1_2: McsSpec = McsSpec { bits: 4, rate: CodeRate::ONE_HALF };
    pub const QAM64_2_3: McsSpec = McsSpec { bits: 6, rate: CodeRate::TWO_THIRDS };

    pub fn new(bits: usize, rate: CodeRate) -> Result<Self> {
        if !matches!(bits, 2 | 4 | 6) {
            return Err(Error::InvalidConfig(format!("unsupported modulation order {bits}")));
        }
        if rate.num == 0 || rate.num >= rate.den {
            return Err(Error::InvalidConfig(format!("bad code rate {}/{}", rate.num, rate.den)));
        }
        Ok(Self { bits, rate })
    }

    /// Parses labels such as `qpsk-1/3`, `16qam-1/2`, `64qam-2/3`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let (modulation, rate) = s
            .split_once('-')
            .ok_or_else(|| Error::Parse(format!("bad MCS label {s:?}")))?;
        let bits = match modulation {
            "qpsk" => 2,
            "16qam" => 4,
            "64qam" => 6,
            _ => return Err(Error::Parse(format!("unknown modulation in {s:?}"))),
        };
        let (n, d) = rate
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("bad code rate in {s:?}")))?;
        let num = n.parse().map_err(|_| Error::Parse(format!("bad code rate in {s:?}")))?;
        let den = d.parse().map_err(|_| Error::Parse(format!("bad code rate in {s:?}")))?;
        Self::new(bits, CodeRate { num, den })
    }

    pub fn modulation_name(&self) -> &'static str {
        match self.bits {
            2 => "qpsk",
            4 => "16qam",
            _ => "64qam",
        }
    }

    /// Sizes the code for a block of `symbols` data symbols: the coded
    /// length fills the block and the information length is the largest
    /// supported turbo block not exceeding `rate * coded_len`.
    pub fn fit(self, symbols: usize) -> Result<McsMode> {
        let coded_len = symbols * self.bits;
        let target = coded_len * self.rate.num / self.rate.den;
        let info_len = largest_block_length(target).ok_or(Error::UnsupportedBlockLength(target))?;
        Ok(McsMode {
            spec: self,
            info_len,
            coded_len,
        })
    }
}

impl fmt::Display for McsSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}/{}", self.modulation_name(), self.rate.num, self.rate.den)
    }
}

/// An MCS sized to one GFDM block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct McsMode {
    pub spec: McsSpec,
    pub info_len: usize,
    pub coded_len: usize,
}

impl McsMode {
    pub fn bits_per_symbol(&self) -> usize {
        self.spec.bits
    }

    pub fn label(&self) -> String {
        self.spec.to_string()
    }

    /// Information bits per second when one code block is sent per GFDM
    /// block of `block_samples` samples (including CP) at `sample_rate_hz`.
    pub fn bit_rate(&self, block_samples: usize, sample_rate_hz: f64) -> f64 {
        self.info_len as f64 * sample_rate_hz / block_samples as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for s in ["qpsk-1/3", "16qam-1/3", "16qam-1/2", "64qam-2/3"] {
            assert_eq!(McsSpec::parse(s).unwrap().to_string(), s);
        }
        assert!(McsSpec::parse("8psk-1/2").is_err());
        assert!(McsSpec::parse("qpsk-3/2").is_err());
        assert!(McsSpec::parse("qpsk").is_err());
    }

    #[test]
    fn block_sizes() {
        // 64 x 9 block, all subcarriers active
        let q = McsSpec::QPSK_1_3.fit(576).unwrap();
        assert_eq!((q.info_len, q.coded_len), (384, 1152));
        let q16 = McsSpec::QAM16_1_3.fit(576).unwrap();
        assert_eq!((q16.info_len, q16.coded_len), (768, 2304));
        // 75 x 15 block
        let modes: Vec<_> = [McsSpec::QPSK_1_3, McsSpec::QAM16_1_2, McsSpec::QAM64_2_3]
            .iter()
            .map(|s| s.fit(1125).unwrap().info_len)
            .collect();
        assert_eq!(modes, vec![736, 2240, 4480]);
    }

    #[test]
    fn bit_rate_for_subframe_timing() {
        let m = McsSpec::QAM64_2_3.fit(1125).unwrap();
        let r = m.bit_rate(2048, 30.72e6);
        assert!((r - 4480.0 * 15_000.0).abs() < 1e-6);
    }
}
