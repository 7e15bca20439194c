use num_complex::Complex64;

use super::constellation::Constellation;
use super::mcs::McsMode;
use super::ratematch::{BitInterleaver, RateMatcher};
use super::turbo::TurboCode;
use crate::error::{Error, Result};

/// Full coding chain for one MCS: turbo encoder, rate matcher, bit
/// interleaver and constellation.
#[derive(Debug, Clone)]
pub struct FecCodec {
    mcs: McsMode,
    turbo: TurboCode,
    matcher: RateMatcher,
    interleaver: BitInterleaver,
    constellation: Constellation,
}

impl FecCodec {
    pub fn new(mcs: McsMode) -> Result<Self> {
        if mcs.coded_len % mcs.spec.bits != 0 {
            return Err(Error::InvalidConfig("coded length not a whole number of symbols".into()));
        }
        Ok(Self {
            mcs,
            turbo: TurboCode::new(mcs.info_len)?,
            matcher: RateMatcher::new(mcs.info_len, mcs.coded_len)?,
            interleaver: BitInterleaver::new(mcs.coded_len),
            constellation: Constellation::qam(mcs.spec.bits)?,
        })
    }

    pub fn mcs(&self) -> &McsMode {
        &self.mcs
    }

    pub fn constellation(&self) -> &Constellation {
        &self.constellation
    }

    /// Information bits to transmitted coded bits.
    pub fn encode(&self, info: &[u8]) -> Result<Vec<u8>> {
        let mother = self.turbo.encode(info)?;
        Ok(self.interleaver.interleave(&self.matcher.select(&mother)))
    }

    /// Channel LLRs of the transmitted bits to decided information bits.
    pub fn decode(&self, llr: &[f64]) -> Result<Vec<u8>> {
        if llr.len() != self.mcs.coded_len {
            return Err(Error::DimensionMismatch {
                expected: self.mcs.coded_len,
                actual: llr.len(),
            });
        }
        let mother = self.matcher.restore(&self.interleaver.deinterleave(llr))?;
        self.turbo.decode(&mother)
    }

    pub fn map(&self, coded: &[u8]) -> Result<Vec<Complex64>> {
        self.constellation.map(coded)
    }

    pub fn demap(&self, symbols: &[Complex64], noise_var: &[f64]) -> Result<Vec<f64>> {
        self.constellation.demap_llr(symbols, noise_var)
    }
}
