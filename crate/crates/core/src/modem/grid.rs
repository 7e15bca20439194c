use num_complex::Complex64;

use super::config::GfdmConfig;
use crate::error::{Error, Result};

/// `K x M` data symbols `d[k][m]`, stored subcarrier-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolGrid {
    subcarriers: usize,
    sub_symbols: usize,
    data: Vec<Complex64>,
}

impl SymbolGrid {
    pub fn zeros(config: &GfdmConfig) -> Self {
        Self {
            subcarriers: config.subcarriers,
            sub_symbols: config.sub_symbols,
            data: vec![Complex64::new(0.0, 0.0); config.block_len()],
        }
    }

    /// Fills the active subcarriers from `f(k, m)`; inactive rows stay zero.
    pub fn from_fn(config: &GfdmConfig, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut grid = Self::zeros(config);
        for &k in &config.active {
            for m in 0..config.sub_symbols {
                grid.set(k, m, f(k, m));
            }
        }
        grid
    }

    /// Places `symbols` on the active subcarriers in `(k, m)` order.
    pub fn from_active_symbols(config: &GfdmConfig, symbols: &[Complex64]) -> Result<Self> {
        if symbols.len() != config.active_symbols() {
            return Err(Error::DimensionMismatch {
                expected: config.active_symbols(),
                actual: symbols.len(),
            });
        }
        let mut it = symbols.iter();
        Ok(Self::from_fn(config, |_, _| *it.next().unwrap()))
    }

    /// Active-subcarrier symbols in `(k, m)` order.
    pub fn active_symbols(&self, config: &GfdmConfig) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(config.active_symbols());
        for &k in &config.active {
            out.extend_from_slice(self.row(k));
        }
        out
    }

    pub fn subcarriers(&self) -> usize {
        self.subcarriers
    }

    pub fn sub_symbols(&self) -> usize {
        self.sub_symbols
    }

    pub fn get(&self, k: usize, m: usize) -> Complex64 {
        self.data[k * self.sub_symbols + m]
    }

    pub fn set(&mut self, k: usize, m: usize, v: Complex64) {
        self.data[k * self.sub_symbols + m] = v;
    }

    pub fn row(&self, k: usize) -> &[Complex64] {
        &self.data[k * self.sub_symbols..(k + 1) * self.sub_symbols]
    }

    pub fn row_mut(&mut self, k: usize) -> &mut [Complex64] {
        &mut self.data[k * self.sub_symbols..(k + 1) * self.sub_symbols]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn energy(&self) -> f64 {
        self.data.iter().map(|d| d.norm_sqr()).sum()
    }

    pub(crate) fn check(&self, config: &GfdmConfig) -> Result<()> {
        if self.subcarriers != config.subcarriers || self.sub_symbols != config.sub_symbols {
            return Err(Error::DimensionMismatch {
                expected: config.block_len(),
                actual: self.subcarriers * self.sub_symbols,
            });
        }
        Ok(())
    }
}

/// Time-domain samples of one block, with or without its cyclic prefix.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleBlock {
    pub samples: Vec<Complex64>,
    pub has_cp: bool,
}

impl SampleBlock {
    pub fn new(samples: Vec<Complex64>, has_cp: bool) -> Self {
        Self { samples, has_cp }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|s| s.norm_sqr()).sum()
    }

    pub(crate) fn check(&self, config: &GfdmConfig) -> Result<()> {
        let expected = config.block_len() + if self.has_cp { config.cp_len } else { 0 };
        if self.samples.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                actual: self.samples.len(),
            });
        }
        Ok(())
    }
}

/// Prepends the last `cp_len` samples.
pub fn add_cp(block: &SampleBlock, config: &GfdmConfig) -> Result<SampleBlock> {
    if block.has_cp {
        return Err(Error::InvalidConfig("block already carries a cyclic prefix".into()));
    }
    block.check(config)?;
    let n = block.samples.len();
    let mut samples = Vec::with_capacity(n + config.cp_len);
    samples.extend_from_slice(&block.samples[n - config.cp_len..]);
    samples.extend_from_slice(&block.samples);
    Ok(SampleBlock::new(samples, true))
}

/// Drops the leading `cp_len` samples.
pub fn remove_cp(block: &SampleBlock, config: &GfdmConfig) -> Result<SampleBlock> {
    if !block.has_cp {
        return Err(Error::InvalidConfig("block has no cyclic prefix".into()));
    }
    block.check(config)?;
    Ok(SampleBlock::new(block.samples[config.cp_len..].to_vec(), false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modem::FilterKind;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn cp_copies_tail() {
        let cfg = GfdmConfig::new(4, 2, 2, FilterKind::Dirichlet);
        let x = SampleBlock::new((0..8).map(|i| c(i as f64)).collect(), false);
        let y = add_cp(&x, &cfg).unwrap();
        let expect: Vec<Complex64> = [6, 7, 0, 1, 2, 3, 4, 5, 6, 7].iter().map(|&i| c(i as f64)).collect();
        assert_eq!(y.samples, expect);
        assert_eq!(remove_cp(&y, &cfg).unwrap(), x);
    }

    #[test]
    fn zero_cp_is_noop() {
        let cfg = GfdmConfig::new(4, 2, 0, FilterKind::Dirichlet);
        let x = SampleBlock::new((0..8).map(|i| c(i as f64)).collect(), false);
        let y = add_cp(&x, &cfg).unwrap();
        assert_eq!(y.samples, x.samples);
        assert!(y.has_cp);
    }

    #[test]
    fn cp_length_errors() {
        let cfg = GfdmConfig::new(4, 2, 2, FilterKind::Dirichlet);
        let short = SampleBlock::new(vec![c(0.0); 7], false);
        assert!(add_cp(&short, &cfg).is_err());
        assert!(remove_cp(&short, &cfg).is_err());
        let with = SampleBlock::new(vec![c(0.0); 10], true);
        assert!(add_cp(&with, &cfg).is_err());
    }

    #[test]
    fn grid_active_rows() {
        let cfg = GfdmConfig::new(8, 3, 0, FilterKind::Dirichlet).with_active_count(4);
        let g = SymbolGrid::from_fn(&cfg, |k, m| c((k * 10 + m) as f64 + 1.0));
        for k in 0..8 {
            let zero = g.row(k).iter().all(|v| v.norm() == 0.0);
            assert_eq!(zero, !cfg.is_active(k));
        }
        let syms = g.active_symbols(&cfg);
        assert_eq!(SymbolGrid::from_active_symbols(&cfg, &syms).unwrap(), g);
    }
}
