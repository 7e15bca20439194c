use crate::error::{Error, Result};

/// Prototype filter family.
///
/// Both shapes are defined in the frequency domain over the `M` DFT bins that
/// make up one subcarrier spacing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FilterKind {
    /// Rectangular spectrum of exactly `M` bins (periodic sinc in time).
    Dirichlet,
    /// Raised-cosine spectrum with the given roll-off, overlapping only the
    /// adjacent subcarriers.
    RaisedCosine { rolloff: f64 },
}

impl FilterKind {
    /// Short label used in file names and CSV columns, e.g. `rc-0.9`.
    pub fn label(&self) -> String {
        match self {
            FilterKind::Dirichlet => "dirichlet".to_string(),
            FilterKind::RaisedCosine { rolloff } => format!("rc-{rolloff}"),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        if s == "dirichlet" {
            return Ok(FilterKind::Dirichlet);
        }
        if let Some(a) = s.strip_prefix("rc-") {
            let rolloff: f64 = a
                .parse()
                .map_err(|_| Error::Parse(format!("bad roll-off in filter {s:?}")))?;
            let kind = FilterKind::RaisedCosine { rolloff };
            kind.validate()?;
            return Ok(kind);
        }
        Err(Error::Parse(format!("unknown filter {s:?}")))
    }

    pub fn validate(&self) -> Result<()> {
        if let FilterKind::RaisedCosine { rolloff } = *self {
            if !(0.0..=1.0).contains(&rolloff) {
                return Err(Error::InvalidConfig(format!(
                    "roll-off {rolloff} outside [0, 1]"
                )));
            }
        }
        Ok(())
    }
}

/// Waveform geometry of one GFDM block.
#[derive(Debug, Clone, PartialEq)]
pub struct GfdmConfig {
    /// Number of subcarriers `K`.
    pub subcarriers: usize,
    /// Number of sub-symbols per subcarrier `M`.
    pub sub_symbols: usize,
    /// Cyclic prefix length in samples.
    pub cp_len: usize,
    pub filter: FilterKind,
    /// Indices of the subcarriers that carry data, ascending.
    pub active: Vec<usize>,
}

impl GfdmConfig {
    /// Configuration with every subcarrier active.
    pub fn new(subcarriers: usize, sub_symbols: usize, cp_len: usize, filter: FilterKind) -> Self {
        Self {
            subcarriers,
            sub_symbols,
            cp_len,
            filter,
            active: (0..subcarriers).collect(),
        }
    }

    /// Keeps the `count` subcarriers closest to DC active (alternating
    /// between positive and negative offsets) and zeroes the rest.
    pub fn with_active_count(mut self, count: usize) -> Self {
        let k = self.subcarriers;
        let mut active = Vec::with_capacity(count);
        let mut i = 0usize;
        while active.len() < count.min(k) {
            let idx = if i % 2 == 0 { i / 2 } else { k - (i + 1) / 2 };
            active.push(idx);
            i += 1;
        }
        active.sort_unstable();
        self.active = active;
        self
    }

    pub fn with_filter(mut self, filter: FilterKind) -> Self {
        self.filter = filter;
        self
    }

    /// 64 subcarriers, 9 sub-symbols, all active. The CP length is not
    /// fixed by the link-level parameter set; 64 samples covers the
    /// synthetic delay profiles.
    pub fn link_default() -> Self {
        Self::new(64, 9, 64, FilterKind::Dirichlet)
    }

    /// 128 subcarriers with 75 active, 15 sub-symbols and a 128-sample CP:
    /// 1920 + 128 = 2048 samples per block at 30.72 MHz.
    pub fn system_default() -> Self {
        Self::new(128, 15, 128, FilterKind::Dirichlet).with_active_count(75)
    }

    /// Samples per block, `N = K * M`.
    pub fn block_len(&self) -> usize {
        self.subcarriers * self.sub_symbols
    }

    /// Data symbols per block.
    pub fn active_symbols(&self) -> usize {
        self.active.len() * self.sub_symbols
    }

    pub fn is_active(&self, k: usize) -> bool {
        self.active.binary_search(&k).is_ok()
    }

    pub fn validate(&self) -> Result<()> {
        let (k, m) = (self.subcarriers, self.sub_symbols);
        if k < 2 {
            return Err(Error::InvalidConfig(format!("need at least 2 subcarriers, got {k}")));
        }
        if m < 1 {
            return Err(Error::InvalidConfig("need at least 1 sub-symbol".into()));
        }
        if self.cp_len > k * m {
            return Err(Error::InvalidConfig(format!(
                "cyclic prefix {} longer than block {}",
                self.cp_len,
                k * m
            )));
        }
        if self.active.is_empty() {
            return Err(Error::InvalidConfig("no active subcarriers".into()));
        }
        if self.active.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfig("active set must be strictly ascending".into()));
        }
        if let Some(&last) = self.active.last() {
            if last >= k {
                return Err(Error::InvalidConfig(format!("active subcarrier {last} >= K = {k}")));
            }
        }
        self.filter.validate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn system_default_geometry() {
        let c = GfdmConfig::system_default();
        assert_eq!(c.block_len(), 1920);
        assert_eq!(c.block_len() + c.cp_len, 2048);
        assert_eq!(c.active.len(), 75);
        assert!(c.is_active(0) && c.is_active(37) && c.is_active(127) && c.is_active(91));
        assert!(!c.is_active(38) && !c.is_active(90));
        c.validate().unwrap();
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(GfdmConfig::new(1, 3, 0, FilterKind::Dirichlet).validate().is_err());
        assert!(GfdmConfig::new(4, 3, 13, FilterKind::Dirichlet).validate().is_err());
        let bad = FilterKind::RaisedCosine { rolloff: 1.5 };
        assert!(GfdmConfig::new(4, 3, 0, bad).validate().is_err());
        let mut c = GfdmConfig::new(4, 3, 0, FilterKind::Dirichlet);
        c.active = vec![0, 0];
        assert!(c.validate().is_err());
        c.active = vec![1, 4];
        assert!(c.validate().is_err());
    }

    #[test]
    fn filter_labels_round_trip() {
        for f in [
            FilterKind::Dirichlet,
            FilterKind::RaisedCosine { rolloff: 0.1 },
            FilterKind::RaisedCosine { rolloff: 0.9 },
        ] {
            assert_eq!(FilterKind::parse(&f.label()).unwrap(), f);
        }
        assert!(FilterKind::parse("rc-1.2").is_err());
        assert!(FilterKind::parse("rrc").is_err());
    }
}
