//! Experiment configuration file (TOML). Unknown keys are errors.

use std::path::{Path, PathBuf};

use gfdm::fec::McsSpec;
use gfdm::linkquality::CalibrationOptions;
use gfdm::modem::{FilterKind, GfdmConfig};
use gfdm::syslevel::SystemParams;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    Awgn,
    Rayleigh,
    Tdl,
    Syslevel,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaveformConfig {
    pub subcarriers: usize,
    pub active: usize,
    pub sub_symbols: usize,
    pub cp_len: usize,
    /// `dirichlet` or `rc-<rolloff>`.
    pub filters: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub start_db: f64,
    pub stop_db: f64,
    pub step_db: f64,
    /// Packets per SNR point (AWGN) or per realisation and SNR point.
    pub packets: u64,
    #[serde(default = "one")]
    pub realizations: u64,
}

fn one() -> u64 {
    1
}

/// `gamma_code = 1.0`, one value per MCS (`gamma_code = [1.5, 1.7, 1.9]`)
/// or `gamma_code = "calibrate"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GammaCodePolicy {
    Fixed(f64),
    PerMcs(Vec<f64>),
    Named(String),
}

impl Default for GammaCodePolicy {
    fn default() -> Self {
        GammaCodePolicy::Fixed(1.0)
    }
}

impl GammaCodePolicy {
    pub fn calibrate(&self) -> bool {
        matches!(self, GammaCodePolicy::Named(s) if s == "calibrate")
    }

    /// Value for the `i`-th MCS, unless it is to be calibrated.
    pub fn fixed(&self, i: usize) -> Option<f64> {
        match self {
            GammaCodePolicy::Fixed(g) => Some(*g),
            GammaCodePolicy::PerMcs(v) => v.get(i).copied(),
            GammaCodePolicy::Named(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CalibrationConfig {
    pub min_packets: u64,
    pub min_errors: u64,
    pub step_db: f64,
}

impl Default for CalibrationConfig {
    fn default() -> Self {
        let d = CalibrationOptions::default();
        Self {
            min_packets: d.min_packets,
            min_errors: d.min_errors,
            step_db: d.step_db,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SyslevelConfig {
    pub ues: u64,
    pub snapshots: u64,
    /// Users (ids `0..bitlevel_ues`) in the bit-level cross-check.
    pub bitlevel_ues: u64,
    pub bitlevel_snapshots: u64,
    #[serde(default = "one")]
    pub packets_per_snapshot: u64,
    #[serde(default = "default_radius")]
    pub cell_radius_m: f64,
    #[serde(default = "default_shadowing")]
    pub shadowing_db: f64,
}

fn default_radius() -> f64 {
    500.0
}

fn default_shadowing() -> f64 {
    6.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub scenario: Scenario,
    #[serde(default = "one")]
    pub seed: u64,
    #[serde(default = "default_out")]
    pub out: PathBuf,
    pub waveform: WaveformConfig,
    pub mcs: Vec<String>,
    pub sweep: Option<SweepConfig>,
    #[serde(default)]
    pub gamma_code: GammaCodePolicy,
    #[serde(default)]
    pub calibration: CalibrationConfig,
    pub syslevel: Option<SyslevelConfig>,
}

fn default_out() -> PathBuf {
    PathBuf::from("out")
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: Self = toml::from_str(text).map_err(|e| bad(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.filters()?;
        self.mcs_specs()?;
        for f in self.filters()? {
            self.gfdm(f).validate().map_err(|e| bad(e.to_string()))?;
        }
        if self.waveform.active == 0 || self.waveform.active > self.waveform.subcarriers {
            return Err(bad("active subcarrier count outside [1, subcarriers]"));
        }
        if self.mcs.is_empty() || self.waveform.filters.is_empty() {
            return Err(bad("need at least one MCS and one filter"));
        }
        let c = &self.calibration;
        if c.min_packets == 0 || c.min_errors == 0 || !(c.step_db > 0.0) {
            return Err(bad("calibration counts and step must be positive"));
        }
        match &self.gamma_code {
            GammaCodePolicy::Fixed(g) if !(*g > 0.0 && g.is_finite()) => {
                return Err(bad(format!("gamma_code {g} must be positive")))
            }
            GammaCodePolicy::PerMcs(v) if v.len() != self.mcs.len() => {
                return Err(bad(format!("gamma_code has {} values for {} MCS", v.len(), self.mcs.len())))
            }
            GammaCodePolicy::PerMcs(v) if v.iter().any(|g| !(*g > 0.0 && g.is_finite())) => {
                return Err(bad("gamma_code values must be positive"))
            }
            GammaCodePolicy::Named(s) if s != "calibrate" => {
                return Err(bad(format!("gamma_code must be a number or \"calibrate\", got {s:?}")))
            }
            _ => {}
        }
        if self.scenario == Scenario::Syslevel {
            let s = self.syslevel.as_ref().ok_or_else(|| bad("syslevel scenario needs a [syslevel] table"))?;
            if s.ues == 0 || s.snapshots == 0 || s.bitlevel_snapshots == 0 || s.packets_per_snapshot == 0 {
                return Err(bad("syslevel counts must be positive"));
            }
            if s.bitlevel_ues > s.ues {
                return Err(bad("bitlevel_ues exceeds ues"));
            }
            if self.gamma_code.calibrate() {
                return Err(bad("syslevel needs a fixed gamma_code"));
            }
            self.system_params().validate().map_err(|e| bad(e.to_string()))?;
        } else {
            let s = self.sweep.as_ref().ok_or_else(|| bad("link scenarios need a [sweep] table"))?;
            if !(s.step_db > 0.0) || s.stop_db < s.start_db || s.packets == 0 || s.realizations == 0 {
                return Err(bad("sweep needs step > 0, stop >= start and positive counts"));
            }
        }
        Ok(())
    }

    pub fn filters(&self) -> Result<Vec<FilterKind>, CliError> {
        self.waveform
            .filters
            .iter()
            .map(|f| FilterKind::parse(f).map_err(|e| bad(e.to_string())))
            .collect()
    }

    pub fn mcs_specs(&self) -> Result<Vec<McsSpec>, CliError> {
        self.mcs
            .iter()
            .map(|m| McsSpec::parse(m).map_err(|e| bad(e.to_string())))
            .collect()
    }

    pub fn gfdm(&self, filter: FilterKind) -> GfdmConfig {
        let w = &self.waveform;
        GfdmConfig::new(w.subcarriers, w.sub_symbols, w.cp_len, filter).with_active_count(w.active)
    }

    pub fn calibration_options(&self) -> CalibrationOptions {
        CalibrationOptions {
            seed: self.seed,
            min_packets: self.calibration.min_packets,
            min_errors: self.calibration.min_errors,
            step_db: self.calibration.step_db,
            ..CalibrationOptions::default()
        }
    }

    pub fn system_params(&self) -> SystemParams {
        let mut p = SystemParams::default();
        if let Some(s) = &self.syslevel {
            p.cell_radius_m = s.cell_radius_m;
            p.shadowing_db = s.shadowing_db;
        }
        p
    }

    /// Points of the SNR sweep, inclusive of `stop_db`.
    pub fn snr_grid(&self) -> Vec<f64> {
        let Some(s) = &self.sweep else { return Vec::new() };
        let n = ((s.stop_db - s.start_db) / s.step_db + 1e-9).floor() as usize;
        (0..=n).map(|i| s.start_db + i as f64 * s.step_db).collect()
    }

    /// SHA-256 of the canonical serialisation, first 16 hex digits.
    pub fn hash(&self) -> String {
        let canonical = toml::to_string(self).expect("config serialises");
        hex::encode(&Sha256::digest(canonical.as_bytes())[..8])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"
scenario = "awgn"
seed = 3
mcs = ["qpsk-1/3"]
[waveform]
subcarriers = 64
active = 64
sub_symbols = 9
cp_len = 64
filters = ["dirichlet", "rc-0.9"]
[sweep]
start_db = -2.0
stop_db = 1.0
step_db = 0.5
packets = 100
"#;

    #[test]
    fn parses_and_hashes() {
        let c = ExperimentConfig::parse(BASE).unwrap();
        assert_eq!(c.snr_grid().len(), 7);
        assert_eq!(c.gamma_code, GammaCodePolicy::Fixed(1.0));
        let mut d = c.clone();
        assert_eq!(c.hash(), d.hash());
        d.seed = 4;
        assert_ne!(c.hash(), d.hash());
        assert_eq!(c.hash().len(), 16);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(ExperimentConfig::parse(&format!("{BASE}\nbogus = 1\n")).is_err());
        assert!(ExperimentConfig::parse(&BASE.replace("packets = 100", "packets = 100\npakets = 1")).is_err());
        assert!(ExperimentConfig::parse(&BASE.replace("step_db = 0.5", "step_db = 0.0")).is_err());
        assert!(ExperimentConfig::parse(&BASE.replace("rc-0.9", "rc-1.9")).is_err());
        assert!(ExperimentConfig::parse(&BASE.replace("qpsk-1/3", "8psk-1/3")).is_err());
        assert!(ExperimentConfig::parse(&format!("gamma_code = \"auto\"\n{BASE}")).is_err());
        let c = ExperimentConfig::parse(&format!("gamma_code = \"calibrate\"\n{BASE}")).unwrap();
        assert!(c.gamma_code.calibrate());
        assert_eq!(c.gamma_code.fixed(0), None);
        let c = ExperimentConfig::parse(&format!("gamma_code = [1.5]\n{BASE}")).unwrap();
        assert_eq!(c.gamma_code.fixed(0), Some(1.5));
        assert!(ExperimentConfig::parse(&format!("gamma_code = [1.5, 1.6]\n{BASE}")).is_err());
        assert!(ExperimentConfig::parse(&format!("gamma_code = [-1.0]\n{BASE}")).is_err());
    }
}
