//! On-disk SI tables and AWGN LUTs, keyed by a fingerprint of everything a
//! calibration depends on.

use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use gfdm::linkquality::{calibrate_bler_lut, lut_key, BlerLut, CalibrationOptions, SiTable};
use gfdm::sim::LinkSimulator;
use sha2::{Digest, Sha256};

use crate::output::header_value;
use crate::CliError;

/// Fingerprint of one LUT calibration: waveform, code and stopping rules.
pub fn lut_fingerprint(sim: &LinkSimulator, opts: &CalibrationOptions) -> String {
    let c = sim.config();
    let text = format!(
        "{} cp={} active={:?} seed={} min_packets={} min_errors={} step={} window={:?} chunk={}",
        lut_key(sim),
        c.cp_len,
        c.active,
        opts.seed,
        opts.min_packets,
        opts.min_errors,
        opts.step_db,
        opts.window_db,
        opts.chunk
    );
    hex::encode(&Sha256::digest(text.as_bytes())[..8])
}

fn file_name(sim: &LinkSimulator) -> String {
    let key: String = lut_key(sim)
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '.' || c == '-' { c } else { '_' })
        .collect();
    format!("lut_{key}.csv")
}

/// Outcome of [`LutCache::get`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Built,
}

/// Directory of LUT and SI table files.
#[derive(Debug, Clone)]
pub struct LutCache {
    dir: PathBuf,
    header: String,
}

impl LutCache {
    /// `header` is written as the first line of every new file.
    pub fn new(dir: impl Into<PathBuf>, header: String) -> Result<Self, CliError> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
        Ok(Self { dir, header })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn lut_path(&self, sim: &LinkSimulator) -> PathBuf {
        self.dir.join(file_name(sim))
    }

    /// Loads the LUT if a file with a matching fingerprint exists, else
    /// calibrates and writes it.
    pub fn get(&self, sim: &LinkSimulator, opts: &CalibrationOptions) -> Result<(BlerLut, CacheStatus), CliError> {
        let path = self.lut_path(sim);
        let fp = lut_fingerprint(sim, opts);
        if header_value(&path, "lut_hash").as_deref() == Some(fp.as_str()) {
            let f = File::open(&path).map_err(|e| CliError::io(&path, e))?;
            let lut = BlerLut::read(BufReader::new(f)).map_err(CliError::runtime)?;
            log::info!("LUT cache hit {}", path.display());
            return Ok((lut, CacheStatus::Hit));
        }
        log::info!("calibrating {}", lut_key(sim));
        let lut = calibrate_bler_lut(sim, opts).map_err(CliError::runtime)?;
        let f = File::create(&path).map_err(|e| CliError::io(&path, e))?;
        lut.write(f, &[format!("{} lut_hash={fp}", self.header)]).map_err(CliError::runtime)?;
        Ok((lut, CacheStatus::Built))
    }

    /// Writes the SI table for `bits` unless a file is already present and
    /// returns the in-memory table.
    pub fn si_table(&self, bits: usize) -> Result<&'static SiTable, CliError> {
        let table = SiTable::standard(bits).map_err(CliError::runtime)?;
        let path = self.dir.join(format!("si_m{bits}.csv"));
        if !path.exists() {
            let f = File::create(&path).map_err(|e| CliError::io(&path, e))?;
            table.write(f, std::slice::from_ref(&self.header)).map_err(CliError::runtime)?;
        }
        Ok(table)
    }
}
