//! CSV files with a `#` provenance header.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::CliError;

/// Header line carried by every emitted file.
pub fn header(config_hash: &str, seed: u64) -> String {
    format!("gfdm config_hash={config_hash} seed={seed}")
}

/// Writes `# <header>` lines then the records as CSV with a column row.
pub fn write_csv<T: Serialize>(path: &Path, header_lines: &[String], rows: &[T]) -> Result<(), CliError> {
    let mut f = BufWriter::new(File::create(path).map_err(|e| CliError::io(path, e))?);
    for h in header_lines {
        writeln!(f, "# {h}").map_err(|e| CliError::io(path, e))?;
    }
    let mut w = csv::Writer::from_writer(f);
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?;
    }
    w.flush().map_err(|e| CliError::io(path, e))?;
    Ok(())
}

/// Reads records from a file written by [`write_csv`].
pub fn read_csv<T: serde::de::DeserializeOwned>(path: &Path) -> Result<Vec<T>, CliError> {
    let f = File::open(path).map_err(|e| CliError::io(path, e))?;
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(f)
        .deserialize()
        .collect::<Result<Vec<T>, _>>()
        .map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))
}

/// Value of `key=` in the first header line of `path`, if any.
pub fn header_value(path: &Path, key: &str) -> Option<String> {
    let text = std::fs::read_to_string(path).ok()?;
    let first = text.lines().next()?.strip_prefix('#')?;
    first
        .split_whitespace()
        .find_map(|kv| kv.strip_prefix(key)?.strip_prefix('=').map(str::to_string))
}
