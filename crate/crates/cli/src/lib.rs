//! Experiment runner for the GFDM link quality model: configuration,
//! LUT caching, link and system-level runs, CSV output and the accuracy
//! report.

use std::path::Path;

pub mod cache;
pub mod commands;
pub mod config;
pub mod link;
pub mod output;
pub mod report;
pub mod syslevel;

/// Errors split by exit code: configuration problems exit with 1,
/// everything else with 2.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn runtime(e: gfdm::Error) -> Self {
        CliError::Runtime(e.to_string())
    }

    pub fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::Runtime(format!("{}: {e}", path.display()))
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Runtime(_) => 2,
        }
    }
}
