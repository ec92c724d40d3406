//! Configuration ingestion, `(p, q)`-plane sweeps, persistence, regime
//! diagrams and the command-line interface.
//!
//! Subcommands: `classify`, `sweep`, `lindecay`, `simulate`, `testfn-check`.
//! Exit codes: 0 success, 1 config error, 2 numeric failure, 3 disagreement
//! found (for CI gating). Every output file embeds the resolved config and
//! the tool version; outputs are byte-identical across repeated runs and
//! across `--jobs` settings.

pub mod cli;
pub mod commands;
pub mod config;
pub mod output;
pub mod svg;
pub mod sweep;

pub use config::RunConfig;

use thiserror::Error;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "SCALEWAVE_OUT";

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_NUMERIC: i32 = 2;
pub const EXIT_DISAGREEMENT: i32 = 3;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config error: {0}")]
    Config(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("io failure: {0}")]
    Io(String),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) => EXIT_CONFIG,
            HarnessError::Numeric(_) | HarnessError::Io(_) => EXIT_NUMERIC,
        }
    }
}

impl From<std::io::Error> for HarnessError {
    fn from(e: std::io::Error) -> Self {
        HarnessError::Io(e.to_string())
    }
}
