//! Front end for the `igsic` command: configuration parsing, the three
//! commands and their deterministic CSV/JSON output.

pub mod commands;
pub mod config;
pub mod format;

use igsic::Complex64;

pub use commands::{cmd_compare, cmd_rate, cmd_region, Outcome};
pub use config::{parse_config, Experiment, ExperimentConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("invalid signaling:\n  {}", .0.join("\n  "))]
    InvalidSignaling(Vec<String>),
    #[error("solver did not converge for at least one profile")]
    NonConvergence,
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::InvalidSignaling(_) => 2,
            CliError::NonConvergence => 3,
            CliError::Io(_) => 4,
        }
    }
}

/// Parses `re,im` (a lone real number is also accepted).
pub fn parse_complex(s: &str) -> Result<Complex64, CliError> {
    let bad = || CliError::Config(format!("expected `re,im`, got {s:?}"));
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(bad)
    };
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(num(re)?, num(im)?)),
        None => Ok(Complex64::new(num(s)?, 0.0)),
    }
}
