//! Experiment configuration (TOML).

use std::path::PathBuf;

use igsic::oracle::GridSpec;
use igsic::region::uniform_alphas;
use igsic::{Channel, PowerConstraint, SolverConfig};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// `h11, h12, h21, h22` as `[re, im]` pairs.
    pub channel: [[f64; 2]; 4],
    pub snr_db: Option<f64>,
    pub powers: Option<Powers>,
    #[serde(default)]
    pub alpha_grid: AlphaGrid,
    #[serde(default)]
    pub solver: SolverSection,
    #[serde(default)]
    pub oracle: OracleSection,
    #[serde(default)]
    pub output: OutputSection,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Powers {
    pub p1: f64,
    pub p2: f64,
    #[serde(default = "one")]
    pub noise_var: f64,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum AlphaGrid {
    Count(usize),
    List(Vec<f64>),
}

impl Default for AlphaGrid {
    fn default() -> Self {
        AlphaGrid::Count(41)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverSection {
    pub rate_tol: f64,
    pub max_iter: usize,
    pub alpha_eps: f64,
}

impl Default for SolverSection {
    fn default() -> Self {
        let d = SolverConfig::default();
        Self {
            rate_tol: d.rate_tol,
            max_iter: d.max_iter,
            alpha_eps: d.alpha_eps,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OracleSection {
    pub n_cov: usize,
    pub n_pcov: usize,
    pub n_theta: usize,
    pub include_boundary: bool,
}

impl Default for OracleSection {
    fn default() -> Self {
        let g = GridSpec::default();
        Self {
            n_cov: g.n_cov,
            n_pcov: g.n_pcov,
            n_theta: g.n_theta,
            include_boundary: g.include_boundary,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RateUnits {
    #[default]
    Nats,
    Bits,
}

impl RateUnits {
    pub fn scale(self, nats: f64) -> f64 {
        match self {
            RateUnits::Nats => nats,
            RateUnits::Bits => nats / std::f64::consts::LN_2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    pub format: Format,
    pub rate_units: RateUnits,
    /// Standard output when absent.
    pub path: Option<PathBuf>,
}

/// A config with every field checked and converted to library types.
#[derive(Debug, Clone, PartialEq)]
pub struct Experiment {
    pub channel: Channel,
    pub power: PowerConstraint,
    pub alphas: Vec<f64>,
    pub solver: SolverConfig,
    pub grid: GridSpec,
    pub output: OutputSection,
}

/// Parses and validates a TOML experiment description.
pub fn parse_config(text: &str) -> Result<Experiment, CliError> {
    let cfg: ExperimentConfig =
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
    cfg.resolve()
}

impl ExperimentConfig {
    pub fn resolve(&self) -> Result<Experiment, CliError> {
        let cfg_err = |e: igsic::Error| CliError::Config(e.to_string());
        let [a, b, c, d] = self.channel;
        let channel = Channel::from_parts([(a[0], a[1]), (b[0], b[1]), (c[0], c[1]), (d[0], d[1])])
            .map_err(cfg_err)?;

        let power = match (self.snr_db, self.powers) {
            (Some(db), None) => PowerConstraint::from_snr_db(db),
            (None, Some(p)) => PowerConstraint::new(p.p1, p.p2, p.noise_var),
            _ => {
                return Err(CliError::Config(
                    "give exactly one of `snr_db` and `[powers]`".into(),
                ))
            }
        }
        .map_err(cfg_err)?;

        let alphas = match &self.alpha_grid {
            AlphaGrid::Count(0) => {
                return Err(CliError::Config("alpha_grid count must be positive".into()))
            }
            AlphaGrid::Count(n) => uniform_alphas(*n),
            AlphaGrid::List(v) if v.is_empty() => {
                return Err(CliError::Config("alpha_grid list is empty".into()))
            }
            AlphaGrid::List(v) => {
                if let Some(bad) = v.iter().find(|a| !(0.0..=1.0).contains(*a)) {
                    return Err(CliError::Config(format!("alpha {bad} outside [0, 1]")));
                }
                v.clone()
            }
        };

        let s = self.solver;
        let solver = SolverConfig {
            rate_tol: s.rate_tol,
            max_iter: s.max_iter,
            alpha_eps: s.alpha_eps,
        };
        solver.validate().map_err(cfg_err)?;
        let o = self.oracle;
        let grid = GridSpec {
            n_cov: o.n_cov,
            n_pcov: o.n_pcov,
            n_theta: o.n_theta,
            include_boundary: o.include_boundary,
        };
        grid.validate().map_err(cfg_err)?;

        Ok(Experiment {
            channel,
            power,
            alphas,
            solver,
            grid,
            output: self.output.clone(),
        })
    }
}
