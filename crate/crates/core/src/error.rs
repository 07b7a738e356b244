use thiserror::Error;

use crate::rate::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("invalid power constraint: {0}")]
    InvalidPower(String),

    #[error("invalid signaling: {}", format_violations(.0))]
    InvalidSignaling(Vec<Violation>),

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error("rate profile alpha = {0} is outside [0, 1]")]
    InvalidProfile(f64),

    /// `|pcov| = cov`: the augmented covariance is singular and the entropy is -inf.
    #[error("degenerate entropy: augmented covariance is singular")]
    DegenerateEntropy,

    /// A cross gain vanishes, so the pseudo-covariance feasibility coefficients are undefined.
    #[error("cross gain h{0} is zero")]
    CrossGainZero(&'static str),

    #[error("bisection did not reach tolerance {tol:e} within {iterations} iterations (width {width:e})")]
    NonConvergence {
        iterations: usize,
        tol: f64,
        width: f64,
    },
}

fn format_violations(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
