//! Achievable rate regions of the two-user SISO Gaussian interference channel
//! when the transmitters may use improper (non-circular) Gaussian inputs and
//! each receiver treats interference as noise.
//!
//! The crate is organised bottom-up:
//!
//! - [`model`] holds the channel, power budget and signaling types.
//! - [`rate`] propagates second-order statistics and evaluates user rates.
//! - [`proper`] finds the best proper (covariance-only) operating point for a
//!   rate profile by bisection over a two-variable linear feasibility problem.
//! - [`improper`] keeps those covariances fixed and optimises the
//!   pseudo-covariances through a finite set of candidate phases.
//! - [`region`] sweeps rate profiles and post-processes the resulting points.
//! - [`oracle`] is a brute-force reference used for cross-checking.
//!
//! All rates are in nats per channel use.

pub mod error;
pub mod improper;
pub mod model;
pub mod oracle;
pub mod proper;
pub mod quadratic;
pub mod rate;
pub mod region;

pub use error::{Error, Result};
pub use model::{Channel, PowerConstraint, RatePair, SecondOrderStats, Signaling, User};
pub use proper::{ProperSolution, SolverConfig};
pub use region::{BoundaryPoint, Scheme};

/// Re-exported so downstream crates do not need a direct `num-complex` dependency.
pub use num_complex::Complex64;
