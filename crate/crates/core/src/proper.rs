//! Covariance (power) optimization with proper inputs.
//!
//! For a rate profile `(alpha, 1 - alpha)` the largest sum rate `r` such that
//! user 1 gets `alpha r` and user 2 gets `(1 - alpha) r` is found by bisection
//! on `r`. For fixed `r` the rate constraints are linear in the powers:
//!
//! ```text
//! |h11|^2 C1 >= (s2 + |h12|^2 C2)(e^{alpha r} - 1)
//! |h22|^2 C2 >= (s2 + |h21|^2 C1)(e^{(1-alpha) r} - 1)
//! ```
//!
//! With two unknowns the feasibility question is settled by evaluating a
//! handful of candidate points instead of running an LP solver.

use crate::error::{Error, Result};
use crate::model::{Channel, PowerConstraint, User};
use crate::rate::proper_rate;

/// Bisection settings shared by the proper and improper stages.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Stop once the bracket on the sum rate is narrower than this (nats).
    pub rate_tol: f64,
    pub max_iter: usize,
    /// Profiles with `alpha <= alpha_eps` (or `>= 1 - alpha_eps`) take the
    /// single-user branch.
    pub alpha_eps: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            rate_tol: 1e-9,
            max_iter: 200,
            alpha_eps: 1e-6,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rate_tol.is_finite() && self.rate_tol > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "rate_tol must be positive, got {}",
                self.rate_tol
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig("max_iter must be at least 1".into()));
        }
        if !(self.alpha_eps >= 0.0 && self.alpha_eps < 0.5) {
            return Err(Error::InvalidConfig(format!(
                "alpha_eps must lie in [0, 0.5), got {}",
                self.alpha_eps
            )));
        }
        Ok(())
    }
}

/// Optimal proper operating point for one rate profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProperSolution {
    pub alpha: f64,
    /// Largest feasible sum rate found (the lower end of the final bracket).
    pub r_star: f64,
    pub c1: f64,
    pub c2: f64,
}

/// Which end of the profile, if any, is degenerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Profile {
    OnlyUser1,
    OnlyUser2,
    Shared,
}

pub(crate) fn classify_profile(alpha: f64, cfg: &SolverConfig) -> Result<Profile> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidProfile(alpha));
    }
    Ok(if alpha >= 1.0 - cfg.alpha_eps {
        Profile::OnlyUser1
    } else if alpha <= cfg.alpha_eps {
        Profile::OnlyUser2
    } else {
        Profile::Shared
    })
}

/// `ln(1 + |h_rr|^2 P_r / s2)`: the interference-free capacity of user `r`.
pub fn single_user_capacity(ch: &Channel, pc: &PowerConstraint, r: User) -> f64 {
    (ch.gain(r, r) * pc.power(r) / pc.noise_var).ln_1p()
}

/// Upper end of the sum-rate bracket for profile `alpha`; each user's rate is
/// at most its interference-free capacity.
pub fn sum_rate_upper_bound(ch: &Channel, pc: &PowerConstraint, alpha: f64) -> f64 {
    let c1 = single_user_capacity(ch, pc, User::One);
    let c2 = single_user_capacity(ch, pc, User::Two);
    let b1 = if alpha > 0.0 {
        c1 / alpha
    } else {
        f64::INFINITY
    };
    let b2 = if alpha < 1.0 {
        c2 / (1.0 - alpha)
    } else {
        f64::INFINITY
    };
    b1.min(b2)
}

const FEAS_REL_TOL: f64 = 1e-12;

/// Decides whether sum rate `r` is achievable with proper inputs under profile
/// `alpha`, returning a witness `(C1, C2)`.
///
/// Candidates are tried in a fixed order: the intersection of the two
/// constraint boundary lines, then the box corners `(0,0), (0,P2), (P1,0),
/// (P1,P2)`.
pub fn p1a_feasible(ch: &Channel, pc: &PowerConstraint, alpha: f64, r: f64) -> Option<(f64, f64)> {
    let s2 = pc.noise_var;
    let g11 = ch.gain(User::One, User::One);
    let g12 = ch.gain(User::One, User::Two);
    let g21 = ch.gain(User::Two, User::One);
    let g22 = ch.gain(User::Two, User::Two);
    let gamma1 = (alpha * r).exp_m1();
    let gamma2 = ((1.0 - alpha) * r).exp_m1();

    // C1 >= a + b C2 and C2 >= d + e C1.
    let (a, b) = (s2 * gamma1 / g11, g12 * gamma1 / g11);
    let (d, e) = (s2 * gamma2 / g22, g21 * gamma2 / g22);

    let holds = |c1: f64, c2: f64| {
        let lhs1 = g11 * c1;
        let rhs1 = (s2 + g12 * c2) * gamma1;
        let lhs2 = g22 * c2;
        let rhs2 = (s2 + g21 * c1) * gamma2;
        lhs1 >= rhs1 - FEAS_REL_TOL * (rhs1.abs() + s2)
            && lhs2 >= rhs2 - FEAS_REL_TOL * (rhs2.abs() + s2)
    };
    let in_box = |c: f64, p: f64| c >= 0.0 && c <= p * (1.0 + FEAS_REL_TOL);

    let mut candidates = Vec::with_capacity(5);
    let det = 1.0 - b * e;
    if det > 0.0 {
        let c1 = (a + b * d) / det;
        let c2 = d + e * c1;
        candidates.push((c1, c2));
    }
    candidates.extend([(0.0, 0.0), (0.0, pc.p2), (pc.p1, 0.0), (pc.p1, pc.p2)]);

    candidates
        .into_iter()
        .find(|&(c1, c2)| in_box(c1, pc.p1) && in_box(c2, pc.p2) && holds(c1, c2))
        .map(|(c1, c2)| (c1.min(pc.p1), c2.min(pc.p2)))
}

/// Maximizes the profile sum rate over proper inputs.
pub fn solve_p1a(
    ch: &Channel,
    pc: &PowerConstraint,
    alpha: f64,
    cfg: &SolverConfig,
) -> Result<ProperSolution> {
    cfg.validate()?;
    match classify_profile(alpha, cfg)? {
        Profile::OnlyUser1 => {
            return Ok(ProperSolution {
                alpha,
                r_star: single_user_capacity(ch, pc, User::One),
                c1: pc.p1,
                c2: 0.0,
            })
        }
        Profile::OnlyUser2 => {
            return Ok(ProperSolution {
                alpha,
                r_star: single_user_capacity(ch, pc, User::Two),
                c1: 0.0,
                c2: pc.p2,
            })
        }
        Profile::Shared => {}
    }

    let mut hi = sum_rate_upper_bound(ch, pc, alpha);
    if let Some((c1, c2)) = p1a_feasible(ch, pc, alpha, hi) {
        return Ok(ProperSolution {
            alpha,
            r_star: hi,
            c1,
            c2,
        });
    }
    let mut lo = 0.0;
    let mut witness = (0.0, 0.0);
    let mut iterations = 0;
    while hi - lo > cfg.rate_tol {
        if iterations == cfg.max_iter {
            return Err(Error::NonConvergence {
                iterations,
                tol: cfg.rate_tol,
                width: hi - lo,
            });
        }
        iterations += 1;
        let mid = 0.5 * (lo + hi);
        match p1a_feasible(ch, pc, alpha, mid) {
            Some(w) => {
                lo = mid;
                witness = w;
            }
            None => hi = mid,
        }
    }
    Ok(ProperSolution {
        alpha,
        r_star: lo,
        c1: witness.0,
        c2: witness.1,
    })
}

impl ProperSolution {
    /// Proper rates of both users at the optimal covariances.
    pub fn rates(&self, ch: &Channel, noise_var: f64) -> (f64, f64) {
        (
            proper_rate(ch, self.c1, self.c2, noise_var, User::One),
            proper_rate(ch, self.c1, self.c2, noise_var, User::Two),
        )
    }
}
