use num_complex::Complex64;

use super::coeffs::{pb_coeffs, PbCoefficients};
use super::planar::planar_feasible;
use super::theta::{candidate_thetas, ThetaCandidate};
use crate::error::{Error, Result};
use crate::model::{Channel, PowerConstraint, Signaling};
use crate::proper::{
    classify_profile, sum_rate_upper_bound, Profile, ProperSolution, SolverConfig,
};

/// A feasible point of the pseudo-covariance problem and the phase that found it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibleWitness {
    pub ct1: Complex64,
    pub ct2: Complex64,
    pub candidate: ThetaCandidate,
}

/// Optimized pseudo-covariances at fixed covariances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImproperSolution {
    pub alpha: f64,
    /// Sum rate of the proper stage the search started from.
    pub r_star: f64,
    /// Largest feasible sum rate found; never below `r_star`.
    pub rate: f64,
    pub c1: f64,
    pub c2: f64,
    /// Real and nonnegative.
    pub ct1: Complex64,
    pub ct2: Complex64,
}

impl ImproperSolution {
    pub fn signaling(&self) -> Signaling {
        Signaling::new(self.c1, self.c2, self.ct1, self.ct2)
    }

    fn unchanged(p: &ProperSolution) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        Self {
            alpha: p.alpha,
            r_star: p.r_star,
            rate: p.r_star,
            c1: p.c1,
            c2: p.c2,
            ct1: zero,
            ct2: zero,
        }
    }
}

/// Feasibility over the candidate phases, tried in order; the first success wins.
pub fn p1b_feasible_with(
    co: &PbCoefficients,
    ch: &Channel,
    candidates: &[ThetaCandidate],
    c1: f64,
    c2: f64,
) -> Option<FeasibleWitness> {
    candidates.iter().find_map(|cand| {
        planar_feasible(co, ch, cand.theta, c1, c2).map(|(x, t)| FeasibleWitness {
            ct1: Complex64::new(x, 0.0),
            ct2: Complex64::from_polar(t, cand.theta),
            candidate: *cand,
        })
    })
}

/// Decides whether some pseudo-covariances satisfy both rate constraints
/// encoded in `co`, returning `(Ct1, Ct2)` with `Ct1` real.
pub fn p1b_feasible(
    co: &PbCoefficients,
    ch: &Channel,
    c1: f64,
    c2: f64,
) -> Option<(Complex64, Complex64)> {
    let candidates = candidate_thetas(co, ch, c1, c2);
    p1b_feasible_with(co, ch, &candidates, c1, c2).map(|w| (w.ct1, w.ct2))
}

/// Raises the profile sum rate of a proper solution by optimizing the
/// pseudo-covariances with the covariances held fixed.
pub fn solve_p1b(
    ch: &Channel,
    pc: &PowerConstraint,
    proper: &ProperSolution,
    cfg: &SolverConfig,
) -> Result<ImproperSolution> {
    cfg.validate()?;
    let alpha = proper.alpha;
    if classify_profile(alpha, cfg)? != Profile::Shared || ch.is_decoupled() {
        // One active user, or a receiver without interference: an improper
        // input can only lower the rate of the undisturbed link.
        return Ok(ImproperSolution::unchanged(proper));
    }

    let (c1, c2) = (proper.c1, proper.c2);
    let feasible_at = |rate: f64| -> Result<Option<(Complex64, Complex64)>> {
        let co = match pb_coeffs(ch, pc, c1, c2, proper.r_star, alpha, rate) {
            Ok(co) => co,
            Err(Error::CrossGainZero(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        Ok(p1b_feasible(&co, ch, c1, c2))
    };

    let mut best = ImproperSolution::unchanged(proper);
    let mut lo = proper.r_star;
    let mut hi = sum_rate_upper_bound(ch, pc, alpha).max(lo);
    if let Some((ct1, ct2)) = feasible_at(hi)? {
        return Ok(ImproperSolution {
            rate: hi,
            ct1,
            ct2,
            ..best
        });
    }
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
        match feasible_at(mid)? {
            Some((ct1, ct2)) => {
                lo = mid;
                best = ImproperSolution {
                    rate: mid,
                    ct1,
                    ct2,
                    ..best
                };
            }
            None => hi = mid,
        }
    }
    Ok(best)
}
