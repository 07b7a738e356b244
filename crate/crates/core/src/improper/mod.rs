//! Pseudo-covariance optimization for fixed input powers.
//!
//! With the powers fixed at the proper optimum, the sum rate `R` of a rate
//! profile is raised by bisection. For each trial `R` the rate constraints
//! become two conic constraints in the pseudo-covariances `X1 = Ct_x1` and
//! `X2 = Ct_x2`:
//!
//! ```text
//! a1 |h11^2 X1 + h12^2 X2|^2 + b1 <= |X2|^2
//! a2 |h21^2 X1 + h22^2 X2|^2 + b2 <= |X1|^2
//! |X1| <= C1,  |X2| <= C2
//! ```
//!
//! A common phase rotation of `X1` and `X2` changes nothing, so `X1 = x` is
//! taken real and nonnegative and `X2 = t e^{j theta}`. For fixed `theta` the
//! problem is a planar convex feasibility question ([`planar_feasible`]), and
//! only finitely many `theta` need to be tried ([`candidate_thetas`]).

mod coeffs;
mod planar;
mod solve;
mod theta;

pub use coeffs::{pb_coeffs, PbCoefficients};
pub use planar::{constraint_values, planar_feasible};
pub use solve::{p1b_feasible, p1b_feasible_with, solve_p1b, FeasibleWitness, ImproperSolution};
pub use theta::{
    candidate_thetas, fixed_theta_candidates, solve_theta_a, solve_theta_b, ThetaCandidate,
    ThetaSource, DEDUP_TOL,
};
