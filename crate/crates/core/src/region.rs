//! Pareto boundaries: profile sweeps, dominance filtering and the
//! time-sharing (convex hull) envelope.

use crate::error::Result;
use crate::improper::solve_p1b;
use crate::model::{Channel, PowerConstraint, RatePair, Signaling, User};
use crate::proper::{solve_p1a, ProperSolution, SolverConfig};
use crate::rate::{proper_rate, user_rate_unchecked};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    ProperOptimal,
    ImproperProposed,
    Oracle,
}

impl Scheme {
    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::ProperOptimal => "ProperOptimal",
            Scheme::ImproperProposed => "ImproperProposed",
            Scheme::Oracle => "Oracle",
        }
    }
}

/// One operating point on (or inside) a rate region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    pub alpha: f64,
    /// Profile sum rate found by the solver.
    pub r_total: f64,
    /// Rates achieved by `signaling`, re-evaluated from the rate formula.
    pub rates: RatePair,
    pub signaling: Signaling,
    pub scheme: Scheme,
}

/// The proper optimum and its improper refinement for one profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfilePoints {
    pub proper: BoundaryPoint,
    pub improper: BoundaryPoint,
}

fn achieved(ch: &Channel, sig: &Signaling, noise_var: f64) -> RatePair {
    RatePair::new(
        user_rate_unchecked(ch, sig, noise_var, User::One),
        user_rate_unchecked(ch, sig, noise_var, User::Two),
    )
}

fn proper_point(ch: &Channel, pc: &PowerConstraint, sol: &ProperSolution) -> BoundaryPoint {
    BoundaryPoint {
        alpha: sol.alpha,
        r_total: sol.r_star,
        rates: RatePair::new(
            proper_rate(ch, sol.c1, sol.c2, pc.noise_var, User::One),
            proper_rate(ch, sol.c1, sol.c2, pc.noise_var, User::Two),
        ),
        signaling: Signaling::proper(sol.c1, sol.c2),
        scheme: Scheme::ProperOptimal,
    }
}

/// Runs both stages for profile `alpha`.
pub fn boundary_pair(
    ch: &Channel,
    pc: &PowerConstraint,
    alpha: f64,
    cfg: &SolverConfig,
) -> Result<ProfilePoints> {
    let proper = solve_p1a(ch, pc, alpha, cfg)?;
    let improper = solve_p1b(ch, pc, &proper, cfg)?;
    let sig = improper.signaling();
    Ok(ProfilePoints {
        proper: proper_point(ch, pc, &proper),
        improper: BoundaryPoint {
            alpha,
            r_total: improper.rate,
            rates: achieved(ch, &sig, pc.noise_var),
            signaling: sig,
            scheme: Scheme::ImproperProposed,
        },
    })
}

/// The improper boundary point `(alpha R*, (1 - alpha) R*)` for one profile.
pub fn boundary_point(
    ch: &Channel,
    pc: &PowerConstraint,
    alpha: f64,
    cfg: &SolverConfig,
) -> Result<BoundaryPoint> {
    boundary_pair(ch, pc, alpha, cfg).map(|p| p.improper)
}

/// `n` uniformly spaced profiles covering `[0, 1]` (endpoints included).
pub fn uniform_alphas(n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.5],
        _ => (0..n).map(|i| i as f64 / (n - 1) as f64).collect(),
    }
}

/// Both schemes for every profile, in input order. A failing profile yields
/// an `Err` entry; the others are unaffected.
pub fn sweep_pairs(
    ch: &Channel,
    pc: &PowerConstraint,
    alphas: &[f64],
    cfg: &SolverConfig,
) -> Vec<Result<ProfilePoints>> {
    alphas
        .iter()
        .map(|&a| boundary_pair(ch, pc, a, cfg))
        .collect()
}

/// Improper boundary points for every profile, in input order.
pub fn sweep(
    ch: &Channel,
    pc: &PowerConstraint,
    alphas: &[f64],
    cfg: &SolverConfig,
) -> Vec<Result<BoundaryPoint>> {
    alphas
        .iter()
        .map(|&a| boundary_point(ch, pc, a, cfg))
        .collect()
}

/// Indices of the Pareto-optimal points, ordered by ascending `r1`. Of
/// several identical points only the first is kept; NaN entries are ignored.
pub fn pareto_indices(points: &[RatePair]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..points.len())
        .filter(|&i| !points[i].r1.is_nan() && !points[i].r2.is_nan())
        .collect();
    order.sort_by(|&i, &j| {
        let (p, q) = (points[i], points[j]);
        q.r1.total_cmp(&p.r1).then(q.r2.total_cmp(&p.r2))
    });
    let mut kept = Vec::new();
    let mut best_r2 = f64::NEG_INFINITY;
    for i in order {
        if points[i].r2 > best_r2 {
            best_r2 = points[i].r2;
            kept.push(i);
        }
    }
    kept.reverse();
    kept
}

/// The undominated subset, sorted by `r1`.
pub fn pareto_filter(points: &[RatePair]) -> Vec<RatePair> {
    pareto_indices(points)
        .into_iter()
        .map(|i| points[i])
        .collect()
}

/// Time-sharing envelope: vertices of the upper-right concave hull of the
/// points together with the axis projections `(0, max r2)` and
/// `(max r1, 0)`, sorted by `r1`. Collinear interior vertices are dropped.
pub fn convex_hull(points: &[RatePair]) -> Vec<RatePair> {
    let finite: Vec<RatePair> = points
        .iter()
        .copied()
        .filter(|p| p.r1.is_finite() && p.r2.is_finite())
        .collect();
    if finite.is_empty() {
        return Vec::new();
    }
    let max_r1 = finite.iter().map(|p| p.r1).fold(0.0, f64::max);
    let max_r2 = finite.iter().map(|p| p.r2).fold(0.0, f64::max);
    let mut pts = finite;
    pts.push(RatePair::new(0.0, max_r2));
    pts.push(RatePair::new(max_r1, 0.0));
    pts.sort_by(|p, q| p.r1.total_cmp(&q.r1).then(q.r2.total_cmp(&p.r2)));
    pts.dedup();

    let cross = |o: RatePair, a: RatePair, b: RatePair| {
        (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1)
    };
    let mut hull: Vec<RatePair> = Vec::with_capacity(pts.len());
    for p in pts {
        // Points left of the top-left vertex cannot exist (r1 >= 0), so the
        // chain starts at (0, max r2).
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) >= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    // Drop points that lie at the same r1 below the first vertex.
    while hull.len() >= 2 && hull[1].r1 == hull[0].r1 {
        hull.remove(1);
    }
    hull
}

/// Largest `R` with `(alpha R, (1 - alpha) R)` covered by some point.
pub fn ray_extent(points: &[RatePair], alpha: f64) -> f64 {
    points
        .iter()
        .map(|p| {
            let a = if alpha > 0.0 {
                p.r1 / alpha
            } else {
                f64::INFINITY
            };
            let b = if alpha < 1.0 {
                p.r2 / (1.0 - alpha)
            } else {
                f64::INFINITY
            };
            a.min(b)
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(a: f64, b: f64) -> RatePair {
        RatePair::new(a, b)
    }

    #[test]
    fn pareto_examples() {
        assert_eq!(
            pareto_filter(&[rp(1.0, 1.0), rp(2.0, 0.0), rp(0.5, 0.5)]),
            vec![rp(1.0, 1.0), rp(2.0, 0.0)]
        );
        assert_eq!(pareto_filter(&[rp(1.0, 2.0); 4]), vec![rp(1.0, 2.0)]);
        assert_eq!(
            pareto_filter(&[rp(1.0, 2.0), rp(1.0, 1.0), rp(0.0, 2.0)]),
            vec![rp(1.0, 2.0)]
        );
        let once = pareto_filter(&[rp(0.1, 3.0), rp(1.0, 2.0), rp(3.0, 0.2), rp(2.0, 0.1)]);
        assert_eq!(pareto_filter(&once), once);
    }

    #[test]
    fn hull_examples() {
        assert_eq!(
            convex_hull(&[rp(1.0, 2.0), rp(2.0, 1.0)]),
            vec![rp(0.0, 2.0), rp(1.0, 2.0), rp(2.0, 1.0), rp(2.0, 0.0)]
        );
        assert_eq!(
            convex_hull(&[rp(0.0, 2.0), rp(1.0, 1.0), rp(2.0, 0.0), rp(0.5, 0.5)]),
            vec![rp(0.0, 2.0), rp(2.0, 0.0)]
        );
        assert_eq!(
            convex_hull(&[rp(1.0, 1.0)]),
            vec![rp(0.0, 1.0), rp(1.0, 1.0), rp(1.0, 0.0)]
        );
    }

    #[test]
    fn alpha_grid() {
        let a = uniform_alphas(41);
        assert_eq!(a.len(), 41);
        assert_eq!((a[0], a[20], a[40]), (0.0, 0.5, 1.0));
    }

    #[test]
    fn endpoints_are_single_user_capacities() {
        let ch = Channel::from_parts([(1.2, 0.3), (0.5, -0.5), (0.7, 0.1), (0.8, -0.9)]).unwrap();
        let pc = PowerConstraint::new(2.0, 3.0, 0.5).unwrap();
        let cfg = SolverConfig::default();
        let p1 = boundary_point(&ch, &pc, 1.0, &cfg).unwrap();
        assert!((p1.rates.r1 - (1.0 + ch.gain(User::One, User::One) * 4.0).ln()).abs() < 1e-12);
        assert_eq!(p1.rates.r2, 0.0);
        let p0 = boundary_point(&ch, &pc, 0.0, &cfg).unwrap();
        assert!((p0.rates.r2 - (1.0 + ch.gain(User::Two, User::Two) * 6.0).ln()).abs() < 1e-12);
        assert_eq!(p0.rates.r1, 0.0);
    }
}
