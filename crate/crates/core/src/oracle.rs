//! Brute-force references.
//!
//! [`oracle_region`] enumerates a grid over all signaling parameters (joint
//! covariance and pseudo-covariance search) and keeps the Pareto-optimal
//! rate pairs. [`oracle_pb_scan`] scans the pseudo-covariance feasibility
//! problem densely. Neither is fast; both exist to check the solvers.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::improper::PbCoefficients;
use crate::model::{Channel, PowerConstraint, RatePair, Signaling, User};
use crate::rate::user_rate_unchecked;
use crate::region::pareto_indices;

/// Grid resolution of the joint search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    /// Points per covariance axis.
    pub n_cov: usize,
    /// Points per pseudo-covariance magnitude axis.
    pub n_pcov: usize,
    /// Phase samples for `Ct_x2`.
    pub n_theta: usize,
    /// Include both endpoints of every magnitude axis.
    pub include_boundary: bool,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            n_cov: 9,
            n_pcov: 9,
            n_theta: 24,
            include_boundary: true,
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_cov < 2 || self.n_pcov < 2 || self.n_theta < 4 {
            return Err(Error::InvalidConfig(format!(
                "oracle grid needs n_cov >= 2, n_pcov >= 2, n_theta >= 4 (got {}, {}, {})",
                self.n_cov, self.n_pcov, self.n_theta
            )));
        }
        Ok(())
    }

    /// Halves every grid step; the refined grid contains the original one.
    pub fn refined(&self) -> Self {
        Self {
            n_cov: 2 * self.n_cov - 1,
            n_pcov: 2 * self.n_pcov - 1,
            n_theta: 2 * self.n_theta,
            include_boundary: self.include_boundary,
        }
    }

    /// Fraction of the axis range at index `i` of `n`.
    pub fn fraction(&self, i: usize, n: usize) -> f64 {
        if self.include_boundary {
            i as f64 / (n - 1) as f64
        } else {
            (i as f64 + 0.5) / n as f64
        }
    }

    pub fn theta(&self, k: usize) -> f64 {
        TAU * k as f64 / self.n_theta as f64
    }
}

/// Grid coordinates `[C1, C2, |Ct1|, |Ct2|, theta]` of a sampled point.
pub type GridCell = [usize; 5];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OraclePoint {
    pub rates: RatePair,
    pub signaling: Signaling,
    pub cell: GridCell,
}

/// The signaling at a grid cell. `Ct1` is real and nonnegative: a common
/// phase rotation of both pseudo-covariances leaves every rate unchanged.
pub fn grid_signaling(pc: &PowerConstraint, grid: &GridSpec, cell: GridCell) -> Signaling {
    let [i1, i2, k1, k2, m] = cell;
    let c1 = pc.p1 * grid.fraction(i1, grid.n_cov);
    let c2 = pc.p2 * grid.fraction(i2, grid.n_cov);
    let ct1 = Complex64::new(c1 * grid.fraction(k1, grid.n_pcov), 0.0);
    let ct2 = Complex64::from_polar(c2 * grid.fraction(k2, grid.n_pcov), grid.theta(m));
    Signaling::new(c1, c2, ct1, ct2)
}

fn rates_at(ch: &Channel, pc: &PowerConstraint, sig: &Signaling) -> RatePair {
    RatePair::new(
        user_rate_unchecked(ch, sig, pc.noise_var, User::One),
        user_rate_unchecked(ch, sig, pc.noise_var, User::Two),
    )
}

/// Every grid point, unfiltered, in lexicographic cell order.
pub fn oracle_samples(
    ch: &Channel,
    pc: &PowerConstraint,
    grid: &GridSpec,
) -> Result<Vec<OraclePoint>> {
    grid.validate()?;
    let mut out = Vec::with_capacity(grid.n_cov.pow(2) * grid.n_pcov.pow(2) * grid.n_theta);
    for i1 in 0..grid.n_cov {
        for i2 in 0..grid.n_cov {
            for k1 in 0..grid.n_pcov {
                for k2 in 0..grid.n_pcov {
                    for m in 0..grid.n_theta {
                        let cell = [i1, i2, k1, k2, m];
                        let sig = grid_signaling(pc, grid, cell);
                        out.push(OraclePoint {
                            rates: rates_at(ch, pc, &sig),
                            signaling: sig,
                            cell,
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Pareto-optimal rate pairs of the joint grid search, sorted by `r1`.
pub fn oracle_region(
    ch: &Channel,
    pc: &PowerConstraint,
    grid: &GridSpec,
) -> Result<Vec<OraclePoint>> {
    let mut samples = oracle_samples(ch, pc, grid)?;
    samples.sort_by(|a, b| {
        a.rates
            .r1
            .total_cmp(&b.rates.r1)
            .then(a.rates.r2.total_cmp(&b.rates.r2))
    });
    let pairs: Vec<RatePair> = samples.iter().map(|p| p.rates).collect();
    Ok(pareto_indices(&pairs)
        .into_iter()
        .map(|i| samples[i])
        .collect())
}

/// Largest change in either user's rate when one grid coordinate of any of
/// `points` moves by one step, summed over the five coordinates.
pub fn grid_step_slack(
    ch: &Channel,
    pc: &PowerConstraint,
    grid: &GridSpec,
    points: &[OraclePoint],
) -> f64 {
    let sizes = [
        grid.n_cov,
        grid.n_cov,
        grid.n_pcov,
        grid.n_pcov,
        grid.n_theta,
    ];
    let mut worst = 0.0f64;
    for p in points {
        let mut total = 0.0;
        for axis in 0..5 {
            let mut axis_worst = 0.0f64;
            for step in [-1i64, 1] {
                let mut cell = p.cell;
                let v = cell[axis] as i64 + step;
                let v = if axis == 4 {
                    v.rem_euclid(sizes[4] as i64)
                } else if v < 0 || v >= sizes[axis] as i64 {
                    continue;
                } else {
                    v
                };
                cell[axis] = v as usize;
                let r = rates_at(ch, pc, &grid_signaling(pc, grid, cell));
                axis_worst = axis_worst
                    .max((r.r1 - p.rates.r1).abs())
                    .max((r.r2 - p.rates.r2).abs());
            }
            total += axis_worst;
        }
        worst = worst.max(total);
    }
    worst
}

/// Dense scan of the pseudo-covariance feasibility problem over
/// `x in [0, c1]`, `t in [0, c2]` and `theta in [0, 2pi)`, with `resolution`
/// samples per axis. Returns the first feasible `(x, t, theta)`.
pub fn oracle_pb_scan(
    co: &PbCoefficients,
    ch: &Channel,
    c1: f64,
    c2: f64,
    resolution: usize,
) -> Option<(f64, f64, f64)> {
    let n = resolution.max(2);
    let sq = |z: Complex64| z * z;
    let u1 = sq(ch.h(User::One, User::One));
    let w1 = sq(ch.h(User::One, User::Two));
    let u2 = sq(ch.h(User::Two, User::One));
    let w2 = sq(ch.h(User::Two, User::Two));
    let xs: Vec<f64> = (0..n).map(|i| c1 * i as f64 / (n - 1) as f64).collect();
    let ts: Vec<f64> = (0..n).map(|i| c2 * i as f64 / (n - 1) as f64).collect();
    for m in 0..n {
        let theta = TAU * m as f64 / n as f64;
        let rot = Complex64::from_polar(1.0, theta);
        let (v1, v2) = (w1 * rot, w2 * rot);
        for &x in &xs {
            let (p1, p2) = (u1 * x, u2 * x);
            let rhs2 = x * x - co.b2;
            for &t in &ts {
                if co.a1 * (p1 + v1 * t).norm_sqr() + co.b1 <= t * t
                    && co.a2 * (p2 + v2 * t).norm_sqr() <= rhs2
                {
                    return Some((x, t, theta));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::improper::pb_coeffs;

    #[test]
    fn grid_validation() {
        assert!(GridSpec::default().validate().is_ok());
        assert!(GridSpec {
            n_theta: 3,
            ..GridSpec::default()
        }
        .validate()
        .is_err());
        assert!(GridSpec {
            n_cov: 1,
            ..GridSpec::default()
        }
        .validate()
        .is_err());
    }

    #[test]
    fn proper_only_grid_matches_proper_rates() {
        let ch = Channel::from_parts([(1.0, 0.2), (0.6, -0.3), (0.4, 0.4), (0.9, -0.1)]).unwrap();
        let pc = PowerConstraint::new(2.0, 1.5, 1.0).unwrap();
        let grid = GridSpec {
            n_cov: 5,
            n_pcov: 2,
            n_theta: 4,
            include_boundary: true,
        };
        for p in oracle_samples(&ch, &pc, &grid).unwrap() {
            if p.cell[2] == 0 && p.cell[3] == 0 {
                let s = p.signaling;
                assert!(s.is_proper());
                let r1 = crate::rate::proper_rate(&ch, s.c1, s.c2, 1.0, User::One);
                assert_eq!(p.rates.r1, r1);
            }
        }
    }

    #[test]
    fn decoupled_channel_has_single_pareto_point() {
        let ch = Channel::real(1.0, 0.0, 0.0, 1.5).unwrap();
        let pc = PowerConstraint::new(2.0, 1.0, 1.0).unwrap();
        let grid = GridSpec {
            n_cov: 3,
            n_pcov: 3,
            n_theta: 4,
            include_boundary: true,
        };
        let region = oracle_region(&ch, &pc, &grid).unwrap();
        assert_eq!(region.len(), 1);
        assert!((region[0].rates.r1 - 3f64.ln()).abs() < 1e-12);
        assert!((region[0].rates.r2 - 3.25f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn scan_accepts_origin_when_offsets_vanish() {
        let ch = Channel::from_parts([(1.0, 0.2), (0.6, -0.3), (0.4, 0.4), (0.9, -0.1)]).unwrap();
        let pc = PowerConstraint::new(1.0, 1.0, 1.0).unwrap();
        let co = pb_coeffs(&ch, &pc, 1.0, 1.0, 0.3, 0.5, 0.3).unwrap();
        assert_eq!(
            oracle_pb_scan(&co, &ch, 1.0, 1.0, 100),
            Some((0.0, 0.0, 0.0))
        );
    }
}
