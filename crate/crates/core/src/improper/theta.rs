//! The finite set of phases `theta` of `X2` that has to be examined.
//!
//! Two phases come straight from the channel: the ones that make the two
//! terms inside one of the conic constraints antiphase. The remaining ones
//! make both conic constraints tight while one pseudo-covariance sits at its
//! magnitude bound (`x = C1`, set A; or `t = C2`, set B). Either system
//! reduces to
//!
//! ```text
//! u cos(eta)         + d1 u^2 + d2 = 0
//! u cos(eta + omega) + d3 u^2 + d4 = 0
//! ```
//!
//! in the free magnitude `u` and `eta = theta + 2(phi12 - phi11)`, with
//! `omega = 2(phi22 + phi11 - phi12 - phi21)`. Eliminating `eta` gives a
//! quadratic in `z = u^2`.

use std::f64::consts::PI;

use super::coeffs::PbCoefficients;
use crate::model::{angle_distance, wrap_angle, Channel, User};
use crate::quadratic::real_roots;

/// Candidates closer than this (radians, on the circle) are merged.
pub const DEDUP_TOL: f64 = 1e-9;

/// Below this, the leading coefficient of the `z` quadratic is treated as zero.
const DEGENERATE_QUADRATIC: f64 = 1e-14;

/// Relative residual a recovered `(u, eta)` must meet in the reduced system.
/// Squaring during elimination admits one spurious `eta` per root; this is
/// what removes it.
const ROOT_RESIDUAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThetaSource {
    /// `theta = pi + 2(phi11 - phi12)`: `h11^2 X1` and `h12^2 X2` antiphase.
    FixedPhase11_12,
    /// `theta = pi + 2(phi21 - phi22)`: `h21^2 X1` and `h22^2 X2` antiphase.
    FixedPhase21_22,
    /// Both conic constraints tight with `X1 = C1`.
    SetA,
    /// Both conic constraints tight with `|X2| = C2`.
    SetB,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaCandidate {
    /// Phase of `X2` in `[0, 2pi)`.
    pub theta: f64,
    pub source: ThetaSource,
    /// `t = |X2|` for set A, `x = X1` for set B.
    pub companion: Option<f64>,
}

fn push_unique(out: &mut Vec<ThetaCandidate>, cand: ThetaCandidate) {
    if !out
        .iter()
        .any(|c| angle_distance(c.theta, cand.theta) < DEDUP_TOL)
    {
        out.push(cand);
    }
}

/// The two channel-determined phases, deduplicated.
pub fn fixed_theta_candidates(ch: &Channel) -> Vec<ThetaCandidate> {
    use User::{One, Two};
    let mut out = Vec::with_capacity(2);
    let first = wrap_angle(PI + 2.0 * (ch.phase(One, One) - ch.phase(One, Two)));
    let second = wrap_angle(PI + 2.0 * (ch.phase(Two, One) - ch.phase(Two, Two)));
    push_unique(
        &mut out,
        ThetaCandidate {
            theta: first,
            source: ThetaSource::FixedPhase11_12,
            companion: None,
        },
    );
    push_unique(
        &mut out,
        ThetaCandidate {
            theta: second,
            source: ThetaSource::FixedPhase21_22,
            companion: None,
        },
    );
    out
}

fn omega(ch: &Channel) -> f64 {
    use User::{One, Two};
    2.0 * (ch.phase(Two, Two) + ch.phase(One, One) - ch.phase(One, Two) - ch.phase(Two, One))
}

/// Offset with `theta = eta - offset`.
fn eta_offset(ch: &Channel) -> f64 {
    2.0 * (ch.phase(User::One, User::Two) - ch.phase(User::One, User::One))
}

fn all_links_present(ch: &Channel) -> bool {
    User::BOTH
        .iter()
        .all(|&r| User::BOTH.iter().all(|&t| ch.mag(r, t) > 0.0))
}

/// Gains `|h_rt|^2` as `(g11, g12, g21, g22)`.
fn gains(ch: &Channel) -> (f64, f64, f64, f64) {
    use User::{One, Two};
    (
        ch.gain(One, One),
        ch.gain(One, Two),
        ch.gain(Two, One),
        ch.gain(Two, Two),
    )
}

/// Phases solving the set-A system (`X1 = c1`, both conic constraints tight).
/// Each candidate carries the matching `t = |X2|` in `(0, c2]`.
pub fn solve_theta_a(co: &PbCoefficients, ch: &Channel, c1: f64, c2: f64) -> Vec<ThetaCandidate> {
    if !(c1 > 0.0) || !all_links_present(ch) {
        return Vec::new();
    }
    let (g11, g12, g21, g22) = gains(ch);
    let (a1, b1, a2, b2) = (co.a1, co.b1, co.a2, co.b2);
    let d = [
        (a1 * g12 * g12 - 1.0) / (2.0 * a1 * g11 * g12 * c1),
        (a1 * g11 * g11 * c1 * c1 + b1) / (2.0 * a1 * g11 * g12 * c1),
        g22 / (2.0 * g21 * c1),
        ((a2 * g21 * g21 - 1.0) * c1 * c1 + b2) / (2.0 * a2 * g21 * g22 * c1),
    ];
    collect(
        reduced_system_roots(d, omega(ch), c2),
        ch,
        ThetaSource::SetA,
    )
}

/// Phases solving the set-B system (`|X2| = c2`, both conic constraints
/// tight). Each candidate carries the matching `x = X1` in `(0, c1]`.
pub fn solve_theta_b(co: &PbCoefficients, ch: &Channel, c1: f64, c2: f64) -> Vec<ThetaCandidate> {
    if !(c2 > 0.0) || !all_links_present(ch) {
        return Vec::new();
    }
    let (g11, g12, g21, g22) = gains(ch);
    let (a1, b1, a2, b2) = (co.a1, co.b1, co.a2, co.b2);
    let d = [
        g11 / (2.0 * g12 * c2),
        ((a1 * g12 * g12 - 1.0) * c2 * c2 + b1) / (2.0 * a1 * g11 * g12 * c2),
        (a2 * g21 * g21 - 1.0) / (2.0 * a2 * g21 * g22 * c2),
        (a2 * g22 * g22 * c2 * c2 + b2) / (2.0 * a2 * g21 * g22 * c2),
    ];
    collect(
        reduced_system_roots(d, omega(ch), c1),
        ch,
        ThetaSource::SetB,
    )
}

fn collect(roots: Vec<(f64, f64)>, ch: &Channel, source: ThetaSource) -> Vec<ThetaCandidate> {
    let mut out = Vec::with_capacity(roots.len());
    for (u, eta) in roots {
        let theta = wrap_angle(eta - eta_offset(ch));
        push_unique(
            &mut out,
            ThetaCandidate {
                theta,
                source,
                companion: Some(u),
            },
        );
    }
    out.sort_by(|a, b| a.theta.total_cmp(&b.theta));
    out
}

/// The full ordered candidate list: fixed phases, then set A, then set B.
/// Later duplicates of earlier phases are dropped.
pub fn candidate_thetas(
    co: &PbCoefficients,
    ch: &Channel,
    c1: f64,
    c2: f64,
) -> Vec<ThetaCandidate> {
    let mut out = Vec::new();
    let sets = [
        fixed_theta_candidates(ch),
        solve_theta_a(co, ch, c1, c2),
        solve_theta_b(co, ch, c1, c2),
    ];
    for cand in sets.into_iter().flatten() {
        push_unique(&mut out, cand);
    }
    out
}

/// Residuals of the reduced system, each relative to the magnitude of its terms.
fn reduced_residuals(d: &[f64; 4], omega: f64, u: f64, eta: f64) -> (f64, f64) {
    let r1 = u * eta.cos() + d[0] * u * u + d[1];
    let s1 = u + (d[0] * u * u).abs() + d[1].abs();
    let r2 = u * (eta + omega).cos() + d[2] * u * u + d[3];
    let s2 = u + (d[2] * u * u).abs() + d[3].abs();
    (r1.abs() / s1, r2.abs() / s2)
}

/// A few Newton steps on the reduced system; only accepted if the residual
/// improves and `u` stays in `(0, upper]`.
fn polish(d: &[f64; 4], omega: f64, upper: f64, mut u: f64, mut eta: f64) -> (f64, f64) {
    let worst = |u: f64, eta: f64| {
        let (a, b) = reduced_residuals(d, omega, u, eta);
        a.max(b)
    };
    let mut best = worst(u, eta);
    for _ in 0..4 {
        if best < 1e-15 {
            break;
        }
        let f1 = u * eta.cos() + d[0] * u * u + d[1];
        let f2 = u * (eta + omega).cos() + d[2] * u * u + d[3];
        let j11 = eta.cos() + 2.0 * d[0] * u;
        let j12 = -u * eta.sin();
        let j21 = (eta + omega).cos() + 2.0 * d[2] * u;
        let j22 = -u * (eta + omega).sin();
        let det = j11 * j22 - j12 * j21;
        if det.abs() < 1e-300 || !det.is_finite() {
            break;
        }
        let du = (f1 * j22 - f2 * j12) / det;
        let de = (j11 * f2 - j21 * f1) / det;
        let (nu, ne) = (u - du, eta - de);
        if !(nu > 0.0 && nu <= upper) {
            break;
        }
        let r = worst(nu, ne);
        if r < best {
            best = r;
            u = nu;
            eta = ne;
        } else {
            break;
        }
    }
    (u, eta)
}

/// Solves the reduced system for `u` in `(0, upper]`, returning `(u, eta)` pairs.
fn reduced_system_roots(d: [f64; 4], omega: f64, upper: f64) -> Vec<(f64, f64)> {
    let [d1, d2, d3, d4] = d;
    let (sw, cw) = omega.sin_cos();
    let e1 = d3 * d3 + d1 * d1 - 2.0 * d1 * d3 * cw;
    let e2 = 2.0 * (d1 * d2 + d3 * d4) - 2.0 * (d1 * d4 + d2 * d3) * cw - sw * sw;
    let e3 = d2 * d2 + d4 * d4 - 2.0 * d2 * d4 * cw;
    if ![e1, e2, e3].iter().all(|e| e.is_finite()) {
        return Vec::new();
    }

    let upper_sq = upper * upper;
    let mut out = Vec::new();
    for z in real_roots(e1, e2, e3, DEGENERATE_QUADRATIC) {
        // u = 0 means X2 = 0 (or X1 = 0): covered by the fixed phases or the
        // proper solution.
        if !(z > 0.0) {
            continue;
        }
        let z = if z > upper_sq {
            if z <= upper_sq * (1.0 + 1e-12) {
                upper_sq
            } else {
                continue;
            }
        } else {
            z
        };
        let u = z.sqrt();
        let mut cos_eta = -(d1 * z + d2) / u;
        if cos_eta.abs() > 1.0 {
            if cos_eta.abs() <= 1.0 + 1e-12 {
                cos_eta = cos_eta.signum();
            } else {
                continue;
            }
        }
        let base = cos_eta.acos();
        for eta in [base, 2.0 * PI - base] {
            let (u, eta) = polish(&d, omega, upper, u, eta);
            let (r1, r2) = reduced_residuals(&d, omega, u, eta);
            if r1 <= ROOT_RESIDUAL_TOL && r2 <= ROOT_RESIDUAL_TOL {
                out.push((u, eta));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::improper::coeffs::pb_coeffs;
    use crate::model::PowerConstraint;

    #[test]
    fn real_channel_has_single_fixed_phase() {
        let ch = Channel::real(1.0, 0.5, 0.7, 1.2).unwrap();
        let c = fixed_theta_candidates(&ch);
        assert_eq!(c.len(), 1);
        assert!((c[0].theta - PI).abs() < 1e-15);
        assert_eq!(c[0].source, ThetaSource::FixedPhase11_12);
    }

    #[test]
    fn quarter_turn_gives_pi_and_zero() {
        // phi11 = phi12 = 0, phi21 = phi22 + pi/2.
        let ch = Channel::from_parts([(1.0, 0.0), (0.5, 0.0), (0.0, 0.7), (1.2, 0.0)]).unwrap();
        let c = fixed_theta_candidates(&ch);
        assert_eq!(c.len(), 2);
        assert!((c[0].theta - PI).abs() < 1e-15);
        assert!(angle_distance(c[1].theta, 0.0) < 1e-12);
    }

    #[test]
    fn reference_channel_fixed_phases() {
        // atan2 of the reference entries, evaluated independently.
        let ch = Channel::from_parts([
            (1.5718, -1.2863),
            (-1.2984, 0.7032),
            (-0.2847, 0.67),
            (0.7802, -0.6151),
        ])
        .unwrap();
        let c = fixed_theta_candidates(&ch);
        assert!((c[0].theta - 2.762_645_260).abs() < 1e-6);
        assert!((c[1].theta - 2.138_854_849).abs() < 1e-6);
    }

    #[test]
    fn empty_without_magnitude_budget() {
        let ch = Channel::from_parts([(1.0, 0.2), (0.6, -0.3), (0.4, 0.4), (0.9, -0.1)]).unwrap();
        let pc = PowerConstraint::new(1.0, 1.0, 1.0).unwrap();
        let co = pb_coeffs(&ch, &pc, 1.0, 0.0, 0.1, 0.5, 0.2).unwrap();
        assert!(solve_theta_b(&co, &ch, 1.0, 0.0).is_empty());
        let co = pb_coeffs(&ch, &pc, 0.0, 1.0, 0.1, 0.5, 0.2).unwrap();
        assert!(solve_theta_a(&co, &ch, 0.0, 1.0).is_empty());
    }

    #[test]
    fn real_channel_roots_satisfy_reduced_system() {
        // omega = 0: the elimination degenerates to a perfect square.
        let ch = Channel::real(1.0, 2.0, 2.0, 1.0).unwrap();
        let pc = PowerConstraint::new(1.0, 1.0, 1.0).unwrap();
        let r = 2.0 * 1.2f64.ln();
        for k in 0..20 {
            let co = pb_coeffs(&ch, &pc, 1.0, 1.0, r, 0.5, r + 0.05 * k as f64).unwrap();
            for cand in solve_theta_a(&co, &ch, 1.0, 1.0) {
                let t = cand.companion.unwrap();
                assert!(t > 0.0 && t <= 1.0);
                let x2 = num_complex::Complex64::from_polar(t, cand.theta);
                let lhs = co.a1
                    * (ch.h(User::One, User::One).powi(2)
                        + ch.h(User::One, User::Two).powi(2) * x2)
                        .norm_sqr()
                    + co.b1;
                assert!((lhs - t * t).abs() < 1e-8 * (lhs + t * t));
            }
        }
    }
}
