use num_complex::Complex64;

use super::coeffs::PbCoefficients;
use crate::model::{Channel, User};
use crate::quadratic::{intersect_sets, sublevel_set, Interval};

/// Relative slack on the feasible intervals; keeps exact tangencies feasible.
const INTERVAL_SLACK: f64 = 1e-12;

/// Relative tolerance a witness must meet when re-evaluated.
const WITNESS_TOL: f64 = 1e-10;

/// Values of the two conic constraints at `X1 = x`, `X2 = t e^{j theta}`,
/// each divided by the magnitude of its terms. Nonpositive means satisfied.
pub fn constraint_values(
    co: &PbCoefficients,
    ch: &Channel,
    theta: f64,
    x: f64,
    t: f64,
) -> (f64, f64) {
    let x2 = Complex64::from_polar(t, theta);
    let sq = |z: Complex64| z * z;
    let (h11, h12) = (ch.h(User::One, User::One), ch.h(User::One, User::Two));
    let (h21, h22) = (ch.h(User::Two, User::One), ch.h(User::Two, User::Two));
    let m1 = co.a1 * (sq(h11) * x + sq(h12) * x2).norm_sqr();
    let m2 = co.a2 * (sq(h21) * x + sq(h22) * x2).norm_sqr();
    let f1 = m1 + co.b1 - t * t;
    let f2 = m2 + co.b2 - x * x;
    let s1 = co.a1
        * (ch.gain(User::One, User::One) * x + ch.gain(User::One, User::Two) * t).powi(2)
        + co.b1
        + t * t;
    let s2 = co.a2
        * (ch.gain(User::Two, User::One) * x + ch.gain(User::Two, User::Two) * t).powi(2)
        + co.b2
        + x * x;
    (
        if s1 > 0.0 { f1 / s1 } else { f1 },
        if s2 > 0.0 { f2 / s2 } else { f2 },
    )
}

/// Feasibility of the two conic constraints for a fixed phase `theta` of
/// `X2`, over `0 <= x <= c1` and `0 <= t <= c2`.
///
/// Any feasible point can be scaled up until `x = c1` or `t = c2` without
/// losing feasibility (the offsets `b` are nonnegative), so only those two
/// edges are searched. On each edge both constraints are quadratics in the
/// free variable and their sub-level sets are intervals. Returns a witness
/// `(x, t)`.
pub fn planar_feasible(
    co: &PbCoefficients,
    ch: &Channel,
    theta: f64,
    c1: f64,
    c2: f64,
) -> Option<(f64, f64)> {
    let c1 = c1.max(0.0);
    let c2 = c2.max(0.0);
    if co.b1 <= 0.0 && co.b2 <= 0.0 {
        return Some((0.0, 0.0));
    }

    let rot = Complex64::from_polar(1.0, theta);
    let sq = |z: Complex64| z * z;
    // Constraint k reads a_k |u_k x + v_k t|^2 + b_k <= (t or x)^2.
    let u1 = sq(ch.h(User::One, User::One));
    let v1 = sq(ch.h(User::One, User::Two)) * rot;
    let u2 = sq(ch.h(User::Two, User::One));
    let v2 = sq(ch.h(User::Two, User::Two)) * rot;
    let cross1 = (u1.conj() * v1).re;
    let cross2 = (u2.conj() * v2).re;
    let (uu1, vv1, uu2, vv2) = (u1.norm_sqr(), v1.norm_sqr(), u2.norm_sqr(), v2.norm_sqr());
    let (a1, b1, a2, b2) = (co.a1, co.b1, co.a2, co.b2);

    let verify = |x: f64, t: f64| {
        let (f1, f2) = constraint_values(co, ch, theta, x, t);
        f1 <= WITNESS_TOL && f2 <= WITNESS_TOL
    };

    // Edge x = c1, free t.
    let dom_t = Interval::new(0.0, c2);
    let slack_t = INTERVAL_SLACK * c2.max(f64::MIN_POSITIVE);
    let x = c1;
    let s1 = sublevel_set(
        a1 * vv1 - 1.0,
        2.0 * a1 * cross1 * x,
        a1 * uu1 * x * x + b1,
        dom_t,
        slack_t,
    );
    let s2 = sublevel_set(
        a2 * vv2,
        2.0 * a2 * cross2 * x,
        a2 * uu2 * x * x + b2 - x * x,
        dom_t,
        slack_t,
    );
    if let Some(t) = pick(&intersect_sets(&s1, &s2)) {
        if verify(x, t) {
            return Some((x, t));
        }
    }

    // Edge t = c2, free x.
    let dom_x = Interval::new(0.0, c1);
    let slack_x = INTERVAL_SLACK * c1.max(f64::MIN_POSITIVE);
    let t = c2;
    let s1 = sublevel_set(
        a1 * uu1,
        2.0 * a1 * cross1 * t,
        a1 * vv1 * t * t + b1 - t * t,
        dom_x,
        slack_x,
    );
    let s2 = sublevel_set(
        a2 * uu2 - 1.0,
        2.0 * a2 * cross2 * t,
        a2 * vv2 * t * t + b2,
        dom_x,
        slack_x,
    );
    if let Some(x) = pick(&intersect_sets(&s1, &s2)) {
        if verify(x, t) {
            return Some((x, t));
        }
    }
    None
}

/// Midpoint of the widest interval.
fn pick(set: &[Interval]) -> Option<f64> {
    set.iter()
        .max_by(|a, b| a.len().total_cmp(&b.len()))
        .map(Interval::mid)
}
