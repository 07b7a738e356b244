//! Second-order statistics of the received signals and the resulting rates.
//!
//! With interference treated as noise, the rate of user `r` is
//! `h(y_r) - h(s_r)` where `s_r` is interference plus noise. For scalar
//! complex Gaussians this splits into the familiar proper rate plus a
//! correction that depends on the pseudo-covariances.

use std::f64::consts::{E, PI};
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{Channel, PowerConstraint, SecondOrderStats, Signaling, User};

/// Absolute slack used by [`validate`] on every comparison.
pub const VALIDATION_TOL: f64 = 1e-9;

/// Statistics of `y_r = h_r1 x1 + h_r2 x2 + n_r`.
pub fn received_stats(ch: &Channel, sig: &Signaling, noise_var: f64, r: User) -> SecondOrderStats {
    let mut cov = noise_var;
    let mut pcov = Complex64::new(0.0, 0.0);
    for t in User::BOTH {
        let h = ch.h(r, t);
        cov += h.norm_sqr() * sig.cov(t);
        pcov += h * h * sig.pcov(t);
    }
    SecondOrderStats { cov, pcov }
}

/// Statistics of the interference-plus-noise term `s_r = h_{r r'} x_{r'} + n_r`.
pub fn interference_stats(
    ch: &Channel,
    sig: &Signaling,
    noise_var: f64,
    r: User,
) -> SecondOrderStats {
    let o = r.other();
    let h = ch.h(r, o);
    SecondOrderStats {
        cov: h.norm_sqr() * sig.cov(o) + noise_var,
        pcov: h * h * sig.pcov(o),
    }
}

/// Differential entropy (nats) of a scalar complex Gaussian.
pub fn entropy(st: &SecondOrderStats) -> Result<f64> {
    let factor = st.circularity_factor();
    if !(st.cov > 0.0) || !(factor > 0.0) {
        return Err(Error::DegenerateEntropy);
    }
    Ok((PI * E * st.cov).ln() + 0.5 * factor.ln())
}

/// Rate of user `r` when both inputs are proper with powers `c1`, `c2`.
pub fn proper_rate(ch: &Channel, c1: f64, c2: f64, noise_var: f64, r: User) -> f64 {
    let covs = [c1, c2];
    let o = r.other();
    let sinr = ch.gain(r, r) * covs[r.index()] / (noise_var + ch.gain(r, o) * covs[o.index()]);
    sinr.ln_1p()
}

/// Rate of user `r` under (possibly) improper Gaussian signaling.
///
/// Evaluated as the proper rate plus
/// `0.5 * ln[(1 - |Ct_y|^2/C_y^2) / (1 - |Ct_s|^2/C_s^2)]`. The correction
/// may be negative.
pub fn user_rate(ch: &Channel, sig: &Signaling, noise_var: f64, r: User) -> Result<f64> {
    let violations = signaling_violations(sig);
    if !violations.is_empty() {
        return Err(Error::InvalidSignaling(violations));
    }
    Ok(user_rate_unchecked(ch, sig, noise_var, r))
}

pub(crate) fn user_rate_unchecked(ch: &Channel, sig: &Signaling, noise_var: f64, r: User) -> f64 {
    let proper = proper_rate(ch, sig.c1, sig.c2, noise_var, r);
    if sig.is_proper() {
        return proper;
    }
    let y = received_stats(ch, sig, noise_var, r);
    let s = interference_stats(ch, sig, noise_var, r);
    proper + 0.5 * (y.circularity_factor().ln() - s.circularity_factor().ln())
}

/// Both users' rates.
pub fn rates(ch: &Channel, sig: &Signaling, noise_var: f64) -> Result<crate::model::RatePair> {
    Ok(crate::model::RatePair::new(
        user_rate(ch, sig, noise_var, User::One)?,
        user_rate(ch, sig, noise_var, User::Two)?,
    ))
}

/// A single failed validity condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Violation {
    NegativePower {
        user: User,
        value: f64,
    },
    PowerBudget {
        user: User,
        value: f64,
        budget: f64,
    },
    PseudoCovariance {
        user: User,
        magnitude: f64,
        cov: f64,
    },
    NotFinite {
        user: User,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::NegativePower { user, value } => {
                write!(f, "C{} = {value} is negative", user.index() + 1)
            }
            Violation::PowerBudget {
                user,
                value,
                budget,
            } => {
                write!(
                    f,
                    "C{} = {value} exceeds P{} = {budget}",
                    user.index() + 1,
                    user.index() + 1
                )
            }
            Violation::PseudoCovariance {
                user,
                magnitude,
                cov,
            } => {
                let k = user.index() + 1;
                write!(f, "|Ct{k}| = {magnitude} exceeds C{k} = {cov}")
            }
            Violation::NotFinite { user } => {
                write!(f, "signaling of user {} is not finite", user.index() + 1)
            }
        }
    }
}

fn signaling_violations(sig: &Signaling) -> Vec<Violation> {
    let mut out = Vec::new();
    for u in User::BOTH {
        let (c, ct) = (sig.cov(u), sig.pcov(u));
        if !(c.is_finite() && ct.re.is_finite() && ct.im.is_finite()) {
            out.push(Violation::NotFinite { user: u });
            continue;
        }
        if c < -VALIDATION_TOL {
            out.push(Violation::NegativePower { user: u, value: c });
        }
        if ct.norm() > c + VALIDATION_TOL {
            out.push(Violation::PseudoCovariance {
                user: u,
                magnitude: ct.norm(),
                cov: c,
            });
        }
    }
    out
}

/// Lists every violated validity or budget condition; empty means valid.
pub fn validate(sig: &Signaling, pc: &PowerConstraint) -> Vec<Violation> {
    let mut out = signaling_violations(sig);
    for u in User::BOTH {
        let c = sig.cov(u);
        if c.is_finite() && c > pc.power(u) + VALIDATION_TOL {
            out.push(Violation::PowerBudget {
                user: u,
                value: c,
                budget: pc.power(u),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn all_ones() -> Channel {
        Channel::real(1.0, 1.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn received_stats_cancel_by_symmetry() {
        let sig = Signaling::new(1.0, 1.0, c(1.0, 0.0), c(-1.0, 0.0));
        let st = received_stats(&all_ones(), &sig, 1.0, User::One);
        assert_eq!(st.cov, 3.0);
        assert_eq!(st.pcov, c(0.0, 0.0));
    }

    #[test]
    fn received_stats_on_reference_channel() {
        let ch = Channel::from_parts([
            (1.5718, -1.2863),
            (-1.2984, 0.7032),
            (-0.2847, 0.67),
            (0.7802, -0.6151),
        ])
        .unwrap();
        let st = received_stats(&ch, &Signaling::proper(10.0, 10.0), 1.0, User::One);
        // 10 * (4.12512293 + 2.1803328) + 1
        assert!((st.cov - 64.054_557_3).abs() < 1e-9);
        assert_eq!(st.pcov, c(0.0, 0.0));
    }

    #[test]
    fn interference_stats_cases() {
        let ch = Channel::real(1.0, 0.0, 1.0, 1.0).unwrap();
        let sig = Signaling::new(1.0, 1.0, c(0.3, 0.2), c(-0.5, 0.1));
        let st = interference_stats(&ch, &sig, 1.5, User::One);
        assert_eq!((st.cov, st.pcov), (1.5, c(0.0, 0.0)));

        let sig = Signaling::new(1.0, 1.0, c(0.0, 0.0), c(-1.0, 0.0));
        let st = interference_stats(&all_ones(), &sig, 1.0, User::One);
        assert_eq!((st.cov, st.pcov), (2.0, c(-1.0, 0.0)));

        let ch = Channel::from_parts([(1.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 0.0)]).unwrap();
        let sig = Signaling::new(1.0, 1.0, c(0.0, 0.0), c(1.0, 0.0));
        let st = interference_stats(&ch, &sig, 1.0, User::One);
        assert!((st.pcov - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn entropy_values() {
        let h = entropy(&SecondOrderStats {
            cov: 1.0,
            pcov: c(0.0, 0.0),
        })
        .unwrap();
        assert!((h - 2.144_729_885_849_4).abs() < 1e-12);
        let h2 = entropy(&SecondOrderStats {
            cov: 2.0,
            pcov: c(0.0, 0.0),
        })
        .unwrap();
        assert!((h2 - (2.0 * PI * E).ln()).abs() < 1e-14);
        assert_eq!(
            entropy(&SecondOrderStats {
                cov: 1.0,
                pcov: c(1.0, 0.0)
            }),
            Err(Error::DegenerateEntropy)
        );
    }

    #[test]
    fn improper_rate_examples() {
        // 0.549306144334055 also obtained from the real 2x2 composite covariance.
        let sig = Signaling::new(1.0, 1.0, c(1.0, 0.0), c(-1.0, 0.0));
        let r1 = user_rate(&all_ones(), &sig, 1.0, User::One).unwrap();
        assert!((r1 - 0.549_306_144_334_055).abs() < 1e-12);
        assert!((r1 - (1.5f64.ln() + 0.5 * (4.0f64 / 3.0).ln())).abs() < 1e-14);

        let ch = Channel::real(1.0, 0.0, 0.0, 1.0).unwrap();
        let sig = Signaling::new(1.0, 1.0, c(1.0, 0.0), c(0.0, 0.0));
        let r1 = user_rate(&ch, &sig, 1.0, User::One).unwrap();
        assert!((r1 - 0.549_306_144_334_055).abs() < 1e-12);
        assert!(r1 < 2f64.ln());
    }

    #[test]
    fn proper_rate_examples() {
        let ch = Channel::real(1.0, 0.0, 0.0, 1.0).unwrap();
        assert!((proper_rate(&ch, 1.0, 1.0, 1.0, User::One) - 2f64.ln()).abs() < 1e-15);
        assert_eq!(proper_rate(&all_ones(), 0.0, 1.0, 1.0, User::One), 0.0);
        assert!((proper_rate(&all_ones(), 1.0, 1.0, 1.0, User::One) - 1.5f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn user_rate_rejects_invalid_signaling() {
        let sig = Signaling::new(1.0, 1.0, c(1.001, 0.0), c(0.0, 0.0));
        assert!(matches!(
            user_rate(&all_ones(), &sig, 1.0, User::One),
            Err(Error::InvalidSignaling(_))
        ));
    }

    #[test]
    fn validate_cases() {
        let pc = PowerConstraint::new(1.0, 1.0, 1.0).unwrap();
        assert!(validate(&Signaling::proper(1.0, 1.0), &pc).is_empty());

        let v = validate(&Signaling::new(1.0, 1.0, c(1.001, 0.0), c(0.0, 0.0)), &pc);
        assert_eq!(v.len(), 1);
        assert!(matches!(
            v[0],
            Violation::PseudoCovariance {
                user: User::One,
                ..
            }
        ));

        for k in 0..16 {
            let (phi, psi) = (0.4 * k as f64, -0.9 * k as f64);
            let sig = Signaling::new(
                1.0,
                1.0,
                Complex64::from_polar(1.0, phi),
                Complex64::from_polar(1.0, psi),
            );
            assert!(validate(&sig, &pc).is_empty());
        }

        let v = validate(&Signaling::new(-0.5, 2.0, c(0.0, 0.0), c(0.0, 0.0)), &pc);
        assert!(v.iter().any(|x| matches!(
            x,
            Violation::NegativePower {
                user: User::One,
                ..
            }
        )));
        assert!(v.iter().any(|x| matches!(
            x,
            Violation::PowerBudget {
                user: User::Two,
                ..
            }
        )));
    }
}
