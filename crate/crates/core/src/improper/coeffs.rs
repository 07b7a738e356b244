use crate::error::{Error, Result};
use crate::model::{Channel, PowerConstraint, Signaling, User};
use crate::rate::{interference_stats, received_stats};

/// Coefficients of the pseudo-covariance feasibility problem at a trial sum
/// rate `R`, together with the received and interference-plus-noise powers
/// at the fixed covariances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PbCoefficients {
    pub a1: f64,
    pub b1: f64,
    pub a2: f64,
    pub b2: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub cy1: f64,
    pub cs1: f64,
    pub cy2: f64,
    pub cs2: f64,
}

impl PbCoefficients {
    pub fn a(&self, u: User) -> f64 {
        match u {
            User::One => self.a1,
            User::Two => self.a2,
        }
    }

    pub fn b(&self, u: User) -> f64 {
        match u {
            User::One => self.b1,
            User::Two => self.b2,
        }
    }

    /// The coefficients seen after exchanging the user labels.
    pub fn swapped(&self) -> Self {
        Self {
            a1: self.a2,
            b1: self.b2,
            a2: self.a1,
            b2: self.b1,
            beta1: self.beta2,
            beta2: self.beta1,
            cy1: self.cy2,
            cs1: self.cs2,
            cy2: self.cy1,
            cs2: self.cs1,
        }
    }
}

/// Builds the coefficients for trial rate `R >= r*` at covariances `(c1, c2)`.
///
/// With `beta_k = exp(2 share_k (R - r*))`, `share_1 = alpha`,
/// `share_2 = 1 - alpha`:
/// `a1 = C_s1^2 / (beta1 C_y1^2 |h12|^4)` and
/// `b1 = (1 - 1/beta1) C_s1^2 / |h12|^4`; user 2 is symmetric with `h21`.
pub fn pb_coeffs(
    ch: &Channel,
    pc: &PowerConstraint,
    c1: f64,
    c2: f64,
    r_star: f64,
    alpha: f64,
    rate: f64,
) -> Result<PbCoefficients> {
    if ch.mag(User::One, User::Two) == 0.0 {
        return Err(Error::CrossGainZero("12"));
    }
    if ch.mag(User::Two, User::One) == 0.0 {
        return Err(Error::CrossGainZero("21"));
    }
    let sig = Signaling::proper(c1, c2);
    let excess = (rate - r_star).max(0.0);
    let mut out = [(0.0, 0.0, 0.0, 0.0, 0.0); 2];
    for (u, share) in [(User::One, alpha), (User::Two, 1.0 - alpha)] {
        let cy = received_stats(ch, &sig, pc.noise_var, u).cov;
        let cs = interference_stats(ch, &sig, pc.noise_var, u).cov;
        let cross4 = ch.gain(u, u.other()).powi(2);
        let exponent = 2.0 * share * excess;
        let beta = exponent.exp();
        // 1 - 1/beta without cancellation for small excess.
        let one_minus_inv = -(-exponent).exp_m1();
        let a = cs * cs / (beta * cy * cy * cross4);
        let b = one_minus_inv * cs * cs / cross4;
        out[u.index()] = (a, b, beta, cy, cs);
    }
    let [(a1, b1, beta1, cy1, cs1), (a2, b2, beta2, cy2, cs2)] = out;
    Ok(PbCoefficients {
        a1,
        b1,
        a2,
        b2,
        beta1,
        beta2,
        cy1,
        cs1,
        cy2,
        cs2,
    })
}
