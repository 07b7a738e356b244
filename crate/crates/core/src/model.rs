//! Channel, power budget and signaling descriptions.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// One of the two transmitter/receiver pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum User {
    One,
    Two,
}

impl User {
    pub const BOTH: [User; 2] = [User::One, User::Two];

    /// The interfering user.
    pub fn other(self) -> User {
        match self {
            User::One => User::Two,
            User::Two => User::One,
        }
    }

    pub fn index(self) -> usize {
        match self {
            User::One => 0,
            User::Two => 1,
        }
    }
}

/// The 2x2 complex gain matrix; entry `(r, t)` is the gain from transmitter
/// `t` to receiver `r`. Magnitudes and phases are cached on construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Channel {
    h: [[Complex64; 2]; 2],
    mag: [[f64; 2]; 2],
    phase: [[f64; 2]; 2],
}

impl Channel {
    /// Builds a channel from `h11, h12, h21, h22`.
    ///
    /// All entries must be finite and both direct links must be nonzero.
    pub fn new(h11: Complex64, h12: Complex64, h21: Complex64, h22: Complex64) -> Result<Self> {
        let h = [[h11, h12], [h21, h22]];
        for (r, row) in h.iter().enumerate() {
            for (t, v) in row.iter().enumerate() {
                if !v.re.is_finite() || !v.im.is_finite() {
                    return Err(Error::InvalidChannel(format!(
                        "h{}{} is not finite",
                        r + 1,
                        t + 1
                    )));
                }
            }
        }
        if h11.norm() == 0.0 {
            return Err(Error::InvalidChannel("direct gain h11 is zero".into()));
        }
        if h22.norm() == 0.0 {
            return Err(Error::InvalidChannel("direct gain h22 is zero".into()));
        }
        let mag = h.map(|row| row.map(|v| v.norm()));
        let phase = h.map(|row| row.map(|v| v.im.atan2(v.re)));
        Ok(Self { h, mag, phase })
    }

    /// Builds a channel from `(re, im)` pairs in row-major order.
    pub fn from_parts(parts: [(f64, f64); 4]) -> Result<Self> {
        let [a, b, c, d] = parts.map(|(re, im)| Complex64::new(re, im));
        Self::new(a, b, c, d)
    }

    /// Real, nonnegative gains (all phases zero).
    pub fn real(h11: f64, h12: f64, h21: f64, h22: f64) -> Result<Self> {
        Self::from_parts([(h11, 0.0), (h12, 0.0), (h21, 0.0), (h22, 0.0)])
    }

    /// Gain from transmitter `t` to receiver `r`.
    pub fn h(&self, r: User, t: User) -> Complex64 {
        self.h[r.index()][t.index()]
    }

    pub fn mag(&self, r: User, t: User) -> f64 {
        self.mag[r.index()][t.index()]
    }

    /// `|h_rt|^2`.
    pub fn gain(&self, r: User, t: User) -> f64 {
        self.h(r, t).norm_sqr()
    }

    /// Phase of `h_rt` in `(-pi, pi]`.
    pub fn phase(&self, r: User, t: User) -> f64 {
        self.phase[r.index()][t.index()]
    }

    pub fn entries(&self) -> [Complex64; 4] {
        [self.h[0][0], self.h[0][1], self.h[1][0], self.h[1][1]]
    }

    /// True when at least one cross link is exactly zero.
    pub fn is_decoupled(&self) -> bool {
        self.mag[0][1] == 0.0 || self.mag[1][0] == 0.0
    }

    /// The same channel with the user labels exchanged.
    pub fn swapped(&self) -> Channel {
        let [a, b, c, d] = self.entries();
        Channel::new(d, c, b, a).expect("swapping preserves validity")
    }
}

/// Per-user power budgets and the common receiver noise variance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerConstraint {
    pub p1: f64,
    pub p2: f64,
    pub noise_var: f64,
}

impl PowerConstraint {
    pub fn new(p1: f64, p2: f64, noise_var: f64) -> Result<Self> {
        for (name, v) in [("P1", p1), ("P2", p2), ("noise variance", noise_var)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidPower(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(Self { p1, p2, noise_var })
    }

    /// Equal budgets `P = 10^(snr_db/10)` with unit noise variance.
    pub fn from_snr_db(snr_db: f64) -> Result<Self> {
        let p = 10f64.powf(snr_db / 10.0);
        Self::new(p, p, 1.0)
    }

    pub fn power(&self, u: User) -> f64 {
        match u {
            User::One => self.p1,
            User::Two => self.p2,
        }
    }
}

/// Second-order description of both inputs: powers `C_x1, C_x2` and
/// pseudo-covariances `Ct_x1 = E[x1 x1], Ct_x2 = E[x2 x2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Signaling {
    pub c1: f64,
    pub c2: f64,
    pub ct1: Complex64,
    pub ct2: Complex64,
}

impl Signaling {
    pub fn new(c1: f64, c2: f64, ct1: Complex64, ct2: Complex64) -> Self {
        Self { c1, c2, ct1, ct2 }
    }

    /// Circularly symmetric inputs with the given powers.
    pub fn proper(c1: f64, c2: f64) -> Self {
        Self::new(c1, c2, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
    }

    pub fn cov(&self, u: User) -> f64 {
        match u {
            User::One => self.c1,
            User::Two => self.c2,
        }
    }

    pub fn pcov(&self, u: User) -> Complex64 {
        match u {
            User::One => self.ct1,
            User::Two => self.ct2,
        }
    }

    /// Multiplies both pseudo-covariances by `e^{j omega}`. Rates are unchanged.
    pub fn rotated(&self, omega: f64) -> Self {
        let rot = Complex64::from_polar(1.0, omega);
        Self::new(self.c1, self.c2, self.ct1 * rot, self.ct2 * rot)
    }

    pub fn is_proper(&self) -> bool {
        self.ct1 == Complex64::new(0.0, 0.0) && self.ct2 == Complex64::new(0.0, 0.0)
    }
}

/// Covariance `E[z z*]` and pseudo-covariance `E[z z]` of a scalar signal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondOrderStats {
    pub cov: f64,
    pub pcov: Complex64,
}

impl SecondOrderStats {
    /// `1 - |pcov|^2 / cov^2`, the improperness factor entering the entropy.
    pub fn circularity_factor(&self) -> f64 {
        let rho = self.pcov.norm() / self.cov;
        (1.0 - rho) * (1.0 + rho)
    }
}

/// An achievable rate pair, in nats per channel use.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RatePair {
    pub r1: f64,
    pub r2: f64,
}

impl RatePair {
    pub fn new(r1: f64, r2: f64) -> Self {
        Self { r1, r2 }
    }

    pub fn get(&self, u: User) -> f64 {
        match u {
            User::One => self.r1,
            User::Two => self.r2,
        }
    }

    pub fn sum(&self) -> f64 {
        self.r1 + self.r2
    }

    /// Weakly greater in both components.
    pub fn covers(&self, other: &RatePair) -> bool {
        self.r1 >= other.r1 && self.r2 >= other.r2
    }

    /// Pareto dominance: covers `other` and differs from it.
    pub fn dominates(&self, other: &RatePair) -> bool {
        self.covers(other) && self != other
    }
}

/// Maps an angle to `[0, 2pi)`. Values that round up to `2pi` map to 0.
pub fn wrap_angle(theta: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let w = theta.rem_euclid(two_pi);
    if w >= two_pi - 1e-12 {
        0.0
    } else {
        w
    }
}

/// Distance between two angles on the circle.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    let d = wrap_angle(a - b);
    d.min(2.0 * PI - d)
}
