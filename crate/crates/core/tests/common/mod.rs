#![allow(dead_code)]

use igsic::improper::solve_p1b;
use igsic::proper::solve_p1a;
use igsic::{Channel, Complex64, PowerConstraint, ProperSolution, Signaling, SolverConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Fixed complex 2x2 channel shared by the region tests.
pub fn reference_channel() -> Channel {
    Channel::from_parts([
        (1.5718, -1.2863),
        (-1.2984, 0.7032),
        (-0.2847, 0.6700),
        (0.7802, -0.6151),
    ])
    .unwrap()
}

pub fn random_gain(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(
        rng.gen_range(0.2..2.0),
        rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI),
    )
}

pub fn random_channel(rng: &mut ChaCha8Rng) -> Channel {
    Channel::new(
        random_gain(rng),
        random_gain(rng),
        random_gain(rng),
        random_gain(rng),
    )
    .unwrap()
}

pub fn random_power(rng: &mut ChaCha8Rng) -> PowerConstraint {
    PowerConstraint::new(
        rng.gen_range(0.1..10.0),
        rng.gen_range(0.1..10.0),
        rng.gen_range(0.5..2.0),
    )
    .unwrap()
}

/// A valid signaling inside the budget, with pseudo-covariances strictly
/// inside their disks.
pub fn random_signaling(rng: &mut ChaCha8Rng, pc: &PowerConstraint) -> Signaling {
    let c1 = rng.gen_range(0.0..pc.p1);
    let c2 = rng.gen_range(0.0..pc.p2);
    let ct1 = Complex64::from_polar(c1 * rng.gen_range(0.0..0.999), rng.gen_range(-3.2..3.2));
    let ct2 = Complex64::from_polar(c2 * rng.gen_range(0.0..0.999), rng.gen_range(-3.2..3.2));
    Signaling::new(c1, c2, ct1, ct2)
}

/// A random profile together with both stage solutions.
pub struct Instance {
    pub ch: Channel,
    pub pc: PowerConstraint,
    pub alpha: f64,
    pub proper: ProperSolution,
    /// Improper sum rate at the proper powers.
    pub r_improper: f64,
}

pub fn random_instance(rng: &mut ChaCha8Rng) -> Instance {
    let cfg = SolverConfig::default();
    let ch = random_channel(rng);
    let pc = random_power(rng);
    let alpha = rng.gen_range(0.05..0.95);
    let proper = solve_p1a(&ch, &pc, alpha, &cfg).unwrap();
    let r_improper = solve_p1b(&ch, &pc, &proper, &cfg).unwrap().rate;
    Instance {
        ch,
        pc,
        alpha,
        proper,
        r_improper,
    }
}

/// Rate of user `r` (1 or 2) from the real-composite representation: the
/// entropy of a complex scalar with covariance `c` and pseudo-covariance `ct`
/// is that of the 2-D real vector `(re, im)`.
pub fn composite_rate(ch: &Channel, sig: &Signaling, noise_var: f64, r: usize) -> f64 {
    let h = ch.entries();
    let (own, cross) = if r == 1 { (h[0], h[1]) } else { (h[3], h[2]) };
    let (c_own, c_cross, ct_own, ct_cross) = if r == 1 {
        (sig.c1, sig.c2, sig.ct1, sig.ct2)
    } else {
        (sig.c2, sig.c1, sig.ct2, sig.ct1)
    };
    let logdet = |c: f64, ct: Complex64| {
        let xx = 0.5 * (c + ct.re);
        let yy = 0.5 * (c - ct.re);
        let xy = 0.5 * ct.im;
        (xx * yy - xy * xy).ln()
    };
    let cy = own.norm_sqr() * c_own + cross.norm_sqr() * c_cross + noise_var;
    let cty = own * own * ct_own + cross * cross * ct_cross;
    let cs = cross.norm_sqr() * c_cross + noise_var;
    let cts = cross * cross * ct_cross;
    0.5 * (logdet(cy, cty) - logdet(cs, cts))
}
