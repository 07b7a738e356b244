//! Real quadratics: roots and sub-level sets on a bounded interval.

/// Closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then(|| Interval::new(lo, hi))
    }
}

/// Real roots of `a z^2 + b z + c = 0`, ascending.
///
/// `a` is treated as zero when `|a| < linear_tol`; the equation then falls
/// back to `b z + c = 0`, and to no roots when `|b| < linear_tol` too.
/// Discriminants that are negative by less than `1e-12` relative to the
/// magnitude of their terms are clamped to zero (double root).
pub fn real_roots(a: f64, b: f64, c: f64, linear_tol: f64) -> Vec<f64> {
    if a.abs() < linear_tol {
        if b.abs() < linear_tol {
            return Vec::new();
        }
        return vec![-c / b];
    }
    let mut disc = b * b - 4.0 * a * c;
    let scale = b * b + (4.0 * a * c).abs();
    if disc < 0.0 {
        if disc >= -1e-12 * scale {
            disc = 0.0;
        } else {
            return Vec::new();
        }
    }
    let sq = disc.sqrt();
    // Avoids cancellation between -b and the square root.
    let q = -0.5 * (b + b.signum() * sq);
    let mut roots = if q == 0.0 {
        vec![0.0, 0.0]
    } else {
        vec![q / a, c / q]
    };
    roots.sort_by(f64::total_cmp);
    roots
}

/// Points of `domain` where `a x^2 + b x + c <= 0`, as at most two disjoint
/// intervals in ascending order.
///
/// Roots are widened by `slack` (an absolute distance in `x`) so that
/// tangent contacts, which are exact feasibility boundaries, survive
/// rounding.
pub fn sublevel_set(a: f64, b: f64, c: f64, domain: Interval, slack: f64) -> Vec<Interval> {
    let scale = a.abs().max(b.abs()).max(c.abs());
    if scale == 0.0 {
        return vec![domain];
    }
    let (a, b, c) = (a / scale, b / scale, c / scale);
    let raw: Vec<Interval> = if a.abs() < 1e-15 {
        if b.abs() < 1e-15 {
            if c <= 0.0 {
                vec![domain]
            } else {
                vec![]
            }
        } else if b > 0.0 {
            vec![Interval::new(f64::NEG_INFINITY, -c / b + slack)]
        } else {
            vec![Interval::new(-c / b - slack, f64::INFINITY)]
        }
    } else {
        let roots = real_roots(a, b, c, 0.0);
        match (a > 0.0, roots.as_slice()) {
            (true, [r1, r2]) => vec![Interval::new(r1 - slack, r2 + slack)],
            (true, _) => vec![],
            (false, [r1, r2]) => vec![
                Interval::new(f64::NEG_INFINITY, r1 + slack),
                Interval::new(r2 - slack, f64::INFINITY),
            ],
            (false, _) => vec![Interval::new(f64::NEG_INFINITY, f64::INFINITY)],
        }
    };
    let mut out: Vec<Interval> = raw.iter().filter_map(|iv| iv.intersect(&domain)).collect();
    if out.len() == 2 && out[0].hi >= out[1].lo {
        out = vec![Interval::new(out[0].lo, out[1].hi)];
    }
    out
}

/// Intersection of two ascending interval lists.
pub fn intersect_sets(a: &[Interval], b: &[Interval]) -> Vec<Interval> {
    let mut out = Vec::new();
    for x in a {
        for y in b {
            if let Some(iv) = x.intersect(y) {
                out.push(iv);
            }
        }
    }
    out.sort_by(|p, q| p.lo.total_cmp(&q.lo));
    out
}
