mod common;

use common::*;
use igsic::oracle::{grid_signaling, oracle_region, oracle_samples, GridSpec};
use igsic::rate::rates;
use igsic::region::{convex_hull, pareto_filter, ray_extent, sweep, sweep_pairs, uniform_alphas};
use igsic::{PowerConstraint, RatePair, Scheme, SolverConfig};
use rand::Rng;

fn small_grid() -> GridSpec {
    GridSpec {
        n_cov: 5,
        n_pcov: 5,
        n_theta: 8,
        include_boundary: true,
    }
}

#[test]
fn oracle_points_are_undominated_samples() {
    let ch = reference_channel();
    let pc = PowerConstraint::from_snr_db(0.0).unwrap();
    let grid = small_grid();
    let samples = oracle_samples(&ch, &pc, &grid).unwrap();
    let region = oracle_region(&ch, &pc, &grid).unwrap();
    for p in &region {
        assert!(!samples.iter().any(|q| q.rates.dominates(&p.rates)));
        assert_eq!(grid_signaling(&pc, &grid, p.cell), p.signaling);
        assert_eq!(rates(&ch, &p.signaling, pc.noise_var).unwrap(), p.rates);
    }
    for q in &samples {
        assert!(region.iter().any(|p| p.rates.covers(&q.rates)));
    }
    assert!(region.windows(2).all(|w| w[0].rates.r1 < w[1].rates.r1));
}

#[test]
fn refined_grid_never_shrinks_the_oracle_region() {
    let ch = reference_channel();
    let pc = PowerConstraint::from_snr_db(10.0).unwrap();
    let coarse = oracle_region(&ch, &pc, &small_grid()).unwrap();
    let fine = oracle_region(&ch, &pc, &small_grid().refined()).unwrap();
    for p in &coarse {
        assert!(fine.iter().any(|q| q.rates.covers(&p.rates)));
    }
}

#[test]
fn gauge_fixing_loses_nothing() {
    // Rotating both pseudo-covariances by a common phase keeps the rates, so
    // a grid with a real Ct1 sees every rate pair a full-phase grid sees.
    let ch = reference_channel();
    let pc = PowerConstraint::from_snr_db(0.0).unwrap();
    let grid = small_grid();
    let mut rng = rng(21);
    for p in oracle_samples(&ch, &pc, &grid).unwrap().iter().step_by(37) {
        let w = rng.gen_range(0.0..std::f64::consts::TAU);
        let r = rates(&ch, &p.signaling.rotated(w), pc.noise_var).unwrap();
        assert!((r.r1 - p.rates.r1).abs() < 1e-12 && (r.r2 - p.rates.r2).abs() < 1e-12);
    }
}

#[test]
fn proposed_points_dominate_proper_points_on_every_profile() {
    let mut rng = rng(22);
    let cfg = SolverConfig::default();
    for _ in 0..20 {
        let ch = random_channel(&mut rng);
        let pc = random_power(&mut rng);
        for pair in sweep_pairs(&ch, &pc, &uniform_alphas(21), &cfg) {
            let pair = pair.unwrap();
            assert_eq!(pair.proper.scheme, Scheme::ProperOptimal);
            assert_eq!(pair.improper.scheme, Scheme::ImproperProposed);
            assert!(pair.improper.r_total >= pair.proper.r_total);
        }
    }
}

#[test]
fn sweep_preserves_order_and_reports_bad_profiles() {
    let ch = reference_channel();
    let pc = PowerConstraint::from_snr_db(0.0).unwrap();
    let out = sweep(&ch, &pc, &[0.2, 1.5, 0.7], &SolverConfig::default());
    assert_eq!(out.len(), 3);
    assert_eq!(out[0].as_ref().unwrap().alpha, 0.2);
    assert!(matches!(out[1], Err(igsic::Error::InvalidProfile(a)) if a == 1.5));
    assert_eq!(out[2].as_ref().unwrap().alpha, 0.7);
}

#[test]
fn sweep_rates_follow_their_profile() {
    let ch = reference_channel();
    let pc = PowerConstraint::from_snr_db(10.0).unwrap();
    for p in sweep(&ch, &pc, &uniform_alphas(41), &SolverConfig::default()) {
        let p = p.unwrap();
        assert!(p.rates.r1 >= p.alpha * p.r_total - 1e-7);
        assert!(p.rates.r2 >= (1.0 - p.alpha) * p.r_total - 1e-7);
    }
}

#[test]
fn hull_covers_every_input_point() {
    let mut rng = rng(23);
    for _ in 0..100 {
        let pts: Vec<RatePair> = (0..30)
            .map(|_| RatePair::new(rng.gen_range(0.0..3.0), rng.gen_range(0.0..3.0)))
            .collect();
        let hull = convex_hull(&pts);
        assert!(hull
            .windows(2)
            .all(|w| w[0].r1 <= w[1].r1 && w[0].r2 >= w[1].r2));
        // Each input lies on or below the piecewise-linear envelope.
        for p in &pts {
            let seg = hull
                .windows(2)
                .find(|w| w[0].r1 <= p.r1 && p.r1 <= w[1].r1)
                .unwrap();
            let f = (p.r1 - seg[0].r1) / (seg[1].r1 - seg[0].r1);
            assert!(p.r2 <= seg[0].r2 + f * (seg[1].r2 - seg[0].r2) + 1e-12);
        }
        let front = pareto_filter(&pts);
        for h in &hull[1..hull.len() - 1] {
            assert!(front.contains(h));
        }
    }
}

#[test]
fn ray_extent_of_a_boundary_point() {
    let pts = [RatePair::new(1.0, 2.0), RatePair::new(2.0, 0.5)];
    assert!((ray_extent(&pts, 1.0 / 3.0) - 3.0).abs() < 1e-12);
    assert_eq!(ray_extent(&pts, 1.0), 2.0);
    assert_eq!(ray_extent(&pts, 0.0), 2.0);
}

#[test]
fn repeated_profiles_give_identical_points() {
    let ch = reference_channel();
    let pc = PowerConstraint::from_snr_db(0.0).unwrap();
    let out = sweep(&ch, &pc, &[0.3, 0.3, 0.3], &SolverConfig::default());
    let first = out[0].as_ref().unwrap();
    assert!(out.iter().all(|p| p.as_ref().unwrap() == first));
}

#[test]
fn time_sharing_hull_at_10db_spans_both_single_user_maxima() {
    let ch = reference_channel();
    let pc = PowerConstraint::from_snr_db(10.0).unwrap();
    let pts: Vec<RatePair> = sweep(&ch, &pc, &uniform_alphas(41), &SolverConfig::default())
        .into_iter()
        .map(|p| p.unwrap().rates)
        .collect();
    let hull = convex_hull(&pts);
    let h = ch.entries();
    let cap1 = (h[0].norm_sqr() * 10.0).ln_1p();
    let cap2 = (h[3].norm_sqr() * 10.0).ln_1p();
    assert!(hull.contains(&RatePair::new(0.0, cap2)) || (hull[0].r2 - cap2).abs() < 1e-12);
    assert!((hull.last().unwrap().r1 - cap1).abs() < 1e-12);
    assert!(hull.iter().any(|p| p.r1 > 0.0 && p.r2 > 0.0));
}
