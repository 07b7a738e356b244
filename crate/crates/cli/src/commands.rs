use igsic::oracle::oracle_region;
use igsic::rate::{rates, validate};
use igsic::region::{ray_extent, sweep_pairs, BoundaryPoint, ProfilePoints};
use igsic::{Complex64, Error, RatePair, Scheme, Signaling};

use crate::config::{Experiment, RateUnits};
use crate::format::{round_g9, Gap, Report, Row, Summary};
use crate::CliError;

/// Rounds a pseudo-covariance to nine digits without letting its magnitude
/// end up above the (rounded) covariance, so printed rows stay valid inputs.
fn printable_pcov(ct: Complex64, c: f64) -> (f64, f64) {
    let mut z = ct;
    for _ in 0..8 {
        let (re, im) = (round_g9(z.re), round_g9(z.im));
        if Complex64::new(re, im).norm() <= c {
            return (re, im);
        }
        z *= 1.0 - 2e-9;
    }
    (round_g9(z.re), round_g9(z.im))
}

fn row(
    alpha: f64,
    scheme: Scheme,
    r_total: f64,
    rates: RatePair,
    sig: &Signaling,
    units: RateUnits,
) -> Row {
    let (c1, c2) = (round_g9(sig.c1), round_g9(sig.c2));
    let (ct1_re, ct1_im) = printable_pcov(sig.ct1, c1);
    let (ct2_re, ct2_im) = printable_pcov(sig.ct2, c2);
    Row {
        alpha: round_g9(alpha),
        scheme: scheme.as_str().to_string(),
        r_total: round_g9(units.scale(r_total)),
        r1: round_g9(units.scale(rates.r1)),
        r2: round_g9(units.scale(rates.r2)),
        c_x1: c1,
        c_x2: c2,
        ct_x1_re: ct1_re,
        ct_x1_im: ct1_im,
        ct_x2_re: ct2_re,
        ct_x2_im: ct2_im,
    }
}

fn point_row(p: &BoundaryPoint, units: RateUnits) -> Row {
    row(p.alpha, p.scheme, p.r_total, p.rates, &p.signaling, units)
}

fn units_name(units: RateUnits) -> &'static str {
    match units {
        RateUnits::Nats => "nats",
        RateUnits::Bits => "bits",
    }
}

struct Sweep {
    pairs: Vec<ProfilePoints>,
    gaps: Vec<Gap>,
    non_convergence: bool,
}

fn run_sweep(exp: &Experiment) -> Sweep {
    let mut out = Sweep {
        pairs: Vec::new(),
        gaps: Vec::new(),
        non_convergence: false,
    };
    for (alpha, result) in exp.alphas.iter().zip(sweep_pairs(
        &exp.channel,
        &exp.power,
        &exp.alphas,
        &exp.solver,
    )) {
        match result {
            Ok(p) => out.pairs.push(p),
            Err(e) => {
                out.non_convergence |= matches!(e, Error::NonConvergence { .. });
                out.gaps.push(Gap {
                    alpha: round_g9(*alpha),
                    error: e.to_string(),
                });
            }
        }
    }
    out
}

/// What a command produced and whether a solver failure should be reported
/// through the exit status once the report is written.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Report,
    pub non_convergence: bool,
}

/// Proper and improper boundary points for every profile.
pub fn cmd_region(exp: &Experiment) -> Outcome {
    let units = exp.output.rate_units;
    let sweep = run_sweep(exp);
    let rows = sweep
        .pairs
        .iter()
        .flat_map(|p| [point_row(&p.proper, units), point_row(&p.improper, units)])
        .collect();
    Outcome {
        report: Report {
            rate_units: units_name(units),
            rows,
            gaps: sweep.gaps,
            summary: None,
        },
        non_convergence: sweep.non_convergence,
    }
}

/// [`cmd_region`] plus the oracle Pareto points and a summary comparing the
/// three schemes.
pub fn cmd_compare(exp: &Experiment) -> Result<Outcome, CliError> {
    let units = exp.output.rate_units;
    let sweep = run_sweep(exp);
    let oracle = oracle_region(&exp.channel, &exp.power, &exp.grid)
        .map_err(|e| CliError::Config(e.to_string()))?;
    let oracle_pairs: Vec<RatePair> = oracle.iter().map(|p| p.rates).collect();

    let mut rows: Vec<Row> = sweep
        .pairs
        .iter()
        .flat_map(|p| [point_row(&p.proper, units), point_row(&p.improper, units)])
        .collect();
    for p in &oracle {
        // An oracle point lies on the profile through itself.
        let total = p.rates.sum();
        let alpha = if total > 0.0 { p.rates.r1 / total } else { 0.0 };
        rows.push(row(
            alpha,
            Scheme::Oracle,
            total,
            p.rates,
            &p.signaling,
            units,
        ));
    }

    let improvements: Vec<f64> = sweep
        .pairs
        .iter()
        .map(|p| p.improper.r_total - p.proper.r_total)
        .collect();
    let shortfall = sweep
        .pairs
        .iter()
        .map(|p| ray_extent(&oracle_pairs, p.improper.alpha) - p.improper.r_total)
        .fold(0.0, f64::max);
    let summary = if improvements.is_empty() {
        None
    } else {
        Some(Summary {
            max_improvement: round_g9(
                units.scale(
                    improvements
                        .iter()
                        .copied()
                        .fold(f64::NEG_INFINITY, f64::max),
                ),
            ),
            mean_improvement: round_g9(
                units.scale(improvements.iter().sum::<f64>() / improvements.len() as f64),
            ),
            max_shortfall: round_g9(units.scale(shortfall)),
        })
    };
    Ok(Outcome {
        report: Report {
            rate_units: units_name(units),
            rows,
            gaps: sweep.gaps,
            summary,
        },
        non_convergence: sweep.non_convergence,
    })
}

/// Rates of an explicit signaling under the experiment's channel, in the
/// configured units. Every violated validity condition is reported.
pub fn cmd_rate(exp: &Experiment, sig: &Signaling) -> Result<RatePair, CliError> {
    let violations = validate(sig, &exp.power);
    if !violations.is_empty() {
        return Err(CliError::InvalidSignaling(
            violations.iter().map(ToString::to_string).collect(),
        ));
    }
    let r = rates(&exp.channel, sig, exp.power.noise_var)
        .map_err(|e| CliError::Config(e.to_string()))?;
    let units = exp.output.rate_units;
    Ok(RatePair::new(units.scale(r.r1), units.scale(r.r2)))
}
