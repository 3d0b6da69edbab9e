//! Fitting scoring rates to a market distribution.
//!
//! Calibration matches the first two moments. Writing `d = lambda_a - lambda_b`
//! and `s = lambda_a + lambda_b`, the residuals are `D_E = M - d` and
//! `D_V = V - s`, where `M` is the market mean net of the current lead and `V`
//! the market variance. Nonnegative rates are exactly the cone `s >= |d|`, so
//! minimizing `D_E^2 + D_V^2` is a Euclidean projection of `(M, V)` onto that
//! cone and has a closed form.

use alloc::format;
use alloc::vec::Vec;

use crate::dist::ScoreDiffDist;
use crate::error::{Error, Result};
use crate::inflation::{inflate, InflationModel};
use crate::odds::{adjust_for_state, market_score_diff, GameState, OddsMatrix};
use crate::skellam::{outcome_probs, skellam_dist, OutcomeProbs, ScoringRates, DEFAULT_TAIL_EPS};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CalibrationResult {
    pub rates: ScoringRates,
    /// `D_E`, market mean minus model mean.
    pub residual_mean: f64,
    /// `D_V`, market variance minus model variance.
    pub residual_var: f64,
    pub objective: f64,
    pub implied_vol: f64,
}

/// Projects `(target_diff, target_sum)` onto `{(d, s) : s >= |d|}`.
fn project_onto_cone(target_diff: f64, target_sum: f64) -> (f64, f64) {
    let abs_diff = target_diff.abs();
    if target_sum >= abs_diff {
        return (target_diff, target_sum);
    }
    let edge = 0.5 * (abs_diff + target_sum);
    if edge > 0.0 {
        (libm::copysign(edge, target_diff), edge)
    } else {
        (0.0, 0.0)
    }
}

/// Moment-matching fit of the remaining-game rates to `dist`, the market
/// distribution of the final difference, given the current `lead`.
pub fn calibrate(dist: &ScoreDiffDist, lead: i32) -> CalibrationResult {
    let moments = dist.moments();
    let target_diff = moments.mean - lead as f64;
    let target_sum = moments.variance;
    let (d, s) = project_onto_cone(target_diff, target_sum);
    // clamp away -0.0 and rounding below zero
    let lambda_a = (0.5 * (s + d)).max(0.0);
    let lambda_b = (0.5 * (s - d)).max(0.0);
    let rates = ScoringRates::new(lambda_a, lambda_b).expect("projection yields nonnegative rates");
    let residual_mean = moments.mean - (lead as f64 + (lambda_a - lambda_b));
    let residual_var = moments.variance - (lambda_a + lambda_b);
    CalibrationResult {
        rates,
        residual_mean,
        residual_var,
        objective: residual_mean * residual_mean + residual_var * residual_var,
        implied_vol: implied_volatility(rates),
    }
}

/// `sqrt(lambda_a + lambda_b)`: standard deviation of the remaining difference.
pub fn implied_volatility(rates: ScoringRates) -> f64 {
    libm::sqrt(rates.sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InflationKind {
    TypeOne,
    TypeTwo,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InflationFit {
    pub model: InflationModel,
    /// Sum of squared differences to the market over the market support.
    pub sse: f64,
}

const GOLDEN_TOL: f64 = 1e-10;
const TYPE_ONE_MAX: f64 = 0.5;
const TYPE_TWO_MAX: f64 = 5.0;

fn golden_section<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let inv_phi = 0.5 * (libm::sqrt(5.0) - 1.0);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > GOLDEN_TOL {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}

/// Chooses the inflation factor that brings the inflated Skellam model
/// closest to `market` in squared error over the market support.
pub fn fit_inflation(market: &ScoreDiffDist, base_rates: ScoringRates, kind: InflationKind) -> Result<InflationFit> {
    let base = skellam_dist(base_rates, DEFAULT_TAIL_EPS);
    let p0 = base.prob(0);
    if !(p0 > 0.0 && p0 < 1.0) {
        return Err(Error::degenerate(format!("base draw probability {p0} leaves nothing to inflate")));
    }
    let sse = |model: InflationModel| -> f64 {
        match inflate(&base, model) {
            Ok(fitted) => market.iter().map(|(k, p)| (fitted.prob(k) - p) * (fitted.prob(k) - p)).sum(),
            Err(_) => f64::INFINITY,
        }
    };
    let make = |x: f64| match kind {
        InflationKind::TypeOne => InflationModel::TypeOne { p: x },
        InflationKind::TypeTwo => InflationModel::TypeTwo { theta: x },
    };
    let (lo, hi) = match kind {
        InflationKind::TypeOne => (0.0, TYPE_ONE_MAX),
        // gamma < 1 requires theta < (1 - P0) / P0
        InflationKind::TypeTwo => (0.0, TYPE_TWO_MAX.min((1.0 - p0) / p0 * (1.0 - 1e-12))),
    };
    // type one is undefined at exactly p = 0; the search never evaluates the endpoints
    let x = golden_section(|x| sse(make(x)), lo, hi);
    let model = make(x);
    Ok(InflationFit { model, sse: sse(model) })
}

/// One market observation during a game.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub state: GameState,
    pub odds: OddsMatrix,
}

/// Calibration of a single snapshot on its sub-game.
#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotFit {
    /// Market distribution of the remaining difference.
    pub market: ScoreDiffDist,
    pub vig: f64,
    pub result: CalibrationResult,
}

/// Shifts the quotes by the current score and calibrates the remaining
/// difference with lead 0.
pub fn calibrate_snapshot(odds: &OddsMatrix, state: &GameState) -> Result<SnapshotFit> {
    let sub_game = adjust_for_state(odds, state)?;
    let (market, vig) = market_score_diff(&sub_game)?;
    let result = calibrate(&market, 0);
    Ok(SnapshotFit { market, vig, result })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimelinePoint {
    pub t: f64,
    pub state: GameState,
    pub result: CalibrationResult,
    /// `(lambda_a / (1 - t), lambda_b / (1 - t))`, only for `t < 1`.
    pub rates_per_remaining: Option<(f64, f64)>,
}

impl TimelinePoint {
    /// Final win/draw/lose probabilities for team A at this point.
    pub fn outcome_probs(&self) -> OutcomeProbs {
        outcome_probs(self.result.rates, self.state.lead())
    }
}

fn validate_order(snapshots: &[Snapshot]) -> Result<()> {
    for (index, pair) in snapshots.windows(2).enumerate() {
        let (prev, next) = (&pair[0].state, &pair[1].state);
        let index = index + 1;
        if next.t() < prev.t() {
            return Err(Error::Snapshot { index, reason: format!("time {} precedes {}", next.t(), prev.t()) });
        }
        if next.score_a() < prev.score_a() || next.score_b() < prev.score_b() {
            return Err(Error::Snapshot {
                index,
                reason: format!(
                    "score {}-{} decreases from {}-{}",
                    next.score_a(),
                    next.score_b(),
                    prev.score_a(),
                    prev.score_b()
                ),
            });
        }
    }
    Ok(())
}

/// Calibrates every snapshot of a game. At `t = 1` nothing is left to play
/// and the rates are zero.
pub fn calibrate_timeline(snapshots: &[Snapshot]) -> Result<Vec<TimelinePoint>> {
    validate_order(snapshots)?;
    snapshots
        .iter()
        .enumerate()
        .map(|(index, snap)| {
            let t = snap.state.t();
            if t >= 1.0 {
                let rates = ScoringRates::zero();
                let result = CalibrationResult {
                    rates,
                    residual_mean: 0.0,
                    residual_var: 0.0,
                    objective: 0.0,
                    implied_vol: 0.0,
                };
                return Ok(TimelinePoint { t, state: snap.state, result, rates_per_remaining: None });
            }
            let fit = calibrate_snapshot(&snap.odds, &snap.state).map_err(|e| match e {
                Error::EmptySubGame => Error::Snapshot { index, reason: format!("{e}") },
                other => other,
            })?;
            let rates = fit.result.rates;
            let remaining = 1.0 - t;
            Ok(TimelinePoint {
                t,
                state: snap.state,
                result: fit.result,
                rates_per_remaining: Some((rates.lambda_a() / remaining, rates.lambda_b() / remaining)),
            })
        })
        .collect()
}
