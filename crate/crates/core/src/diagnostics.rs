//! Model-adequacy reports: market vs model tables, Q-Q pairs of log odds,
//! win/draw curves at a fixed rate product, and bucketed win frequencies.

use alloc::vec::Vec;

use crate::dist::ScoreDiffDist;
use crate::error::{Error, Result};
use crate::inflation::InflationModel;
use crate::skellam::{outcome_probs, skellam_dist, OutcomeProbs, ScoringRates, DEFAULT_TAIL_EPS};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonRow {
    pub score_diff: i32,
    pub market_prob: f64,
    pub model_prob: f64,
}

/// Market probabilities next to Skellam probabilities. The model is
/// restricted to the market's support and renormalized there, so both
/// columns are distributions over the same outcomes.
pub fn compare(market: &ScoreDiffDist, rates: ScoringRates) -> Result<Vec<ComparisonRow>> {
    let model = skellam_dist(rates, DEFAULT_TAIL_EPS);
    let (lo, hi) = (market.k_min(), market.k_max());
    let on_market = model.restricted(lo, hi)?;
    Ok((lo..=hi)
        .map(|k| ComparisonRow { score_diff: k, market_prob: market.prob(k), model_prob: on_market.prob(k) })
        .collect())
}

/// Mean of `|market - model|` over the rows.
pub fn mean_abs_error(rows: &[ComparisonRow]) -> f64 {
    if rows.is_empty() {
        return 0.0;
    }
    rows.iter().map(|r| (r.market_prob - r.model_prob).abs()).sum::<f64>() / rows.len() as f64
}

#[derive(Debug, Clone, PartialEq)]
pub struct QqReport {
    /// `(market quantile, model quantile)`, ascending.
    pub points: Vec<(f64, f64)>,
    /// Pairs dropped because a probability was 0 or 1.
    pub excluded: usize,
}

/// Log fractional odds `ln((1 - p) / p)`.
pub fn log_odds(p: f64) -> f64 {
    libm::log((1.0 - p) / p)
}

/// Pairs the order statistics of market and model log odds.
pub fn qq_log_odds(pairs: &[(f64, f64)]) -> QqReport {
    let usable = |p: f64| p > 0.0 && p < 1.0;
    let (mut market, mut model): (Vec<f64>, Vec<f64>) = pairs
        .iter()
        .filter(|(m, s)| usable(*m) && usable(*s))
        .map(|(m, s)| (log_odds(*m), log_odds(*s)))
        .unzip();
    let excluded = pairs.len() - market.len();
    market.sort_by(f64::total_cmp);
    model.sort_by(f64::total_cmp);
    QqReport { points: market.into_iter().zip(model).collect(), excluded }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub ratio: f64,
    pub win: f64,
    pub draw: f64,
}

/// Number of ratio points in the default curve sweep.
pub const CURVE_POINTS: usize = 401;
const CURVE_WIN_LO: f64 = 0.05;
const CURVE_WIN_HI: f64 = 0.85;

/// Outcome probabilities with `lambda_a = sqrt(product * ratio)` and
/// `lambda_b = sqrt(product / ratio)`, after inflation.
pub fn outcomes_at_ratio(product: f64, ratio: f64, inflation: InflationModel) -> Result<OutcomeProbs> {
    if !product.is_finite() || !ratio.is_finite() || product <= 0.0 || ratio <= 0.0 {
        return Err(Error::domain("rate product and ratio must be positive and finite"));
    }
    let rates = ScoringRates::new(libm::sqrt(product * ratio), libm::sqrt(product / ratio))?;
    inflation.apply_outcomes(outcome_probs(rates, 0))
}

/// `ln(ratio)` at which the win probability reaches `target`.
fn solve_log_ratio(product: f64, inflation: InflationModel, target: f64) -> Result<f64> {
    let win = |x: f64| outcomes_at_ratio(product, libm::exp(x), inflation).map(|o| o.win);
    let (mut lo, mut hi) = (-1.0, 1.0);
    while win(lo)? > target {
        lo *= 2.0;
        if lo < -64.0 {
            return Err(Error::domain("win probability cannot be pushed low enough"));
        }
    }
    while win(hi)? < target {
        hi *= 2.0;
        if hi > 64.0 {
            return Err(Error::domain("win probability cannot be pushed high enough"));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if win(mid)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-13 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Win and draw probabilities along a log-spaced sweep of the rate ratio at
/// a fixed rate product, spanning win probabilities 0.05 to 0.85.
pub fn win_draw_curve(product: f64, inflation: InflationModel, n_points: usize) -> Result<Vec<CurvePoint>> {
    if n_points < 2 {
        return Err(Error::domain("a curve needs at least two points"));
    }
    if !product.is_finite() || product <= 0.0 {
        return Err(Error::domain("rate product must be positive and finite"));
    }
    let lo = solve_log_ratio(product, inflation, CURVE_WIN_LO)?;
    let hi = solve_log_ratio(product, inflation, CURVE_WIN_HI)?;
    let step = (hi - lo) / (n_points - 1) as f64;
    let mut curve = (0..n_points)
        .map(|i| {
            let ratio = libm::exp(lo + step * i as f64);
            outcomes_at_ratio(product, ratio, inflation).map(|o| CurvePoint { ratio, win: o.win, draw: o.draw })
        })
        .collect::<Result<Vec<_>>>()?;
    curve.sort_by(|a, b| a.win.total_cmp(&b.win));
    Ok(curve)
}

/// Slack allowed past either end of a curve, covering the endpoint solve.
const CURVE_END_SLACK: f64 = 1e-9;

/// Linear interpolation of draw probability along a curve sorted by win.
/// `None` when `win` lies outside the curve.
pub fn draw_at_win(curve: &[CurvePoint], win: f64) -> Option<f64> {
    let (first, last) = (curve.first()?, curve.last()?);
    if win < first.win {
        return (first.win - win <= CURVE_END_SLACK).then_some(first.draw);
    }
    if win > last.win {
        return (win - last.win <= CURVE_END_SLACK).then_some(last.draw);
    }
    let idx = curve.partition_point(|p| p.win < win);
    if idx == 0 {
        return Some(first.draw);
    }
    let right = &curve[idx];
    let left = &curve[idx - 1];
    if right.win == left.win {
        return Some(right.draw);
    }
    let w = (win - left.win) / (right.win - left.win);
    Some(left.draw + w * (right.draw - left.draw))
}

/// Number of forecast buckets, `(0.05, 0.10]` through `(0.80, 0.85]`.
pub const BUCKETS: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct BucketReport {
    /// `BUCKETS + 1` increasing edges from 0.05 to 0.85.
    pub bucket_edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub wins: Vec<u64>,
    /// Empirical win frequency; `None` for empty buckets.
    pub win_frequency: Vec<Option<f64>>,
    /// Games whose forecast falls outside `(0.05, 0.85]`.
    pub overflow: u64,
}

fn edge(i: usize) -> f64 {
    (i + 1) as f64 / 20.0
}

fn bucket_of(p: f64) -> Option<usize> {
    if !(p > edge(0) && p <= edge(BUCKETS)) {
        return None;
    }
    (0..BUCKETS).find(|&i| p <= edge(i + 1))
}

/// Groups games by forecast home-win probability and reports how often the
/// home side actually won in each group.
pub fn bucket_calibration(games: &[(f64, bool)]) -> Result<BucketReport> {
    if games.is_empty() {
        return Err(Error::domain("no games to bucket"));
    }
    let mut counts = alloc::vec![0u64; BUCKETS];
    let mut wins = alloc::vec![0u64; BUCKETS];
    let mut overflow = 0;
    for &(p, home_won) in games {
        match bucket_of(p) {
            Some(i) => {
                counts[i] += 1;
                wins[i] += home_won as u64;
            }
            None => overflow += 1,
        }
    }
    let win_frequency = counts
        .iter()
        .zip(&wins)
        .map(|(c, w)| (*c > 0).then(|| *w as f64 / *c as f64))
        .collect();
    Ok(BucketReport { bucket_edges: (0..=BUCKETS).map(edge).collect(), counts, wins, win_frequency, overflow })
}
