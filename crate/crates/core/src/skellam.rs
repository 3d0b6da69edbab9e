//! Skellam distribution of the score difference `N_A - N_B` between two
//! independent Poisson goal counts.

use alloc::vec::Vec;

use crate::bessel::{ln_bessel_i, ln_factorial};
use crate::dist::{Moments, ScoreDiffDist};
use crate::error::{Error, Result};

/// Default excluded tail mass when materializing a distribution.
pub const DEFAULT_TAIL_EPS: f64 = 1e-9;

/// Terms below this are treated as the end of a tail sum.
const TAIL_TERM: f64 = 1e-17;
const MAX_SUPPORT_RADIUS: i32 = 100_000;

/// Expected goals of each team over the remainder of the game.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoringRates {
    lambda_a: f64,
    lambda_b: f64,
}

impl ScoringRates {
    pub fn new(lambda_a: f64, lambda_b: f64) -> Result<Self> {
        if !lambda_a.is_finite() || !lambda_b.is_finite() || lambda_a < 0.0 || lambda_b < 0.0 {
            return Err(Error::domain("scoring rates must be finite and nonnegative"));
        }
        Ok(Self { lambda_a, lambda_b })
    }

    pub const fn zero() -> Self {
        Self { lambda_a: 0.0, lambda_b: 0.0 }
    }

    pub fn lambda_a(&self) -> f64 {
        self.lambda_a
    }

    pub fn lambda_b(&self) -> f64 {
        self.lambda_b
    }

    /// `lambda_a + lambda_b`, the variance of the remaining difference.
    pub fn sum(&self) -> f64 {
        self.lambda_a + self.lambda_b
    }

    /// Rates with the teams swapped.
    pub fn swapped(&self) -> Self {
        Self { lambda_a: self.lambda_b, lambda_b: self.lambda_a }
    }
}

fn poisson_pmf(k: u32, lambda: f64) -> f64 {
    libm::exp(-lambda + k as f64 * libm::log(lambda) - ln_factorial(k))
}

/// `P(N = x)` for `N ~ Skellam(lambda_a, lambda_b)`.
///
/// With one rate zero the distribution is a (possibly negated) Poisson law;
/// with both zero it is a point mass at 0.
pub fn skellam_pmf(x: i32, rates: ScoringRates) -> f64 {
    let (a, b) = (rates.lambda_a, rates.lambda_b);
    match (a > 0.0, b > 0.0) {
        (false, false) => {
            if x == 0 {
                1.0
            } else {
                0.0
            }
        }
        (true, false) => {
            if x >= 0 {
                poisson_pmf(x as u32, a)
            } else {
                0.0
            }
        }
        (false, true) => {
            if x <= 0 {
                poisson_pmf(x.unsigned_abs(), b)
            } else {
                0.0
            }
        }
        (true, true) => {
            let arg = 2.0 * libm::sqrt(a * b);
            let ln = -(a + b)
                + 0.5 * x as f64 * (libm::log(a) - libm::log(b))
                + ln_bessel_i(x.unsigned_abs(), arg);
            libm::exp(ln)
        }
    }
}

/// Most likely score difference.
pub(crate) fn mode(rates: ScoringRates) -> i32 {
    let mut m = libm::round(rates.lambda_a - rates.lambda_b) as i32;
    let mut pm = skellam_pmf(m, rates);
    loop {
        let up = skellam_pmf(m + 1, rates);
        if up > pm {
            m += 1;
            pm = up;
            continue;
        }
        let down = skellam_pmf(m - 1, rates);
        if down > pm {
            m -= 1;
            pm = down;
            continue;
        }
        return m;
    }
}

/// Materializes the PMF over the smallest window centred on the mode whose
/// excluded mass is below `tail_eps`, then renormalizes.
pub fn skellam_dist(rates: ScoringRates, tail_eps: f64) -> ScoreDiffDist {
    let m = mode(rates);
    let mut left: Vec<f64> = Vec::new(); // m-1, m-2, ...
    let mut right: Vec<f64> = Vec::new(); // m+1, m+2, ...
    let centre = skellam_pmf(m, rates);
    let mut inside = centre;
    let mut r = 0;
    while 1.0 - inside >= tail_eps && r < MAX_SUPPORT_RADIUS {
        r += 1;
        let lo = skellam_pmf(m - r, rates);
        let hi = skellam_pmf(m + r, rates);
        left.push(lo);
        right.push(hi);
        inside += lo + hi;
        if lo == 0.0 && hi == 0.0 {
            break;
        }
    }
    let mut probs: Vec<f64> = left.into_iter().rev().collect();
    probs.push(centre);
    probs.extend(right);
    let total: f64 = probs.iter().sum();
    for p in &mut probs {
        *p /= total;
    }
    ScoreDiffDist::from_normalized(m - r, probs)
}

/// Sum of the PMF from `start` moving by `step` (+1 or -1), assuming the
/// terms only decrease along the way.
fn decreasing_tail(rates: ScoringRates, start: i32, step: i32) -> f64 {
    let mut sum = 0.0;
    let mut x = start;
    for _ in 0..MAX_SUPPORT_RADIUS {
        let term = skellam_pmf(x, rates);
        sum += term;
        if term < TAIL_TERM {
            break;
        }
        x += step;
    }
    sum
}

/// Final-outcome probabilities for the team currently leading by `lead`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutcomeProbs {
    pub win: f64,
    pub draw: f64,
    pub lose: f64,
}

/// Probabilities that team A finishes ahead, level, or behind, given the
/// current lead and the rates for the rest of the game.
pub fn outcome_probs(rates: ScoringRates, lead: i32) -> OutcomeProbs {
    let level = -lead; // remaining difference that ends in a draw
    let draw = skellam_pmf(level, rates);
    let m = mode(rates);
    if m > level {
        // losing side is the tail; sum it and take win as the complement
        let lose = if level == i32::MIN { 0.0 } else { decreasing_tail(rates, level - 1, -1) };
        OutcomeProbs { win: 1.0 - draw - lose, draw, lose }
    } else {
        let win = decreasing_tail(rates, level + 1, 1);
        OutcomeProbs { win, draw, lose: 1.0 - win - draw }
    }
}

pub fn prob_win(rates: ScoringRates, lead: i32) -> f64 {
    outcome_probs(rates, lead).win
}

pub fn prob_draw(rates: ScoringRates, lead: i32) -> f64 {
    skellam_pmf(-lead, rates)
}

pub fn prob_lose(rates: ScoringRates, lead: i32) -> f64 {
    outcome_probs(rates, lead).lose
}

/// Draw probability for two evenly matched teams, `e^{-2 lambda} I_0(2 lambda)`.
pub fn draw_prob_even(lambda: f64) -> Result<f64> {
    let rates = ScoringRates::new(lambda, lambda)?;
    Ok(skellam_pmf(0, rates))
}

/// Conditional mean and variance of the final difference given `lead`.
pub fn skellam_moments(rates: ScoringRates, lead: i32) -> Moments {
    Moments {
        mean: lead as f64 + (rates.lambda_a - rates.lambda_b),
        variance: rates.lambda_a + rates.lambda_b,
    }
}
