//! Zero-inflated score-difference models.
//!
//! Bookmakers tend to price draws above what a plain Skellam fit gives.
//! Two reweightings add mass at zero:
//!
//! * `TypeOne { p }` mixes in a point mass at 0 with weight `p`.
//! * `TypeTwo { theta }` scales the draw by `1 + theta` and every other
//!   outcome by `1 - gamma`, with `gamma = theta * P0 / (1 - P0)` so the
//!   total stays 1.

use alloc::vec::Vec;

use crate::dist::ScoreDiffDist;
use crate::error::{Error, Result};
use crate::skellam::OutcomeProbs;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum InflationModel {
    #[default]
    None,
    TypeOne { p: f64 },
    TypeTwo { theta: f64 },
}

impl InflationModel {
    /// Checks the factor against the base draw probability `p0` and returns
    /// the multipliers `(draw_scale, draw_offset, other_scale)` such that
    /// `P~(0) = draw_offset + draw_scale * P(0)` and `P~(x) = other_scale * P(x)`.
    fn weights(&self, p0: f64) -> Result<(f64, f64, f64)> {
        match *self {
            InflationModel::None => Ok((1.0, 0.0, 1.0)),
            InflationModel::TypeOne { p } => {
                if !(p > 0.0 && p < 1.0) {
                    return Err(Error::domain("type-one inflation factor must lie in (0, 1)"));
                }
                Ok((1.0 - p, p, 1.0 - p))
            }
            InflationModel::TypeTwo { theta } => {
                if !theta.is_finite() || theta < 0.0 {
                    return Err(Error::domain("type-two inflation factor must be finite and nonnegative"));
                }
                if p0 >= 1.0 {
                    return Err(Error::degenerate("type-two inflation needs a draw probability below 1"));
                }
                let gamma = type_two_deflation(theta, p0);
                if gamma >= 1.0 {
                    return Err(Error::domain("type-two inflation factor too large for this draw probability"));
                }
                Ok((1.0 + theta, 0.0, 1.0 - gamma))
            }
        }
    }

    /// Applies the reweighting to win/draw/lose probabilities directly.
    pub fn apply_outcomes(&self, base: OutcomeProbs) -> Result<OutcomeProbs> {
        let (draw_scale, draw_offset, other) = self.weights(base.draw)?;
        Ok(OutcomeProbs {
            win: other * base.win,
            draw: draw_offset + draw_scale * base.draw,
            lose: other * base.lose,
        })
    }
}

/// `gamma = theta * P0 / (1 - P0)`, the deflation of non-draw outcomes that
/// keeps the total at 1 under type-two inflation.
pub fn type_two_deflation(theta: f64, p0: f64) -> f64 {
    theta * p0 / (1.0 - p0)
}

pub fn inflate(dist: &ScoreDiffDist, model: InflationModel) -> Result<ScoreDiffDist> {
    if model == InflationModel::None {
        return Ok(dist.clone());
    }
    let p0 = dist.prob(0);
    let (draw_scale, draw_offset, other) = model.weights(p0)?;
    // make sure 0 is in the support so a mixture weight has somewhere to go
    let lo = dist.k_min().min(0);
    let hi = dist.k_max().max(0);
    let probs: Vec<f64> = (lo..=hi)
        .map(|k| {
            let p = dist.prob(k);
            if k == 0 {
                draw_offset + draw_scale * p
            } else {
                other * p
            }
        })
        .collect();
    Ok(ScoreDiffDist::from_normalized(lo, probs))
}
