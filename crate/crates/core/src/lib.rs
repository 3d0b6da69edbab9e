//! Skellam score-difference model for correct-score betting markets.
//!
//! The crate is `no_std` (it needs `alloc`). It covers the whole numerical
//! pipeline: fractional odds to a normalized market distribution of the final
//! score difference, moment-matching calibration of the two scoring rates,
//! implied volatility, zero-inflated variants, seeded Monte Carlo paths and
//! the diagnostics used to judge how well the model tracks the market.
//!
//! File formats and the command-line tool live in the `skellam-odds` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bessel;
pub mod calibration;
pub mod diagnostics;
mod dist;
mod error;
pub mod inflation;
pub mod odds;
pub mod simulation;
pub mod skellam;

pub use calibration::{
    calibrate, calibrate_snapshot, calibrate_timeline, fit_inflation, implied_volatility,
    CalibrationResult, InflationFit, InflationKind, Snapshot, SnapshotFit, TimelinePoint,
};
pub use dist::{Moments, ScoreDiffDist};
pub use error::{Error, Result};
pub use inflation::{inflate, InflationModel};
pub use odds::{
    adjust_for_state, implied_prob, market_moments, market_score_diff, FractionalOdds, GameState,
    OddsMatrix,
};
pub use simulation::{simulate_final_dist, simulate_path, ScorePath};
pub use skellam::{
    draw_prob_even, outcome_probs, prob_draw, prob_lose, prob_win, skellam_dist, skellam_moments,
    skellam_pmf, OutcomeProbs, ScoringRates, DEFAULT_TAIL_EPS,
};
