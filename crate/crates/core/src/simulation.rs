//! Monte Carlo paths of the score-difference process.
//!
//! Each team scores as a homogeneous Poisson process over the rest of the
//! game. A path draws both goal counts, then places the goals as uniform
//! order statistics on `(t, 1]`.
//!
//! The generator is ChaCha8 (`rand_chacha`). Path `i` of a run with seed `s`
//! uses `ChaCha8Rng::seed_from_u64(s)` switched to stream `i`, so any path can
//! be regenerated on its own and results do not depend on evaluation order.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crate::dist::ScoreDiffDist;
use crate::error::{Error, Result};
use crate::odds::GameState;
use crate::skellam::ScoringRates;

/// A simulated trajectory of `N_A - N_B` from `start_time` to the final whistle.
#[derive(Debug, Clone, PartialEq)]
pub struct ScorePath {
    pub start_time: f64,
    pub start_diff: i32,
    pub jump_times: Vec<f64>,
    /// `+1` for a goal by team A, `-1` for team B.
    pub jump_signs: Vec<i8>,
}

impl ScorePath {
    /// Difference at time `u`, counting jumps at or before `u`.
    pub fn value_at(&self, u: f64) -> i32 {
        self.start_diff
            + self
                .jump_times
                .iter()
                .zip(&self.jump_signs)
                .take_while(|(time, _)| **time <= u)
                .map(|(_, sign)| *sign as i32)
                .sum::<i32>()
    }

    pub fn terminal(&self) -> i32 {
        self.start_diff + self.jump_signs.iter().map(|s| *s as i32).sum::<i32>()
    }

    /// `(time, diff)` at the start and after every jump.
    pub fn points(&self) -> impl Iterator<Item = (f64, i32)> + '_ {
        let mut diff = self.start_diff;
        core::iter::once((self.start_time, diff)).chain(self.jump_times.iter().zip(&self.jump_signs).map(
            move |(time, sign)| {
                diff += *sign as i32;
                (*time, diff)
            },
        ))
    }
}

fn path_rng(seed: u64, path_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(path_index);
    rng
}

fn poisson_count<R: Rng>(rng: &mut R, lambda: f64) -> u64 {
    if lambda <= 0.0 {
        return 0;
    }
    let dist = Poisson::new(lambda).expect("positive finite rate");
    let draw: f64 = dist.sample(rng);
    draw as u64
}

fn goal_counts(rng: &mut ChaCha8Rng, rates: ScoringRates, start: &GameState) -> (u64, u64) {
    if start.t() >= 1.0 {
        return (0, 0);
    }
    (poisson_count(rng, rates.lambda_a()), poisson_count(rng, rates.lambda_b()))
}

/// Path number `path_index` of the run seeded with `seed`.
pub fn simulate_path_indexed(rates: ScoringRates, start: &GameState, seed: u64, path_index: u64) -> ScorePath {
    let mut rng = path_rng(seed, path_index);
    let (goals_a, goals_b) = goal_counts(&mut rng, rates, start);
    let t0 = start.t();
    let span = 1.0 - t0;
    let mut jumps: Vec<(f64, i8)> = Vec::with_capacity((goals_a + goals_b) as usize);
    for (count, sign) in [(goals_a, 1i8), (goals_b, -1i8)] {
        for _ in 0..count {
            // 1 - U lies in (0, 1], so times land in (t0, 1]
            let u: f64 = rng.random();
            jumps.push((t0 + span * (1.0 - u), sign));
        }
    }
    jumps.sort_by(|x, y| x.0.total_cmp(&y.0));
    let (jump_times, jump_signs) = jumps.into_iter().unzip();
    ScorePath { start_time: t0, start_diff: start.lead(), jump_times, jump_signs }
}

/// One path from `start` to the end of the game; deterministic in `seed`.
pub fn simulate_path(rates: ScoringRates, start: &GameState, seed: u64) -> ScorePath {
    simulate_path_indexed(rates, start, seed, 0)
}

/// Empirical distribution of the final difference over `n_paths` paths.
///
/// Only the goal counts are drawn; they come first in every path's stream,
/// so the result agrees with the terminal values of [`simulate_path_indexed`].
pub fn simulate_final_dist(rates: ScoringRates, start: &GameState, n_paths: u64, seed: u64) -> Result<ScoreDiffDist> {
    if n_paths == 0 {
        return Err(Error::domain("n_paths must be at least 1"));
    }
    let mut counts: alloc::collections::BTreeMap<i32, f64> = alloc::collections::BTreeMap::new();
    for i in 0..n_paths {
        let mut rng = path_rng(seed, i);
        let (a, b) = goal_counts(&mut rng, rates, start);
        *counts.entry(start.lead() + a as i32 - b as i32).or_insert(0.0) += 1.0;
    }
    ScoreDiffDist::from_pairs(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_rates_have_no_jumps() {
        let p = simulate_path(ScoringRates::zero(), &GameState::kickoff(), 7);
        assert!(p.jump_times.is_empty() && p.jump_signs.is_empty());
        assert_eq!(p.terminal(), 0);
    }

    #[test]
    fn same_seed_same_path() {
        let r = ScoringRates::new(2.33, 1.44).unwrap();
        let s = GameState::new(0.25, 1, 0).unwrap();
        let a = simulate_path(r, &s, 42);
        let b = simulate_path(r, &s, 42);
        assert_eq!(a, b);
        assert_ne!(simulate_path_indexed(r, &s, 42, 1), simulate_path_indexed(r, &s, 42, 2));
    }

    #[test]
    fn jump_times_are_ordered_within_window() {
        let r = ScoringRates::new(6.0, 5.0).unwrap();
        let s = GameState::new(0.4, 0, 2).unwrap();
        for i in 0..50 {
            let p = simulate_path_indexed(r, &s, 3, i);
            assert_eq!(p.jump_times.len(), p.jump_signs.len());
            assert!(p.jump_times.windows(2).all(|w| w[0] < w[1]));
            assert!(p.jump_times.iter().all(|t| *t > 0.4 && *t <= 1.0));
            assert_eq!(p.start_diff, -2);
            assert_eq!(p.value_at(1.0), p.terminal());
            assert_eq!(p.value_at(0.4), -2);
            assert_eq!(p.points().count(), p.jump_times.len() + 1);
        }
    }

    #[test]
    fn terminal_values_match_final_dist() {
        let r = ScoringRates::new(1.1, 0.9).unwrap();
        let s = GameState::kickoff();
        let n = 200;
        let dist = simulate_final_dist(r, &s, n, 11).unwrap();
        let mut counts = std::collections::BTreeMap::new();
        for i in 0..n {
            *counts.entry(simulate_path_indexed(r, &s, 11, i).terminal()).or_insert(0u64) += 1;
        }
        for (k, c) in counts {
            assert!((dist.prob(k) - c as f64 / n as f64).abs() < 1e-15);
        }
    }

    #[test]
    fn single_path_with_lead() {
        let s = GameState::from_lead(0.5, 2).unwrap();
        let d = simulate_final_dist(ScoringRates::zero(), &s, 1, 0).unwrap();
        assert_eq!(d, ScoreDiffDist::point_mass(2));
        assert!(simulate_final_dist(ScoringRates::zero(), &s, 0, 0).is_err());
    }

    #[test]
    fn lead_only_shifts_the_distribution() {
        let r = ScoringRates::new(1.2, 1.6).unwrap();
        let level = simulate_final_dist(r, &GameState::new(0.5, 0, 0).unwrap(), 5_000, 9).unwrap();
        let behind = simulate_final_dist(r, &GameState::new(0.5, 0, 1).unwrap(), 5_000, 9).unwrap();
        assert_eq!(level.shifted(-1), behind);
    }
}
