//! Correct-score odds: fractional quotes, the score matrix, and the market
//! distribution of the score difference they imply.

use alloc::collections::BTreeMap;
use alloc::format;
use core::fmt;
use core::str::FromStr;

use crate::dist::{Moments, ScoreDiffDist};
use crate::error::{Error, Result};

/// A fractional quote `numerator/denominator`, e.g. `13/2`.
///
/// Stored as exact integers so quotes round-trip through files unchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FractionalOdds {
    numerator: u64,
    denominator: u64,
}

impl FractionalOdds {
    pub fn new(numerator: u64, denominator: u64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::domain("odds denominator must be positive"));
        }
        Ok(Self { numerator, denominator })
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    /// Decimal value of the quote, `numerator / denominator`.
    pub fn value(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }

    /// `1 / (1 + odds)`, evaluated as `denominator / (denominator + numerator)`.
    pub fn implied_prob(&self) -> f64 {
        let den = self.denominator as u128;
        let total = den + self.numerator as u128;
        den as f64 / total as f64
    }
}

impl fmt::Display for FractionalOdds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

impl FromStr for FractionalOdds {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (num, den) = s
            .trim()
            .split_once('/')
            .ok_or_else(|| Error::domain(format!("odds {s:?} are not of the form a/b")))?;
        let num = num.trim().parse().map_err(|_| Error::domain(format!("bad odds numerator in {s:?}")))?;
        let den = den.trim().parse().map_err(|_| Error::domain(format!("bad odds denominator in {s:?}")))?;
        Self::new(num, den)
    }
}

pub fn implied_prob(odds: FractionalOdds) -> f64 {
    odds.implied_prob()
}

/// Quotes keyed by final score `(home_goals, away_goals)`. Scores without a
/// quote carry no probability.
#[derive(Debug, Clone, PartialEq)]
pub struct OddsMatrix {
    entries: BTreeMap<(u32, u32), FractionalOdds>,
}

impl OddsMatrix {
    pub fn new(entries: BTreeMap<(u32, u32), FractionalOdds>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::domain("odds matrix has no entries"));
        }
        Ok(Self { entries })
    }

    /// Builds a matrix from `(home, away, odds)` triples, rejecting repeated scores.
    pub fn from_quotes<I>(quotes: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32, FractionalOdds)>,
    {
        let mut entries = BTreeMap::new();
        for (home, away, odds) in quotes {
            if entries.insert((home, away), odds).is_some() {
                return Err(Error::domain(format!("score {home}-{away} quoted twice")));
            }
        }
        Self::new(entries)
    }

    pub fn get(&self, home: u32, away: u32) -> Option<FractionalOdds> {
        self.entries.get(&(home, away)).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32), FractionalOdds)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, *v))
    }
}

/// Game clock as a fraction of regulation time plus the current score.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GameState {
    t: f64,
    score_a: u32,
    score_b: u32,
}

impl GameState {
    pub fn new(t: f64, score_a: u32, score_b: u32) -> Result<Self> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::domain(format!("game time {t} outside [0, 1]")));
        }
        Ok(Self { t, score_a, score_b })
    }

    pub fn kickoff() -> Self {
        Self { t: 0.0, score_a: 0, score_b: 0 }
    }

    /// State at time `t` for a given lead, putting the goals on the leading side.
    pub fn from_lead(t: f64, lead: i32) -> Result<Self> {
        Self::new(t, lead.max(0) as u32, (-(lead as i64)).max(0) as u32)
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn score_a(&self) -> u32 {
        self.score_a
    }

    pub fn score_b(&self) -> u32 {
        self.score_b
    }

    pub fn lead(&self) -> i32 {
        self.score_a as i32 - self.score_b as i32
    }
}

/// Re-keys the full-game quotes to remaining goals: the quote for a final
/// score `(x + a, y + b)` becomes the quote for the sub-game score `(x, y)`.
pub fn adjust_for_state(matrix: &OddsMatrix, state: &GameState) -> Result<OddsMatrix> {
    let (sa, sb) = (state.score_a, state.score_b);
    let entries: BTreeMap<_, _> = matrix
        .iter()
        .filter(|((home, away), _)| *home >= sa && *away >= sb)
        .map(|((home, away), odds)| ((home - sa, away - sb), odds))
        .collect();
    if entries.is_empty() {
        return Err(Error::EmptySubGame);
    }
    Ok(OddsMatrix { entries })
}

/// Normalized market distribution of `home - away` plus the vig.
///
/// Implied probabilities are summed along each anti-diagonal and divided by
/// their grand total `c`; the vig is `c - 1`.
pub fn market_score_diff(matrix: &OddsMatrix) -> Result<(ScoreDiffDist, f64)> {
    let mut by_diff: BTreeMap<i32, f64> = BTreeMap::new();
    for ((home, away), odds) in matrix.iter() {
        *by_diff.entry(home as i32 - away as i32).or_insert(0.0) += odds.implied_prob();
    }
    let scale: f64 = by_diff.values().sum();
    if scale.is_nan() || scale <= 0.0 {
        return Err(Error::degenerate("odds matrix carries no probability mass"));
    }
    let dist = ScoreDiffDist::from_pairs(by_diff)?;
    Ok((dist, scale - 1.0))
}

/// Mean and variance of a market distribution, the targets for calibration.
pub fn market_moments(dist: &ScoreDiffDist) -> Moments {
    dist.moments()
}
