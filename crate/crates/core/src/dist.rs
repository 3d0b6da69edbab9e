use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Mean and variance of a score-difference distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub mean: f64,
    pub variance: f64,
}

/// Normalized probabilities over a contiguous range of score differences.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreDiffDist {
    k_min: i32,
    probs: Vec<f64>,
}

impl ScoreDiffDist {
    /// Builds a distribution from nonnegative weights starting at `k_min`,
    /// dividing by their sum.
    pub fn from_weights(k_min: i32, weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::domain("distribution support is empty"));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::domain("weights must be finite and nonnegative"));
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::degenerate("distribution has zero total mass"));
        }
        let probs = weights.into_iter().map(|w| w / total).collect();
        Ok(Self { k_min, probs })
    }

    /// Builds a distribution from `(k, weight)` pairs; gaps inside the
    /// covered range get zero weight and repeated keys accumulate.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i32, f64)>,
    {
        let pairs: Vec<(i32, f64)> = pairs.into_iter().collect();
        let lo = pairs.iter().map(|p| p.0).min().ok_or_else(|| Error::domain("distribution support is empty"))?;
        let hi = pairs.iter().map(|p| p.0).max().unwrap_or(lo);
        let mut weights = alloc::vec![0.0; (hi - lo) as usize + 1];
        for (k, w) in pairs {
            weights[(k - lo) as usize] += w;
        }
        Self::from_weights(lo, weights)
    }

    pub fn point_mass(k: i32) -> Self {
        Self { k_min: k, probs: alloc::vec![1.0] }
    }

    /// Wraps probabilities that are already normalized.
    pub(crate) fn from_normalized(k_min: i32, probs: Vec<f64>) -> Self {
        debug_assert!(!probs.is_empty());
        Self { k_min, probs }
    }

    pub fn k_min(&self) -> i32 {
        self.k_min
    }

    pub fn k_max(&self) -> i32 {
        self.k_min + self.probs.len() as i32 - 1
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Probability of difference `k`; zero outside the support.
    pub fn prob(&self, k: i32) -> f64 {
        if k < self.k_min || k > self.k_max() {
            0.0
        } else {
            self.probs[(k - self.k_min) as usize]
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, f64)> + '_ {
        self.probs.iter().enumerate().map(move |(i, p)| (self.k_min + i as i32, *p))
    }

    pub fn total_mass(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn moments(&self) -> Moments {
        let mean: f64 = self.iter().map(|(k, p)| k as f64 * p).sum();
        let variance: f64 = self
            .iter()
            .map(|(k, p)| {
                let dev = k as f64 - mean;
                dev * dev * p
            })
            .sum();
        Moments { mean, variance }
    }

    /// The same distribution with every difference moved by `lead`.
    pub fn shifted(&self, lead: i32) -> Self {
        Self { k_min: self.k_min + lead, probs: self.probs.clone() }
    }

    /// Restricts to `[lo, hi]` and renormalizes. Points of the range outside
    /// the current support get probability zero.
    pub fn restricted(&self, lo: i32, hi: i32) -> Result<Self> {
        if lo > hi {
            return Err(Error::domain("empty restriction range"));
        }
        Self::from_weights(lo, (lo..=hi).map(|k| self.prob(k)).collect())
    }

    pub fn total_variation(&self, other: &ScoreDiffDist) -> f64 {
        let lo = self.k_min.min(other.k_min);
        let hi = self.k_max().max(other.k_max());
        0.5 * (lo..=hi).map(|k| (self.prob(k) - other.prob(k)).abs()).sum::<f64>()
    }
}
