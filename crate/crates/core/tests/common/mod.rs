#![allow(dead_code)]

use skellam_core::{FractionalOdds, GameState, OddsMatrix, ScoringRates};

/// Poisson probabilities 0..=n by the multiplicative recurrence.
pub fn poisson_table(lambda: f64, n: usize) -> Vec<f64> {
    let mut out = vec![(-lambda).exp()];
    for k in 1..=n {
        let prev = out[k - 1];
        out.push(prev * lambda / k as f64);
    }
    out
}

/// Fractional quote whose implied probability is `p` to about 1e-12 relative.
pub fn quote_for(p: f64) -> FractionalOdds {
    let den = (1e18 * p).round().clamp(1.0, 1e12);
    let num = (den * (1.0 - p) / p).round();
    FractionalOdds::new(num as u64, den as u64).unwrap()
}

/// Correct-score odds with no vig for independent Poisson goals over the
/// rest of the game, keyed by final score given the current `state`.
pub fn exact_odds(remaining: ScoringRates, state: &GameState, max_goals: usize) -> OddsMatrix {
    let pa = poisson_table(remaining.lambda_a(), max_goals);
    let pb = poisson_table(remaining.lambda_b(), max_goals);
    let mut quotes = Vec::new();
    for (x, a) in pa.iter().enumerate() {
        for (y, b) in pb.iter().enumerate() {
            let p = a * b;
            if p < 1e-16 {
                continue;
            }
            quotes.push((x as u32 + state.score_a(), y as u32 + state.score_b(), quote_for(p)));
        }
    }
    OddsMatrix::from_quotes(quotes).unwrap()
}

/// Skellam PMF by direct Poisson convolution, truncated at k = 200.
pub fn convolution_pmf(x: i32, a: f64, b: f64) -> f64 {
    let pa = poisson_table(a, 200);
    let pb = poisson_table(b, 260);
    (x.max(0)..=200).map(|k| pa[k as usize] * pb[(k - x) as usize]).sum()
}

/// Brute-force minimum of the moment objective over `[0, hi]^2` on a grid.
pub fn grid_search(target_diff: f64, target_sum: f64, step: f64, hi: f64) -> (f64, f64, f64) {
    let n = (hi / step).round() as usize;
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..=n {
        let a = i as f64 * step;
        for j in 0..=n {
            let b = j as f64 * step;
            let de = target_diff - (a - b);
            let dv = target_sum - (a + b);
            let obj = de * de + dv * dv;
            if obj < best.0 {
                best = (obj, a, b);
            }
        }
    }
    best
}
