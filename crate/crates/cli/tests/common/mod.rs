#![allow(dead_code)]

use std::path::Path;

use skellam_core::{market_score_diff, FractionalOdds, OddsMatrix, ScoreDiffDist};
use skellam_odds::formats::read_odds_csv;

/// Score differences of the reference comparison table.
pub const DIFFS: [i32; 10] = [-4, -3, -2, -1, 0, 1, 2, 3, 4, 5];
pub const REFERENCE_MARKET: [f64; 10] = [0.0170, 0.0203, 0.0488, 0.1233, 0.2193, 0.2206, 0.1658, 0.0982, 0.0472, 0.0223];
pub const REFERENCE_MODEL: [f64; 10] = [0.0078, 0.0250, 0.0647, 0.1302, 0.1950, 0.2108, 0.1696, 0.1061, 0.0537, 0.0227];
pub const REFERENCE_RATES: (f64, f64) = (2.33, 1.44);

pub fn fixture_odds() -> OddsMatrix {
    read_odds_csv(&Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/pre_match_odds.csv")).unwrap().matrix
}

pub fn fixture_market() -> (ScoreDiffDist, f64) {
    market_score_diff(&fixture_odds()).unwrap()
}

/// The fixture with the 1-5 quote read as 50/1 instead of 350/1.
pub fn fixture_with_alternate_quote() -> OddsMatrix {
    OddsMatrix::from_quotes(fixture_odds().iter().map(|((h, a), o)| {
        let o = if (h, a) == (1, 5) { FractionalOdds::new(50, 1).unwrap() } else { o };
        (h, a, o)
    }))
    .unwrap()
}
