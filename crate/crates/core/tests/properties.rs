mod common;

use proptest::prelude::*;
use skellam_core::diagnostics::qq_log_odds;
use skellam_core::{
    adjust_for_state, calibrate, draw_prob_even, inflate, market_score_diff, skellam_dist, skellam_moments,
    skellam_pmf, FractionalOdds, GameState, InflationModel, OddsMatrix, ScoreDiffDist, ScoringRates,
};

fn rates() -> impl Strategy<Value = ScoringRates> {
    (1e-3..10.0f64, 1e-3..10.0f64).prop_map(|(a, b)| ScoringRates::new(a, b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn pmf_matches_convolution(r in rates(), x in -20i32..=20) {
        let got = skellam_pmf(x, r);
        let want = common::convolution_pmf(x, r.lambda_a(), r.lambda_b());
        prop_assert!((got - want).abs() <= 1e-12, "{} vs {}", got, want);
    }

    #[test]
    fn pmf_sums_to_one(r in rates()) {
        let total: f64 = (-60..=60).map(|x| skellam_pmf(x, r)).sum();
        prop_assert!(total >= 1.0 - 1e-12);
        prop_assert!(total <= 1.0 + 1e-12);
    }

    #[test]
    fn swapping_teams_mirrors_pmf(r in rates(), x in -30i32..=30) {
        let a = skellam_pmf(x, r);
        let b = skellam_pmf(-x, r.swapped());
        prop_assert!((a - b).abs() <= 1e-15 * a.max(1e-300));
    }

    #[test]
    fn materialized_moments(r in rates(), lead in -3i32..=3) {
        let m = skellam_dist(r, 1e-12).shifted(lead).moments();
        let want = skellam_moments(r, lead);
        prop_assert!((m.mean - want.mean).abs() < 1e-9);
        prop_assert!((m.variance - want.variance).abs() < 1e-9);
    }

    #[test]
    fn inflation_keeps_mass_and_ratios(r in rates(), p in 1e-6..0.99f64, theta in 0.0..1.0f64) {
        let base = skellam_dist(r, 1e-9);
        let p0 = base.prob(0);
        let mut models = vec![InflationModel::TypeOne { p }];
        if theta * p0 / (1.0 - p0) < 1.0 {
            models.push(InflationModel::TypeTwo { theta });
        }
        for model in models {
            let out = inflate(&base, model).unwrap();
            prop_assert!((out.total_mass() - 1.0).abs() < 1e-12);
            let (x, y) = (base.k_min(), base.k_max());
            if x != 0 && y != 0 && base.prob(y) > 0.0 && out.prob(y) > 0.0 {
                let before = base.prob(x) / base.prob(y);
                let after = out.prob(x) / out.prob(y);
                prop_assert!((before - after).abs() <= 1e-12 * before.max(1.0));
            }
        }
    }

    #[test]
    fn implied_prob_decreases_with_odds(n1 in 0u64..10_000, n2 in 0u64..10_000, d in 1u64..100) {
        prop_assume!(n1 != n2);
        let p1 = FractionalOdds::new(n1, d).unwrap().implied_prob();
        let p2 = FractionalOdds::new(n2, d).unwrap().implied_prob();
        prop_assert_eq!(n1 < n2, p1 > p2);
    }

    #[test]
    fn market_distribution_is_normalized(
        cells in prop::collection::btree_map((0u32..8, 0u32..8), (0u64..500, 1u64..5), 1..40)
    ) {
        let m = OddsMatrix::from_quotes(cells.iter().map(|((h, a), (n, d))| (*h, *a, FractionalOdds::new(*n, *d).unwrap()))).unwrap();
        let (dist, vig) = market_score_diff(&m).unwrap();
        prop_assert!((dist.total_mass() - 1.0).abs() < 1e-12);
        let c: f64 = m.iter().map(|(_, o)| o.implied_prob()).sum();
        prop_assert!((vig - (c - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn adjustment_equals_shift_on_complete_matrix(sa in 0u32..3, sb in 0u32..3, seed in 0u64..1000) {
        // complete 10x10 grid with arbitrary quotes
        let quotes = (0..10u32).flat_map(|h| (0..10u32).map(move |a| (h, a)))
            .map(|(h, a)| (h, a, FractionalOdds::new(1 + (seed * 31 + (h * 10 + a) as u64 * 17) % 97, 1 + (h as u64 + a as u64) % 3).unwrap()));
        let full = OddsMatrix::from_quotes(quotes).unwrap();
        let state = GameState::new(0.5, sa, sb).unwrap();
        let (sub, _) = market_score_diff(&adjust_for_state(&full, &state).unwrap()).unwrap();
        // keep only final scores reachable from the current score
        let reachable = OddsMatrix::from_quotes(full.iter().filter(|((h, a), _)| *h >= sa && *a >= sb).map(|((h, a), o)| (h, a, o))).unwrap();
        let (final_dist, _) = market_score_diff(&reachable).unwrap();
        prop_assert_eq!(sub.shifted(state.lead()), final_dist);
    }

    #[test]
    fn calibration_is_feasible(mean in -6.0..6.0f64, var in 0.0..10.0f64, lead in -2i32..=2) {
        // two-point distribution with the requested moments, rounded to a lattice
        let spread = var.sqrt().ceil().max(1.0) as i32;
        let centre = mean.round() as i32;
        let dist = ScoreDiffDist::from_pairs([(centre - spread, 1.0), (centre, 2.0), (centre + spread, 1.0)]).unwrap();
        let m = dist.moments();
        let r = calibrate(&dist, lead);
        prop_assert!(r.rates.lambda_a() >= 0.0 && r.rates.lambda_b() >= 0.0);
        let feasible = m.variance >= (m.mean - lead as f64).abs();
        prop_assert_eq!(r.objective < 1e-20, feasible);
        prop_assert!((r.objective - (r.residual_mean.powi(2) + r.residual_var.powi(2))).abs() <= 1e-12);
        prop_assert!((r.implied_vol - r.rates.sum().sqrt()).abs() <= 1e-12);
        prop_assert!((r.implied_vol.powi(2) - skellam_moments(r.rates, lead).variance).abs() <= 1e-12);
    }

    #[test]
    fn qq_ignores_input_order(mut pairs in prop::collection::vec((0.001..0.999f64, 0.001..0.999f64), 1..50), rot in 0usize..50) {
        let a = qq_log_odds(&pairs);
        let k = rot % pairs.len();
        pairs.rotate_left(k);
        pairs.reverse();
        prop_assert_eq!(a, qq_log_odds(&pairs));
    }
}

#[test]
fn draw_probability_strictly_decreasing() {
    let mut prev = draw_prob_even(0.01).unwrap();
    for i in 2..=1000 {
        let lambda = i as f64 * 0.01;
        let p = draw_prob_even(lambda).unwrap();
        assert!(p < prev, "not decreasing at {lambda}");
        assert!((p - skellam_pmf(0, ScoringRates::new(lambda, lambda).unwrap())).abs() <= 1e-12);
        prev = p;
    }
}
