use skellam_core::simulation::simulate_path_indexed;
use skellam_core::{simulate_final_dist, simulate_path, skellam_dist, GameState, ScoringRates};

fn rates() -> ScoringRates {
    ScoringRates::new(2.33, 1.44).unwrap()
}

#[test]
fn terminal_mean_matches_rate_difference() {
    let n = 100_000u64;
    let kickoff = GameState::kickoff();
    let mean = (0..n).map(|i| simulate_path_indexed(rates(), &kickoff, 7, i).terminal() as f64).sum::<f64>() / n as f64;
    assert!((mean - 0.89).abs() < 0.02, "{mean}");
}

#[test]
fn final_dist_agrees_with_skellam() {
    let n = 200_000u64;
    let sim = simulate_final_dist(rates(), &GameState::kickoff(), n, 11).unwrap();
    let exact = skellam_dist(rates(), 1e-12);
    for (k, p) in exact.iter().filter(|(_, p)| *p > 1e-3) {
        let se = (p * (1.0 - p) / n as f64).sqrt();
        assert!((sim.prob(k) - p).abs() < 4.0 * se, "k={k}: {} vs {p}", sim.prob(k));
    }
    assert!(sim.total_variation(&exact) < 0.01);
}

#[test]
fn final_dist_matches_path_terminals() {
    let start = GameState::from_lead(0.3, -1).unwrap();
    let d = simulate_final_dist(rates(), &start, 500, 3).unwrap();
    let counts = (0..500).map(|i| simulate_path_indexed(rates(), &start, 3, i).terminal());
    let from_paths = skellam_core::ScoreDiffDist::from_pairs(counts.map(|k| (k, 1.0))).unwrap();
    assert_eq!(d, from_paths);
}

#[test]
fn goals_in_disjoint_halves_are_uncorrelated() {
    let n = 100_000u64;
    let kickoff = GameState::kickoff();
    let mut xs = Vec::with_capacity(n as usize);
    let mut ys = Vec::with_capacity(n as usize);
    for i in 0..n {
        let p = simulate_path_indexed(rates(), &kickoff, 99, i);
        let first = p.jump_times.iter().filter(|t| **t <= 0.5).count() as f64;
        xs.push(first);
        ys.push(p.jump_times.len() as f64 - first);
    }
    let mx = xs.iter().sum::<f64>() / n as f64;
    let my = ys.iter().sum::<f64>() / n as f64;
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let vx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let vy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let r = cov / (vx * vy).sqrt();
    assert!(r.abs() <= 0.01, "{r}");
    // each half carries half the total rate
    assert!((mx - 0.5 * rates().sum()).abs() < 0.02, "{mx}");
}

#[test]
fn paths_are_reproducible_and_well_formed() {
    let start = GameState::from_lead(0.25, 1).unwrap();
    let a = simulate_path(rates(), &start, 42);
    assert_eq!(a, simulate_path(rates(), &start, 42));
    assert_ne!(simulate_path_indexed(rates(), &start, 42, 1), simulate_path_indexed(rates(), &start, 42, 2));
    assert_eq!(a.start_diff, 1);
    assert!(a.jump_times.windows(2).all(|w| w[0] <= w[1]));
    assert!(a.jump_times.iter().all(|t| *t > 0.25 && *t <= 1.0));
    assert_eq!(a.value_at(0.25), 1);
    let net: i32 = a.jump_signs.iter().map(|s| *s as i32).sum();
    assert_eq!(a.terminal(), 1 + net);
}

#[test]
fn zero_rates_never_jump() {
    let p = simulate_path(ScoringRates::zero(), &GameState::from_lead(0.0, 2).unwrap(), 1);
    assert!(p.jump_times.is_empty());
    assert_eq!(p.terminal(), 2);
}
