mod common;

use folkegal_core::simulate::{horizon_cap, simulate, Deviator, TRUNCATION_MASS};
use folkegal_core::{folk_egal, GameBuilder, Player, ProfileMode, StochasticGame};

fn matching_game() -> StochasticGame {
    // (0,0) pays (0, 2), (1,1) pays (2, 0), mismatches pay (-1, -1)
    let mut b = GameBuilder::new(2, 2, 2, 0.0);
    b.terminal(1);
    for a1 in 0..2 {
        for a2 in 0..2 {
            let (r1, r2) = match (a1, a2) {
                (0, 0) => (0.0, 2.0),
                (1, 1) => (2.0, 0.0),
                _ => (-1.0, -1.0),
            };
            b.transition(0, a1, a2, 1, 1.0).reward(0, a1, a2, r1, r2);
        }
    }
    b.build().unwrap()
}

#[test]
fn horizon_matches_truncation_mass() {
    assert_eq!(horizon_cap(0.0), 1);
    for gamma in [0.5, 0.9, 0.95, 0.99] {
        let t = horizon_cap(gamma);
        assert!(gamma.powi(t as i32) / (1.0 - gamma) < TRUNCATION_MASS);
        assert!(gamma.powi(t as i32 - 1) / (1.0 - gamma) >= TRUNCATION_MASS);
    }
}

#[test]
fn same_seed_same_report() {
    let mut rng = common::rng(31);
    for _ in 0..5 {
        let g = common::random_small(&mut rng, 3, false);
        let p = folk_egal(&g, 1e-2).unwrap().profile;
        for dev in [Deviator::None, Deviator::Random(Player::Two)] {
            let a = simulate(&g, &p, 500, dev, 7).unwrap();
            let b = simulate(&g, &p, 500, dev, 7).unwrap();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn alternation_tracks_lambda() {
    let g = matching_game();
    let p = folk_egal(&g, 1e-3).unwrap().profile;
    assert_eq!(p.mode(), ProfileMode::Alternating);
    let lambda = p.lambda().unwrap();
    for rounds in [101, 1000] {
        let r = simulate(&g, &p, rounds, Deviator::None, 3).unwrap();
        assert_eq!(r.left_rounds + r.right_rounds, rounds);
        assert!((r.left_rounds as f64 - lambda * rounds as f64).abs() <= 1.0);
        assert!(r.average.distance(r.target) <= 2.0 / rounds as f64 + 1e-9);
        assert_eq!(r.detected_round, None);
    }
}

#[test]
fn averages_converge_to_target() {
    let mut rng = common::rng(32);
    let mut checked = 0;
    for _ in 0..10 {
        let g = common::random_small(&mut rng, 3, false);
        let p = folk_egal(&g, 1e-2).unwrap().profile;
        let short = simulate(&g, &p, 2_000, Deviator::None, 11).unwrap();
        let long = simulate(&g, &p, 50_000, Deviator::None, 11).unwrap();
        for r in [&short, &long] {
            let tol1 = 5.0 * r.std_error.p1 + 2e-2;
            let tol2 = 5.0 * r.std_error.p2 + 2e-2;
            assert!((r.average.p1 - r.target.p1).abs() <= tol1, "{r:?}");
            assert!((r.average.p2 - r.target.p2).abs() <= tol2, "{r:?}");
        }
        assert!(long.std_error.p1 <= short.std_error.p1 + 1e-12);
        checked += 1;
    }
    assert_eq!(checked, 10);
}

#[test]
fn deviators_are_detected_and_punished() {
    let g = matching_game();
    let out = folk_egal(&g, 1e-3).unwrap();
    let p = out.profile;
    for player in [Player::One, Player::Two] {
        let r = simulate(&g, &p, 2_000, Deviator::Random(player), 5).unwrap();
        let d = r.detected_round.expect("random play leaves the path");
        assert!(d < 20);
        let i = player.index();
        let gained = r.average.get(player) - p.target.get(player);
        assert!(gained < 0.0, "deviation by {i} paid off: {r:?}");

        let r = simulate(&g, &p, 2_000, Deviator::BestResponseOnce(player), 5).unwrap();
        if let Some(d) = r.detected_round {
            assert_eq!(d, 0);
            assert!(r.average.get(player) <= p.target.get(player) + 1e-2);
        }
    }
}

#[test]
fn zero_rounds_is_an_error() {
    let g = matching_game();
    let p = folk_egal(&g, 1e-3).unwrap().profile;
    assert!(simulate(&g, &p, 0, Deviator::None, 0).is_err());
}
