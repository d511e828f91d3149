mod common;

use folkegal_core::eval::{evaluate_joint, evaluate_mixed_pair};
use folkegal_core::oracle::{policy_count, policy_from_id};
use folkegal_core::solvers::{
    best_response, ce_vi, friend_vi, security_profile, shapley_solve, solve_mdp_w, Sense,
};
use folkegal_core::{GameBuilder, Player};

#[test]
fn defender_and_attacker_properties() {
    let mut rng = common::rng(11);
    let eps = 1e-3;
    for _ in 0..15 {
        let g = common::random_small(&mut rng, 4, false);
        for p in Player::both() {
            let sol = shapley_solve(&g, p, eps).unwrap();
            let bound = g.return_bound();
            assert!(sol.value.abs() <= bound + 1e-9);
            for _ in 0..100 {
                let opp = common::random_mixed(&mut rng, &g, p.other());
                let (m1, m2) = if p == Player::One { (&sol.defender, &opp) } else { (&opp, &sol.defender) };
                let x = evaluate_mixed_pair(&g, m1, m2, 1e-10).unwrap().get(p);
                assert!(x >= sol.value - eps - 1e-6, "defender {x} vs value {}", sol.value);

                let me = common::random_mixed(&mut rng, &g, p);
                let (m1, m2) = if p == Player::One { (&me, &sol.attacker) } else { (&sol.attacker, &me) };
                let y = evaluate_mixed_pair(&g, m1, m2, 1e-10).unwrap().get(p);
                assert!(y <= sol.value + eps + 1e-6, "attacker {y} vs value {}", sol.value);
            }
        }
    }
}

#[test]
fn shapley_matches_support_enumeration_reference() {
    let mut rng = common::rng(12);
    for _ in 0..20 {
        let g = common::random_game(&mut rng, 3, 2, 2, 0.8, true, false);
        let sol = shapley_solve(&g, Player::One, 1e-4).unwrap();
        let reference = common::reference_zero_sum_value(&g, Player::One);
        assert!((sol.value - reference).abs() <= 1e-4, "{} vs {reference}", sol.value);
    }
}

#[test]
fn residuals_never_increase_after_the_first_sweep() {
    let mut rng = common::rng(13);
    for _ in 0..20 {
        let g = common::random_small(&mut rng, 4, false);
        let zs = shapley_solve(&g, Player::One, 1e-6).unwrap();
        let w = solve_mdp_w(&g, 0.3, 1e-6).unwrap();
        for r in [&zs.residuals, &w.residuals] {
            for pair in r.windows(2).skip(1) {
                assert!(pair[1] <= pair[0] + 1e-12, "{r:?}");
            }
        }
    }
}

#[test]
fn scalarized_solution_matches_enumeration() {
    let mut rng = common::rng(14);
    let eps = 1e-6;
    for _ in 0..40 {
        let g = common::random_small(&mut rng, 4, false);
        for w in [0.0, 0.25, 0.5, 0.9, 1.0] {
            let sol = solve_mdp_w(&g, w, eps).unwrap();
            assert!((sol.scalar - sol.payoff.sigma(w)).abs() <= 1e-9);
            let recomputed = evaluate_joint(&g, &sol.policy, 1e-12).unwrap();
            assert!(recomputed.distance(sol.payoff) <= 1e-9);
            let best = (0..policy_count(&g) as u64)
                .map(|id| evaluate_joint(&g, &policy_from_id(&g, id), 1e-12).unwrap().sigma(w))
                .fold(f64::NEG_INFINITY, f64::max);
            assert!((sol.scalar - best).abs() <= eps, "w={w}: {} vs {best}", sol.scalar);
        }
    }
}

#[test]
fn player_one_payoff_grows_with_weight() {
    let mut rng = common::rng(15);
    let eps = 1e-6;
    for _ in 0..20 {
        let g = common::random_small(&mut rng, 3, false);
        let mut last = f64::NEG_INFINITY;
        for k in 0..=20 {
            let p1 = solve_mdp_w(&g, k as f64 / 20.0, eps).unwrap().payoff.p1;
            assert!(p1 >= last - eps);
            last = p1;
        }
    }
}

#[test]
fn best_response_dominates_random_responses() {
    let mut rng = common::rng(16);
    for _ in 0..10 {
        let g = common::random_small(&mut rng, 3, false);
        let opp = common::random_mixed(&mut rng, &g, Player::Two);
        let br = best_response(&g, Player::One, &opp, Player::One, Sense::Maximize, 1e-9).unwrap();
        let direct = evaluate_mixed_pair(&g, &br.policy, &opp, 1e-12).unwrap().p1;
        assert!((direct - br.value).abs() <= 1e-8);
        for _ in 0..30 {
            let me = common::random_mixed(&mut rng, &g, Player::One);
            assert!(evaluate_mixed_pair(&g, &me, &opp, 1e-12).unwrap().p1 <= br.value + 1e-8);
        }
    }
}

fn one_shot(table: &[[(f64, f64); 2]; 2], gamma: f64) -> folkegal_core::StochasticGame {
    let mut b = GameBuilder::new(1, 2, 2, gamma);
    for a1 in 0..2 {
        for a2 in 0..2 {
            b.transition(0, a1, a2, 0, 1.0).reward(0, a1, a2, table[a1][a2].0, table[a1][a2].1);
        }
    }
    b.build().unwrap()
}

#[test]
fn friend_plays_joint_optimum_in_common_interest_games() {
    let g = one_shot(&[[(1.0, 1.0), (0.0, 0.0)], [(0.0, 0.0), (3.0, 3.0)]], 0.5);
    let f = friend_vi(&g, 1e-9).unwrap();
    assert!((f.payoff.p1 - 6.0).abs() < 1e-9 && (f.payoff.p2 - 6.0).abs() < 1e-9);
}

#[test]
fn friend_miscoordinates_when_wishes_differ() {
    // each player's favourite cell needs the other's cooperation
    let g = one_shot(&[[(5.0, 1.0), (0.0, 0.0)], [(0.0, 0.0), (1.0, 5.0)]], 0.0);
    let f = friend_vi(&g, 1e-9).unwrap();
    assert_eq!((f.payoff.p1, f.payoff.p2), (0.0, 0.0));
}

#[test]
fn security_profile_of_zero_sum_game_is_its_value() {
    let g = one_shot(&[[(1.0, -1.0), (-1.0, 1.0)], [(-1.0, 1.0), (1.0, -1.0)]], 0.5);
    let s = security_profile(&g, 1e-6).unwrap();
    assert!(s.payoff.p1.abs() < 1e-9 && s.payoff.p2.abs() < 1e-9);
    assert!(s.disagreement.p1.abs() < 1e-6 && s.disagreement.p2.abs() < 1e-6);
}

#[test]
fn ce_vi_on_dominant_stage_game() {
    let g = one_shot(&[[(3.0, 3.0), (0.0, 5.0)], [(5.0, 0.0), (1.0, 1.0)]], 0.5);
    let s = ce_vi(&g, 1e-9, 10_000).unwrap();
    assert!(s.converged);
    // (row 1, col 1) is dominant: 1 / (1 - 0.5)
    assert!((s.payoff.p1 - 2.0).abs() < 1e-6 && (s.payoff.p2 - 2.0).abs() < 1e-6);
}
