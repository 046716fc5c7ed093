use blowup_core::game::{
    game_tree_oracle, oracle_with, play_game, strategy_a, worst_case_rounds, GameState, Move, OracleResult, ROUND_CAP,
};
use proptest::prelude::*;

/// Every antichain of the grid `{0..=max}^2`, as minimal vertex sets.
fn plane_states(max: u32) -> Vec<GameState> {
    // an antichain in the plane is a strictly decreasing staircase
    fn extend(prefix: &mut Vec<Vec<u32>>, max: u32, out: &mut Vec<GameState>) {
        if !prefix.is_empty() {
            out.push(GameState::new(prefix.clone()).unwrap());
        }
        let (lo_x, hi_y) = match prefix.last() {
            Some(p) => (p[0] + 1, p[1].checked_sub(1)),
            None => (0, Some(max)),
        };
        let Some(hi_y) = hi_y else { return };
        for x in lo_x..=max {
            for y in 0..=hi_y {
                prefix.push(vec![x, y]);
                extend(prefix, max, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), max, &mut out);
    out
}

#[test]
fn plane_sweep_defeats_every_adversary() {
    let states = plane_states(6);
    assert_eq!(states.len(), 3431);
    let mut longest = 0;
    for s in &states {
        match worst_case_rounds(s, ROUND_CAP) {
            Ok(k) => longest = longest.max(k),
            Err(stuck) => panic!("strategy stalls from {s} at {stuck}"),
        }
    }
    println!("n=2 sweep: {} states, longest forced play {longest} rounds", states.len());
}

#[test]
fn space_fixtures() {
    let fixtures = ["2 0 0\n0 2 0\n0 0 2", "3 0 0\n0 2 0\n0 0 1", "1 0 0\n0 1 0\n0 0 1", "4 1 0\n0 3 2\n1 0 3"];
    for text in fixtures {
        let s = GameState::parse(text).unwrap();
        assert!(worst_case_rounds(&s, ROUND_CAP).is_ok(), "strategy stalls from {s}");
    }
    let s = GameState::parse(fixtures[0]).unwrap();
    let pair = strategy_a(&s).unwrap();
    assert_eq!(pair, vec![0, 1]);
    // after A's first pair every reply of B still leaves a forced win
    for &j in &pair {
        let next = s.apply_move(&Move { subset: pair.clone(), choice: j }).unwrap();
        assert!(matches!(oracle_with(&next, 8, 200_000, true), OracleResult::ForcedWin(_)));
    }
}

#[test]
fn oracle_budget_reports_unknown() {
    let s = GameState::parse("6 0 0\n0 5 0\n0 0 4\n1 1 1").unwrap();
    assert_eq!(game_tree_oracle(&s, 1), OracleResult::Unknown);
}

#[test]
fn singleton_start_has_empty_transcript() {
    let s = GameState::parse("2 3").unwrap();
    let t = play_game(&s, strategy_a, |_, j| j[0], ROUND_CAP).unwrap();
    assert!(t.won);
    assert!(t.rounds.is_empty());
}

fn state_strategy() -> impl Strategy<Value = GameState> {
    prop::collection::vec(prop::collection::vec(0u32..=6, 3), 1..=4).prop_map(|p| GameState::new(p).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn moves_keep_states_minimal(s in state_strategy(), i in 0usize..3, k in 0usize..3, pick in any::<bool>()) {
        prop_assume!(i != k);
        let j = if pick { i } else { k };
        let next = s.apply_move(&Move { subset: vec![i, k], choice: j }).unwrap();
        let again = GameState::new(next.points().to_vec()).unwrap();
        prop_assert_eq!(next, again);
    }

    #[test]
    fn dominated_points_do_not_change_winning(s in state_strategy(), extra in prop::collection::vec(0u32..=3, 3)) {
        let mut pts = s.points().to_vec();
        let base = pts[0].clone();
        pts.push(base.iter().zip(&extra).map(|(a, b)| a + b).collect());
        prop_assert_eq!(GameState::new(pts).unwrap().is_won(), s.is_won());
    }

    #[test]
    fn random_space_states_are_won(s in state_strategy()) {
        prop_assert!(worst_case_rounds(&s, ROUND_CAP).is_ok());
    }
}
