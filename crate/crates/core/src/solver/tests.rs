use proptest::prelude::*;

use super::*;
use crate::solver::play::legal_cop_move;

/// Corner removal: one cop wins on a connected graph iff repeatedly deleting
/// dominated vertices leaves a single vertex.
fn dismantlable(g: &Graph) -> bool {
    if !g.is_connected() {
        return false;
    }
    let mut alive: Vec<bool> = vec![true; g.n()];
    let mut left = g.n();
    let closed = |v: usize, alive: &[bool]| -> Vec<usize> {
        let mut s: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| alive[w]).collect();
        s.push(v);
        s
    };
    while left > 1 {
        let corner = (0..g.n()).find(|&u| {
            alive[u]
                && (0..g.n()).any(|v| {
                    v != u && alive[v] && {
                        let nv = closed(v, &alive);
                        closed(u, &alive).iter().all(|w| nv.contains(w))
                    }
                })
        });
        match corner {
            Some(u) => {
                alive[u] = false;
                left -= 1;
            }
            None => return false,
        }
    }
    true
}

fn win(g: &Graph, p: usize, d: u64) -> bool {
    cop_win(&GameConfig::new(g, p, d).max_states(DEFAULT_MAX_STATES))
        .unwrap()
        .0
}

fn tables(g: &Graph, p: usize, d: u64) -> SolveTables {
    cop_win(&GameConfig::new(g, p, d).max_states(DEFAULT_MAX_STATES))
        .unwrap()
        .1
}

#[test]
fn four_cycle() {
    let c4 = Graph::cycle(4);
    assert!(!win(&c4, 1, 0));
    assert!(win(&c4, 1, 1));
    assert!(win(&c4, 2, 0));
}

#[test]
fn cop_on_every_vertex() {
    let (w, t) = cop_win(&GameConfig::new(&Graph::cycle(5), 5, 0)).unwrap();
    assert!(w);
    assert_eq!(t.placement().unwrap().1, 0);
}

#[test]
fn zero_cops_never_win() {
    assert!(!win(&Graph::complete(3), 0, 5));
}

#[test]
fn tree_needs_one_cop() {
    let g = Graph::new(7, vec![(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap();
    assert_eq!(
        cop_number(&g, 0, 3, DEFAULT_MAX_STATES, Execution::default()).unwrap(),
        CopNumber::Exactly(1)
    );
}

#[test]
fn petersen_needs_three() {
    assert_eq!(
        cop_number(&Graph::petersen(), 0, 3, DEFAULT_MAX_STATES, Execution::default()).unwrap(),
        CopNumber::Exactly(3)
    );
    assert_eq!(
        cop_number(&Graph::petersen(), 0, 2, DEFAULT_MAX_STATES, Execution::default()).unwrap(),
        CopNumber::Exceeds(2)
    );
}

#[test]
fn radius_at_least_diameter() {
    let g = Graph::grid(3, 4);
    let diam = g.diameter().unwrap() as u64;
    assert_eq!(
        cop_number(&g, diam, 1, DEFAULT_MAX_STATES, Execution::default()).unwrap(),
        CopNumber::Exactly(1)
    );
}

#[test]
fn budget_is_reported() {
    let g = Graph::cycle(10);
    let err = cop_win(&GameConfig::new(&g, 3, 0).max_states(100)).err().unwrap();
    assert_eq!(
        err,
        SolverError::Budget {
            needed: 220 * 20,
            max: 100
        }
    );
}

#[test]
fn empty_graph_is_rejected() {
    assert_eq!(
        cop_win(&GameConfig::new(&Graph::empty(0), 1, 0)).err(),
        Some(SolverError::EmptyGraph)
    );
}

#[test]
fn config_ranks_are_a_bijection() {
    for (n, p) in [(1, 1), (4, 2), (5, 3), (7, 1), (3, 4)] {
        let idx = ConfigIndex::new(n, p);
        assert_eq!(idx.len() as u128, configuration_count(n, p));
        for r in 0..idx.len() {
            let c = idx.config_vec(r);
            assert!(c.windows(2).all(|w| w[0] <= w[1]));
            assert_eq!(idx.rank(&c), r);
        }
    }
    assert_eq!(configuration_count(30, 3), 4960);
}

#[test]
fn sequential_and_parallel_agree() {
    let g = Graph::petersen();
    for p in 1..=3 {
        let a = cop_win(&GameConfig::new(&g, p, 0).exec(Execution::Sequential)).unwrap();
        let b = cop_win(&GameConfig::new(&g, p, 0).exec(Execution::Parallel)).unwrap();
        assert_eq!(a.0, b.0);
        assert_eq!(a.1.placement(), b.1.placement());
        assert_eq!(a.1.cop_value, b.1.cop_value);
    }
}

#[test]
fn optimal_play_meets_the_table_bound() {
    let g = Graph::petersen();
    let t = tables(&g, 3, 0);
    let bound = t.placement().unwrap().1;
    let tr = play(&g, &TableCops { tables: &t }, &mut OptimalRobber { tables: &t }, 0, 100).unwrap();
    assert_eq!(tr.captured_in, Some(bound));
    let tr = play(&g, &TableCops { tables: &t }, &mut GreedyRobber::new(&g), 0, 100).unwrap();
    assert!(tr.captured_in.unwrap() <= bound);
}

#[test]
fn best_response_matches_table_bound() {
    let g = Graph::petersen();
    let t = tables(&g, 3, 0);
    let cert = best_response(&g, &TableCops { tables: &t }, 0, 1_000_000).unwrap();
    assert_eq!(cert.rounds(), Some(t.placement().unwrap().1));
}

#[test]
fn capture_at_placement() {
    let g = Graph::cycle(4);
    let cops = PassiveCops { positions: vec![0] };
    let tr = play(&g, &cops, &mut StationaryRobber(1), 1, 0).unwrap();
    assert_eq!(tr.captured_in, Some(0));
    let cert = best_response(
        &g,
        &PassiveCops {
            positions: vec![0, 1, 2, 3],
        },
        0,
        100,
    )
    .unwrap();
    assert_eq!(cert, Certificate::Capture { rounds: 0, states: 0 });
}

#[test]
fn passing_forever() {
    let g = Graph::cycle(6);
    let tr = play(&g, &PassiveCops { positions: vec![0] }, &mut StationaryRobber(3), 0, 7).unwrap();
    assert_eq!(tr.rounds.len(), 7);
    assert_eq!(tr.captured_in, None);
}

#[test]
fn stationary_cop_is_escaped() {
    let g = Graph::cycle(4);
    let cert = best_response(&g, &PassiveCops { positions: vec![0] }, 0, 100).unwrap();
    match cert {
        Certificate::Escape { cycle, .. } => assert!(!cycle.is_empty()),
        c => panic!("expected escape, got {c:?}"),
    }
}

struct Teleport;

impl CopStrategy for Teleport {
    type State = usize;
    fn initial(&self) -> Result<usize, StrategyError> {
        Ok(0)
    }
    fn positions(&self, s: &usize) -> Vec<usize> {
        vec![*s]
    }
    fn respond(&self, _: &usize, _: usize) -> Result<usize, StrategyError> {
        Ok(3)
    }
}

#[test]
fn illegal_cop_moves_are_flagged() {
    let g = Graph::path_graph(5);
    let err = play(&g, &Teleport, &mut StationaryRobber(4), 0, 3).unwrap_err();
    assert_eq!(
        err,
        PlayError::IllegalMove {
            side: Side::Cops,
            round: 1
        }
    );
}

#[test]
fn multiset_moves_are_matched() {
    let g = Graph::path_graph(4);
    assert!(legal_cop_move(&g, &[0, 2], &[1, 1]));
    assert!(legal_cop_move(&g, &[0, 3], &[2, 1]));
    assert!(!legal_cop_move(&g, &[0, 0], &[1, 2]));
}

fn small_graph() -> impl Strategy<Value = Graph> {
    (3usize..8)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<bool>(), n * (n - 1) / 2)))
        .prop_map(|(n, bits)| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::new(n, edges).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn one_cop_matches_dismantlability(g in small_graph()) {
        prop_assert_eq!(win(&g, 1, 0), dismantlable(&g));
    }

    #[test]
    fn more_cops_never_hurt(g in small_graph(), d in 0u64..3) {
        for p in 1..3 {
            if win(&g, p, d) {
                prop_assert!(win(&g, p + 1, d));
            }
        }
    }

    #[test]
    fn larger_radius_never_hurts(g in small_graph()) {
        let exec = Execution::default();
        let c0 = cop_number(&g, 0, 4, DEFAULT_MAX_STATES, exec).unwrap();
        let c1 = cop_number(&g, 1, 4, DEFAULT_MAX_STATES, exec).unwrap();
        if let (Some(a), Some(b)) = (c0.value(), c1.value()) {
            prop_assert!(b <= a);
        }
    }

    #[test]
    fn replayed_tables_capture_within_bound(g in small_graph(), d in 0u64..2) {
        let t = tables(&g, 2, d);
        if let Some((_, bound)) = t.placement() {
            let tr = play(&g, &TableCops { tables: &t }, &mut OptimalRobber { tables: &t }, d, bound + 1).unwrap();
            prop_assert_eq!(tr.captured_in, Some(bound));
        }
    }
}
