use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use super::{GuardTeam, TeamState};
use crate::drawing::Drawing;
use crate::graph::Subgraph;
use crate::par::Execution;
use crate::solver::{CopStrategy, SolverError};

/// A robber move onto the path or across one of its edges, made after
/// setup, that the team did not punish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GuardViolation {
    pub state: TeamState,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GuardReport {
    pub states: usize,
    pub ready_states: usize,
    pub violations: Vec<GuardViolation>,
    /// Ready states with a cop off the path or two consecutive cops more
    /// than the team gap apart.
    pub range_breaks: usize,
}

/// Explores every robber play inside `h` against `team`, checking after
/// setup that landing on the path or crossing a path edge ends in capture at
/// the team's distance.
pub fn check_guard(
    d: &Drawing,
    h: &Subgraph,
    team: &GuardTeam<'_>,
    max_states: usize,
) -> Result<GuardReport, SolverError> {
    let g = d.graph();
    let dist = g.all_pairs(Execution::Sequential);
    let path = team.path();
    let path_edges: HashSet<usize> = path.windows(2).map(|w| g.edge_id(w[0], w[1]).unwrap()).collect();
    let capture = team.capture();
    let caught = |cops: &[usize], r: usize| cops.iter().any(|&c| dist[c][r] as u64 <= capture);
    let strat = |e: crate::solver::StrategyError| SolverError::Strategy(e.to_string());

    let start = team.initial().map_err(strat)?;
    let mut seen: HashSet<(TeamState, usize)> = HashSet::new();
    let mut queue = VecDeque::new();
    for &r in &h.vertices {
        if !caught(&start.cops, r) && seen.insert((start.clone(), r)) {
            queue.push_back((start.clone(), r));
        }
    }
    let mut report = GuardReport {
        states: 0,
        ready_states: 0,
        violations: Vec::new(),
        range_breaks: 0,
    };
    while let Some((state, r)) = queue.pop_front() {
        report.states += 1;
        if report.states > max_states {
            return Err(SolverError::Budget {
                needed: report.states as u128,
                max: max_states,
            });
        }
        if state.ready {
            report.ready_states += 1;
            if !in_range(team, &state) {
                report.range_breaks += 1;
            }
        }
        let mut moves = vec![(r, None)];
        for &y in g.neighbors(r) {
            let e = g.edge_id(r, y).unwrap();
            if h.contains_edge(e) {
                moves.push((y, Some(e)));
            }
        }
        for (to, edge) in moves {
            if caught(&state.cops, to) {
                continue;
            }
            let next = team.respond(&state, to).map_err(strat)?;
            let hit =
                path.contains(&to) || edge.is_some_and(|e| d.crossing_partners(e).any(|f| path_edges.contains(&f)));
            if caught(&next.cops, to) {
                continue;
            }
            if state.ready && hit {
                report.violations.push(GuardViolation {
                    state: state.clone(),
                    from: r,
                    to,
                });
            }
            if seen.insert((next.clone(), to)) {
                queue.push_back((next, to));
            }
        }
    }
    Ok(report)
}

fn in_range(team: &GuardTeam<'_>, state: &TeamState) -> bool {
    let path = team.path();
    let idx: Option<Vec<usize>> = state.cops.iter().map(|c| path.iter().position(|p| p == c)).collect();
    let Some(mut idx) = idx else {
        return false;
    };
    idx.sort_unstable();
    idx.windows(2).all(|w| w[1] - w[0] <= team.gap().max(1))
}
