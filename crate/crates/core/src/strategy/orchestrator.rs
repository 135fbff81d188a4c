use std::rc::Rc;

use serde::Serialize;

use super::paths::blocked_sets;
use super::team::{capture_move, center_index, move_team, param_of, team_targets};
use super::{
    beta, capture_distance, check_st_subgraph, flank_gap, noncrossing_shortest_path, robber_territory, self_crossings,
    Alpha, Kind, StrategyBuildError,
};
use crate::drawing::{Drawing, Kites};
use crate::graph::{Graph, Subgraph};
use crate::par::Execution;
use crate::solver::{CopStrategy, StrategyError};

/// A guarded shortest path together with the distances of the subgraph it
/// was computed in, measured from its start.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Guard {
    pub team: usize,
    pub path: Vec<usize>,
    #[serde(skip)]
    hdist: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OrchState {
    pub cops: Vec<usize>,
    /// Guards past setup, oldest first. Never more than two.
    pub active: Vec<Rc<Guard>>,
    /// The team walking into position on the next path.
    pub pending: Option<Rc<Guard>>,
}

impl OrchState {
    pub fn phase(&self) -> &'static str {
        if self.active.len() < 2 {
            "guarding_path"
        } else {
            "guarding_cycle"
        }
    }
}

/// Three teams sweeping the robber's territory one shortest path at a time.
pub struct Orchestrator<'d> {
    d: &'d Drawing,
    g: &'d Graph,
    dist: Vec<Vec<u32>>,
    kites: Kites,
    beta: usize,
    gap: usize,
    capture: u64,
    param: u64,
}

fn invariant(e: impl std::fmt::Display) -> StrategyError {
    StrategyError::Invariant(e.to_string())
}

impl<'d> Orchestrator<'d> {
    pub fn team_size(&self) -> usize {
        2 * self.beta + 1
    }

    pub fn cop_count(&self) -> usize {
        3 * self.team_size()
    }

    pub fn capture(&self) -> u64 {
        self.capture
    }

    pub fn param(&self) -> u64 {
        self.param
    }

    pub fn beta(&self) -> usize {
        self.beta
    }

    fn team_cops(&self, team: usize) -> std::ops::Range<usize> {
        team * self.team_size()..(team + 1) * self.team_size()
    }

    fn make_guard(&self, team: usize, h: &Subgraph, s: usize, t: usize) -> Result<Guard, StrategyError> {
        check_st_subgraph(self.d, &self.kites, h, s, t).map_err(invariant)?;
        let path = noncrossing_shortest_path(self.d, &self.kites, h, s, t).map_err(invariant)?;
        Ok(Guard {
            team,
            path,
            hdist: h.bfs_within(self.g, s),
        })
    }

    fn targets(&self, guard: &Guard, robber: usize) -> Result<Vec<usize>, StrategyError> {
        let c = center_index(&guard.hdist, robber, guard.path.len())
            .ok_or_else(|| invariant(format!("robber at {robber} outside the subgraph of a guard")))?;
        Ok(team_targets(guard.path.len(), c, self.beta, self.gap))
    }

    fn first_pair(&self) -> (usize, usize) {
        let n = self.g.n();
        let diam = (0..n).flat_map(|s| self.dist[s].iter().copied()).max().unwrap_or(0);
        (0..n)
            .flat_map(|s| (s..n).map(move |t| (s, t)))
            .find(|&(s, t)| self.dist[s][t] == diam)
            .unwrap_or((0, 0))
    }

    fn paths(guards: &[Rc<Guard>]) -> Vec<Vec<usize>> {
        guards.iter().map(|g| g.path.clone()).collect()
    }

    /// Promotes the pending guard, frees guards no longer needed and starts
    /// the next path.
    fn advance(&self, cops: Vec<usize>, state: &OrchState, robber: usize) -> Result<OrchState, StrategyError> {
        let pending = state.pending.clone().expect("pending guard");
        let before = robber_territory(self.d, &Self::paths(&state.active), robber).map_err(invariant)?;
        let mut guards = state.active.clone();
        guards.push(pending);
        let after = robber_territory(self.d, &Self::paths(&guards), robber).map_err(invariant)?;
        if after.subgraph.vertices.len() >= before.subgraph.vertices.len() {
            return Err(invariant("territory did not shrink"));
        }
        let t = &after.subgraph;

        // edges leaving the territory, each must stay blocked
        let mut exits = Vec::new();
        for &w in &t.vertices {
            for &y in self.g.neighbors(w) {
                let e = self.g.edge_id(w, y).unwrap();
                if !t.contains_edge(e) {
                    exits.push((y, e));
                }
            }
        }
        let covers = |set: &[Rc<Guard>]| -> Result<bool, StrategyError> {
            let (on, blocked) = blocked_sets(self.d, &Self::paths(set)).map_err(invariant)?;
            Ok(exits.iter().all(|&(y, e)| on[y] || blocked[e]))
        };
        let mut i = 0;
        while i + 1 < guards.len() {
            let mut rest = guards.clone();
            rest.remove(i);
            if covers(&rest)? {
                guards = rest;
            } else {
                i += 1;
            }
        }
        if guards.len() > 2 {
            return Err(invariant("three guards still needed"));
        }
        for (a, ga) in guards.iter().enumerate() {
            if !self_crossings(self.d, &ga.path).map_err(invariant)?.is_empty() {
                return Err(invariant("frontier crosses itself"));
            }
            let own: Vec<usize> = ga
                .path
                .windows(2)
                .map(|w| self.g.edge_id(w[0], w[1]).unwrap())
                .collect();
            for gb in &guards[a + 1..] {
                if gb.path.windows(2).any(|w| {
                    let e = self.g.edge_id(w[0], w[1]).unwrap();
                    self.d.crossing_partners(e).any(|f| own.contains(&f))
                }) {
                    return Err(invariant("frontier crosses itself"));
                }
            }
        }

        let (s, t_end) = self.choose_ends(&guards, t)?;
        let h = self.extend(&guards, t, s, t_end)?;
        let team = (0..3)
            .find(|x| guards.iter().all(|g| g.team != *x))
            .expect("a free team");
        let next = self.make_guard(team, &h, s, t_end)?;
        Ok(OrchState {
            cops,
            active: guards,
            pending: Some(Rc::new(next)),
        })
    }

    /// Guarded vertices with an edge into the territory that crosses no
    /// guarded edge, per guard in path order.
    fn attachments(&self, guards: &[Rc<Guard>], t: &Subgraph) -> Result<Vec<Vec<usize>>, StrategyError> {
        let (_, blocked) = blocked_sets(self.d, &Self::paths(guards)).map_err(invariant)?;
        Ok(guards
            .iter()
            .map(|gd| {
                gd.path
                    .iter()
                    .copied()
                    .filter(|&v| {
                        self.g
                            .neighbors(v)
                            .iter()
                            .any(|&y| t.contains_vertex(y) && !blocked[self.g.edge_id(v, y).unwrap()])
                    })
                    .collect()
            })
            .collect())
    }

    fn choose_ends(&self, guards: &[Rc<Guard>], t: &Subgraph) -> Result<(usize, usize), StrategyError> {
        let per = self.attachments(guards, t)?;
        let mut all: Vec<usize> = per.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        match all.len() {
            0 => Err(invariant("territory is not attached to the frontier")),
            1 => Ok((all[0], t.vertices[0])),
            _ => {
                if let Some(p) = per.iter().find(|p| p.len() >= 2) {
                    return Ok((p[0], *p.last().unwrap()));
                }
                Ok((per[0][0], per[1][0]))
            }
        }
    }

    /// The territory plus the non-crossing edges joining it to `s` and `t`.
    fn extend(&self, guards: &[Rc<Guard>], t: &Subgraph, s: usize, t_end: usize) -> Result<Subgraph, StrategyError> {
        let (_, blocked) = blocked_sets(self.d, &Self::paths(guards)).map_err(invariant)?;
        let mut vertices = t.vertices.clone();
        let mut edges = t.edges.clone();
        for v in [s, t_end] {
            if t.contains_vertex(v) {
                continue;
            }
            vertices.push(v);
            for &y in self.g.neighbors(v) {
                let e = self.g.edge_id(v, y).unwrap();
                if t.contains_vertex(y) && !blocked[e] {
                    edges.push(e);
                }
            }
        }
        vertices.sort_unstable();
        vertices.dedup();
        edges.sort_unstable();
        edges.dedup();
        Ok(Subgraph { vertices, edges })
    }
}

impl CopStrategy for Orchestrator<'_> {
    type State = OrchState;

    fn initial(&self) -> Result<OrchState, StrategyError> {
        let (s, t) = self.first_pair();
        let whole = Subgraph {
            vertices: (0..self.g.n()).collect(),
            edges: (0..self.g.m()).collect(),
        };
        let guard = self.make_guard(0, &whole, s, t)?;
        Ok(OrchState {
            cops: vec![s; self.cop_count()],
            active: Vec::new(),
            pending: Some(Rc::new(guard)),
        })
    }

    fn positions(&self, state: &OrchState) -> Vec<usize> {
        state.cops.clone()
    }

    fn respond(&self, state: &OrchState, robber: usize) -> Result<OrchState, StrategyError> {
        let near = |cops: &[usize]| cops.iter().any(|&c| self.dist[c][robber] as u64 <= self.capture);
        if near(&state.cops) {
            return Ok(state.clone());
        }
        let mut cops = state.cops.clone();
        if let Some((i, to)) = capture_move(self.g, &self.dist, &state.cops, robber, self.capture) {
            cops[i] = to;
            return Ok(OrchState {
                cops,
                active: state.active.clone(),
                pending: state.pending.clone(),
            });
        }
        let mut pending_ready = false;
        for (guard, is_pending) in state
            .active
            .iter()
            .map(|g| (g, false))
            .chain(state.pending.iter().map(|g| (g, true)))
        {
            let targets = self.targets(guard, robber)?;
            let range = self.team_cops(guard.team);
            let moved = move_team(self.g, &self.dist, &guard.path, &state.cops[range.clone()], &targets);
            if is_pending {
                pending_ready = moved.iter().zip(&targets).all(|(&c, &i)| c == guard.path[i]);
            }
            cops[range].copy_from_slice(&moved);
        }
        if !pending_ready {
            return Ok(OrchState {
                cops,
                active: state.active.clone(),
                pending: state.pending.clone(),
            });
        }
        self.advance(cops, state, robber)
    }
}

/// The three-team strategy for a kite-augmented 1-plane drawing, capturing
/// at distance `ceil(alpha d) - 1` with `d` the drawing's `x` or `X`.
pub fn orchestrate(d: &Drawing, kind: Kind, alpha: Alpha) -> Result<Orchestrator<'_>, StrategyBuildError> {
    if d.rotation().is_none() || d.max_crossings_per_edge() > 1 || !d.validate().is_empty() || !d.graph().is_unit() {
        return Err(StrategyBuildError::NotKiteAugmented);
    }
    let kites = d.kites().map_err(|_| StrategyBuildError::NotKiteAugmented)?;
    if !kites.complete() {
        return Err(StrategyBuildError::NotKiteAugmented);
    }
    if d.n() == 0 || !d.graph().is_connected() {
        return Err(StrategyBuildError::Disconnected);
    }
    let param = param_of(d, kind)?;
    Ok(Orchestrator {
        d,
        g: d.graph(),
        dist: d.graph().all_pairs(Execution::Sequential),
        kites,
        beta: beta(kind, alpha, param)? as usize,
        gap: flank_gap(alpha, param) as usize,
        capture: capture_distance(alpha, param),
        param,
    })
}
