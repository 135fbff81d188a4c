use serde::Serialize;

use super::{beta, capture_distance, flank_gap, self_crossings, Alpha, Kind, StrategyBuildError};
use crate::drawing::Drawing;
use crate::graph::{Graph, Subgraph, UNREACHABLE};
use crate::par::Execution;
use crate::solver::{CopStrategy, StrategyError};

/// One step from `from` along a shortest path to `to`, lowest id first.
pub(crate) fn step_toward(g: &Graph, dist: &[Vec<u32>], from: usize, to: usize) -> usize {
    let here = dist[from][to];
    if here == 0 || here == UNREACHABLE {
        return from;
    }
    *g.neighbors(from)
        .iter()
        .find(|&&y| dist[y][to] + 1 == here)
        .expect("shortest path step")
}

/// Path indices of the shadow cop followed by `beta` flankers behind it and
/// `beta` ahead of it, each clamped to the path.
pub(crate) fn team_targets(len: usize, center: usize, beta: usize, gap: usize) -> Vec<usize> {
    let last = len - 1;
    let mut out = vec![center];
    out.extend((1..=beta).map(|m| center.saturating_sub(m * gap)));
    out.extend((1..=beta).map(|m| (center + m * gap).min(last)));
    out
}

/// The shadow index: the robber's subgraph distance from the path start,
/// capped at the path's last index.
pub(crate) fn center_index(hdist: &[u32], robber: usize, len: usize) -> Option<usize> {
    match hdist[robber] {
        UNREACHABLE => None,
        d => Some((d as usize).min(len - 1)),
    }
}

/// Cops on the path walk along it toward their target index; the others
/// walk toward the nearest path vertex.
pub(crate) fn move_team(g: &Graph, dist: &[Vec<u32>], path: &[usize], cops: &[usize], targets: &[usize]) -> Vec<usize> {
    cops.iter()
        .zip(targets)
        .map(|(&c, &i)| match path.iter().position(|&p| p == c) {
            Some(j) if j < i => path[j + 1],
            Some(j) if j > i => path[j - 1],
            Some(_) => c,
            None => {
                let near = *path.iter().min_by_key(|&&p| dist[c][p]).unwrap();
                step_toward(g, dist, c, near)
            }
        })
        .collect()
}

/// The lowest-index cop close enough to capture, and where it moves.
pub(crate) fn capture_move(
    g: &Graph,
    dist: &[Vec<u32>],
    cops: &[usize],
    robber: usize,
    capture: u64,
) -> Option<(usize, usize)> {
    cops.iter()
        .position(|&c| (dist[c][robber] as u64) <= capture + 1)
        .map(|i| (i, step_toward(g, dist, cops[i], robber)))
}

pub(crate) fn is_shortest_in(g: &Graph, hdist: &[u32], h: &Subgraph, p: &[usize]) -> bool {
    !p.is_empty()
        && p.iter()
            .enumerate()
            .all(|(i, &v)| h.contains_vertex(v) && hdist[v] == i as u32)
        && p.windows(2)
            .all(|w| g.edge_id(w[0], w[1]).is_some_and(|e| h.contains_edge(e)))
}

/// A team guarding one shortest path: a shadow cop at the robber's projection
/// and `beta` flankers on each side, `gap` apart.
#[derive(Clone, Debug)]
pub struct GuardTeam<'g> {
    g: &'g Graph,
    dist: Vec<Vec<u32>>,
    path: Vec<usize>,
    hdist: Vec<u32>,
    beta: usize,
    gap: usize,
    capture: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TeamState {
    pub cops: Vec<usize>,
    /// Every cop has reached its target at least once.
    pub ready: bool,
}

impl<'g> GuardTeam<'g> {
    fn build(
        g: &'g Graph,
        h: &Subgraph,
        path: &[usize],
        beta: usize,
        gap: usize,
        capture: u64,
    ) -> Result<Self, StrategyBuildError> {
        if path.is_empty() || !h.contains_vertex(path[0]) {
            return Err(StrategyBuildError::NotAPath);
        }
        let hdist = h.bfs_within(g, path[0]);
        if !is_shortest_in(g, &hdist, h, path) {
            return Err(StrategyBuildError::NotShortest);
        }
        Ok(GuardTeam {
            g,
            dist: g.all_pairs(Execution::Sequential),
            path: path.to_vec(),
            hdist,
            beta,
            gap,
            capture,
        })
    }

    pub fn path(&self) -> &[usize] {
        &self.path
    }

    pub fn beta(&self) -> usize {
        self.beta
    }

    pub fn gap(&self) -> usize {
        self.gap
    }

    pub fn capture(&self) -> u64 {
        self.capture
    }

    pub fn size(&self) -> usize {
        2 * self.beta + 1
    }

    /// Target path indices for the robber at `robber`.
    pub fn targets(&self, robber: usize) -> Option<Vec<usize>> {
        let c = center_index(&self.hdist, robber, self.path.len())?;
        Some(team_targets(self.path.len(), c, self.beta, self.gap))
    }

    /// The minimal subpath holding the team, as path indices.
    pub fn range(&self, state: &TeamState) -> Option<(usize, usize)> {
        let idx: Option<Vec<usize>> = state
            .cops
            .iter()
            .map(|c| self.path.iter().position(|p| p == c))
            .collect();
        let idx = idx?;
        Some((*idx.iter().min()?, *idx.iter().max()?))
    }
}

impl CopStrategy for GuardTeam<'_> {
    type State = TeamState;

    fn initial(&self) -> Result<TeamState, StrategyError> {
        Ok(TeamState {
            cops: vec![self.path[0]; self.size()],
            ready: false,
        })
    }

    fn positions(&self, state: &TeamState) -> Vec<usize> {
        state.cops.clone()
    }

    fn respond(&self, state: &TeamState, robber: usize) -> Result<TeamState, StrategyError> {
        if let Some((i, to)) = capture_move(self.g, &self.dist, &state.cops, robber, self.capture) {
            let mut cops = state.cops.clone();
            cops[i] = to;
            return Ok(TeamState {
                cops,
                ready: state.ready,
            });
        }
        let targets = self
            .targets(robber)
            .ok_or_else(|| StrategyError::Invariant(format!("robber at {robber} left the subgraph")))?;
        let cops = move_team(self.g, &self.dist, &self.path, &state.cops, &targets);
        let at_targets = cops.iter().zip(&targets).all(|(&c, &i)| c == self.path[i]);
        Ok(TeamState {
            cops,
            ready: state.ready || at_targets,
        })
    }
}

/// One cop shadowing the shortest path `p` of `h`.
pub fn shadow_path_guard<'g>(h: &'g Graph, p: &[usize]) -> Result<GuardTeam<'g>, StrategyBuildError> {
    let all = Subgraph {
        vertices: (0..h.n()).collect(),
        edges: (0..h.m()).collect(),
    };
    GuardTeam::build(h, &all, p, 0, 1, 0)
}

/// A team of `2 beta + 1` cops crossing-guarding `p` inside `h` at distance
/// `ceil(alpha d) - 1`, with `d` the drawing's `x` or `X`.
pub fn crossing_guard_team<'g>(
    d: &'g Drawing,
    h: &Subgraph,
    p: &[usize],
    kind: Kind,
    alpha: Alpha,
) -> Result<GuardTeam<'g>, StrategyBuildError> {
    let param = param_of(d, kind)?;
    let b = beta(kind, alpha, param)?;
    if !self_crossings(d, p)?.is_empty() {
        return Err(StrategyBuildError::SelfCrossing);
    }
    GuardTeam::build(
        d.graph(),
        h,
        p,
        b as usize,
        flank_gap(alpha, param) as usize,
        capture_distance(alpha, param),
    )
}

pub(crate) fn param_of(d: &Drawing, kind: Kind) -> Result<u64, StrategyBuildError> {
    let p = d.xx_params();
    match kind {
        Kind::Small => p.x,
        Kind::Big => p.big_x,
    }
    .finite()
    .ok_or(StrategyBuildError::InfiniteParameter)
}
