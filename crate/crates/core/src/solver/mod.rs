//! Exact distance-d cops and robbers by retrograde analysis.
//!
//! Rules: the cops place, then the robber places. A round is a cop move
//! followed by a robber move, and either side may stay put. The robber is
//! caught as soon as some cop is within distance `d` of it, checked after
//! every placement and move.

mod play;
mod response;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, UNREACHABLE};
use crate::par::{self, Execution};

pub use play::{
    play, CopStrategy, GreedyRobber, OptimalRobber, PassiveCops, PlayError, RobberPolicy, Round, Side,
    StationaryRobber, StrategyError, TableCops, Transcript,
};
pub use response::{best_response, Certificate};

pub const DEFAULT_MAX_STATES: usize = 5_000_000;
pub const MAX_STATES_ENV: &str = "COPNUM_MAX_STATES";

/// The state budget from `COPNUM_MAX_STATES`, or the default.
pub fn default_max_states() -> usize {
    std::env::var(MAX_STATES_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_STATES)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("state budget exceeded: {needed} states needed, {max} allowed")]
    Budget { needed: u128, max: usize },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("vertex {0} out of range")]
    InvalidVertex(usize),
    #[error("strategy failed: {0}")]
    Strategy(String),
}

#[derive(Clone, Debug)]
pub struct GameConfig<'g> {
    pub graph: &'g Graph,
    pub p: usize,
    pub d: u64,
    pub max_states: usize,
    pub exec: Execution,
}

impl<'g> GameConfig<'g> {
    pub fn new(graph: &'g Graph, p: usize, d: u64) -> Self {
        GameConfig {
            graph,
            p,
            d,
            max_states: default_max_states(),
            exec: Execution::default(),
        }
    }

    pub fn max_states(mut self, max: usize) -> Self {
        self.max_states = max;
        self
    }

    pub fn exec(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Turn {
    Cop,
    Robber,
}

/// A position: sorted cops, robber, side to act.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GameState {
    pub cops: Vec<usize>,
    pub robber: usize,
    pub turn: Turn,
}

/// Binomial coefficients `C(a, b)` for `a < rows`, `b <= cols`, saturating.
struct Binomials {
    cols: usize,
    table: Vec<u128>,
}

impl Binomials {
    fn new(rows: usize, cols: usize) -> Self {
        let mut table = vec![0u128; rows * (cols + 1)];
        for a in 0..rows {
            table[a * (cols + 1)] = 1;
            for b in 1..=cols.min(a) {
                let left = if b < a { table[(a - 1) * (cols + 1) + b] } else { 0 };
                table[a * (cols + 1) + b] = table[(a - 1) * (cols + 1) + b - 1].saturating_add(left);
            }
        }
        Binomials { cols, table }
    }

    fn get(&self, a: usize, b: usize) -> u128 {
        if b > a {
            0
        } else {
            self.table[a * (self.cols + 1) + b]
        }
    }
}

/// Number of sorted multisets of `p` cops on `n` vertices.
pub fn configuration_count(n: usize, p: usize) -> u128 {
    if p == 0 {
        return 1;
    }
    Binomials::new(n + p, p).get(n + p - 1, p)
}

/// Ranks sorted cop multisets: with `b_i = c_i + i`, the rank is
/// `sum C(b_i, i + 1)`.
pub struct ConfigIndex {
    n: usize,
    p: usize,
    binom: Binomials,
    configs: Vec<u32>,
}

impl ConfigIndex {
    fn new(n: usize, p: usize) -> Self {
        let binom = Binomials::new(n + p, p);
        let total = binom.get(n + p - 1, p) as usize;
        let mut configs = vec![0u32; total * p];
        let mut cur = vec![0usize; p];
        let mut idx = ConfigIndex {
            n,
            p,
            binom,
            configs: Vec::new(),
        };
        if p > 0 {
            loop {
                let r = idx.rank(&cur);
                for (i, &c) in cur.iter().enumerate() {
                    configs[r * p + i] = c as u32;
                }
                // next nondecreasing sequence
                let mut i = p;
                while i > 0 && cur[i - 1] == n - 1 {
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
                cur[i - 1] += 1;
                let v = cur[i - 1];
                for c in &mut cur[i..] {
                    *c = v;
                }
            }
        }
        idx.configs = configs;
        idx
    }

    pub fn len(&self) -> usize {
        self.configs.len().checked_div(self.p).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Rank of a sorted multiset.
    pub fn rank(&self, sorted: &[usize]) -> usize {
        sorted
            .iter()
            .enumerate()
            .map(|(i, &c)| self.binom.get(c + i, i + 1) as usize)
            .sum()
    }

    pub fn rank_unsorted(&self, cops: &[usize]) -> usize {
        let mut s = cops.to_vec();
        s.sort_unstable();
        self.rank(&s)
    }

    pub fn config(&self, rank: usize) -> impl Iterator<Item = usize> + '_ {
        self.configs[rank * self.p..(rank + 1) * self.p]
            .iter()
            .map(|&c| c as usize)
    }

    pub fn config_vec(&self, rank: usize) -> Vec<usize> {
        self.config(rank).collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

const UNSET: u32 = u32::MAX;

/// Solved game tables. Values count cop moves until capture; `None` means
/// the robber evades forever from that position.
pub struct SolveTables {
    n: usize,
    d: u64,
    index: ConfigIndex,
    dist: Vec<Vec<u32>>,
    /// Cops to move at `(config, robber)`.
    cop_value: Vec<u32>,
    cop_move: Vec<u32>,
    /// Robber to move at `(config, robber)`.
    robber_value: Vec<u32>,
    robber_move: Vec<u32>,
    placement: Option<(usize, u32)>,
}

impl SolveTables {
    fn at(&self, config: usize, r: usize) -> usize {
        config * self.n + r
    }

    pub fn p(&self) -> usize {
        self.index.p
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn index(&self) -> &ConfigIndex {
        &self.index
    }

    pub fn captured(&self, cops: &[usize], r: usize) -> bool {
        cops.iter()
            .any(|&c| (self.dist[c][r] as u64) <= self.d && self.dist[c][r] != UNREACHABLE)
    }

    /// Rounds to capture with the cops to move; `Some(0)` if already caught.
    pub fn cop_steps(&self, cops: &[usize], r: usize) -> Option<u32> {
        if self.captured(cops, r) {
            return Some(0);
        }
        let v = self.cop_value[self.at(self.index.rank_unsorted(cops), r)];
        (v != UNSET).then_some(v)
    }

    /// Rounds to capture with the robber to move; `Some(0)` if already
    /// caught or every robber move is caught.
    pub fn robber_steps(&self, cops: &[usize], r: usize) -> Option<u32> {
        if self.captured(cops, r) {
            return Some(0);
        }
        let v = self.robber_value[self.at(self.index.rank_unsorted(cops), r)];
        (v != UNSET).then_some(v)
    }

    pub fn win(&self, state: &GameState) -> bool {
        self.steps(state).is_some()
    }

    pub fn steps(&self, state: &GameState) -> Option<u32> {
        match state.turn {
            Turn::Cop => self.cop_steps(&state.cops, state.robber),
            Turn::Robber => self.robber_steps(&state.cops, state.robber),
        }
    }

    /// An optimal cop move (sorted). From a robber-winning position the cops
    /// stay put.
    pub fn best_cop_move(&self, cops: &[usize], r: usize) -> Vec<usize> {
        let mut sorted = cops.to_vec();
        sorted.sort_unstable();
        if self.captured(&sorted, r) {
            return sorted;
        }
        let m = self.cop_move[self.at(self.index.rank(&sorted), r)];
        if m == UNSET {
            sorted
        } else {
            self.index.config_vec(m as usize)
        }
    }

    /// An optimal robber move: the slowest capture if the cops win, else a
    /// move to a robber-winning position (lowest id).
    pub fn best_robber_move(&self, g: &Graph, cops: &[usize], r: usize) -> usize {
        let rank = self.index.rank_unsorted(cops);
        let m = self.robber_move[self.at(rank, r)];
        if m != UNSET {
            return m as usize;
        }
        let mut moves = vec![r];
        moves.extend_from_slice(g.neighbors(r));
        moves.sort_unstable();
        moves
            .iter()
            .copied()
            .find(|&y| !self.captured(cops, y) && self.cop_value[self.at(rank, y)] == UNSET)
            .or_else(|| moves.iter().copied().find(|&y| !self.captured(cops, y)))
            .unwrap_or(r)
    }

    /// The robber's best answer to a placement: a vertex the cops cannot
    /// win from, else the slowest capture. `None` if no vertex is safe.
    pub fn best_robber_placement(&self, cops: &[usize]) -> Option<usize> {
        let rank = self.index.rank_unsorted(cops);
        let mut best: Option<(u32, usize)> = None;
        for r in 0..self.n {
            if self.captured(cops, r) {
                continue;
            }
            let v = self.cop_value[self.at(rank, r)];
            if best.is_none_or(|(bv, _)| v > bv) {
                best = Some((v, r));
            }
        }
        best.map(|(_, r)| r)
    }

    /// The winning placement minimising worst-case rounds, with that bound.
    pub fn placement(&self) -> Option<(Vec<usize>, u32)> {
        self.placement.map(|(rank, steps)| (self.index.config_vec(rank), steps))
    }
}

/// Does `cfg.p` cops with radius `cfg.d` win? Also returns the solved tables.
pub fn cop_win(cfg: &GameConfig) -> Result<(bool, SolveTables), SolverError> {
    let g = cfg.graph;
    let n = g.n();
    if n == 0 {
        return Err(SolverError::EmptyGraph);
    }
    let p = cfg.p;
    let configs = configuration_count(n, p);
    let needed = configs.saturating_mul(2 * n as u128);
    if needed > cfg.max_states as u128 {
        return Err(SolverError::Budget {
            needed,
            max: cfg.max_states,
        });
    }
    let dist = g.all_pairs(cfg.exec);
    let index = ConfigIndex::new(n, p);
    let k = index.len();
    let mut t = SolveTables {
        n,
        d: cfg.d,
        index,
        dist,
        cop_value: vec![UNSET; k * n],
        cop_move: vec![UNSET; k * n],
        robber_value: vec![UNSET; k * n],
        robber_move: vec![UNSET; k * n],
        placement: None,
    };
    if p == 0 {
        return Ok((false, t));
    }

    // covered[c * n + r]: some cop of configuration c is within d of r
    let mut covered = vec![false; k * n];
    par::fill_chunks(cfg.exec, &mut covered, n, |row, off| {
        let cfgs: Vec<usize> = t.index.config(off / n).collect();
        for (r, cell) in row.iter_mut().enumerate() {
            *cell = cfgs
                .iter()
                .any(|&c| t.dist[c][r] != UNREACHABLE && t.dist[c][r] as u64 <= cfg.d);
        }
    });
    let moves: Vec<Vec<u32>> = par::map_collect(cfg.exec, k, |c| {
        let cops = t.index.config_vec(c);
        cop_moves(g, &t.index, &cops)
    });

    // safe robber moves still unresolved, per robber-to-move node
    let mut counter = vec![0u16; k * n];
    let mut layer: Vec<(usize, usize)> = Vec::new();
    let mut robber_stack: Vec<(usize, usize)> = Vec::new();
    for c in 0..k {
        for r in 0..n {
            let i = c * n + r;
            if covered[i] {
                continue;
            }
            let safe = std::iter::once(r)
                .chain(g.neighbors(r).iter().copied())
                .filter(|&y| !covered[c * n + y])
                .count();
            counter[i] = safe as u16;
            if safe == 0 {
                t.robber_value[i] = 0;
                robber_stack.push((c, r));
            }
            if let Some(&m) = moves[c].iter().find(|&&m| covered[m as usize * n + r]) {
                t.cop_value[i] = 1;
                t.cop_move[i] = m;
                layer.push((c, r));
            }
        }
    }

    let mut value = 0u32;
    loop {
        // robber nodes resolved with `value`: their cop predecessors get value + 1
        let mut next = Vec::new();
        while let Some((c2, r)) = robber_stack.pop() {
            for &c in &moves[c2] {
                let i = c as usize * n + r;
                if covered[i] || t.cop_value[i] != UNSET {
                    continue;
                }
                t.cop_value[i] = value + 1;
                t.cop_move[i] = c2 as u32;
                next.push((c as usize, r));
            }
        }
        layer.extend(next);
        if layer.is_empty() {
            break;
        }
        value += 1;
        // cop nodes with `value`: decrement robber predecessors
        for (c, y) in std::mem::take(&mut layer) {
            for r in std::iter::once(y).chain(g.neighbors(y).iter().copied()) {
                let i = c * n + r;
                if covered[i] || t.robber_value[i] != UNSET {
                    continue;
                }
                counter[i] -= 1;
                if counter[i] == 0 {
                    t.robber_value[i] = value;
                    t.robber_move[i] = y as u32;
                    robber_stack.push((c, r));
                }
            }
        }
    }

    for c in 0..k {
        let mut worst = 0u32;
        let mut ok = true;
        for r in 0..n {
            let i = c * n + r;
            if covered[i] {
                continue;
            }
            if t.cop_value[i] == UNSET {
                ok = false;
                break;
            }
            worst = worst.max(t.cop_value[i]);
        }
        if ok && t.placement.is_none_or(|(_, w)| worst < w) {
            t.placement = Some((c, worst));
        }
    }
    Ok((t.placement.is_some(), t))
}

/// Distinct canonical configurations reachable in one cop move.
fn cop_moves(g: &Graph, index: &ConfigIndex, cops: &[usize]) -> Vec<u32> {
    let options: Vec<Vec<usize>> = cops
        .iter()
        .map(|&c| {
            let mut o = vec![c];
            o.extend_from_slice(g.neighbors(c));
            o
        })
        .collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; cops.len()];
    let mut buf = vec![0usize; cops.len()];
    loop {
        for (i, &j) in pick.iter().enumerate() {
            buf[i] = options[i][j];
        }
        out.push(index.rank_unsorted(&buf) as u32);
        let mut i = 0;
        while i < pick.len() {
            pick[i] += 1;
            if pick[i] < options[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
        if i == pick.len() {
            break;
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "p")]
pub enum CopNumber {
    Exactly(usize),
    Exceeds(usize),
}

impl CopNumber {
    pub fn value(self) -> Option<usize> {
        match self {
            CopNumber::Exactly(p) => Some(p),
            CopNumber::Exceeds(_) => None,
        }
    }
}

/// Least `p <= p_max` such that `p` cops win with radius `d`.
pub fn cop_number(
    g: &Graph,
    d: u64,
    p_max: usize,
    max_states: usize,
    exec: Execution,
) -> Result<CopNumber, SolverError> {
    if g.n() == 0 {
        return Err(SolverError::EmptyGraph);
    }
    for p in 1..=p_max {
        if p == 1 && one_cop_covers(g, d, exec) {
            return Ok(CopNumber::Exactly(1));
        }
        let cfg = GameConfig::new(g, p, d).max_states(max_states).exec(exec);
        if cop_win(&cfg)?.0 {
            return Ok(CopNumber::Exactly(p));
        }
    }
    Ok(CopNumber::Exceeds(p_max))
}

/// Some vertex within `d` of every vertex: one cop wins at placement.
fn one_cop_covers(g: &Graph, d: u64, exec: Execution) -> bool {
    par::map_collect(exec, g.n(), |s| {
        g.distances(s).unwrap().iter().all(|x| x.is_some_and(|x| x <= d))
    })
    .into_iter()
    .any(|b| b)
}

/// Solves with a raised budget; `Ok(None)` when the budget is exceeded.
pub fn try_cop_win(g: &Graph, p: usize, d: u64, max_states: usize) -> Result<Option<bool>, SolverError> {
    match cop_win(&GameConfig::new(g, p, d).max_states(max_states)) {
        Ok((w, _)) => Ok(Some(w)),
        Err(SolverError::Budget { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests;
