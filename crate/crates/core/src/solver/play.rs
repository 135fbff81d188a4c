use std::fmt::Debug;
use std::hash::Hash;

use serde::Serialize;
use thiserror::Error;

use super::SolveTables;
use crate::graph::{Graph, UNREACHABLE};
use crate::par::Execution;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrategyError {
    #[error("strategy invariant violated: {0}")]
    Invariant(String),
    #[error("strategy does not apply: {0}")]
    Unsupported(String),
}

/// A deterministic cop strategy with explicit state. Positions are listed
/// per cop; each step moves every cop along at most one edge.
pub trait CopStrategy {
    type State: Clone + Eq + Hash + Debug + Serialize;

    /// The state right after placement.
    fn initial(&self) -> Result<Self::State, StrategyError>;

    fn positions(&self, state: &Self::State) -> Vec<usize>;

    /// The cops' move after seeing the robber at `robber`.
    fn respond(&self, state: &Self::State, robber: usize) -> Result<Self::State, StrategyError>;
}

/// Robber side of a game.
pub trait RobberPolicy {
    fn place(&mut self, g: &Graph, cops: &[usize]) -> usize;
    fn respond(&mut self, g: &Graph, cops: &[usize], robber: usize) -> usize;
}

/// Optimal cops read from solved tables.
pub struct TableCops<'t> {
    pub tables: &'t SolveTables,
}

impl CopStrategy for TableCops<'_> {
    type State = Vec<usize>;

    fn initial(&self) -> Result<Vec<usize>, StrategyError> {
        self.tables
            .placement()
            .map(|(c, _)| c)
            .ok_or_else(|| StrategyError::Unsupported("the robber wins this game".into()))
    }

    fn positions(&self, state: &Vec<usize>) -> Vec<usize> {
        state.clone()
    }

    fn respond(&self, state: &Vec<usize>, robber: usize) -> Result<Vec<usize>, StrategyError> {
        Ok(self.tables.best_cop_move(state, robber))
    }
}

/// Cops that never move.
pub struct PassiveCops {
    pub positions: Vec<usize>,
}

impl CopStrategy for PassiveCops {
    type State = Vec<usize>;

    fn initial(&self) -> Result<Vec<usize>, StrategyError> {
        Ok(self.positions.clone())
    }

    fn positions(&self, state: &Vec<usize>) -> Vec<usize> {
        state.clone()
    }

    fn respond(&self, state: &Vec<usize>, _: usize) -> Result<Vec<usize>, StrategyError> {
        Ok(state.clone())
    }
}

/// Optimal robber read from solved tables.
pub struct OptimalRobber<'t> {
    pub tables: &'t SolveTables,
}

impl RobberPolicy for OptimalRobber<'_> {
    fn place(&mut self, _: &Graph, cops: &[usize]) -> usize {
        self.tables.best_robber_placement(cops).unwrap_or(0)
    }

    fn respond(&mut self, g: &Graph, cops: &[usize], robber: usize) -> usize {
        self.tables.best_robber_move(g, cops, robber)
    }
}

/// Moves to maximise distance to the nearest cop; ties go to the lowest id.
pub struct GreedyRobber {
    dist: Vec<Vec<u32>>,
}

impl GreedyRobber {
    pub fn new(g: &Graph) -> Self {
        GreedyRobber {
            dist: g.all_pairs(Execution::Sequential),
        }
    }

    fn clearance(&self, cops: &[usize], v: usize) -> u32 {
        cops.iter().map(|&c| self.dist[c][v]).min().unwrap_or(UNREACHABLE)
    }

    fn best(&self, cops: &[usize], options: impl Iterator<Item = usize>) -> usize {
        let mut best = (0u32, usize::MAX);
        for v in options {
            let c = self.clearance(cops, v);
            if best.1 == usize::MAX || c > best.0 || (c == best.0 && v < best.1) {
                best = (c, v);
            }
        }
        best.1
    }
}

impl RobberPolicy for GreedyRobber {
    fn place(&mut self, g: &Graph, cops: &[usize]) -> usize {
        self.best(cops, 0..g.n())
    }

    fn respond(&mut self, g: &Graph, cops: &[usize], robber: usize) -> usize {
        self.best(cops, std::iter::once(robber).chain(g.neighbors(robber).iter().copied()))
    }
}

/// Places at a fixed vertex and never moves.
pub struct StationaryRobber(pub usize);

impl RobberPolicy for StationaryRobber {
    fn place(&mut self, _: &Graph, _: &[usize]) -> usize {
        self.0
    }

    fn respond(&mut self, _: &Graph, _: &[usize], robber: usize) -> usize {
        robber
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Cops,
    Robber,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlayError {
    #[error("illegal move by the {side:?} in round {round}")]
    IllegalMove { side: Side, round: u32 },
    #[error(transparent)]
    Strategy(#[from] StrategyError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Round {
    pub cops: Vec<usize>,
    pub robber: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transcript {
    pub placement: Round,
    pub rounds: Vec<Round>,
    /// Round of capture (0 for capture at placement).
    pub captured_in: Option<u32>,
    /// Which side's move completed the capture.
    pub captured_after: Option<Side>,
}

/// Can `old` reach `new` with every cop moving along at most one edge, up to
/// relabelling of the cops?
pub fn legal_cop_move(g: &Graph, old: &[usize], new: &[usize]) -> bool {
    if old.len() != new.len() || new.iter().any(|&v| v >= g.n()) {
        return false;
    }
    let ok = |a: usize, b: usize| a == b || g.has_edge(a, b);
    if old.iter().zip(new).all(|(&a, &b)| ok(a, b)) {
        return true;
    }
    // bipartite matching of old cops to new positions
    let p = old.len();
    let mut owner = vec![usize::MAX; p];
    fn augment(
        i: usize,
        old: &[usize],
        new: &[usize],
        ok: &dyn Fn(usize, usize) -> bool,
        seen: &mut [bool],
        owner: &mut [usize],
    ) -> bool {
        for j in 0..new.len() {
            if !seen[j] && ok(old[i], new[j]) {
                seen[j] = true;
                if owner[j] == usize::MAX || augment(owner[j], old, new, ok, seen, owner) {
                    owner[j] = i;
                    return true;
                }
            }
        }
        false
    }
    (0..p).all(|i| {
        let mut seen = vec![false; p];
        augment(i, old, new, &ok, &mut seen, &mut owner)
    })
}

/// Plays a strategy against a robber policy for at most `round_cap` rounds.
pub fn play<S: CopStrategy, R: RobberPolicy>(
    g: &Graph,
    strategy: &S,
    robber: &mut R,
    d: u64,
    round_cap: u32,
) -> Result<Transcript, PlayError> {
    let dist = g.all_pairs(Execution::Sequential);
    let caught = |cops: &[usize], r: usize| {
        cops.iter()
            .any(|&c| dist[c][r] != UNREACHABLE && dist[c][r] as u64 <= d)
    };
    let mut state = strategy.initial()?;
    let mut cops = strategy.positions(&state);
    if cops.iter().any(|&c| c >= g.n()) {
        return Err(PlayError::IllegalMove {
            side: Side::Cops,
            round: 0,
        });
    }
    let mut r = robber.place(g, &cops);
    if r >= g.n() {
        return Err(PlayError::IllegalMove {
            side: Side::Robber,
            round: 0,
        });
    }
    let placement = Round {
        cops: cops.clone(),
        robber: r,
    };
    let mut t = Transcript {
        placement,
        rounds: Vec::new(),
        captured_in: None,
        captured_after: None,
    };
    if caught(&cops, r) {
        t.captured_in = Some(0);
        t.captured_after = Some(Side::Robber);
        return Ok(t);
    }
    for round in 1..=round_cap {
        state = strategy.respond(&state, r)?;
        let next = strategy.positions(&state);
        if !legal_cop_move(g, &cops, &next) {
            return Err(PlayError::IllegalMove {
                side: Side::Cops,
                round,
            });
        }
        cops = next;
        if caught(&cops, r) {
            t.rounds.push(Round {
                cops: cops.clone(),
                robber: r,
            });
            t.captured_in = Some(round);
            t.captured_after = Some(Side::Cops);
            return Ok(t);
        }
        let nr = robber.respond(g, &cops, r);
        if nr >= g.n() || (nr != r && !g.has_edge(r, nr)) {
            return Err(PlayError::IllegalMove {
                side: Side::Robber,
                round,
            });
        }
        r = nr;
        t.rounds.push(Round {
            cops: cops.clone(),
            robber: r,
        });
        if caught(&cops, r) {
            t.captured_in = Some(round);
            t.captured_after = Some(Side::Robber);
            return Ok(t);
        }
    }
    Ok(t)
}
