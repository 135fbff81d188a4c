use std::collections::HashMap;

use serde::Serialize;

use super::play::{CopStrategy, Round};
use super::SolverError;
use crate::graph::{Graph, UNREACHABLE};
use crate::par::Execution;

/// Outcome of the robber's best response to a fixed cop strategy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Certificate {
    /// Every robber play is caught within `rounds` cop moves.
    Capture { rounds: u32, states: usize },
    /// A reachable loop of positions the robber can repeat forever. `prefix`
    /// starts with the robber's placement.
    Escape {
        placement: Vec<usize>,
        prefix: Vec<Round>,
        cycle: Vec<Round>,
    },
}

impl Certificate {
    pub fn is_capture(&self) -> bool {
        matches!(self, Certificate::Capture { .. })
    }

    pub fn rounds(&self) -> Option<u32> {
        match self {
            Certificate::Capture { rounds, .. } => Some(*rounds),
            Certificate::Escape { .. } => None,
        }
    }
}

#[derive(Clone, Copy)]
enum Succ {
    Capture,
    Node(usize),
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Color {
    White,
    Gray,
    Black(u32),
}

struct Search<'a, S: CopStrategy> {
    g: &'a Graph,
    strategy: &'a S,
    d: u64,
    dist: Vec<Vec<u32>>,
    ids: HashMap<(S::State, usize), usize>,
    nodes: Vec<(S::State, usize)>,
    color: Vec<Color>,
    max_states: usize,
}

impl<S: CopStrategy> Search<'_, S> {
    fn caught(&self, cops: &[usize], r: usize) -> bool {
        cops.iter()
            .any(|&c| self.dist[c][r] != UNREACHABLE && self.dist[c][r] as u64 <= self.d)
    }

    fn intern(&mut self, s: S::State, r: usize) -> Result<usize, SolverError> {
        if let Some(&id) = self.ids.get(&(s.clone(), r)) {
            return Ok(id);
        }
        if self.nodes.len() >= self.max_states {
            return Err(SolverError::Budget {
                needed: self.nodes.len() as u128 + 1,
                max: self.max_states,
            });
        }
        let id = self.nodes.len();
        self.ids.insert((s.clone(), r), id);
        self.nodes.push((s, r));
        self.color.push(Color::White);
        Ok(id)
    }

    /// Robber moves from `options`, each followed by the cops' answer.
    fn expand(&mut self, s: &S::State, options: impl Iterator<Item = usize>) -> Result<Vec<Succ>, SolverError> {
        let cops = self.strategy.positions(s);
        let mut out = Vec::new();
        for r in options {
            if self.caught(&cops, r) {
                continue;
            }
            let next = self
                .strategy
                .respond(s, r)
                .map_err(|e| SolverError::Strategy(e.to_string()))?;
            if self.caught(&self.strategy.positions(&next), r) {
                out.push(Succ::Capture);
            } else {
                out.push(Succ::Node(self.intern(next, r)?));
            }
        }
        Ok(out)
    }

    fn node_succs(&mut self, id: usize) -> Result<Vec<Succ>, SolverError> {
        let (s, r) = self.nodes[id].clone();
        let mut options = vec![r];
        options.extend_from_slice(self.g.neighbors(r));
        options.sort_unstable();
        self.expand(&s, options.into_iter())
    }

    fn round(&self, id: usize) -> Round {
        let (s, r) = &self.nodes[id];
        Round {
            cops: self.strategy.positions(s),
            robber: *r,
        }
    }
}

struct Frame {
    node: Option<usize>,
    succs: Vec<Succ>,
    pos: usize,
    best: u32,
}

/// Explores every robber play against `strategy`. Cops are deterministic, so
/// the robber escapes exactly when a cycle of uncaught positions is
/// reachable; otherwise the longest play gives the capture bound.
pub fn best_response<S: CopStrategy>(
    g: &Graph,
    strategy: &S,
    d: u64,
    max_states: usize,
) -> Result<Certificate, SolverError> {
    if g.n() == 0 {
        return Err(SolverError::EmptyGraph);
    }
    let mut search = Search {
        g,
        strategy,
        d,
        dist: g.all_pairs(Execution::Sequential),
        ids: HashMap::new(),
        nodes: Vec::new(),
        color: Vec::new(),
        max_states,
    };
    let start = strategy.initial().map_err(|e| SolverError::Strategy(e.to_string()))?;
    let placement = strategy.positions(&start);
    if let Some(&v) = placement.iter().find(|&&v| v >= g.n()) {
        return Err(SolverError::InvalidVertex(v));
    }
    let root_succs = search.expand(&start, 0..g.n())?;
    let mut stack = vec![Frame {
        node: None,
        succs: root_succs,
        pos: 0,
        best: 0,
    }];
    loop {
        let top = stack.last_mut().unwrap();
        if top.pos == top.succs.len() {
            let done = stack.pop().unwrap();
            match done.node {
                None => {
                    return Ok(Certificate::Capture {
                        rounds: done.best,
                        states: search.nodes.len(),
                    })
                }
                Some(id) => {
                    search.color[id] = Color::Black(done.best);
                    let parent = stack.last_mut().unwrap();
                    parent.best = parent.best.max(1 + done.best);
                }
            }
            continue;
        }
        let succ = top.succs[top.pos];
        top.pos += 1;
        match succ {
            Succ::Capture => top.best = top.best.max(1),
            Succ::Node(id) => match search.color[id] {
                Color::Black(v) => top.best = top.best.max(1 + v),
                Color::White => {
                    search.color[id] = Color::Gray;
                    let succs = search.node_succs(id)?;
                    stack.push(Frame {
                        node: Some(id),
                        succs,
                        pos: 0,
                        best: 0,
                    });
                }
                Color::Gray => {
                    let path: Vec<usize> = stack.iter().filter_map(|f| f.node).collect();
                    let at = path.iter().position(|&x| x == id).unwrap();
                    return Ok(Certificate::Escape {
                        placement,
                        prefix: path[..at].iter().map(|&x| search.round(x)).collect(),
                        cycle: path[at..].iter().map(|&x| search.round(x)).collect(),
                    });
                }
            },
        }
    }
}
