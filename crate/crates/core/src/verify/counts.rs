use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use crate::graph::Graph;
use crate::par::Execution;
use crate::solver::{cop_win, GameConfig, SolverError};

/// What the solver established about a cop number.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Count {
    Exactly(usize),
    /// At least this many; `budget` when the next solve was over budget
    /// rather than beyond the cop cap.
    AtLeast {
        p: usize,
        budget: bool,
    },
}

impl Count {
    pub fn lo(self) -> usize {
        match self {
            Count::Exactly(p) | Count::AtLeast { p, .. } => p,
        }
    }

    pub fn hi(self) -> Option<usize> {
        match self {
            Count::Exactly(p) => Some(p),
            Count::AtLeast { .. } => None,
        }
    }

    pub fn plus(self, k: usize) -> Count {
        match self {
            Count::Exactly(p) => Count::Exactly(p + k),
            Count::AtLeast { p, budget } => Count::AtLeast { p: p + k, budget },
        }
    }

    pub fn max(self, other: Count) -> Count {
        match (self.hi(), other.hi()) {
            (Some(a), Some(b)) => Count::Exactly(a.max(b)),
            _ => Count::AtLeast {
                p: self.lo().max(other.lo()),
                budget: self.over_budget() || other.over_budget(),
            },
        }
    }

    pub fn over_budget(self) -> bool {
        matches!(self, Count::AtLeast { budget: true, .. })
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Exactly(p) => write!(f, "{p}"),
            Count::AtLeast { p, .. } => write!(f, ">={p}"),
        }
    }
}

/// `a <= b`: decided true, decided false, or unknown.
pub fn le(a: Count, b: Count) -> Option<bool> {
    if a.hi().is_some_and(|h| h <= b.lo()) {
        return Some(true);
    }
    if b.hi().is_some_and(|h| a.lo() > h) {
        return Some(false);
    }
    None
}

/// Cop numbers by iterated solving up to a cap, memoised per key.
pub struct Counter {
    pub cap: usize,
    pub max_states: usize,
    memo: RefCell<HashMap<(String, u64), Count>>,
}

impl Counter {
    pub fn new(cap: usize, max_states: usize) -> Self {
        Counter {
            cap,
            max_states,
            memo: RefCell::new(HashMap::new()),
        }
    }

    /// `c_d(g)`, with `key` naming `g` for the memo.
    pub fn count(&self, key: &str, g: &Graph, d: u64) -> Count {
        if let Some(&c) = self.memo.borrow().get(&(key.to_string(), d)) {
            return c;
        }
        let c = self.solve(g, d);
        self.memo.borrow_mut().insert((key.to_string(), d), c);
        c
    }

    fn solve(&self, g: &Graph, d: u64) -> Count {
        for p in 1..=self.cap {
            let cfg = GameConfig::new(g, p, d)
                .max_states(self.max_states)
                .exec(Execution::Sequential);
            match cop_win(&cfg) {
                Ok((true, _)) => return Count::Exactly(p),
                Ok((false, _)) => {}
                Err(SolverError::Budget { .. }) => return Count::AtLeast { p, budget: true },
                Err(e) => panic!("solver failed on a corpus graph: {e}"),
            }
        }
        Count::AtLeast {
            p: self.cap + 1,
            budget: false,
        }
    }

    /// Whether `p` cops win `c_d(g)`, or `None` over budget.
    pub fn wins(&self, g: &Graph, p: usize, d: u64, max_states: usize) -> Option<bool> {
        let cfg = GameConfig::new(g, p, d)
            .max_states(max_states)
            .exec(Execution::Sequential);
        match cop_win(&cfg) {
            Ok((w, _)) => Some(w),
            Err(SolverError::Budget { .. }) => None,
            Err(e) => panic!("solver failed on a corpus graph: {e}"),
        }
    }
}
