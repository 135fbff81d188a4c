//! Constructive cop strategies for kite-augmented 1-plane drawings:
//! shortest-path shadowing, crossing-guard teams and the three-team sweep.

mod guard_check;
mod orchestrator;
mod paths;
mod team;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

pub use guard_check::{check_guard, GuardReport, GuardViolation};
pub use orchestrator::{orchestrate, Guard, OrchState, Orchestrator};
pub use paths::{check_st_subgraph, noncrossing_shortest_path, robber_territory, self_crossings, Territory};
pub use team::{crossing_guard_team, shadow_path_guard, GuardTeam, TeamState};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrategyBuildError {
    #[error("alpha must be a rational number at least 1")]
    InvalidAlpha,
    #[error("kind X with alpha = 1 needs X >= 1")]
    DegenerateX,
    #[error("path is not a shortest path of the subgraph")]
    NotShortest,
    #[error("path has self-crossing edges")]
    SelfCrossing,
    #[error("drawing must be kite-augmented, 1-plane and carry a rotation")]
    NotKiteAugmented,
    #[error("graph must be connected")]
    Disconnected,
    #[error("parameter is infinite")]
    InfiniteParameter,
    #[error("robber stands on guarded vertex {0}")]
    RobberOnGuarded(usize),
    #[error("vertex sequence is not a path of the subgraph")]
    NotAPath,
    #[error("{0}")]
    Path(String),
}

/// Which drawing parameter measures the capture distance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Kind {
    /// `x`: some consecutive pair per crossing is close.
    #[serde(rename = "x")]
    Small,
    /// `X`: every consecutive pair per crossing is close.
    #[serde(rename = "X")]
    Big,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Small => "x",
            Kind::Big => "X",
        })
    }
}

/// An exact rational `num / den` with `num >= den >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Alpha {
    pub num: u64,
    pub den: u64,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Alpha {
    pub const ONE: Alpha = Alpha { num: 1, den: 1 };

    pub fn new(num: u64, den: u64) -> Result<Alpha, StrategyBuildError> {
        if den == 0 || num < den {
            return Err(StrategyBuildError::InvalidAlpha);
        }
        let g = gcd(num, den);
        Ok(Alpha {
            num: num / g,
            den: den / g,
        })
    }

    pub fn is_one(self) -> bool {
        self.num == self.den
    }

    /// `ceil(alpha * d)`.
    pub fn ceil_mul(self, d: u64) -> u64 {
        (self.num * d).div_ceil(self.den)
    }

    /// `floor(alpha * d)`.
    pub fn floor_mul(self, d: u64) -> u64 {
        self.num * d / self.den
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Alpha {
    type Err = StrategyBuildError;

    /// Accepts `p/q`, integers and finite decimals such as `1.25`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = |_| StrategyBuildError::InvalidAlpha;
        if let Some((p, q)) = s.split_once('/') {
            return Alpha::new(p.trim().parse().map_err(bad)?, q.trim().parse().map_err(bad)?);
        }
        if let Some((whole, frac)) = s.split_once('.') {
            if frac.is_empty() || frac.len() > 9 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(StrategyBuildError::InvalidAlpha);
            }
            let den = 10u64.pow(frac.len() as u32);
            let whole: u64 = if whole.is_empty() {
                0
            } else {
                whole.parse().map_err(bad)?
            };
            let frac: u64 = frac.parse().map_err(bad)?;
            return Alpha::new(whole * den + frac, den);
        }
        Alpha::new(s.parse().map_err(bad)?, 1)
    }
}

/// Flanker count on each side of the shadow cop.
pub fn beta(kind: Kind, alpha: Alpha, d: u64) -> Result<u64, StrategyBuildError> {
    if alpha.num < alpha.den || alpha.den == 0 {
        return Err(StrategyBuildError::InvalidAlpha);
    }
    let ratio = alpha.den.div_ceil(2 * (alpha.num - alpha.den).max(1));
    Ok(match (kind, alpha.is_one()) {
        (Kind::Small, true) => d + 1,
        (Kind::Small, false) => ratio + 1,
        (Kind::Big, true) => {
            if d == 0 {
                0
            } else {
                d - 1
            }
        }
        (Kind::Big, false) => ratio,
    })
}

/// The capture distance `ceil(alpha d) - 1`, at least 0.
pub fn capture_distance(alpha: Alpha, d: u64) -> u64 {
    alpha.ceil_mul(d).saturating_sub(1)
}

/// Spacing between consecutive team cops: 1 for `alpha = 1`, else
/// `2 ceil(alpha d - d)`.
pub fn flank_gap(alpha: Alpha, d: u64) -> u64 {
    if alpha.is_one() {
        1
    } else {
        2 * ((alpha.num - alpha.den) * d).div_ceil(alpha.den)
    }
}

/// Cops in one team, `2 beta + 1`.
pub fn team_size(kind: Kind, alpha: Alpha, d: u64) -> Result<usize, StrategyBuildError> {
    Ok(2 * beta(kind, alpha, d)? as usize + 1)
}
