//! Seeded corpora and the inequality checks run against them.

mod checks;
mod corpus;
mod counts;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::par::{self, Execution};
use crate::solver::default_max_states;

pub use corpus::{gen_corpus, gen_corpus_with, Corpus, CorpusEntry, CorpusParams, EntryKind, Origin, Witness};
pub use counts::{le, Count, Counter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CheckId {
    #[serde(rename = "MONO")]
    Mono,
    #[serde(rename = "SUBDIV")]
    Subdiv,
    #[serde(rename = "TWO_D_PLUS_1")]
    TwoDPlus1,
    #[serde(rename = "RETRACT")]
    Retract,
    #[serde(rename = "BOXTIMES")]
    Boxtimes,
    #[serde(rename = "XX_BOUNDS")]
    XxBounds,
    #[serde(rename = "ALPHA")]
    Alpha,
    #[serde(rename = "MAIN")]
    Main,
    #[serde(rename = "COR_TABLE")]
    CorTable,
    #[serde(rename = "MAP")]
    Map,
    #[serde(rename = "GEN_FAR")]
    GenFar,
    #[serde(rename = "GEN_X6")]
    GenX6,
}

impl CheckId {
    pub const ALL: [CheckId; 12] = [
        CheckId::Mono,
        CheckId::Subdiv,
        CheckId::TwoDPlus1,
        CheckId::Retract,
        CheckId::Boxtimes,
        CheckId::XxBounds,
        CheckId::Alpha,
        CheckId::Main,
        CheckId::CorTable,
        CheckId::Map,
        CheckId::GenFar,
        CheckId::GenX6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::Mono => "MONO",
            CheckId::Subdiv => "SUBDIV",
            CheckId::TwoDPlus1 => "TWO_D_PLUS_1",
            CheckId::Retract => "RETRACT",
            CheckId::Boxtimes => "BOXTIMES",
            CheckId::XxBounds => "XX_BOUNDS",
            CheckId::Alpha => "ALPHA",
            CheckId::Main => "MAIN",
            CheckId::CorTable => "COR_TABLE",
            CheckId::Map => "MAP",
            CheckId::GenFar => "GEN_FAR",
            CheckId::GenX6 => "GEN_X6",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown check `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// One evaluated inequality (or a skip) on one corpus entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub check: CheckId,
    pub instance: usize,
    pub case: String,
    pub lhs: String,
    pub rhs: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub checks: Vec<CheckId>,
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub records: Vec<Record>,
}

impl VerificationReport {
    fn new(seed: u64, checks: Vec<CheckId>, instances: usize, records: Vec<Record>) -> Self {
        let count = |s: Status| records.iter().filter(|r| r.status == s).count();
        VerificationReport {
            seed,
            checks,
            instances,
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            skipped: count(Status::Skip),
            records,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    /// Records of one check.
    pub fn of(&self, check: CheckId) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(move |r| r.check == check)
    }

    /// Every instance has at least one record for every check.
    pub fn accounts_for_all(&self) -> bool {
        self.checks.iter().all(|&c| {
            let mut seen = vec![false; self.instances];
            for r in self.of(c) {
                seen[r.instance] = true;
            }
            seen.into_iter().all(|s| s)
        })
    }

    /// Plain-text table: one line per record plus a summary.
    pub fn render_table(&self) -> String {
        let mut out = format!(
            "{:<13} {:>5}  {:<34} {:<30} {:<30} {}\n",
            "check", "inst", "case", "lhs", "rhs", "status"
        );
        for r in &self.records {
            let status = match r.status {
                Status::Pass => "pass".to_string(),
                Status::Fail => "FAIL".to_string(),
                Status::Skip => format!("skip ({})", r.reason.as_deref().unwrap_or("")),
            };
            out.push_str(&format!(
                "{:<13} {:>5}  {:<34} {:<30} {:<30} {}\n",
                r.check.name(),
                r.instance,
                r.case,
                r.lhs,
                r.rhs,
                status
            ));
        }
        out.push_str(&format!(
            "{} passed, {} failed, {} skipped over {} instances\n",
            self.passed, self.failed, self.skipped, self.instances
        ));
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Largest cop count the solver tries.
    pub cop_cap: usize,
    pub max_states: usize,
    /// Budget for the generator lower bounds, which need larger graphs.
    pub generator_max_states: usize,
    pub exec: Execution,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        let max_states = default_max_states();
        VerifyOptions {
            cop_cap: 3,
            max_states,
            generator_max_states: max_states.max(20_000_000),
            exec: Execution::Parallel,
        }
    }
}

/// Runs one check over the corpus.
pub fn check(corpus: &Corpus, which: CheckId, opts: &VerifyOptions) -> VerificationReport {
    check_many(corpus, &[which], opts)
}

/// Runs several checks, instances in parallel, records in instance order.
pub fn check_many(corpus: &Corpus, which: &[CheckId], opts: &VerifyOptions) -> VerificationReport {
    let per: Vec<Vec<Record>> = par::map_slice(opts.exec, &corpus.entries, |e| checks::evaluate(e, which, opts));
    VerificationReport::new(
        corpus.seed,
        which.to_vec(),
        corpus.entries.len(),
        per.into_iter().flatten().collect(),
    )
}

#[cfg(test)]
mod tests;
