//! Splitter-set search over a cyclic group as an exact cover problem.
//!
//! The universe is `Z_N ∖ {0}`; each candidate row is the orbit `M·s` of a
//! splitter `s` whose orbit avoids 0 and has no repeated value. Distinct
//! splitters with the same orbit give the same row, so rows are keyed by the
//! orbit and represented by the least such `s`. The solver always branches on
//! the least uncovered residue and tries rows in ascending representative
//! order.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::group::FiniteAbelianGroup;

use super::exact_cover::{Control, ExactCover, LimitKind, Limits};
use super::{verify_splitting, MultiplierSet, SplitterSet};

pub const DEFAULT_NODE_LIMIT: u64 = 100_000_000;
pub const DEFAULT_TIME_LIMIT: Duration = Duration::from_secs(60);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub node_limit: u64,
    pub time_limit: Duration,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_limit: DEFAULT_NODE_LIMIT,
            time_limit: DEFAULT_TIME_LIMIT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchResult {
    Found(SplitterSet),
    /// The whole search tree was explored without finding a splitting.
    ExhaustedNoSolution,
    ResourceLimit(LimitKind),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchStats {
    pub nodes: u64,
    pub max_depth: usize,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub result: SearchResult,
    pub stats: SearchStats,
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&SplitterSet> {
        match &self.result {
            SearchResult::Found(s) => Some(s),
            _ => None,
        }
    }
}

/// Candidate rows for the cover: `(representative splitter, orbit columns)`.
///
/// Columns are `x - 1` for residue `x`; orbits are returned in ascending
/// order of their representative.
pub fn candidate_orbits(n: u64, residues: &[u64]) -> Vec<(u64, Vec<usize>)> {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut rows = Vec::new();
    let mut mark = vec![false; n as usize];
    'splitter: for s in 1..n {
        let mut cols = Vec::with_capacity(residues.len());
        for &m in residues {
            let x = ((m as u128 * s as u128) % n as u128) as usize;
            if x == 0 || mark[x] {
                for &c in &cols {
                    mark[c + 1] = false;
                }
                continue 'splitter;
            }
            mark[x] = true;
            cols.push(x - 1);
        }
        for &c in &cols {
            mark[c + 1] = false;
        }
        cols.sort_unstable();
        if seen.insert(cols.clone()) {
            rows.push((s, cols));
        }
    }
    rows
}

/// Find the first splitter set for `M` over the cyclic group `G`, or prove
/// that none exists.
pub fn search_splitter(
    group: &FiniteAbelianGroup,
    multipliers: &MultiplierSet,
    config: &SearchConfig,
) -> Result<SearchOutcome> {
    let n = group.cyclic_order()?;
    let size = multipliers.len() as u64;
    if (n - 1) % size != 0 {
        return Err(Error::Precondition(format!(
            "|M| = {size} does not divide |G| - 1 = {}",
            n - 1
        )));
    }
    let start = Instant::now();
    let residues = multipliers.residues(n);
    let candidates = candidate_orbits(n, &residues);
    let rows: Vec<Vec<usize>> = candidates.iter().map(|(_, cols)| cols.clone()).collect();
    let mut dlx = ExactCover::new((n - 1) as usize, &rows);
    let limits = Limits {
        max_nodes: config.node_limit,
        max_time: Some(config.time_limit),
    };
    let mut chosen = None;
    let solve = dlx.solve(limits, |rows| {
        chosen = Some(rows.to_vec());
        Control::Stop
    });
    let stats = SearchStats {
        nodes: solve.nodes,
        max_depth: solve.max_depth,
        elapsed: start.elapsed(),
    };
    let result = match (chosen, solve.limit_hit) {
        (Some(rows), _) => {
            let reps: Vec<u64> = rows.iter().map(|&r| candidates[r].0).collect();
            let splitters = SplitterSet::cyclic(group, &reps)?;
            let report = verify_splitting(group, multipliers, &splitters);
            if let Some(failure) = report.failure {
                // an exact cover of clean orbits is a splitting; anything else is a bug
                panic!("search produced a non-splitting ({failure})");
            }
            SearchResult::Found(splitters)
        }
        (None, Some(kind)) => SearchResult::ResourceLimit(kind),
        (None, None) => SearchResult::ExhaustedNoSolution,
    };
    Ok(SearchOutcome { result, stats })
}
