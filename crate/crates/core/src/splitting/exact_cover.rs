//! Dancing-links exact cover with a fixed "least uncovered column" rule.
//!
//! Column selection never looks at column sizes, so the order in which
//! solutions are reported depends only on the column and row order given by
//! the caller. Sizes are still tracked: a branch is abandoned as soon as some
//! live column has no rows left, which removes dead subtrees without
//! changing which solution is reached first.

use std::time::{Duration, Instant};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Control {
    Continue,
    Stop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitKind {
    Nodes,
    Time,
}

#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub max_nodes: u64,
    pub max_time: Option<Duration>,
}

impl Limits {
    pub fn unlimited() -> Limits {
        Limits {
            max_nodes: u64::MAX,
            max_time: None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub nodes: u64,
    pub max_depth: usize,
    pub solutions: u64,
    /// Set when the search tree was abandoned because of a limit.
    pub limit_hit: Option<LimitKind>,
    /// Set when the caller stopped the search from the solution callback.
    pub stopped: bool,
}

impl SolveStats {
    /// True when every branch of the search tree was explored.
    pub fn exhausted(&self) -> bool {
        self.limit_hit.is_none() && !self.stopped
    }
}

const ROOT: usize = 0;
const TIME_CHECK_INTERVAL: u64 = 4096;

pub struct ExactCover {
    left: Vec<usize>,
    right: Vec<usize>,
    up: Vec<usize>,
    down: Vec<usize>,
    col: Vec<usize>,
    row: Vec<usize>,
    size: Vec<usize>,
    /// Live columns with no remaining rows.
    empty: usize,
}

struct Run<'a, F> {
    limits: Limits,
    start: Instant,
    stats: SolveStats,
    partial: Vec<usize>,
    on_solution: &'a mut F,
}

impl ExactCover {
    /// `rows[r]` lists the columns (in `0..universe`) covered by row `r`.
    pub fn new(universe: usize, rows: &[Vec<usize>]) -> ExactCover {
        let headers = universe + 1;
        let total = headers + rows.iter().map(Vec::len).sum::<usize>();
        let mut dlx = ExactCover {
            left: Vec::with_capacity(total),
            right: Vec::with_capacity(total),
            up: Vec::with_capacity(total),
            down: Vec::with_capacity(total),
            col: Vec::with_capacity(total),
            row: Vec::with_capacity(total),
            size: vec![0; headers],
            empty: 0,
        };
        for h in 0..headers {
            dlx.left.push(if h == 0 { universe } else { h - 1 });
            dlx.right.push(if h == universe { 0 } else { h + 1 });
            dlx.up.push(h);
            dlx.down.push(h);
            dlx.col.push(h);
            dlx.row.push(usize::MAX);
        }
        for (r, cols) in rows.iter().enumerate() {
            let first = dlx.col.len();
            for (i, &c) in cols.iter().enumerate() {
                assert!(c < universe, "column {c} outside universe {universe}");
                let header = c + 1;
                let node = dlx.col.len();
                let prev = if i == 0 { node } else { node - 1 };
                dlx.left.push(prev);
                dlx.right.push(first);
                dlx.right[prev] = node;
                dlx.left[first] = node;
                let bottom = dlx.up[header];
                dlx.up.push(bottom);
                dlx.down.push(header);
                dlx.down[bottom] = node;
                dlx.up[header] = node;
                dlx.col.push(header);
                dlx.row.push(r);
                dlx.size[header] += 1;
            }
        }
        dlx.empty = (1..headers).filter(|&h| dlx.size[h] == 0).count();
        dlx
    }

    fn cover(&mut self, c: usize) {
        if self.size[c] == 0 {
            self.empty -= 1;
        }
        let (l, r) = (self.left[c], self.right[c]);
        self.right[l] = r;
        self.left[r] = l;
        let mut i = self.down[c];
        while i != c {
            let mut j = self.right[i];
            while j != i {
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = d;
                self.up[d] = u;
                let cj = self.col[j];
                self.size[cj] -= 1;
                if self.size[cj] == 0 {
                    self.empty += 1;
                }
                j = self.right[j];
            }
            i = self.down[i];
        }
    }

    fn uncover(&mut self, c: usize) {
        let mut i = self.up[c];
        while i != c {
            let mut j = self.left[i];
            while j != i {
                let cj = self.col[j];
                if self.size[cj] == 0 {
                    self.empty -= 1;
                }
                self.size[cj] += 1;
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = j;
                self.up[d] = j;
                j = self.left[j];
            }
            i = self.up[i];
        }
        let (l, r) = (self.left[c], self.right[c]);
        self.right[l] = c;
        self.left[r] = c;
        if self.size[c] == 0 {
            self.empty += 1;
        }
    }

    /// Walk the search tree depth first, reporting each solution as the list
    /// of chosen row indices in the order they were chosen.
    pub fn solve<F>(&mut self, limits: Limits, mut on_solution: F) -> SolveStats
    where
        F: FnMut(&[usize]) -> Control,
    {
        let mut run = Run {
            limits,
            start: Instant::now(),
            stats: SolveStats::default(),
            partial: Vec::new(),
            on_solution: &mut on_solution,
        };
        self.search(&mut run);
        run.stats
    }

    /// Returns false when the walk must unwind (limit or stop).
    fn search<F>(&mut self, run: &mut Run<'_, F>) -> bool
    where
        F: FnMut(&[usize]) -> Control,
    {
        run.stats.nodes += 1;
        run.stats.max_depth = run.stats.max_depth.max(run.partial.len());
        if run.stats.nodes > run.limits.max_nodes {
            run.stats.limit_hit = Some(LimitKind::Nodes);
            return false;
        }
        if run.stats.nodes.is_multiple_of(TIME_CHECK_INTERVAL) {
            if let Some(max) = run.limits.max_time {
                if run.start.elapsed() > max {
                    run.stats.limit_hit = Some(LimitKind::Time);
                    return false;
                }
            }
        }
        let c = self.right[ROOT];
        if c == ROOT {
            run.stats.solutions += 1;
            if (run.on_solution)(&run.partial) == Control::Stop {
                run.stats.stopped = true;
                return false;
            }
            return true;
        }
        if self.empty > 0 {
            return true;
        }
        self.cover(c);
        let mut keep_going = true;
        let mut r = self.down[c];
        while r != c {
            run.partial.push(self.row[r]);
            let mut j = self.right[r];
            while j != r {
                self.cover(self.col[j]);
                j = self.right[j];
            }
            keep_going = self.search(run);
            let mut j = self.left[r];
            while j != r {
                self.uncover(self.col[j]);
                j = self.left[j];
            }
            run.partial.pop();
            if !keep_going {
                break;
            }
            r = self.down[r];
        }
        self.uncover(c);
        keep_going
    }
}
