//! Exact branch-and-bound searches for largest feasible subsets under a
//! hereditary constraint.
//!
//! Every search walks a fixed, ordered list of candidates and decides
//! include-before-exclude, so the first feasible set of a given size met in
//! the walk is the lexicographically smallest one. Because feasibility is
//! hereditary, every node of the walk is itself a feasible set.
//!
//! Parallel runs split the first decision levels into subtrees that are
//! solved independently; a shared best value only prunes subtrees that
//! cannot tie it, and the reduction takes the largest value and then the
//! earliest subtree. Optimum and witness therefore do not depend on the
//! number of workers.

mod graph_ex;
mod ideal;
mod perm;

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::Serialize;

pub use graph_ex::ex_exact;
pub use ideal::{enumerate_ideals, extremal_ideal_exact, Constraint};
pub use perm::perm_extremal_exact;

/// Default node budget of a single search.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Environment variable overriding the node budget.
pub const NODE_BUDGET_ENV: &str = "SHATTERLAB_NODE_BUDGET";

/// Knobs shared by all searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Worker threads; `1` runs on the calling thread.
    pub jobs: usize,
    /// Nodes after which the search stops and reports `exhaustive = false`.
    pub node_budget: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            jobs: 1,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

impl SearchConfig {
    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.node_budget = budget;
        self
    }

    /// Default config with the budget taken from `SHATTERLAB_NODE_BUDGET` if set.
    pub fn from_env() -> Self {
        let budget = std::env::var(NODE_BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_NODE_BUDGET);
        SearchConfig::default().with_budget(budget)
    }
}

/// Extremal value with its canonical witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult<W> {
    pub optimum: usize,
    pub witness: W,
    pub nodes_explored: u64,
    /// `true` when the whole space was covered (or the optimum met a proven
    /// upper bound); `false` after running out of budget.
    pub exhaustive: bool,
}

impl<W> SearchResult<W> {
    pub fn map_witness<V>(self, f: impl FnOnce(W) -> V) -> SearchResult<V> {
        SearchResult {
            optimum: self.optimum,
            witness: f(self.witness),
            nodes_explored: self.nodes_explored,
            exhaustive: self.exhaustive,
        }
    }
}

/// A maximum-subset problem over candidates `0..len()` with a hereditary
/// feasibility constraint, driven by [`solve`].
pub(crate) trait Problem: Clone + Send + Sync {
    fn len(&self) -> usize;
    /// Whether candidate `i` can join the current set.
    fn can_add(&self, i: usize) -> bool;
    fn add(&mut self, i: usize);
    fn undo_add(&mut self, i: usize);
    /// Marks candidate `i` as rejected.
    fn exclude(&mut self, i: usize);
    fn undo_exclude(&mut self, i: usize);
    /// Whether rejecting `i` can still lead to a canonical optimum.
    fn may_exclude(&self, _i: usize, _size: usize) -> bool {
        true
    }
    /// Upper bound on the size of any feasible set extending the current one
    /// with candidates `next..`.
    fn upper_bound(&self, next: usize, size: usize) -> usize;
    /// Upper bound on the optimum known before searching.
    fn global_upper_bound(&self) -> usize;
}

/// Raw engine output: chosen candidate indices in increasing order.
#[derive(Clone, Debug)]
pub(crate) struct Solved {
    pub chosen: Vec<usize>,
    pub nodes: u64,
    pub exhaustive: bool,
}

const SPLIT_DEPTH: usize = 10;
const FLUSH_EVERY: u64 = 1 << 10;

struct Shared {
    best: AtomicUsize,
    /// Earliest task whose best met the global upper bound.
    first_complete: AtomicUsize,
    nodes: AtomicU64,
    budget: u64,
    out_of_budget: AtomicBool,
}

struct Worker<'a, P> {
    problem: P,
    shared: &'a Shared,
    task: usize,
    global_ub: usize,
    chosen: Vec<usize>,
    best: Option<Vec<usize>>,
    local_nodes: u64,
    total_nodes: u64,
    aborted: bool,
}

impl<P: Problem> Worker<'_, P> {
    fn tick(&mut self) -> bool {
        self.local_nodes += 1;
        self.total_nodes += 1;
        if self.local_nodes >= FLUSH_EVERY {
            let seen = self.shared.nodes.fetch_add(self.local_nodes, Ordering::Relaxed)
                + self.local_nodes;
            self.local_nodes = 0;
            if seen > self.shared.budget {
                self.shared.out_of_budget.store(true, Ordering::Relaxed);
            }
        }
        if self.shared.out_of_budget.load(Ordering::Relaxed) {
            self.aborted = true;
        }
        !self.aborted && !self.superseded()
    }

    /// An earlier task already holds an optimum that this one cannot beat.
    fn superseded(&self) -> bool {
        self.shared.first_complete.load(Ordering::Relaxed) < self.task
    }

    fn best_len(&self) -> Option<usize> {
        self.best.as_ref().map(Vec::len)
    }

    fn record(&mut self) {
        if self.best_len().is_none_or(|b| self.chosen.len() > b) {
            self.best = Some(self.chosen.clone());
            self.shared.best.fetch_max(self.chosen.len(), Ordering::Relaxed);
            if self.chosen.len() >= self.global_ub {
                self.shared.first_complete.fetch_min(self.task, Ordering::Relaxed);
            }
        }
    }

    fn dfs(&mut self, i: usize) {
        if !self.tick() {
            return;
        }
        self.record();
        let size = self.chosen.len();
        let local = self.best_len().unwrap_or(0);
        if local >= self.global_ub || i == self.problem.len() {
            return;
        }
        let ub = self.problem.upper_bound(i, size);
        if ub <= local || ub < self.shared.best.load(Ordering::Relaxed) {
            return;
        }
        if self.problem.can_add(i) {
            self.problem.add(i);
            self.chosen.push(i);
            self.dfs(i + 1);
            self.chosen.pop();
            self.problem.undo_add(i);
        }
        if self.aborted || self.superseded() || self.best_len().unwrap_or(0) >= self.global_ub {
            return;
        }
        if self.problem.may_exclude(i, size) {
            self.problem.exclude(i);
            self.dfs(i + 1);
            self.problem.undo_exclude(i);
        }
    }
}

/// Enumerates the decision prefixes of the first `depth` levels in walk order.
fn prefixes<P: Problem>(problem: &mut P, depth: usize) -> Vec<Vec<bool>> {
    fn go<P: Problem>(p: &mut P, i: usize, depth: usize, size: usize, cur: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        if i == depth || i == p.len() {
            out.push(cur.clone());
            return;
        }
        if p.can_add(i) {
            p.add(i);
            cur.push(true);
            go(p, i + 1, depth, size + 1, cur, out);
            cur.pop();
            p.undo_add(i);
        }
        if p.may_exclude(i, size) {
            p.exclude(i);
            cur.push(false);
            go(p, i + 1, depth, size, cur, out);
            cur.pop();
            p.undo_exclude(i);
        }
    }
    let mut out = Vec::new();
    go(problem, 0, depth, 0, &mut Vec::new(), &mut out);
    out
}

/// Runs the branch-and-bound on `problem` under `config`.
pub(crate) fn solve<P: Problem>(mut problem: P, config: SearchConfig) -> Solved {
    let shared = Shared {
        best: AtomicUsize::new(0),
        first_complete: AtomicUsize::new(usize::MAX),
        nodes: AtomicU64::new(0),
        budget: config.node_budget,
        out_of_budget: AtomicBool::new(false),
    };
    let global_ub = problem.global_upper_bound();
    let tasks = prefixes(&mut problem, SPLIT_DEPTH);

    let run = |(task, prefix): (usize, &Vec<bool>)| {
        if shared.first_complete.load(Ordering::Relaxed) < task {
            return (None, 0, false);
        }
        let mut w = Worker {
            problem: problem.clone(),
            shared: &shared,
            task,
            global_ub,
            chosen: Vec::new(),
            best: None,
            local_nodes: 0,
            total_nodes: 0,
            aborted: false,
        };
        // replay the prefix; its inner nodes are recorded by the first task
        // that passes through them, which is the earliest one in walk order
        for (i, &inc) in prefix.iter().enumerate() {
            w.record();
            if inc {
                w.problem.add(i);
                w.chosen.push(i);
            } else {
                w.problem.exclude(i);
            }
        }
        w.dfs(prefix.len());
        w.shared.nodes.fetch_add(w.local_nodes, Ordering::Relaxed);
        (w.best, w.total_nodes, w.aborted)
    };

    let results: Vec<(Option<Vec<usize>>, u64, bool)> = if config.jobs <= 1 {
        tasks.iter().enumerate().map(run).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .expect("thread pool");
        pool.install(|| tasks.par_iter().enumerate().map(run).collect())
    };

    let mut best: Option<Vec<usize>> = None;
    let mut nodes = 0;
    let mut aborted = false;
    for (b, n, a) in results {
        nodes += n;
        aborted |= a;
        if let Some(b) = b {
            if best.as_ref().is_none_or(|cur| b.len() > cur.len()) {
                best = Some(b);
            }
        }
    }
    let chosen = best.unwrap_or_default();
    let exhaustive = !aborted || chosen.len() >= global_ub;
    Solved {
        chosen,
        nodes,
        exhaustive,
    }
}
