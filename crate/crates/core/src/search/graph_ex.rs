//! `Ex(n, m, k)`: the most edges of a graph on `n` vertices in which every
//! `m` vertices span at most `k` edges.

use std::sync::Arc;

use super::{solve, Problem, SearchConfig, SearchResult};
use crate::bits::{binomial, full_mask, Combinations, Mask};
use crate::error::{domain, Error, Result};
use crate::graph::Graph;

#[derive(Clone)]
struct ExProblem {
    n: usize,
    k: usize,
    edges: Arc<Vec<(usize, usize)>>,
    /// `(m - 2)`-subsets of `[n]`, to be completed by an edge's endpoints.
    completions: Arc<Vec<Mask>>,
    adj: Vec<Mask>,
    touched: usize,
    touched_at: Vec<usize>,
    global_ub: usize,
}

impl ExProblem {
    fn new(n: usize, m: usize, k: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let all = binomial(n as u64, 2).unwrap() as usize;
        // every edge lies in C(n-2, m-2) of the m-subsets
        let averaging = (k as u128 * all as u128 / binomial(m as u64, 2).unwrap()) as usize;
        ExProblem {
            n,
            k,
            edges: Arc::new(edges),
            completions: Arc::new(Combinations::new(n, m - 2).collect()),
            adj: vec![0; n],
            touched: 0,
            touched_at: Vec::new(),
            global_ub: averaging.min(all),
        }
    }

    /// Whether adding `(u, v)` keeps every `m`-subset through it within `k` edges.
    fn fits(&self, u: usize, v: usize) -> bool {
        let uv = (1u64 << u) | (1u64 << v);
        let others = full_mask(self.n) & !uv;
        self.completions.iter().filter(|&&c| c & !others == 0).all(|&c| {
            let x = c | uv;
            Graph::edges_within(&self.adj, x) < self.k
        })
    }
}

impl Problem for ExProblem {
    fn len(&self) -> usize {
        self.edges.len()
    }

    fn can_add(&self, i: usize) -> bool {
        let (u, v) = self.edges[i];
        // touched vertices always form a prefix of the labels
        let t = self.touched;
        let new_ok = match (u < t, v < t) {
            (true, true) => true,
            (true, false) => v == t,
            (false, false) => u == t && v == t + 1,
            (false, true) => false,
        };
        new_ok && self.fits(u, v)
    }

    fn add(&mut self, i: usize) {
        let (u, v) = self.edges[i];
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        self.touched_at.push(self.touched);
        self.touched = self.touched.max(v + 1);
    }

    fn undo_add(&mut self, i: usize) {
        let (u, v) = self.edges[i];
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
        self.touched = self.touched_at.pop().unwrap();
    }

    fn exclude(&mut self, _i: usize) {}

    fn undo_exclude(&mut self, _i: usize) {}

    fn upper_bound(&self, next: usize, size: usize) -> usize {
        // edges that no longer fit never fit again
        let open = self.edges[next..]
            .iter()
            .filter(|&&(u, v)| self.fits(u, v))
            .count();
        size + open
    }

    fn global_upper_bound(&self) -> usize {
        self.global_ub
    }
}

/// Exact `Ex(n, m, k)` with the extremal graph whose sorted edge list is
/// lexicographically smallest.
///
/// Labels are introduced in increasing order along the edge walk; the
/// smallest extremal graph always has that shape, so no optimum is lost.
pub fn ex_exact(n: usize, m: usize, k: usize, config: SearchConfig) -> Result<SearchResult<Graph>> {
    if m < 2 || m > n {
        return domain(format!("Ex needs 2 <= m <= n (n={n}, m={m})"));
    }
    if n > 16 {
        return Err(Error::Scale(format!("Ex search limited to n <= 16, got {n}")));
    }
    let problem = ExProblem::new(n, m, k);
    let edges = problem.edges.clone();
    let solved = solve(problem, config);
    let graph = Graph::new(n, solved.chosen.iter().map(|&i| edges[i]))?;
    Ok(SearchResult {
        optimum: graph.edge_count(),
        witness: graph,
        nodes_explored: solved.nodes,
        exhaustive: solved.exhaustive,
    })
}
