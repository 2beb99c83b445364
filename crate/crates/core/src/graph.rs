//! Labeled simple graphs.

use crate::bits::{BitIter, Combinations, Mask};
use crate::error::{domain, Result};

/// A simple graph on vertices `0..n` (written `1..=n` in text form).
/// Edges are stored as `(u, v)` with `u < v`, sorted and distinct.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from 0-indexed edges in any orientation. Loops and
    /// out-of-range endpoints are rejected; repeated edges are merged.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut out = Vec::new();
        for (u, v) in edges {
            if u == v {
                return domain(format!("loop at vertex {}", u + 1));
            }
            if u >= n || v >= n {
                return domain(format!("edge ({}, {}) outside [{n}]", u + 1, v + 1));
            }
            out.push((u.min(v), u.max(v)));
        }
        out.sort_unstable();
        out.dedup();
        Ok(Graph { n, edges: out })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// Neighborhood masks; only available for `n <= 64`.
    pub fn adjacency(&self) -> Result<Vec<Mask>> {
        if self.n > 64 {
            return domain("adjacency masks need n <= 64");
        }
        let mut adj = vec![0u64; self.n];
        for &(u, v) in &self.edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(adj)
    }

    /// Adjacency lists for any `n`.
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Number of edges inside the vertex set `x` (requires `n <= 64`).
    pub fn edges_within(adj: &[Mask], x: Mask) -> usize {
        let twice: u32 = BitIter(x).map(|u| (adj[u] & x).count_ones()).sum();
        (twice / 2) as usize
    }

    /// Largest number of edges spanned by any `m` vertices (requires `n <= 64`).
    pub fn max_edges_on(&self, m: usize) -> Result<usize> {
        let adj = self.adjacency()?;
        Ok(Combinations::new(self.n, m)
            .map(|x| Graph::edges_within(&adj, x))
            .max()
            .unwrap_or(0))
    }

    /// Two-colouring check.
    pub fn is_bipartite(&self) -> bool {
        let adj = self.neighbors();
        let mut color = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &v in &adj[u] {
                    if color[v] == u8::MAX {
                        color[v] = 1 - color[u];
                        stack.push(v);
                    } else if color[v] == color[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Length of a shortest cycle, `None` for forests. BFS from every vertex.
    pub fn girth(&self) -> Option<usize> {
        let adj = self.neighbors();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        for s in 0..self.n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[s] = 0;
            parent[s] = usize::MAX;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        let len = dist[u] + dist[v] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Whether the graph contains a 4-cycle, i.e. a `K_{2,2}` subgraph.
    pub fn has_c4(&self) -> bool {
        let adj = self.neighbors();
        let mut seen = vec![usize::MAX; self.n];
        // two vertices with two common neighbours close a 4-cycle
        for u in 0..self.n {
            for &w in &adj[u] {
                for &v in &adj[w] {
                    if v == u {
                        continue;
                    }
                    if seen[v] == u {
                        return true;
                    }
                    seen[v] = u;
                }
            }
        }
        false
    }
}
