//! Largest permutation families with `φ_F(m) <= k`.
//!
//! For every `m`-subset `X`, the candidates fall into `m!` classes by their
//! pattern on `X`. A family is feasible when it touches at most `k` classes
//! of every `X`, which is checked and bounded with per-class counters.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::sync::Arc;

use super::{solve, Problem, SearchConfig, SearchResult};
use crate::bits::{binomial, factorial, Combinations, Mask};
use crate::error::{domain, Error, Result};
use crate::perm::{Permutation, PermutationFamily};

/// Largest `n` the search accepts.
pub const MAX_SEARCH_N: usize = 10;

/// Cap on `C(n, m) * n!` class-table entries.
const MAX_TABLE: usize = 1 << 24;

#[derive(Clone)]
struct PermProblem {
    k: usize,
    candidates: usize,
    subsets: usize,
    classes: usize,
    /// `class_of[i * subsets + x]`: pattern rank of candidate `i` on subset `x`.
    class_of: Arc<Vec<u32>>,
    /// Members of the current family per `(x, class)`.
    chosen: Vec<u32>,
    /// Undecided candidates per `(x, class)`.
    open: Vec<u32>,
    touched: Vec<usize>,
    global_ub: usize,
}

/// Lexicographic rank of `pattern` among the permutations of its length.
fn lehmer_rank(pattern: &[u8]) -> u32 {
    let m = pattern.len();
    let mut rank = 0u32;
    for i in 0..m {
        let smaller_after = pattern[i + 1..].iter().filter(|&&v| v < pattern[i]).count() as u32;
        rank = rank * (m - i) as u32 + smaller_after;
    }
    rank
}

/// Advances `cur` to its lexicographic successor; `false` at the last one.
fn next_permutation(cur: &mut [u8]) -> bool {
    let n = cur.len();
    let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
    cur.swap(i, j);
    cur[i + 1..].reverse();
    true
}

/// The permutation of `0..n` with lexicographic rank `rank`.
fn unrank(n: usize, mut rank: u128) -> Permutation {
    let mut pool: Vec<u8> = (0..n as u8).collect();
    let mut image = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let f = factorial(i as u64).unwrap();
        image.push(pool.remove((rank / f) as usize));
        rank %= f;
    }
    Permutation::from_zero_based(image).unwrap()
}

impl PermProblem {
    fn new(n: usize, m: usize, k: usize) -> Self {
        let xs: Vec<Mask> = Combinations::new(n, m).collect();
        let candidates = factorial(n as u64).unwrap() as usize;
        let classes = factorial(m as u64).unwrap() as usize;
        let mut class_of = Vec::with_capacity(candidates * xs.len());
        let mut cur: Vec<u8> = (0..n as u8).collect();
        let mut pattern = Vec::with_capacity(m);
        loop {
            for &x in &xs {
                pattern.clear();
                pattern.extend(
                    cur.iter()
                        .filter(|&&v| x & (1 << v) != 0)
                        .map(|&v| (x & ((1 << v) - 1)).count_ones() as u8),
                );
                class_of.push(lehmer_rank(&pattern));
            }
            if !next_permutation(&mut cur) {
                break;
            }
        }
        let subsets = xs.len();
        let open = vec![(candidates / classes) as u32; subsets * classes];
        let mut p = PermProblem {
            k,
            candidates,
            subsets,
            classes,
            class_of: Arc::new(class_of),
            chosen: vec![0; subsets * classes],
            open,
            touched: vec![0; subsets],
            global_ub: candidates,
        };
        p.global_ub = p.upper_bound(0, 0);
        p
    }

    fn row(&self, i: usize) -> &[u32] {
        &self.class_of[i * self.subsets..(i + 1) * self.subsets]
    }

    fn bound_on(&self, x: usize, size: usize) -> usize {
        let base = x * self.classes;
        let free = self.k.saturating_sub(self.touched[x]);
        let mut extra = 0usize;
        // the `free` largest open counts among untouched classes
        let mut top: BinaryHeap<Reverse<u32>> = BinaryHeap::with_capacity(free + 1);
        for c in 0..self.classes {
            let open = self.open[base + c];
            if self.chosen[base + c] > 0 {
                extra += open as usize;
            } else if free > 0 && open > 0 {
                if top.len() < free {
                    top.push(Reverse(open));
                } else if top.peek().is_some_and(|r| r.0 < open) {
                    top.pop();
                    top.push(Reverse(open));
                }
            }
        }
        size + extra + top.iter().map(|r| r.0 as usize).sum::<usize>()
    }
}

impl Problem for PermProblem {
    fn len(&self) -> usize {
        self.candidates
    }

    fn can_add(&self, i: usize) -> bool {
        self.row(i).iter().enumerate().all(|(x, &c)| {
            self.chosen[x * self.classes + c as usize] > 0 || self.touched[x] < self.k
        })
    }

    fn add(&mut self, i: usize) {
        for x in 0..self.subsets {
            let slot = x * self.classes + self.class_of[i * self.subsets + x] as usize;
            self.open[slot] -= 1;
            if self.chosen[slot] == 0 {
                self.touched[x] += 1;
            }
            self.chosen[slot] += 1;
        }
    }

    fn undo_add(&mut self, i: usize) {
        for x in 0..self.subsets {
            let slot = x * self.classes + self.class_of[i * self.subsets + x] as usize;
            self.open[slot] += 1;
            self.chosen[slot] -= 1;
            if self.chosen[slot] == 0 {
                self.touched[x] -= 1;
            }
        }
    }

    fn exclude(&mut self, i: usize) {
        for x in 0..self.subsets {
            let slot = x * self.classes + self.class_of[i * self.subsets + x] as usize;
            self.open[slot] -= 1;
        }
    }

    fn undo_exclude(&mut self, i: usize) {
        for x in 0..self.subsets {
            let slot = x * self.classes + self.class_of[i * self.subsets + x] as usize;
            self.open[slot] += 1;
        }
    }

    /// Relabelling values maps any optimum onto one containing the identity,
    /// and the identity is the first candidate.
    fn may_exclude(&self, i: usize, _size: usize) -> bool {
        i != 0
    }

    fn upper_bound(&self, _next: usize, size: usize) -> usize {
        (0..self.subsets)
            .map(|x| self.bound_on(x, size))
            .min()
            .unwrap_or(size)
    }

    fn global_upper_bound(&self) -> usize {
        self.global_ub
    }
}

/// Largest family of permutations of `[n]` with `φ_F(m) <= k`, with the
/// witness whose sorted member list is lexicographically smallest.
///
/// Exhaustive for `n <= 5`; larger `n` (up to 10, with `C(n, m) * n!` at most
/// `2^24`) runs under the node budget.
pub fn perm_extremal_exact(
    n: usize,
    m: usize,
    k: usize,
    config: SearchConfig,
) -> Result<SearchResult<PermutationFamily>> {
    if m == 0 || m > n {
        return domain(format!("need 1 <= m <= n (n={n}, m={m})"));
    }
    if k == 0 {
        return domain("k must be at least 1");
    }
    if n > MAX_SEARCH_N {
        return Err(Error::Scale(format!(
            "permutation search limited to n <= {MAX_SEARCH_N}, got {n}"
        )));
    }
    let table = binomial(n as u64, m as u64).unwrap() * factorial(n as u64).unwrap();
    if table > MAX_TABLE as u128 {
        return Err(Error::Scale(format!(
            "class table for n={n}, m={m} has {table} entries (limit {MAX_TABLE})"
        )));
    }
    let solved = solve(PermProblem::new(n, m, k), config);
    let family = PermutationFamily::from_distinct(
        n,
        solved.chosen.iter().map(|&i| unrank(n, i as u128)),
    )?;
    Ok(SearchResult {
        optimum: family.len(),
        witness: family,
        nodes_explored: solved.nodes,
        exhaustive: solved.exhaustive,
    })
}
