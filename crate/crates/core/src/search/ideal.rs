//! Largest ideal set systems under shatter-function constraints.
//!
//! Subsets of `[n]` are decided in increasing mask order, which lists every
//! set after all of its subsets. A set may join only when all its immediate
//! subsets are present, so every node of the walk is an ideal system and
//! each ideal system is met exactly once.

use std::sync::Arc;

use serde::Serialize;

use super::{solve, Problem, SearchConfig, SearchResult};
use crate::bits::{full_mask, pext, BitIter, Combinations, Mask};
use crate::error::{domain, Error, Result};
use crate::setsystem::SetSystem;

/// The requirement `f_R(b) <= k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Constraint {
    pub b: usize,
    pub k: usize,
}

/// Largest ground set the search accepts.
pub const MAX_IDEAL_N: usize = 7;

#[derive(Clone)]
struct IdealProblem {
    n: usize,
    /// Per tracked subset `X`: its bound `k`.
    limits: Arc<Vec<usize>>,
    /// `traces[s * xs + j]`: trace index of set `s` on tracked subset `j`.
    traces: Arc<Vec<u8>>,
    xs: usize,
    present: Vec<u128>,
    counts: Vec<usize>,
    undo: Vec<usize>,
    undo_marks: Vec<usize>,
    included: Vec<bool>,
    blocked: Vec<u16>,
    open: usize,
    global_ub: usize,
}

impl IdealProblem {
    fn new(n: usize, constraints: &[Constraint]) -> Self {
        let mut subsets = Vec::new();
        let mut limits = Vec::new();
        for c in constraints {
            for x in Combinations::new(n, c.b) {
                subsets.push(x);
                limits.push(c.k);
            }
        }
        let sets = 1usize << n;
        let xs = subsets.len();
        let mut traces = Vec::with_capacity(sets * xs);
        for s in 0..sets as Mask {
            traces.extend(subsets.iter().map(|&x| pext(s, x) as u8));
        }
        // f(n) <= f(b) * 2^(n - b) bounds |R| = f(n)
        let global_ub = constraints
            .iter()
            .map(|c| c.k.saturating_mul(1 << (n - c.b)))
            .fold(sets, usize::min);
        IdealProblem {
            n,
            limits: Arc::new(limits),
            traces: Arc::new(traces),
            xs,
            present: vec![0; xs],
            counts: vec![0; xs],
            undo: Vec::new(),
            undo_marks: Vec::new(),
            included: vec![false; sets],
            blocked: vec![0; sets],
            open: sets,
            global_ub,
        }
    }

    fn trace_row(&self, s: usize) -> &[u8] {
        &self.traces[s * self.xs..(s + 1) * self.xs]
    }

    /// Strict supersets of `s` within `[n]`.
    fn supersets(&self, s: usize) -> impl Iterator<Item = usize> {
        let free = full_mask(self.n) & !(s as Mask);
        // enumerate the nonempty submasks of `free`
        let mut sub = free;
        std::iter::from_fn(move || {
            if sub == 0 {
                return None;
            }
            let cur = sub;
            sub = (sub - 1) & free;
            Some(s | cur as usize)
        })
    }
}

impl Problem for IdealProblem {
    fn len(&self) -> usize {
        1 << self.n
    }

    fn can_add(&self, i: usize) -> bool {
        if BitIter(i as Mask).any(|e| !self.included[i & !(1 << e)]) {
            return false;
        }
        self.trace_row(i)
            .iter()
            .enumerate()
            .all(|(j, &t)| self.present[j] & (1u128 << t) != 0 || self.counts[j] < self.limits[j])
    }

    fn add(&mut self, i: usize) {
        self.undo_marks.push(self.undo.len());
        for j in 0..self.xs {
            let bit = 1u128 << self.traces[i * self.xs + j];
            if self.present[j] & bit == 0 {
                self.present[j] |= bit;
                self.counts[j] += 1;
                self.undo.push(j);
            }
        }
        self.included[i] = true;
        self.open -= 1;
    }

    fn undo_add(&mut self, i: usize) {
        let mark = self.undo_marks.pop().unwrap();
        for j in self.undo.drain(mark..) {
            let bit = 1u128 << self.traces[i * self.xs + j];
            self.present[j] &= !bit;
            self.counts[j] -= 1;
        }
        self.included[i] = false;
        self.open += 1;
    }

    fn exclude(&mut self, i: usize) {
        if self.blocked[i] > 0 {
            return;
        }
        self.open -= 1;
        for s in self.supersets(i).collect::<Vec<_>>() {
            if self.blocked[s] == 0 {
                self.open -= 1;
            }
            self.blocked[s] += 1;
        }
    }

    fn undo_exclude(&mut self, i: usize) {
        if self.blocked[i] > 0 {
            return;
        }
        self.open += 1;
        for s in self.supersets(i).collect::<Vec<_>>() {
            self.blocked[s] -= 1;
            if self.blocked[s] == 0 {
                self.open += 1;
            }
        }
    }

    fn upper_bound(&self, _next: usize, size: usize) -> usize {
        size + self.open
    }

    fn global_upper_bound(&self) -> usize {
        self.global_ub
    }
}

/// Largest ideal system on `[n]` with `f_R(b) <= k` for every constraint,
/// with the witness whose sorted range masks are lexicographically smallest.
///
/// Covers the space exhaustively for `n <= 6`; `n = 7` runs under the node
/// budget and may return `exhaustive = false`.
pub fn extremal_ideal_exact(
    n: usize,
    constraints: &[Constraint],
    config: SearchConfig,
) -> Result<SearchResult<SetSystem>> {
    if n == 0 || n > MAX_IDEAL_N {
        return Err(Error::Scale(format!(
            "ideal search supports 1 <= n <= {MAX_IDEAL_N}, got {n}"
        )));
    }
    if let Some(c) = constraints.iter().find(|c| c.b > n) {
        return domain(format!("constraint b = {} exceeds n = {n}", c.b));
    }
    let solved = solve(IdealProblem::new(n, constraints), config);
    let system = SetSystem::new(n, solved.chosen.iter().map(|&i| i as Mask))?;
    Ok(SearchResult {
        optimum: system.len(),
        witness: system,
        nodes_explored: solved.nodes,
        exhaustive: solved.exhaustive,
    })
}

/// Calls `visit` on every ideal system on `[n]` (the empty one included), as
/// ascending range masks. There are Dedekind-number many of them.
pub fn enumerate_ideals(n: usize, mut visit: impl FnMut(&[Mask])) -> Result<u64> {
    if n > 6 {
        return Err(Error::Scale(format!("ideal enumeration supports n <= 6, got {n}")));
    }
    fn go(n: usize, s: usize, inc: &mut Vec<bool>, cur: &mut Vec<Mask>, visit: &mut dyn FnMut(&[Mask]), count: &mut u64) {
        if s == 1 << n {
            visit(cur);
            *count += 1;
            return;
        }
        if BitIter(s as Mask).all(|e| inc[s & !(1 << e)]) {
            inc[s] = true;
            cur.push(s as Mask);
            go(n, s + 1, inc, cur, visit, count);
            cur.pop();
            inc[s] = false;
        }
        go(n, s + 1, inc, cur, visit, count);
    }
    let mut count = 0;
    go(n, 0, &mut vec![false; 1 << n], &mut Vec::new(), &mut visit, &mut count);
    Ok(count)
}
