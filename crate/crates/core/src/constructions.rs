//! Explicit families: lower-bound set systems, Turán and incidence graphs,
//! and the permutation families separating the growth regimes.

use crate::bits::{full_mask, Mask};
use crate::bounds::balanced_blocks;
use crate::error::{domain, Error, Result};
use crate::graph::Graph;
use crate::perm::{Permutation, PermutationFamily, MAX_PERM};
use crate::setsystem::{SetSystem, MAX_GROUND};

/// Consecutive balanced blocks of `[n]` as masks, larger blocks first.
fn blocks(n: usize, i: usize) -> Vec<Mask> {
    let mut start = 0;
    balanced_blocks(n as u64, i as u64)
        .into_iter()
        .map(|s| {
            let m = full_mask(s as usize) << start;
            start += s as usize;
            m
        })
        .collect()
}

/// All transversals of `i` balanced blocks of `[n]`.
pub fn lambda_construction(n: usize, i: usize) -> Result<SetSystem> {
    if i == 0 || i > n || n > MAX_GROUND {
        return domain(format!("lambda construction needs 1 <= i <= n <= 64 (n={n}, i={i})"));
    }
    let mut ranges = vec![0u64];
    for block in blocks(n, i) {
        let mut next = Vec::new();
        for &r in &ranges {
            let mut b = block;
            while b != 0 {
                let low = b & b.wrapping_neg();
                next.push(r | low);
                b ^= low;
            }
        }
        ranges = next;
        if ranges.len() > 1 << 24 {
            return Err(Error::Scale("lambda construction too large".into()));
        }
    }
    SetSystem::new(n, ranges)
}

/// All subsets of `[i]` together with all singletons of `[n]`.
pub fn vc_remark_system(n: usize, i: usize) -> Result<SetSystem> {
    if i == 0 || i > n || n > MAX_GROUND || i > 20 {
        return domain(format!("vc remark system needs 1 <= i <= n (n={n}, i={i})"));
    }
    let subsets = 0..(1u64 << i);
    let singles = (0..n).map(|x| 1u64 << x);
    SetSystem::new(n, subsets.chain(singles))
}

/// `{∅} ∪ singletons ∪ edges`.
pub fn graph_to_system(g: &Graph) -> Result<SetSystem> {
    let n = g.vertex_count();
    if n > MAX_GROUND {
        return domain(format!("graph on {n} vertices exceeds the ground-set limit"));
    }
    let singles = (0..n).map(|x| 1u64 << x);
    let edges = g.edges().iter().map(|&(u, v)| (1u64 << u) | (1u64 << v));
    SetSystem::new(n, std::iter::once(0).chain(singles).chain(edges))
}

/// Inverse of [`graph_to_system`] on ideal systems with ranges of size at
/// most two containing every singleton.
pub fn system_to_graph(system: &SetSystem) -> Result<Graph> {
    let n = system.ground_size();
    if let Some(&r) = system.ranges().iter().find(|r| r.count_ones() > 2) {
        return Err(Error::Precondition(format!(
            "range {:?} has more than two elements",
            crate::bits::elements(r)
        )));
    }
    if let Some(x) = (0..n).find(|&x| !system.contains(1 << x)) {
        return Err(Error::Precondition(format!("singleton {{{}}} missing", x + 1)));
    }
    if !system.is_ideal() {
        return Err(Error::Precondition("system is not ideal".into()));
    }
    let edges = system
        .ranges()
        .iter()
        .filter(|r| r.count_ones() == 2)
        .map(|&r| {
            let u = r.trailing_zeros() as usize;
            let v = 63 - r.leading_zeros() as usize;
            (u, v)
        });
    Graph::new(n, edges)
}

/// The complete balanced `i`-partite graph on `n` vertices.
pub fn turan_graph(n: usize, i: usize) -> Result<Graph> {
    if i == 0 || i > n {
        return domain(format!("turan graph needs 1 <= i <= n (n={n}, i={i})"));
    }
    let sizes = balanced_blocks(n as u64, i as u64);
    let mut part = Vec::with_capacity(n);
    for (j, &s) in sizes.iter().enumerate() {
        part.extend(std::iter::repeat_n(j, s as usize));
    }
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| part[u] != part[v]);
    Graph::new(n, edges.collect::<Vec<_>>())
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Normalized homogeneous coordinates of the points of `PG(2, q)`: the first
/// nonzero coordinate is 1.
fn projective_points(q: u64) -> Vec<[u64; 3]> {
    let mut pts = Vec::new();
    for y in 0..q {
        for z in 0..q {
            pts.push([1, y, z]);
        }
    }
    for z in 0..q {
        pts.push([0, 1, z]);
    }
    pts.push([0, 0, 1]);
    pts
}

/// Point–line incidence graph of the projective plane over the prime field
/// of order `q`. Points are vertices `0..N`, lines `N..2N`, with
/// `N = q² + q + 1`.
pub fn incidence_graph(q: u64) -> Result<Graph> {
    if !is_prime(q) {
        return domain(format!("{q} is not prime"));
    }
    if q > 1000 {
        return Err(Error::Scale("order too large".into()));
    }
    let pts = projective_points(q);
    let lines = pts.clone();
    let n_pts = pts.len();
    let mut edges = Vec::new();
    for (a, p) in pts.iter().enumerate() {
        for (l, line) in lines.iter().enumerate() {
            let dot = (p[0] * line[0] + p[1] * line[1] + p[2] * line[2]) % q;
            if dot == 0 {
                edges.push((a, n_pts + l));
            }
        }
    }
    Graph::new(2 * n_pts, edges)
}

/// How the disjoint adjacent pairs of `F₁`/`F₂` are indexed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PairIndexing {
    /// `{2i - 1, 2i}` for `i = 1 ..= ⌊n/2⌋`.
    #[default]
    Disjoint,
    /// `{2i, 2i + 1}` for `i >= 1` while `2i + 1 <= n`.
    Shifted,
}

impl PairIndexing {
    /// The swapped pairs as 0-indexed position pairs.
    pub fn pairs(self, n: usize) -> Vec<(usize, usize)> {
        match self {
            PairIndexing::Disjoint => (0..n / 2).map(|i| (2 * i, 2 * i + 1)).collect(),
            PairIndexing::Shifted => (1..).take_while(|i| 2 * i < n).map(|i| (2 * i - 1, 2 * i)).collect(),
        }
    }
}

fn check_perm_n(n: usize) -> Result<()> {
    if !(2..=MAX_PERM).contains(&n) {
        return domain(format!("permutation families need 2 <= n <= {MAX_PERM}, got {n}"));
    }
    Ok(())
}

fn swapped(n: usize, pairs: &[(usize, usize)]) -> Permutation {
    let mut img: Vec<u8> = (0..n as u8).collect();
    for &(a, b) in pairs {
        img.swap(a, b);
    }
    Permutation::from_zero_based(img).expect("swaps of the identity")
}

/// Identity plus one transposition per adjacent pair.
pub fn family_f1(n: usize) -> Result<PermutationFamily> {
    family_f1_with(n, PairIndexing::Disjoint)
}

pub fn family_f1_with(n: usize, indexing: PairIndexing) -> Result<PermutationFamily> {
    check_perm_n(n)?;
    let pairs = indexing.pairs(n);
    let members = std::iter::once(Permutation::identity(n))
        .chain(pairs.iter().map(|&p| swapped(n, &[p])));
    PermutationFamily::new(n, members)
}

/// The identity with any subset of the adjacent pairs transposed.
pub fn family_f2(n: usize) -> Result<PermutationFamily> {
    family_f2_with(n, PairIndexing::Disjoint)
}

pub fn family_f2_with(n: usize, indexing: PairIndexing) -> Result<PermutationFamily> {
    check_perm_n(n)?;
    let pairs = indexing.pairs(n);
    let members = (0u32..1 << pairs.len()).map(|s| {
        let chosen: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(j, _)| s & (1 << j) != 0)
            .map(|(_, &p)| p)
            .collect();
        swapped(n, &chosen)
    });
    PermutationFamily::new(n, members)
}

/// Every permutation whose restriction to some `n - 1` elements is the
/// identity: one element moved to another position. Size `(n - 1)² + 1`.
pub fn family_identity_perturbed(n: usize) -> Result<PermutationFamily> {
    check_perm_n(n)?;
    let id: Vec<u8> = (0..n as u8).collect();
    let mut members = Vec::with_capacity(n * n);
    for e in 0..n {
        let mut rest = id.clone();
        rest.remove(e);
        for pos in 0..n {
            let mut img = rest.clone();
            img.insert(pos, e as u8);
            members.push(Permutation::from_zero_based(img)?);
        }
    }
    PermutationFamily::new(n, members)
}
