//! Slow, obviously-correct reference implementations shared by the
//! integration tests. They work on element lists and ordered sets and share
//! no code with the library beyond its public types.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All `k`-subsets of `0..n` as sorted vectors, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for e in start..n {
            cur.push(e);
            go(e + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn to_sets(ranges: &[u64]) -> Vec<BTreeSet<usize>> {
    ranges
        .iter()
        .map(|&r| (0..64).filter(|e| r >> e & 1 == 1).collect())
        .collect()
}

/// `f_R(b)` by intersecting every range with every `b`-subset.
pub fn naive_shatter(n: usize, ranges: &[u64], b: usize) -> usize {
    let sets = to_sets(ranges);
    subsets(n, b)
        .iter()
        .map(|x| {
            let x: BTreeSet<usize> = x.iter().copied().collect();
            sets.iter()
                .map(|s| s.intersection(&x).copied().collect::<Vec<_>>())
                .collect::<BTreeSet<_>>()
                .len()
        })
        .max()
        .unwrap_or(0)
}

pub fn naive_is_ideal(ranges: &[u64]) -> bool {
    let all: BTreeSet<u64> = ranges.iter().copied().collect();
    ranges
        .iter()
        .all(|&r| (0..64).filter(|e| r >> e & 1 == 1).all(|e| all.contains(&(r & !(1 << e)))))
}

/// Every ideal system on `[n]`, `n <= 4`, by filtering all families of subsets.
pub fn all_ideals_by_filter(n: usize) -> Vec<Vec<u64>> {
    assert!(n <= 4);
    let sets = 1u64 << n;
    let mut out = Vec::new();
    for family in 0..(1u128 << sets) {
        let ranges: Vec<u64> = (0..sets).filter(|&s| family >> s & 1 == 1).collect();
        if naive_is_ideal(&ranges) {
            out.push(ranges);
        }
    }
    out
}

/// Largest ideal system on `[n]` meeting every `(b, k)`, by a plain
/// include/exclude walk over all ideals with a full constraint recheck.
pub fn brute_ideal_optimum(n: usize, constraints: &[(usize, usize)]) -> usize {
    fn ok(n: usize, ranges: &[u64], constraints: &[(usize, usize)]) -> bool {
        constraints.iter().all(|&(b, k)| naive_shatter(n, ranges, b) <= k)
    }
    fn go(n: usize, s: u64, cur: &mut Vec<u64>, c: &[(usize, usize)], best: &mut usize) {
        *best = (*best).max(cur.len());
        if s == 1 << n {
            return;
        }
        let addable = (0..n).filter(|e| s >> e & 1 == 1).all(|e| cur.contains(&(s & !(1 << e))));
        if addable {
            cur.push(s);
            if ok(n, cur, c) {
                go(n, s + 1, cur, c, best);
            }
            cur.pop();
        }
        go(n, s + 1, cur, c, best);
    }
    let mut best = 0;
    go(n, 0, &mut Vec::new(), constraints, &mut best);
    best
}

/// `Ex(n, m, k)` by checking every graph on `n <= 6` vertices.
pub fn brute_ex(n: usize, m: usize, k: usize) -> usize {
    let pairs: Vec<(usize, usize)> = subsets(n, 2).into_iter().map(|p| (p[0], p[1])).collect();
    let groups = subsets(n, m);
    let mut best = 0;
    for g in 0u64..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = (0..pairs.len()).filter(|i| g >> i & 1 == 1).map(|i| pairs[i]).collect();
        if edges.len() <= best {
            continue;
        }
        let fits = groups.iter().all(|x| {
            edges.iter().filter(|(u, v)| x.contains(u) && x.contains(v)).count() <= k
        });
        if fits {
            best = edges.len();
        }
    }
    best
}

/// Relative order pattern of `perm` (0-based one-line) on the values `x`.
pub fn pattern(perm: &[u8], x: &[usize]) -> Vec<u8> {
    perm.iter().copied().filter(|v| x.contains(&(*v as usize))).collect()
}

/// `φ_F(m)` by collecting restricted patterns in ordered sets.
pub fn naive_phi(n: usize, members: &[Vec<u8>], m: usize) -> usize {
    subsets(n, m)
        .iter()
        .map(|x| members.iter().map(|p| pattern(p, x)).collect::<BTreeSet<_>>().len())
        .max()
        .unwrap_or(0)
}

pub fn all_perms(n: usize) -> Vec<Vec<u8>> {
    fn go(n: usize, cur: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v as u8);
                go(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Largest family of permutations of `[n]` with `φ_F(m) <= k`, by
/// include/exclude over all permutations with a full recheck.
pub fn brute_perm_optimum(n: usize, m: usize, k: usize) -> usize {
    fn go(i: usize, all: &[Vec<u8>], n: usize, m: usize, k: usize, cur: &mut Vec<Vec<u8>>, best: &mut usize) {
        *best = (*best).max(cur.len());
        if i == all.len() || cur.len() + (all.len() - i) <= *best {
            return;
        }
        cur.push(all[i].clone());
        if naive_phi(n, cur, m) <= k {
            go(i + 1, all, n, m, k, cur, best);
        }
        cur.pop();
        go(i + 1, all, n, m, k, cur, best);
    }
    let all = all_perms(n);
    let mut best = 0;
    go(0, &all, n, m, k, &mut Vec::new(), &mut best);
    best
}

pub fn random_ranges(rng: &mut ChaCha8Rng, n: usize, max: usize) -> Vec<u64> {
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let count = rng.gen_range(1..=max);
    (0..count).map(|_| rng.gen::<u64>() & full).collect()
}
