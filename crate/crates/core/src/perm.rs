//! Permutations, restrictions, pattern containment and the permutation
//! shatter function `φ_F`.

use crate::bits::{full_mask, Combinations, Mask};
use crate::error::{domain, Error, Result};

/// Largest supported permutation length.
pub const MAX_PERM: usize = 16;

/// A permutation of `0..n` in one-line notation (`image[p]` is the value at
/// position `p`). Ordered lexicographically by one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    image: Vec<u8>,
}

impl Permutation {
    /// From 0-indexed one-line notation.
    pub fn from_zero_based(image: Vec<u8>) -> Result<Self> {
        let n = image.len();
        if n > MAX_PERM {
            return domain(format!("permutation length {n} exceeds {MAX_PERM}"));
        }
        let mut seen = 0u32;
        for &v in &image {
            if v as usize >= n || seen & (1 << v) != 0 {
                return domain(format!("{:?} is not a bijection on [{n}]", image));
            }
            seen |= 1 << v;
        }
        Ok(Permutation { image })
    }

    /// From 1-indexed one-line notation, e.g. `[3, 1, 2]`.
    pub fn from_one_line(values: &[usize]) -> Result<Self> {
        if values.iter().any(|&v| v == 0 || v > MAX_PERM) {
            return domain(format!("{values:?} is not a bijection on [{}]", values.len()));
        }
        Self::from_zero_based(values.iter().map(|&v| (v - 1) as u8).collect())
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n as u8).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    /// 0-indexed one-line notation.
    pub fn image(&self) -> &[u8] {
        &self.image
    }

    /// 1-indexed one-line notation.
    pub fn one_line(&self) -> Vec<usize> {
        self.image.iter().map(|&v| v as usize + 1).collect()
    }

    /// `pos[v]` = position of value `v` (the inverse permutation).
    pub fn positions(&self) -> Vec<u8> {
        let mut pos = vec![0u8; self.len()];
        for (p, &v) in self.image.iter().enumerate() {
            pos[v as usize] = p as u8;
        }
        pos
    }

    fn check_mask(&self, x: Mask) -> Result<()> {
        if x & !full_mask(self.len()) != 0 {
            return domain(format!("subset {x:#x} not contained in [{}]", self.len()));
        }
        Ok(())
    }

    /// The elements of `x` (0-indexed labels) in the order they appear.
    pub fn restriction(&self, x: Mask) -> Result<Vec<u8>> {
        self.check_mask(x)?;
        Ok(self.restriction_unchecked(x).collect())
    }

    fn restriction_unchecked(&self, x: Mask) -> impl Iterator<Item = u8> + '_ {
        self.image.iter().copied().filter(move |&v| x & (1 << v) != 0)
    }

    /// Restriction packed into one word (4 bits per label); equal keys on the
    /// same `x` mean equal restrictions.
    #[inline]
    pub(crate) fn restriction_key(&self, x: Mask) -> u64 {
        self.restriction_unchecked(x)
            .fold(0u64, |k, v| (k << 4) | v as u64)
    }

    /// The restriction re-indexed onto `0..|x|` by ascending original label.
    pub fn restriction_pattern(&self, x: Mask) -> Result<Permutation> {
        self.check_mask(x)?;
        let rank = |v: u8| (x & ((1u64 << v) - 1)).count_ones() as u8;
        Ok(Permutation {
            image: self.restriction_unchecked(x).map(rank).collect(),
        })
    }

    /// Whether `i` and `j` (0-indexed values) appear in decreasing order.
    pub fn is_inverted(&self, pos: &[u8], i: usize, j: usize) -> bool {
        (i < j) == (pos[i] > pos[j])
    }

    /// All inversions `(i, j)`, `i < j` (0-indexed values), in lexicographic order.
    pub fn inversions(&self) -> Vec<(usize, usize)> {
        let pos = self.positions();
        let n = self.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| pos[i] > pos[j])
            .collect()
    }

    /// Whether some subsequence of `self` is order-isomorphic to `pattern`.
    pub fn contains(&self, pattern: &Permutation) -> bool {
        let m = pattern.len();
        if m > self.len() {
            return false;
        }
        let mut chosen = Vec::with_capacity(m);
        self.embed(pattern.image(), 0, &mut chosen)
    }

    fn embed(&self, pattern: &[u8], from: usize, chosen: &mut Vec<u8>) -> bool {
        let j = chosen.len();
        if j == pattern.len() {
            return true;
        }
        let remaining = pattern.len() - j;
        for p in from..=self.len() - remaining {
            let v = self.image[p];
            let consistent = chosen
                .iter()
                .zip(pattern)
                .all(|(&w, &t)| (t < pattern[j]) == (w < v));
            if consistent {
                chosen.push(v);
                if self.embed(pattern, p + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    /// All permutations of `0..n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (0..n as u8).collect();
        loop {
            out.push(Permutation { image: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }
}

/// The lexicographically smallest pair `(i, j)`, `i < j` (0-indexed values),
/// ordered differently by the two permutations.
pub fn distinguishing_pair(a: &Permutation, b: &Permutation) -> Result<(usize, usize)> {
    if a.len() != b.len() {
        return domain("permutations of different lengths");
    }
    let (pa, pb) = (a.positions(), b.positions());
    let n = a.len();
    for i in 0..n {
        for j in i + 1..n {
            if (pa[i] > pa[j]) != (pb[i] > pb[j]) {
                return Ok((i, j));
            }
        }
    }
    Err(Error::Precondition("identical permutations have no distinguishing pair".into()))
}

/// A set of distinct permutations of `[n]`, kept in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PermutationFamily {
    n: usize,
    members: Vec<Permutation>,
}

/// `φ_F(m)` with its lexicographically smallest witness subset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Phi {
    pub value: usize,
    pub witness: Mask,
}

impl PermutationFamily {
    /// Builds a family, sorting and merging repeated members.
    pub fn new(n: usize, members: impl IntoIterator<Item = Permutation>) -> Result<Self> {
        if n > MAX_PERM {
            return domain(format!("permutation length {n} exceeds {MAX_PERM}"));
        }
        let mut members: Vec<Permutation> = members.into_iter().collect();
        if let Some(p) = members.iter().find(|p| p.len() != n) {
            return domain(format!("member {:?} is not on [{n}]", p.one_line()));
        }
        members.sort_unstable();
        members.dedup();
        Ok(PermutationFamily { n, members })
    }

    /// Like [`PermutationFamily::new`] but rejects repeated members.
    pub fn from_distinct(n: usize, members: impl IntoIterator<Item = Permutation>) -> Result<Self> {
        let raw: Vec<Permutation> = members.into_iter().collect();
        let len = raw.len();
        let fam = Self::new(n, raw)?;
        if fam.len() != len {
            return domain("duplicate permutations");
        }
        Ok(fam)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[Permutation] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `|F_|X|`.
    pub fn restriction_count(&self, x: Mask) -> usize {
        let mut keys: Vec<u64> = self.members.iter().map(|p| p.restriction_key(x)).collect();
        keys.sort_unstable();
        keys.dedup();
        keys.len()
    }

    /// `φ_F(m) = max over m-subsets X of |F_|X|`.
    pub fn phi_value(&self, m: usize) -> Result<Phi> {
        if m == 0 || m > self.n {
            return domain(format!("m = {m} outside 1..={}", self.n));
        }
        let cap = crate::bits::factorial(m as u64)
            .map_or(self.len(), |f| (f.min(self.len() as u128)) as usize);
        let mut best: Option<Phi> = None;
        let mut keys = Vec::with_capacity(self.len());
        for x in Combinations::new(self.n, m) {
            keys.clear();
            keys.extend(self.members.iter().map(|p| p.restriction_key(x)));
            keys.sort_unstable();
            keys.dedup();
            let v = keys.len();
            if best.is_none_or(|b| v > b.value) {
                best = Some(Phi { value: v, witness: x });
                if v == cap {
                    break;
                }
            }
        }
        Ok(best.expect("at least one m-subset"))
    }

    /// `F_|X` as a family on `[|X|]`.
    pub fn restrict(&self, x: Mask) -> Result<PermutationFamily> {
        let members = self
            .members
            .iter()
            .map(|p| p.restriction_pattern(x))
            .collect::<Result<Vec<_>>>()?;
        PermutationFamily::new(x.count_ones() as usize, members)
    }

    /// The subfamily with the given member indices.
    pub fn subfamily(&self, indices: impl IntoIterator<Item = usize>) -> PermutationFamily {
        PermutationFamily {
            n: self.n,
            members: {
                let mut v: Vec<Permutation> =
                    indices.into_iter().map(|i| self.members[i].clone()).collect();
                v.sort_unstable();
                v.dedup();
                v
            },
        }
    }
}
