//! Set systems on `[n]`, their traces and shatter functions.

use crate::bits::{full_mask, pext, BitIter, Combinations, Mask};
use crate::error::{domain, Error, Result};
use serde::Serialize;

/// Largest supported ground set.
pub const MAX_GROUND: usize = 64;

/// A set system `([n], R)` in canonical form: distinct ranges sorted by mask value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetSystem {
    n: usize,
    ranges: Vec<Mask>,
}

/// The values `f(0), .., f(n)` of a shatter function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShatterProfile(pub Vec<usize>);

/// Result of one shatter-function evaluation: the value and the
/// lexicographically smallest subset attaining it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shatter {
    pub value: usize,
    pub witness: Mask,
}

impl SetSystem {
    /// Builds a system, sorting and removing duplicate ranges.
    pub fn new(n: usize, ranges: impl IntoIterator<Item = Mask>) -> Result<Self> {
        if n > MAX_GROUND {
            return domain(format!("ground set size {n} exceeds {MAX_GROUND}"));
        }
        let full = full_mask(n);
        let mut ranges: Vec<Mask> = ranges.into_iter().collect();
        if let Some(bad) = ranges.iter().find(|&&r| r & !full != 0) {
            return domain(format!("range {bad:#x} uses elements outside 1..={n}"));
        }
        ranges.sort_unstable();
        ranges.dedup();
        Ok(SetSystem { n, ranges })
    }

    /// Like [`SetSystem::new`] but rejects duplicate ranges.
    pub fn from_distinct(n: usize, ranges: impl IntoIterator<Item = Mask>) -> Result<Self> {
        let raw: Vec<Mask> = ranges.into_iter().collect();
        let len = raw.len();
        let sys = Self::new(n, raw)?;
        if sys.len() != len {
            return domain("duplicate ranges");
        }
        Ok(sys)
    }

    /// The full power set of `[n]`.
    pub fn power_set(n: usize) -> Result<Self> {
        if n > 20 {
            return domain("power set only materialized for n <= 20");
        }
        Self::new(n, 0..(1u64 << n))
    }

    pub(crate) fn from_sorted_unchecked(n: usize, ranges: Vec<Mask>) -> Self {
        debug_assert!(ranges.windows(2).all(|w| w[0] < w[1]));
        SetSystem { n, ranges }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn ranges(&self) -> &[Mask] {
        &self.ranges
    }

    pub fn len(&self) -> usize {
        self.ranges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranges.is_empty()
    }

    pub fn contains(&self, range: Mask) -> bool {
        self.ranges.binary_search(&range).is_ok()
    }

    fn check_subset(&self, x: Mask) -> Result<()> {
        if x & !full_mask(self.n) != 0 {
            return domain(format!("subset {x:#x} not contained in [{}]", self.n));
        }
        Ok(())
    }

    /// The trace `{A ∩ X}` re-indexed onto `[|X|]` by ascending original element.
    pub fn trace(&self, x: Mask) -> Result<SetSystem> {
        self.check_subset(x)?;
        let b = x.count_ones() as usize;
        let mut out: Vec<Mask> = self.ranges.iter().map(|&r| pext(r, x)).collect();
        out.sort_unstable();
        out.dedup();
        Ok(SetSystem::from_sorted_unchecked(b, out))
    }

    /// Number of distinct traces on `x`, without building the trace.
    pub fn trace_size(&self, x: Mask) -> usize {
        let mut scratch = TraceCounter::new(x.count_ones() as usize);
        scratch.count(&self.ranges, x, usize::MAX)
    }

    /// `f_R(b)`: the largest trace over all `b`-subsets, with the
    /// lexicographically smallest maximizing subset.
    pub fn shatter_value(&self, b: usize) -> Result<Shatter> {
        if b > self.n {
            return domain(format!("b = {b} exceeds ground size {}", self.n));
        }
        let cap = if b >= 63 {
            self.len()
        } else {
            self.len().min(1usize << b)
        };
        let mut counter = TraceCounter::new(b);
        let mut best = Shatter {
            value: 0,
            witness: 0,
        };
        let mut first = true;
        // lexicographic enumeration: the first strict maximum is the smallest witness
        for x in Combinations::new(self.n, b) {
            let v = counter.count(&self.ranges, x, usize::MAX);
            if first || v > best.value {
                best = Shatter { value: v, witness: x };
                first = false;
                if v == cap {
                    break;
                }
            }
        }
        Ok(best)
    }

    /// Whether `f_R(b) <= k`, stopping at the first violating subset.
    pub fn shatter_at_most(&self, b: usize, k: usize) -> Result<bool> {
        if b > self.n {
            return domain(format!("b = {b} exceeds ground size {}", self.n));
        }
        if self.len() <= k {
            return Ok(true);
        }
        let mut counter = TraceCounter::new(b);
        Ok(Combinations::new(self.n, b).all(|x| counter.count(&self.ranges, x, k + 1) <= k))
    }

    /// `f_R(0), .., f_R(n)`.
    pub fn shatter_profile(&self) -> ShatterProfile {
        ShatterProfile(
            (0..=self.n)
                .map(|b| self.shatter_value(b).expect("b in range").value)
                .collect(),
        )
    }

    /// Largest `b` with `f_R(b) = 2^b`; `-1` for the empty system.
    pub fn vc_dimension(&self) -> i32 {
        if self.is_empty() {
            return -1;
        }
        let mut d = 0;
        for b in 1..=self.n {
            if b >= 63 || self.len() < (1usize << b) {
                break;
            }
            let mut counter = TraceCounter::new(b);
            let shattered = Combinations::new(self.n, b)
                .any(|x| counter.count(&self.ranges, x, usize::MAX) == 1 << b);
            if !shattered {
                break;
            }
            d = b as i32;
        }
        d
    }

    /// Whether every subset of every range is itself a range.
    pub fn is_ideal(&self) -> bool {
        // closure under single-element removal suffices
        self.ranges
            .iter()
            .all(|&a| BitIter(a).all(|i| self.contains(a & !(1 << i))))
    }

    /// A set `X` of at most `|R| - 1` elements on which all ranges have
    /// pairwise distinct traces.
    pub fn distinguishing_set(&self) -> Mask {
        bondy_distinguishing_set(&self.ranges).expect("ranges are distinct")
    }
}

/// Refines the ranges into trace-equivalence classes, adding one separating
/// element at a time, and returns the separating set.
///
/// The class holding the smallest range among all classes of size at least
/// two is split on the smallest element where two of its members differ. Each
/// step increases the number of classes, so at most `t - 1` elements are added.
pub fn bondy_distinguishing_set(ranges: &[Mask]) -> Result<Mask> {
    let mut sorted = ranges.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return domain("duplicate ranges");
    }
    let mut classes: Vec<Vec<Mask>> = if sorted.is_empty() {
        Vec::new()
    } else {
        vec![sorted]
    };
    let mut x: Mask = 0;
    while let Some(pos) = classes.iter().position(|c| c.len() >= 2) {
        let class = classes.swap_remove(pos);
        let union = class.iter().fold(0, |a, &r| a | r);
        let common = class.iter().fold(!0, |a, &r| a & r);
        let differ = union & !common;
        let e = differ & differ.wrapping_neg();
        x |= e;
        let (with, without): (Vec<Mask>, Vec<Mask>) = class.into_iter().partition(|&r| r & e != 0);
        // every other class is refined by e as well
        let mut next = Vec::with_capacity(classes.len() + 2);
        for c in classes.drain(..) {
            let (a, b): (Vec<Mask>, Vec<Mask>) = c.into_iter().partition(|&r| r & e != 0);
            next.extend([a, b].into_iter().filter(|v| !v.is_empty()));
        }
        next.push(with);
        next.push(without);
        next.sort_unstable_by_key(|c| c[0]);
        classes = next;
    }
    Ok(x)
}

/// Reusable distinct-trace counter for subsets of a fixed size.
pub(crate) struct TraceCounter {
    bitmap: Vec<u64>,
    touched: Vec<usize>,
    sorted: Vec<Mask>,
    small: bool,
}

impl TraceCounter {
    pub(crate) fn new(b: usize) -> Self {
        let small = b <= 16;
        let words = if small { (1usize << b).div_ceil(64) } else { 0 };
        TraceCounter {
            bitmap: vec![0; words],
            touched: Vec::new(),
            sorted: Vec::new(),
            small,
        }
    }

    /// Counts distinct `r ∩ x`, stopping once `stop` is reached.
    pub(crate) fn count(&mut self, ranges: &[Mask], x: Mask, stop: usize) -> usize {
        if self.small {
            let mut c = 0;
            for &r in ranges {
                let t = pext(r, x) as usize;
                let (w, bit) = (t / 64, 1u64 << (t % 64));
                if self.bitmap[w] & bit == 0 {
                    self.bitmap[w] |= bit;
                    self.touched.push(w);
                    c += 1;
                    if c >= stop {
                        break;
                    }
                }
            }
            for w in self.touched.drain(..) {
                self.bitmap[w] = 0;
            }
            c
        } else {
            self.sorted.clear();
            self.sorted.extend(ranges.iter().map(|&r| r & x));
            self.sorted.sort_unstable();
            self.sorted.dedup();
            self.sorted.len().min(stop)
        }
    }
}

impl ShatterProfile {
    pub fn values(&self) -> &[usize] {
        &self.0
    }

    /// Pointwise `self <= other`.
    pub fn dominated_by(&self, other: &ShatterProfile) -> Result<bool> {
        if self.0.len() != other.0.len() {
            return Err(Error::Domain(format!(
                "profile lengths differ: {} vs {}",
                self.0.len(),
                other.0.len()
            )));
        }
        Ok(self.0.iter().zip(&other.0).all(|(a, b)| a <= b))
    }
}
