//! Bit-mask helpers shared by the set-system, graph and permutation code.

/// A subset of `[n]` (`n <= 64`), bit `i` standing for element `i + 1`.
pub type Mask = u64;

/// Mask with the low `n` bits set.
#[inline]
pub fn full_mask(n: usize) -> Mask {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Builds a mask from 1-indexed elements. Elements outside `1..=n` yield `None`.
pub fn mask_from_elements(elements: &[usize], n: usize) -> Option<Mask> {
    let mut m = 0u64;
    for &e in elements {
        if e == 0 || e > n {
            return None;
        }
        m |= 1 << (e - 1);
    }
    Some(m)
}

/// 1-indexed elements of a mask in increasing order.
pub fn elements(mask: Mask) -> Vec<usize> {
    BitIter(mask).map(|i| i + 1).collect()
}

/// Iterator over the 0-indexed set bits of a mask, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct BitIter(pub Mask);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for BitIter {}

/// Parallel bit extract: packs the bits of `value` selected by `select` into
/// the low bits of the result, preserving order.
#[inline]
pub fn pext(value: Mask, select: Mask) -> Mask {
    let mut out = 0u64;
    let mut k = 0;
    let mut s = select;
    while s != 0 {
        let low = s & s.wrapping_neg();
        if value & low != 0 {
            out |= 1 << k;
        }
        k += 1;
        s ^= low;
    }
    out
}

/// Inverse of [`pext`]: spreads the low bits of `value` onto the positions of `select`.
#[inline]
pub fn pdep(value: Mask, select: Mask) -> Mask {
    let mut out = 0u64;
    let mut k = 0;
    let mut s = select;
    while s != 0 {
        let low = s & s.wrapping_neg();
        if value & (1 << k) != 0 {
            out |= low;
        }
        k += 1;
        s ^= low;
    }
    out
}

/// Lexicographic comparison of two equal-size subsets read as increasing
/// element lists: `a` comes first iff it owns the smallest element of the
/// symmetric difference.
#[inline]
pub fn lex_less(a: Mask, b: Mask) -> bool {
    let d = a ^ b;
    d != 0 && a & d & d.wrapping_neg() != 0
}

/// All `k`-subsets of `{0, .., n-1}` as masks, in lexicographic order of
/// their increasing element lists.
#[derive(Clone, Debug)]
pub struct Combinations {
    idx: Vec<usize>,
    n: usize,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations {
            idx: (0..k).collect(),
            n,
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Mask;

    fn next(&mut self) -> Option<Mask> {
        if self.done {
            return None;
        }
        let mask = self.idx.iter().fold(0u64, |m, &i| m | (1 << i));
        let k = self.idx.len();
        // advance to the next combination
        let mut j = k;
        loop {
            if j == 0 {
                self.done = true;
                break;
            }
            j -= 1;
            if self.idx[j] < self.n - k + j {
                self.idx[j] += 1;
                for t in j + 1..k {
                    self.idx[t] = self.idx[t - 1] + 1;
                }
                break;
            }
        }
        Some(mask)
    }
}

/// All `k`-subsets of the elements of `ground`, lexicographic order.
pub fn combinations_of(ground: Mask, k: usize) -> impl Iterator<Item = Mask> {
    let n = ground.count_ones() as usize;
    Combinations::new(n, k).map(move |m| pdep(m, ground))
}

/// Binomial coefficient, `None` on overflow. `C(n, k) = 0` for `k > n`.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// `n!`, `None` on overflow.
pub fn factorial(n: u64) -> Option<u128> {
    (1..=n as u128).try_fold(1u128, |acc, x| acc.checked_mul(x))
}
