//! Closed-form bounds on set systems with a bounded shatter function.
//!
//! All values are exact `u128` integers; overflow is reported instead of
//! wrapped.

use std::collections::HashMap;

use serde::Serialize;

use crate::bits::binomial;
use crate::error::{domain, Error, Result};

fn overflow(what: &'static str) -> Error {
    Error::Overflow(what)
}

fn pow2(i: u64, what: &'static str) -> Result<u128> {
    1u128.checked_shl(i as u32).filter(|_| i < 128).ok_or(overflow(what))
}

/// `υ_i(b) = 2^i (b - i + 1)`, for `0 <= i <= b - 1`.
pub fn upsilon(i: u64, b: u64) -> Result<u128> {
    if b == 0 || i >= b {
        return domain(format!("upsilon needs 0 <= i < b, got i = {i}, b = {b}"));
    }
    pow2(i, "upsilon")?
        .checked_mul((b - i + 1) as u128)
        .ok_or(overflow("upsilon"))
}

/// `λ_i(b)`: the largest `∏ (b_j + 1)` over compositions `b = b_1 + … + b_i`
/// into parts `>= 1`; `λ_0(b) = 1`.
///
/// The maximum is reached by the balanced composition.
pub fn lambda(i: u64, b: u64) -> Result<u128> {
    if i > b {
        return domain(format!("lambda needs i <= b, got i = {i}, b = {b}"));
    }
    if i == 0 {
        return Ok(1);
    }
    let (q, r) = ((b / i) as u128, b % i);
    let mut acc: u128 = 1;
    for j in 0..i {
        let part = if j < r { q + 2 } else { q + 1 };
        acc = acc.checked_mul(part).ok_or(overflow("lambda"))?;
    }
    Ok(acc)
}

/// `ζ(b) = 8 + 3⌊(b - 3)/2⌋ + [b even]`, for `b >= 3`.
pub fn zeta(b: u64) -> Result<u128> {
    if b < 3 {
        return domain(format!("zeta needs b >= 3, got {b}"));
    }
    Ok(8 + 3 * ((b - 3) / 2) as u128 + b.is_multiple_of(2) as u128)
}

/// `Σ_{i < b} C(n, i)`, for `0 <= b <= n + 1`.
pub fn sauer_bound(n: u64, b: u64) -> Result<u128> {
    if b > n + 1 {
        return domain(format!("sauer_bound needs b <= n + 1, got n = {n}, b = {b}"));
    }
    (0..b).try_fold(0u128, |acc, i| {
        acc.checked_add(binomial(n, i).ok_or(overflow("sauer_bound"))?)
            .ok_or(overflow("sauer_bound"))
    })
}

/// `Σ_{j=0}^{i} (b - j + 1) C(n, j)`: systems with `f(b) < υ_i(b)` have
/// strictly fewer ranges than this.
pub fn theorem1_bound(n: u64, b: u64, i: u64) -> Result<u128> {
    if i >= b {
        return domain(format!("bound needs i < b, got i = {i}, b = {b}"));
    }
    if n == 0 {
        return domain("bound needs n >= 1");
    }
    (0..=i).try_fold(0u128, |acc, j| {
        let c = binomial(n, j).ok_or(overflow("theorem1_bound"))?;
        let term = c
            .checked_mul((b - j + 1) as u128)
            .ok_or(overflow("theorem1_bound"))?;
        acc.checked_add(term).ok_or(overflow("theorem1_bound"))
    })
}

/// Sizes of the `i` balanced blocks of `[n]`, larger blocks first.
pub fn balanced_blocks(n: u64, i: u64) -> Vec<u64> {
    let (q, r) = (n / i, n % i);
    (0..i).map(|j| if j < r { q + 1 } else { q }).collect()
}

/// Edge count of the Turán graph `T_i(n)`, for `1 <= i <= n`.
pub fn turan_edges(i: u64, n: u64) -> Result<u128> {
    if i == 0 || i > n {
        return domain(format!("turan_edges needs 1 <= i <= n, got i = {i}, n = {n}"));
    }
    let blocks = balanced_blocks(n, i);
    let inside: u128 = blocks
        .iter()
        .map(|&s| binomial(s, 2).expect("small"))
        .sum();
    Ok(binomial(n, 2).ok_or(overflow("turan_edges"))? - inside)
}

/// One row of the `υ`/`λ` table: `(υ_i(b) - 1, λ_{i+1}(b))` for
/// `i = 0 .. b - 2`, flattened.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsRow {
    pub b: u64,
    pub entries: Vec<u128>,
    /// `gap_flags[i]` is set when `λ_{i+1}(b) > υ_i(b)`.
    pub gap_flags: Vec<bool>,
}

impl BoundsRow {
    pub fn new(b: u64) -> Result<Self> {
        if b < 2 {
            return domain("table rows start at b = 2");
        }
        let mut entries = Vec::new();
        let mut gap_flags = Vec::new();
        for i in 0..b - 1 {
            let u = upsilon(i, b)?;
            let l = lambda(i + 1, b)?;
            // λ_{i+1}(b) <= υ_{i+1}(b) is the invariant the table relies on
            if l > upsilon(i + 1, b)? {
                return Err(Error::Consistency(format!(
                    "lambda_{}({b}) exceeds upsilon_{}({b})",
                    i + 1,
                    i + 1
                )));
            }
            entries.push(u - 1);
            entries.push(l);
            gap_flags.push(l > u);
        }
        Ok(BoundsRow {
            b,
            entries,
            gap_flags,
        })
    }

    /// `k` values in `[υ_i(b), λ_{i+1}(b) - 1]` whose growth order is undecided.
    pub fn gaps(&self) -> Vec<(u64, std::ops::RangeInclusive<u128>)> {
        self.gap_flags
            .iter()
            .enumerate()
            .filter(|(_, &g)| g)
            .map(|(i, _)| {
                let u = self.entries[2 * i] + 1;
                let l = self.entries[2 * i + 1];
                (i as u64, u..=l - 1)
            })
            .collect()
    }
}

/// Rows `b = 2 ..= b_max` of the `υ`/`λ` table.
pub fn table1(b_max: u64) -> Result<Vec<BoundsRow>> {
    if b_max < 2 {
        return domain("b_max must be at least 2");
    }
    (2..=b_max).map(BoundsRow::new).collect()
}

/// Human-readable table; gap entries carry a trailing `*`.
pub fn format_table1(rows: &[BoundsRow]) -> String {
    let width = rows.iter().map(|r| r.entries.len()).max().unwrap_or(0);
    let mut header = vec!["b".to_string()];
    for c in 0..width {
        header.push(if c % 2 == 0 {
            format!("u{}-1", c / 2)
        } else {
            format!("l{}", c / 2 + 1)
        });
    }
    let mut cells: Vec<Vec<String>> = vec![header];
    for r in rows {
        let mut line = vec![r.b.to_string()];
        for (c, v) in r.entries.iter().enumerate() {
            let mark = if r.gap_flags[c / 2] { "*" } else { "" };
            line.push(format!("{v}{mark}"));
        }
        cells.push(line);
    }
    let col_w: Vec<usize> = (0..=width)
        .map(|c| cells.iter().filter_map(|l| l.get(c)).map(|s| s.len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for line in &cells {
        let padded: Vec<String> = line
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s:>w$}", w = col_w[c]))
            .collect();
        out.push_str(padded.join("  ").trim_end());
        out.push('\n');
    }
    out
}

/// Tab-separated table: `b`, then the entries, then a `gaps` column listing
/// the indices `i` of the gap pairs.
pub fn format_table1_tsv(rows: &[BoundsRow]) -> String {
    let mut out = String::from("b\tentries\tgaps\n");
    for r in rows {
        let e: Vec<String> = r.entries.iter().map(|v| v.to_string()).collect();
        let g: Vec<String> = r
            .gap_flags
            .iter()
            .enumerate()
            .filter(|(_, &f)| f)
            .map(|(i, _)| i.to_string())
            .collect();
        out.push_str(&format!("{}\t{}\t{}\n", r.b, e.join(","), g.join(",")));
    }
    out
}

/// Upper bound `T(n, m, k)` from the recursion
/// `T(n, m, k) <= k · max(T(n - m + 1, m - 1, k - 1), T(n - m + 1, m, k))`.
///
/// `base` is consulted first at every parameter triple; when it returns
/// `None` and the recursion cannot continue (`n < m`, `m < 2` or `k < 1`) the
/// result is `None` (unknown). Memoization is per call.
pub fn evaluate_t_recursion<F>(n: u64, m: u64, k: u64, base: F) -> Result<Option<u128>>
where
    F: Fn(u64, u64, u64) -> Option<u128>,
{
    if n < 1 || m < 2 || k < 1 {
        return domain(format!("recursion needs n >= 1, m >= 2, k >= 1 (n={n}, m={m}, k={k})"));
    }
    let mut memo = HashMap::new();
    t_rec(n, m, k, &base, &mut memo)
}

fn t_rec<F>(
    n: u64,
    m: u64,
    k: u64,
    base: &F,
    memo: &mut HashMap<(u64, u64, u64), Option<u128>>,
) -> Result<Option<u128>>
where
    F: Fn(u64, u64, u64) -> Option<u128>,
{
    if let Some(&v) = memo.get(&(n, m, k)) {
        return Ok(v);
    }
    let value = if let Some(v) = base(n, m, k) {
        Some(v)
    } else if n < m || m < 2 || k < 1 {
        None
    } else {
        let next = n - m + 1;
        let shrink = t_rec(next, m - 1, k - 1, base, memo)?;
        let same = t_rec(next, m, k, base, memo)?;
        match (shrink, same) {
            (Some(a), Some(b)) => Some(
                (k as u128)
                    .checked_mul(a.max(b))
                    .ok_or(overflow("T recursion"))?,
            ),
            _ => None,
        }
    };
    memo.insert((n, m, k), value);
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive maximum over compositions of `b` into `i` positive parts.
    fn lambda_by_compositions(i: u64, b: u64) -> u128 {
        fn go(parts_left: u64, rest: u64, acc: u128) -> u128 {
            if parts_left == 0 {
                return if rest == 0 { acc } else { 0 };
            }
            (1..=rest.saturating_sub(parts_left - 1))
                .map(|p| go(parts_left - 1, rest - p, acc * (p as u128 + 1)))
                .max()
                .unwrap_or(0)
        }
        if i == 0 {
            1
        } else {
            go(i, b, 1)
        }
    }

    #[test]
    fn upsilon_examples() {
        for b in 1..10 {
            assert_eq!(upsilon(0, b).unwrap(), b as u128 + 1);
            assert_eq!(upsilon(b - 1, b).unwrap(), 1 << b);
        }
        assert_eq!(upsilon(1, 4).unwrap() - 1, 7);
        assert_eq!(upsilon(4, 6).unwrap() - 1, 47);
        assert!(upsilon(3, 3).is_err());
    }

    #[test]
    fn upsilon_doubling_identity() {
        for b in 2..20 {
            for i in 1..b {
                assert_eq!(upsilon(i, b).unwrap(), 2 * upsilon(i - 1, b - 1).unwrap());
            }
        }
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda(2, 4).unwrap(), 9);
        assert_eq!(lambda(3, 6).unwrap(), 27);
        assert_eq!(lambda(5, 6).unwrap(), 48);
        assert_eq!(lambda(0, 7).unwrap(), 1);
        assert!(lambda(5, 4).is_err());
    }

    #[test]
    fn lambda_matches_exhaustive_compositions() {
        for b in 0..=12 {
            for i in 0..=b {
                assert_eq!(lambda(i, b).unwrap(), lambda_by_compositions(i, b), "i={i} b={b}");
            }
        }
    }

    #[test]
    fn zeta_examples() {
        assert_eq!(zeta(3).unwrap(), 8);
        assert_eq!(zeta(4).unwrap(), 9);
        assert_eq!(zeta(5).unwrap(), 11);
        assert_eq!(zeta(6).unwrap(), 12);
        assert!(zeta(2).is_err());
    }

    #[test]
    fn sauer_examples() {
        assert_eq!(sauer_bound(3, 2).unwrap(), 4);
        assert_eq!(sauer_bound(6, 3).unwrap(), 22);
        for n in 0..20 {
            assert_eq!(sauer_bound(n, n + 1).unwrap(), 1 << n);
        }
        assert!(sauer_bound(3, 5).is_err());
    }

    #[test]
    fn theorem1_examples() {
        for n in 1..10 {
            for b in 1..8 {
                assert_eq!(theorem1_bound(n, b, 0).unwrap(), b as u128 + 1);
            }
        }
        assert_eq!(theorem1_bound(6, 4, 1).unwrap(), 29);
        assert!(theorem1_bound(6, 4, 4).is_err());
    }

    #[test]
    fn theorem1_anchor_at_n_equals_b() {
        for b in 1..15 {
            for i in 0..b {
                assert!(theorem1_bound(b, b, i).unwrap() >= upsilon(i, b).unwrap());
            }
        }
    }

    #[test]
    fn turan_examples() {
        assert_eq!(turan_edges(2, 4).unwrap(), 4);
        assert_eq!(turan_edges(2, 5).unwrap(), 6);
        assert_eq!(turan_edges(3, 6).unwrap(), 12);
        assert_eq!(turan_edges(3, 5).unwrap(), 8);
        assert_eq!(turan_edges(1, 5).unwrap(), 0);
        assert!(turan_edges(6, 5).is_err());
    }

    #[test]
    fn table_rows() {
        let rows = table1(6).unwrap();
        assert_eq!(rows[0].entries, vec![2, 3]);
        assert_eq!(rows[1].entries, vec![3, 4, 5, 6]);
        assert_eq!(rows[3].entries, vec![5, 6, 9, 12, 15, 18, 23, 24]);
        assert_eq!(rows[4].gap_flags, vec![false, true, true, true, false]);
        assert_eq!(rows[2].gaps(), vec![(1, 8..=8)]);
        assert!(table1(1).is_err());
    }

    #[test]
    fn recursion_passes_base_through() {
        let base = |n: u64, m: u64, _k: u64| if n <= m { Some(7) } else { None };
        assert_eq!(evaluate_t_recursion(3, 4, 2, base).unwrap(), Some(7));
        assert_eq!(evaluate_t_recursion(4, 4, 2, base).unwrap(), Some(7));
        // n = 5, m = 4: next n = 2 on both branches
        assert_eq!(evaluate_t_recursion(5, 4, 2, base).unwrap(), Some(14));
    }

    #[test]
    fn recursion_reports_unknown() {
        let none = |_: u64, _: u64, _: u64| None;
        assert_eq!(evaluate_t_recursion(10, 3, 3, none).unwrap(), None);
        assert!(evaluate_t_recursion(10, 1, 3, none).is_err());
    }

    /// Unrolls the recursion without memoization.
    fn unrolled(n: u64, m: u64, k: u64, base: &dyn Fn(u64, u64, u64) -> Option<u128>) -> Option<u128> {
        if let Some(v) = base(n, m, k) {
            return Some(v);
        }
        if n < m || m < 2 || k < 1 {
            return None;
        }
        let a = unrolled(n - m + 1, m - 1, k - 1, base)?;
        let b = unrolled(n - m + 1, m, k, base)?;
        Some(k as u128 * a.max(b))
    }

    #[test]
    fn recursion_matches_unrolling_and_is_monotone() {
        // exponential base on the (m - 1, k - 1) axis, trivial n < m cases
        let base = |n: u64, m: u64, k: u64| -> Option<u128> {
            if m == 3 && k == 2 {
                Some(1u128 << n)
            } else if n < m {
                Some((1..=n as u128).product())
            } else {
                None
            }
        };
        let mut prev = 0;
        for n in 4..40 {
            let v = evaluate_t_recursion(n, 4, 3, base).unwrap().unwrap();
            assert_eq!(Some(v), unrolled(n, 4, 3, &base));
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn recursion_stays_exponential_with_exponential_base() {
        let base = |n: u64, m: u64, k: u64| -> Option<u128> {
            if m == 3 && k == 2 {
                Some(1u128 << n)
            } else if n < m {
                Some((1..=n as u128).product())
            } else {
                None
            }
        };
        // T(n) <= C^n for a fixed C: check T(n)^(1/n) stays bounded
        let rates: Vec<f64> = (20..60)
            .map(|n| {
                let v = evaluate_t_recursion(n, 4, 3, base).unwrap().unwrap() as f64;
                v.powf(1.0 / n as f64)
            })
            .collect();
        let max = rates.iter().cloned().fold(0.0, f64::max);
        assert!(max < 4.0, "growth rate {max}");
        assert!(rates.last().unwrap() <= &(max + 1e-9));
    }
}
