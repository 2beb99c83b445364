//! Push-down operators and normalization to an ideal system.
//!
//! `pushdown(R, x)` keeps every range without `x`, keeps a range `A ∋ x`
//! when `A \ {x}` is already a range, and replaces it by `A \ {x}` otherwise.
//! The operator never changes `|R|` and never increases the shatter function.

use crate::error::{domain, Result};
use crate::setsystem::{SetSystem, ShatterProfile};

/// The push-down of `system` on the 1-indexed element `x`.
pub fn pushdown(system: &SetSystem, x: usize) -> Result<SetSystem> {
    let n = system.ground_size();
    if x == 0 || x > n {
        return domain(format!("element {x} outside 1..={n}"));
    }
    Ok(pushdown_bit(system, x - 1).0)
}

/// Push-down on a 0-indexed element; also returns how many ranges moved.
fn pushdown_bit(system: &SetSystem, bit: usize) -> (SetSystem, usize) {
    let e = 1u64 << bit;
    let mut moved = 0;
    let mut out: Vec<u64> = system
        .ranges()
        .iter()
        .map(|&a| {
            if a & e != 0 && !system.contains(a & !e) {
                moved += 1;
                a & !e
            } else {
                a
            }
        })
        .collect();
    out.sort_unstable();
    debug_assert!(out.windows(2).all(|w| w[0] != w[1]));
    (SetSystem::from_sorted_unchecked(system.ground_size(), out), moved)
}

/// Outcome of [`normalize_traced`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub system: SetSystem,
    /// Number of ranges changed by each full pass; the last entry is 0.
    pub changes_per_pass: Vec<usize>,
}

impl Normalization {
    /// Whether a second pass changed anything.
    pub fn second_pass_changed(&self) -> bool {
        self.changes_per_pass.get(1).is_some_and(|&c| c > 0)
    }
}

/// Applies `T_1 ∘ T_2 ∘ … ∘ T_n` (so `T_n` first) until nothing moves.
pub fn normalize_traced(system: &SetSystem) -> Normalization {
    let mut cur = system.clone();
    let mut changes = Vec::new();
    loop {
        let mut pass = 0;
        for bit in (0..cur.ground_size()).rev() {
            let (next, moved) = pushdown_bit(&cur, bit);
            pass += moved;
            cur = next;
        }
        changes.push(pass);
        if pass == 0 {
            break;
        }
    }
    Normalization {
        system: cur,
        changes_per_pass: changes,
    }
}

/// An ideal system with the same number of ranges and a pointwise smaller
/// shatter function.
pub fn normalize(system: &SetSystem) -> SetSystem {
    normalize_traced(system).system
}

/// Whether profile `a` is pointwise at most profile `b`.
pub fn dominates(a: &ShatterProfile, b: &ShatterProfile) -> Result<bool> {
    a.dominated_by(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::{mask_from_elements, Combinations};
    use proptest::prelude::*;

    fn sys(n: usize, ranges: &[&[usize]]) -> SetSystem {
        SetSystem::new(n, ranges.iter().map(|r| mask_from_elements(r, n).unwrap())).unwrap()
    }

    /// The operator written as the union of its two defining clauses.
    fn pushdown_by_formula(r: &SetSystem, x: usize) -> SetSystem {
        let e = 1u64 << (x - 1);
        let first = r.ranges().iter().map(|&a| a & !e);
        let second = r
            .ranges()
            .iter()
            .copied()
            .filter(|&a| a & e != 0 && r.contains(a & !e));
        SetSystem::new(r.ground_size(), first.chain(second)).unwrap()
    }

    #[test]
    fn pushdown_examples() {
        assert_eq!(pushdown(&sys(2, &[&[1, 2]]), 1).unwrap(), sys(2, &[&[2]]));
        let r = sys(2, &[&[1], &[1, 2]]);
        assert_eq!(pushdown(&r, 2).unwrap(), r);
        let r = sys(2, &[&[], &[1], &[1, 2]]);
        // {1,2} stays under x = 2 because {1} is present
        assert_eq!(pushdown(&r, 2).unwrap(), r);
        assert_eq!(pushdown(&r, 1).unwrap(), sys(2, &[&[], &[1], &[2]]));
        assert!(pushdown(&r, 3).is_err());
        assert!(pushdown(&r, 0).is_err());
    }

    #[test]
    fn normalize_examples() {
        let ideal = sys(2, &[&[], &[1], &[2], &[1, 2]]);
        assert_eq!(normalize(&ideal), ideal);
        assert_eq!(normalize_traced(&ideal).changes_per_pass, vec![0]);

        // T_2 first gives {{1}}, then T_1 gives {∅}
        assert_eq!(normalize(&sys(2, &[&[1, 2]])), sys(2, &[&[]]));

        let triples = SetSystem::new(6, Combinations::new(6, 3)).unwrap();
        let norm = normalize(&triples);
        assert_eq!(norm.len(), 20);
        assert!(norm.is_ideal());
        assert!(dominates(&norm.shatter_profile(), &triples.shatter_profile()).unwrap());
    }

    #[test]
    fn dominates_examples() {
        let p = |v: &[usize]| ShatterProfile(v.to_vec());
        assert!(dominates(&p(&[1, 2, 3]), &p(&[1, 2, 3])).unwrap());
        assert!(!dominates(&p(&[1, 2, 4]), &p(&[1, 2, 3])).unwrap());
        assert!(dominates(&p(&[1, 2]), &p(&[1, 2, 3])).is_err());
    }

    #[test]
    fn exhaustive_small_ground_sets() {
        for n in 1..=3usize {
            let subsets = 1u64 << n;
            for fam in 1u64..(1u64 << subsets) {
                let r = SetSystem::new(n, (0..subsets).filter(|s| fam & (1 << s) != 0)).unwrap();
                let prof = r.shatter_profile();
                for x in 1..=n {
                    let t = pushdown(&r, x).unwrap();
                    assert_eq!(t, pushdown_by_formula(&r, x));
                    assert_eq!(t.len(), r.len());
                    assert!(dominates(&t.shatter_profile(), &prof).unwrap());
                }
                let norm = normalize(&r);
                assert!(norm.is_ideal());
                assert_eq!(norm.len(), r.len());
            }
        }
    }

    fn arb_system() -> impl Strategy<Value = SetSystem> {
        (1usize..=10).prop_flat_map(|n| {
            prop::collection::vec(0..(1u64 << n), 1..60)
                .prop_map(move |rs| SetSystem::new(n, rs).unwrap())
        })
    }

    proptest! {
        #[test]
        fn pushdown_invariants(r in arb_system(), pick in any::<usize>()) {
            let x = pick % r.ground_size() + 1;
            let t = pushdown(&r, x).unwrap();
            prop_assert_eq!(&t, &pushdown_by_formula(&r, x));
            prop_assert_eq!(t.len(), r.len());
            prop_assert!(dominates(&t.shatter_profile(), &r.shatter_profile()).unwrap());
        }

        #[test]
        fn normalize_invariants(r in arb_system()) {
            let norm = normalize(&r);
            prop_assert!(norm.is_ideal());
            prop_assert_eq!(norm.len(), r.len());
            prop_assert!(dominates(&norm.shatter_profile(), &r.shatter_profile()).unwrap());
            prop_assert_eq!(normalize(&norm), norm);
        }
    }
}
