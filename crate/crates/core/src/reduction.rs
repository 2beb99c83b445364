//! From permutation families to set systems: distinguishing pairs, inversion
//! ranges, and the checks relating `φ_F` to the induced system.

use serde::Serialize;

use crate::bits::{full_mask, BitIter, Mask};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::{distinguishing_pair, PermutationFamily};
use crate::setsystem::{SetSystem, MAX_GROUND};

/// The induced range space `(I_F, R(F))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionOutput {
    /// `I_F` in lexicographic order, 0-indexed values; ground element `e` of
    /// `system` is `ground_pairs[e]`.
    pub ground_pairs: Vec<(usize, usize)>,
    /// `R(σ)` for each member, in member order.
    pub range_map: Vec<Mask>,
    pub system: SetSystem,
}

/// `I_F`: the distinguishing pairs of all member pairs, in lexicographic order.
pub fn distinguishing_pairs(family: &PermutationFamily) -> Vec<(usize, usize)> {
    let members = family.members();
    let mut pairs = Vec::new();
    for (a, s) in members.iter().enumerate() {
        for t in &members[a + 1..] {
            pairs.push(distinguishing_pair(s, t).expect("members are distinct"));
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}

/// Builds `(I_F, R(F))` with `R(σ) = inversions(σ) ∩ I_F`.
///
/// Fails with a consistency error if two members share a range, and with a
/// scale error if `|I_F|` exceeds the 64-element ground limit.
pub fn build_reduction(family: &PermutationFamily) -> Result<ReductionOutput> {
    if family.is_empty() {
        return Err(Error::Precondition("reduction of an empty family".into()));
    }
    let ground_pairs = distinguishing_pairs(family);
    if ground_pairs.len() > MAX_GROUND {
        return Err(Error::Scale(format!(
            "{} distinguishing pairs exceed the {MAX_GROUND}-element ground limit",
            ground_pairs.len()
        )));
    }
    let range_map: Vec<Mask> = family
        .members()
        .iter()
        .map(|s| {
            let pos = s.positions();
            ground_pairs
                .iter()
                .enumerate()
                .filter(|&(_, &(i, j))| s.is_inverted(&pos, i, j))
                .fold(0, |m, (e, _)| m | (1 << e))
        })
        .collect();
    let system = SetSystem::new(ground_pairs.len(), range_map.iter().copied())?;
    if system.len() != family.len() {
        return Err(Error::Consistency(format!(
            "{} members map to only {} ranges",
            family.len(),
            system.len()
        )));
    }
    Ok(ReductionOutput {
        ground_pairs,
        range_map,
        system,
    })
}

/// Outcome of comparing `φ_F(m)` with the induced system and pair graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma3Report {
    pub m: usize,
    pub phi: usize,
    /// Trace order used: `min(⌊m/2⌋, |I_F|)`.
    pub b: usize,
    pub shatter: usize,
    pub pair_count: usize,
    /// Most pairs of `I_F` inside one `m`-subset of values.
    pub max_span: usize,
}

impl Lemma3Report {
    pub fn shatter_ok(&self) -> bool {
        self.shatter <= self.phi
    }

    pub fn span_ok(&self) -> bool {
        self.max_span < self.phi
    }

    pub fn passed(&self) -> bool {
        self.shatter_ok() && self.span_ok()
    }
}

/// Checks `f_{R(F)}(⌊m/2⌋) <= φ_F(m)` and that every `m` values span at most
/// `φ_F(m) - 1` distinguishing pairs.
pub fn verify_lemma3(family: &PermutationFamily, m: usize) -> Result<Lemma3Report> {
    let phi = family.phi_value(m)?.value;
    let red = build_reduction(family)?;
    let b = (m / 2).min(red.ground_pairs.len());
    let shatter = red.system.shatter_value(b)?.value;
    let graph = Graph::new(family.n(), red.ground_pairs.iter().copied())?;
    Ok(Lemma3Report {
        m,
        phi,
        b,
        shatter,
        pair_count: red.ground_pairs.len(),
        max_span: graph.max_edges_on(m)?,
    })
}

/// One class `F_i` of a decomposition step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecomposeClass {
    /// Common restriction to the witness set, as 1-indexed labels.
    pub pattern: Vec<usize>,
    pub size: usize,
    /// `|G_i|`, the class restricted to the complement of the witness set.
    pub reduced_size: usize,
    /// `G_i` on the re-indexed complement.
    #[serde(skip)]
    pub reduced: PermutationFamily,
}

impl DecomposeClass {
    pub fn preserved(&self) -> bool {
        self.size == self.reduced_size
    }
}

/// Splitting `F` by its restriction to a maximizing `(m-1)`-set `X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecomposeReport {
    pub m: usize,
    pub phi_m: usize,
    pub phi_m_minus_1: usize,
    /// 1-indexed members of `X`.
    pub witness: Vec<usize>,
    pub precondition_met: bool,
    /// Empty when the precondition fails.
    pub classes: Vec<DecomposeClass>,
}

impl DecomposeReport {
    /// Precondition met and every class keeps its size off `X`.
    pub fn passed(&self) -> bool {
        self.precondition_met && self.classes.iter().all(DecomposeClass::preserved)
    }
}

/// Runs one step of the size-preserving decomposition when
/// `φ_F(m) = φ_F(m-1)`; otherwise reports the unmet precondition.
pub fn decompose_step(family: &PermutationFamily, m: usize) -> Result<DecomposeReport> {
    if m < 2 || m > family.n() {
        return Err(Error::Domain(format!(
            "decomposition needs 2 <= m <= n (n={}, m={m})",
            family.n()
        )));
    }
    let phi_m = family.phi_value(m)?.value;
    let lower = family.phi_value(m - 1)?;
    let x = lower.witness;
    let mut report = DecomposeReport {
        m,
        phi_m,
        phi_m_minus_1: lower.value,
        witness: BitIter(x).map(|e| e + 1).collect(),
        precondition_met: phi_m == lower.value,
        classes: Vec::new(),
    };
    if !report.precondition_met {
        return Ok(report);
    }
    let rest = full_mask(family.n()) & !x;
    let mut keyed: Vec<(Vec<u8>, usize)> = family
        .members()
        .iter()
        .enumerate()
        .map(|(idx, s)| Ok((s.restriction(x)?, idx)))
        .collect::<Result<_>>()?;
    keyed.sort();
    for group in keyed.chunk_by(|a, b| a.0 == b.0) {
        let class = family.subfamily(group.iter().map(|g| g.1));
        let reduced = class.restrict(rest)?;
        report.classes.push(DecomposeClass {
            pattern: group[0].0.iter().map(|&v| v as usize + 1).collect(),
            size: class.len(),
            reduced_size: reduced.len(),
            reduced,
        });
    }
    Ok(report)
}
