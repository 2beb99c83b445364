//! Verification suites: each compares independently computed quantities and
//! collects the outcomes in a [`Report`].
//!
//! Randomized suites draw from a ChaCha8 stream seeded by the caller, so a
//! seed fully determines the report.

use std::fmt::{Display, Write as _};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bits::{binomial, full_mask, Mask};
use crate::bounds::{lambda, table1, theorem1_bound, turan_edges, upsilon, zeta};
use crate::compression::normalize_traced;
use crate::constructions::{family_f1, family_f2, family_identity_perturbed, lambda_construction};
use crate::error::{domain, Result};
use crate::graph::Graph;
use crate::perm::{Permutation, PermutationFamily};
use crate::reduction::{decompose_step, distinguishing_pairs, verify_lemma3};
use crate::search::{
    enumerate_ideals, ex_exact, extremal_ideal_exact, perm_extremal_exact, Constraint, SearchConfig,
    SearchResult,
};
use crate::setsystem::SetSystem;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Case count of randomized suites when none is given.
pub const DEFAULT_CASES: usize = 1000;

/// One comparison. Informational entries always pass and carry `-` as the
/// expected value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Check {
    pub fn equal<T: PartialEq + Display>(name: impl Into<String>, expected: T, actual: T) -> Self {
        Check {
            name: name.into(),
            pass: expected == actual,
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }

    pub fn at_most<T: PartialOrd + Display>(name: impl Into<String>, bound: T, actual: T) -> Self {
        Check {
            name: name.into(),
            pass: actual <= bound,
            expected: format!("<= {bound}"),
            actual: actual.to_string(),
        }
    }

    /// Zero violations out of `total` cases.
    pub fn none_of(name: impl Into<String>, violations: usize, total: usize) -> Self {
        Check {
            name: name.into(),
            pass: violations == 0,
            expected: format!("0/{total}"),
            actual: format!("{violations}/{total}"),
        }
    }

    pub fn info(name: impl Into<String>, value: impl Display) -> Self {
        Check {
            name: name.into(),
            expected: "-".into(),
            actual: value.to_string(),
            pass: true,
        }
    }
}

/// Outcome of one suite run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
}

impl Report {
    fn new(suite: &str, seed: Option<u64>) -> Self {
        Report {
            suite: suite.into(),
            seed,
            checks: Vec::new(),
        }
    }

    fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let seed = self.seed.map_or("-".to_string(), |s| s.to_string());
        let _ = writeln!(out, "suite {} (seed {seed})", self.suite);
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{tag}  {:width$}  expected {:>10}  actual {:>10}",
                c.name, c.expected, c.actual
            );
        }
        let failed = self.failures().count();
        let _ = writeln!(out, "{} checks, {failed} failed", self.checks.len());
        out
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("suite\tcheck\texpected\tactual\tpass\n");
        for c in &self.checks {
            let _ = writeln!(out, "{}\t{}\t{}\t{}\t{}", self.suite, c.name, c.expected, c.actual, c.pass);
        }
        out
    }
}

/// Largest ideal system with `f_R(b) <= ζ(b) - 1` next to
/// `Ex(n, b, ζ(b) - b - 2) + n + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma2Outcome {
    pub n: usize,
    pub b: usize,
    pub set_side: SearchResult<SetSystem>,
    pub graph_side: SearchResult<Graph>,
}

impl Lemma2Outcome {
    pub fn graph_total(&self) -> usize {
        self.graph_side.optimum + self.n + 1
    }

    pub fn holds(&self) -> bool {
        self.set_side.optimum == self.graph_total()
    }

    pub fn exhaustive(&self) -> bool {
        self.set_side.exhaustive && self.graph_side.exhaustive
    }
}

/// Computes both sides of the `ζ(b) - 1` equivalence by independent searches.
pub fn verify_lemma2(n: usize, b: usize, config: SearchConfig) -> Result<Lemma2Outcome> {
    if b < 3 || b > n {
        return domain(format!("need 3 <= b <= n (n={n}, b={b})"));
    }
    let z = zeta(b as u64)? as usize;
    let set_side = extremal_ideal_exact(n, &[Constraint { b, k: z - 1 }], config)?;
    let graph_side = ex_exact(n, b, z - b - 2, config)?;
    Ok(Lemma2Outcome {
        n,
        b,
        set_side,
        graph_side,
    })
}

/// Largest ideal system with `f_R(4) <= 11` against `C(n,2) + n + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BollobasRadcliffe {
    pub n: usize,
    pub result: SearchResult<SetSystem>,
    pub bound: usize,
}

impl BollobasRadcliffe {
    pub fn exceeds(&self) -> bool {
        self.result.optimum > self.bound
    }
}

pub fn verify_bollobas_radcliffe(n: usize, config: SearchConfig) -> Result<BollobasRadcliffe> {
    if !(4..=6).contains(&n) {
        return domain(format!("need 4 <= n <= 6, got {n}"));
    }
    let result = extremal_ideal_exact(n, &[Constraint { b: 4, k: 11 }], config)?;
    let bound = binomial(n as u64, 2).unwrap() as usize + n + 1;
    Ok(BollobasRadcliffe { n, result, bound })
}

/// The `λ_i(b)` values are attained by the transversal construction, and the
/// table's gap flags agree with a direct comparison.
pub fn table1_tightness(b_max: usize) -> Result<Report> {
    let mut report = Report::new("table1-tightness", None);
    for row in table1(b_max as u64)? {
        let b = row.b;
        for i in 1..=b {
            // blocks one larger than the balanced parts leave room to miss `X`
            let n = i * (b.div_ceil(i) + 1);
            let sys = lambda_construction(n as usize, i as usize)?;
            let f = sys.shatter_value(b as usize)?.value as u128;
            report.push(Check::equal(format!("lambda_{i}({b}) attained at n={n}"), lambda(i, b)?, f));
        }
        for i in 0..b - 1 {
            let gap = lambda(i + 1, b)? > upsilon(i, b)?;
            report.push(Check::equal(
                format!("gap flag b={b} i={i}"),
                gap,
                row.gap_flags[i as usize],
            ));
        }
    }
    Ok(report)
}

/// Over every ideal system on `[n]`, `n <= n_max`: whenever
/// `f_R(b) < υ_i(b)`, also `|R| < Σ_{j<=i} (b-j+1) C(n,j)`.
pub fn theorem1_equivalence(n_max: usize) -> Result<Report> {
    let mut report = Report::new("theorem1", None);
    for n in 1..=n_max {
        let mut systems = 0usize;
        let mut instances = 0usize;
        let mut violations = 0usize;
        let mut failure: Option<Result<()>> = None;
        enumerate_ideals(n, |ranges| {
            systems += 1;
            let sys = SetSystem::from_sorted_unchecked(n, ranges.to_vec());
            let profile = sys.shatter_profile();
            for b in 1..=n {
                for i in 0..b {
                    let (u, bound) = match (upsilon(i as u64, b as u64), theorem1_bound(n as u64, b as u64, i as u64)) {
                        (Ok(u), Ok(t)) => (u, t),
                        (Err(e), _) | (_, Err(e)) => {
                            failure.get_or_insert(Err(e));
                            return;
                        }
                    };
                    if (profile.values()[b] as u128) < u {
                        instances += 1;
                        if sys.len() as u128 >= bound {
                            violations += 1;
                        }
                    }
                }
            }
        })?;
        if let Some(f) = failure {
            f?;
        }
        report.push(Check::info(format!("n={n} ideal systems"), systems));
        report.push(Check::none_of(format!("n={n} size below bound"), violations, instances));
    }
    Ok(report)
}

/// Frankl's bounds `t_2(n) + n + 1` and `t_3(n) + n + 1` are attained.
pub fn frankl(ns: &[usize], config: SearchConfig) -> Result<Report> {
    let mut report = Report::new("frankl", None);
    for &n in ns {
        for (b, k, parts) in [(3usize, 6usize, 2u64), (4, 10, 3)] {
            if b > n {
                continue;
            }
            let expected = turan_edges(parts, n as u64)? as usize + n + 1;
            let r = extremal_ideal_exact(n, &[Constraint { b, k }], config)?;
            report.push(Check::equal(format!("n={n} f({b})<={k}"), expected, r.optimum));
            report.push(Check::equal(format!("n={n} f({b})<={k} exhaustive"), true, r.exhaustive));
        }
    }
    Ok(report)
}

/// Both sides of the `ζ(b) - 1` equivalence for each `(b, n)`.
pub fn lemma2(pairs: &[(usize, usize)], config: SearchConfig) -> Result<Report> {
    let mut report = Report::new("lemma2", None);
    for &(b, n) in pairs {
        let out = verify_lemma2(n, b, config)?;
        report.push(Check::equal(
            format!("b={b} n={n}"),
            out.graph_total(),
            out.set_side.optimum,
        ));
        report.push(Check::equal(format!("b={b} n={n} exhaustive"), true, out.exhaustive()));
    }
    Ok(report)
}

/// `f_R(4) <= 11` against `C(n,2) + n + 1`; at `n = 6` the outcome is only
/// reported.
pub fn bollobas_radcliffe(ns: &[usize], config: SearchConfig) -> Result<Report> {
    let mut report = Report::new("bollobas-radcliffe", None);
    for &n in ns {
        let out = verify_bollobas_radcliffe(n, config)?;
        if n == 6 {
            report.push(Check::info("n=6 optimum", out.result.optimum));
            report.push(Check::info("n=6 bound", out.bound));
            report.push(Check::info("n=6 exceeds bound", out.exceeds()));
            report.push(Check::info("n=6 exhaustive", out.result.exhaustive));
        } else {
            report.push(Check::at_most(format!("n={n}"), out.bound, out.result.optimum));
            report.push(Check::equal(format!("n={n} exhaustive"), true, out.result.exhaustive));
        }
    }
    Ok(report)
}

fn random_system(rng: &mut ChaCha8Rng, n: usize) -> SetSystem {
    let size = rng.gen_range(1..=(1usize << n).min(40));
    let full = full_mask(n);
    SetSystem::new(n, (0..size).map(|_| rng.gen::<Mask>() & full)).expect("n <= 64")
}

/// Tally of compression outcomes.
#[derive(Default)]
struct CompressionTally {
    total: usize,
    size: usize,
    ideal: usize,
    dominated: usize,
    idempotent: usize,
    second_pass: usize,
}

impl CompressionTally {
    fn observe(&mut self, sys: &SetSystem) {
        let run = normalize_traced(sys);
        let out = &run.system;
        self.total += 1;
        self.size += (out.len() != sys.len()) as usize;
        self.ideal += (!out.is_ideal()) as usize;
        let dominated = out.shatter_profile().dominated_by(&sys.shatter_profile());
        self.dominated += (dominated != Ok(true)) as usize;
        self.idempotent += (normalize_traced(out).system != *out) as usize;
        self.second_pass += run.second_pass_changed() as usize;
    }

    fn report_into(&self, report: &mut Report, label: &str) {
        report.push(Check::none_of(format!("{label} size preserved"), self.size, self.total));
        report.push(Check::none_of(format!("{label} output ideal"), self.ideal, self.total));
        report.push(Check::none_of(format!("{label} profile dominated"), self.dominated, self.total));
        report.push(Check::none_of(format!("{label} idempotent"), self.idempotent, self.total));
        report.push(Check::info(format!("{label} second pass changed"), self.second_pass));
    }
}

/// Normalization on every non-empty system with `n <= exhaustive_n` and on
/// `cases` random systems with `n <= 10`.
pub fn compression(exhaustive_n: usize, cases: usize, seed: u64) -> Result<Report> {
    if exhaustive_n > 4 {
        return domain("exhaustive compression check limited to n <= 4");
    }
    let mut report = Report::new("compression", Some(seed));
    let mut all = CompressionTally::default();
    for n in 1..=exhaustive_n {
        let sets = 1u64 << n;
        for family in 1..(1u64 << sets) {
            let ranges = (0..sets).filter(|&s| family & (1 << s) != 0);
            all.observe(&SetSystem::from_distinct(n, ranges)?);
        }
    }
    all.report_into(&mut report, &format!("all n<={exhaustive_n}"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random = CompressionTally::default();
    for _ in 0..cases {
        let n = rng.gen_range(1..=10);
        random.observe(&random_system(&mut rng, n));
    }
    random.report_into(&mut report, "random n<=10");
    Ok(report)
}

fn random_family(rng: &mut ChaCha8Rng, n: usize, max_size: usize) -> PermutationFamily {
    let cap = (1..=n).product::<usize>().min(max_size);
    let size = rng.gen_range(1..=cap);
    let mut members = Vec::with_capacity(size);
    while members.len() < size {
        let mut image: Vec<u8> = (0..n as u8).collect();
        image.shuffle(rng);
        let p = Permutation::from_zero_based(image).expect("shuffled identity");
        if !members.contains(&p) {
            members.push(p);
        }
    }
    PermutationFamily::from_distinct(n, members).expect("distinct members")
}

#[derive(Default)]
struct Lemma3Tally {
    families: usize,
    instances: usize,
    shatter: usize,
    span: usize,
    pairs: usize,
    decompositions: usize,
    decomposition_failures: usize,
}

impl Lemma3Tally {
    fn observe(&mut self, family: &PermutationFamily) -> Result<()> {
        self.families += 1;
        if distinguishing_pairs(family).len() + 1 > family.len() {
            self.pairs += 1;
        }
        for m in 2..=family.n() {
            let rep = verify_lemma3(family, m)?;
            self.instances += 1;
            self.shatter += !rep.shatter_ok() as usize;
            self.span += !rep.span_ok() as usize;
            let dec = decompose_step(family, m)?;
            if dec.precondition_met {
                self.decompositions += 1;
                self.decomposition_failures += !dec.passed() as usize;
            }
        }
        Ok(())
    }

    fn report_into(&self, report: &mut Report, label: &str) {
        report.push(Check::none_of(format!("{label} shatter <= phi"), self.shatter, self.instances));
        report.push(Check::none_of(format!("{label} span <= phi-1"), self.span, self.instances));
        report.push(Check::none_of(format!("{label} pairs <= t-1"), self.pairs, self.families));
        report.push(Check::none_of(
            format!("{label} decomposition preserves sizes"),
            self.decomposition_failures,
            self.decompositions,
        ));
    }
}

/// Reduction checks on the constructed families and on `cases` random
/// families with `n <= 8` and at most 40 members.
pub fn lemma3(cases: usize, seed: u64) -> Result<Report> {
    let mut report = Report::new("lemma3", Some(seed));
    let mut built = Lemma3Tally::default();
    for n in 2..=8 {
        built.observe(&family_f1(n)?)?;
        built.observe(&family_f2(n)?)?;
        built.observe(&family_identity_perturbed(n)?)?;
    }
    built.report_into(&mut report, "constructed");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random = Lemma3Tally::default();
    for _ in 0..cases {
        let n = rng.gen_range(2..=8);
        random.observe(&random_family(&mut rng, n, 40))?;
    }
    random.report_into(&mut report, "random");
    Ok(report)
}

/// One cell of the small-values table: `(n, m, k)` and its exact value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Table3Cell {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub expected: usize,
}

/// The exact-formula and constant cells checkable by exhaustive search.
pub fn table3_cells() -> Vec<Table3Cell> {
    let mut cells = vec![
        Table3Cell { n: 4, m: 4, k: 3, expected: 2 * 4 / 3 + 1 },
        Table3Cell { n: 5, m: 4, k: 3, expected: 2 * 5 / 3 + 1 },
        Table3Cell { n: 5, m: 5, k: 3, expected: 5 / 2 + 1 },
        Table3Cell { n: 5, m: 4, k: 2, expected: 2 },
    ];
    // constant cells: k = 2 from m = 4, k = 3 from m = 6, k = 4 from m = 8, k = 5 at m = 10
    for (k, m_from) in [(2, 4), (3, 6), (4, 8), (5, 10)] {
        for m in m_from..=10 {
            cells.push(Table3Cell { n: m, m, k, expected: k });
        }
    }
    cells
}

pub fn table3(cells: &[Table3Cell], config: SearchConfig) -> Result<Report> {
    let mut report = Report::new("table3", None);
    for c in cells {
        let r = perm_extremal_exact(c.n, c.m, c.k, config)?;
        let name = format!("n={} m={} k={}", c.n, c.m, c.k);
        report.push(Check::equal(name.clone(), c.expected, r.optimum));
        report.push(Check::equal(format!("{name} exhaustive"), true, r.exhaustive));
    }
    Ok(report)
}

/// Growth regimes of permutation families: bounded optimum when
/// `φ_F(m) <= ⌊m/2⌋` for `n = 3..=5`, and the `φ` values and sizes of the
/// linear and exponential witness families for `n <= 8`.
pub fn transitions(config: SearchConfig) -> Result<Report> {
    let mut report = Report::new("transitions", None);
    for m in 2..=5usize {
        let k = m / 2;
        let values = (m.max(3)..=5)
            .map(|n| perm_extremal_exact(n, m, k, config).map(|r| (n, r)))
            .collect::<Result<Vec<_>>>()?;
        let first = values[0].1.optimum;
        for (n, r) in &values {
            report.push(Check::equal(format!("m={m} k={k} n={n} constant"), first, r.optimum));
            report.push(Check::equal(format!("m={m} k={k} n={n} exhaustive"), true, r.exhaustive));
        }
    }
    for n in 2..=8usize {
        let f1 = family_f1(n)?;
        let f2 = family_f2(n)?;
        report.push(Check::equal(format!("|F1| n={n}"), 1 + n / 2, f1.len()));
        report.push(Check::equal(format!("|F2| n={n}"), 1usize << (n / 2), f2.len()));
        for m in 1..=n {
            report.push(Check::equal(format!("phi_F1({m}) n={n}"), m / 2 + 1, f1.phi_value(m)?.value));
            report.push(Check::equal(format!("phi_F2({m}) n={n}"), 1usize << (m / 2), f2.phi_value(m)?.value));
        }
    }
    Ok(report)
}
