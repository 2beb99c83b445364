//! Text formats.
//!
//! * `.ss` set system: `n <N>`, then one range per line, either `-` for the
//!   empty set or strictly increasing elements of `1..=N`.
//! * `.g` graph: `n <N>`, then `u v` per edge with `u < v`.
//! * `.pf` permutation family: `n <N>`, then one permutation per line in
//!   one-line notation.
//!
//! Lines starting with `#` and blank lines are ignored everywhere.

use std::fmt::Write as _;

use crate::bits::{elements, Mask};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::{Permutation, PermutationFamily};
use crate::setsystem::{SetSystem, MAX_GROUND};

fn parse_err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        msg: msg.into(),
    })
}

/// Non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_header<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<usize> {
    let Some((no, line)) = lines.next() else {
        return parse_err(1, "missing `n <N>` header");
    };
    let mut it = line.split_whitespace();
    match (it.next(), it.next().map(str::parse::<usize>), it.next()) {
        (Some("n"), Some(Ok(n)), None) => Ok(n),
        _ => parse_err(no, format!("expected `n <N>`, found `{line}`")),
    }
}

fn parse_numbers(no: usize, line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<usize>().map_err(|_| Error::Parse {
                line: no,
                msg: format!("`{t}` is not a positive integer"),
            })
        })
        .collect()
}

pub fn parse_set_system(text: &str) -> Result<SetSystem> {
    let mut lines = content_lines(text);
    let n = parse_header(&mut lines)?;
    if n > MAX_GROUND {
        return parse_err(1, format!("ground set size {n} exceeds {MAX_GROUND}"));
    }
    let mut ranges: Vec<Mask> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (no, line) in lines {
        let mask = if line == "-" {
            0
        } else {
            let nums = parse_numbers(no, line)?;
            if nums.windows(2).any(|w| w[0] >= w[1]) {
                return parse_err(no, "elements must be strictly increasing");
            }
            if let Some(&e) = nums.iter().find(|&&e| e == 0 || e > n) {
                return parse_err(no, format!("element {e} outside 1..={n}"));
            }
            nums.iter().fold(0u64, |m, &e| m | (1 << (e - 1)))
        };
        if !seen.insert(mask) {
            return parse_err(no, "duplicate range");
        }
        ranges.push(mask);
    }
    SetSystem::new(n, ranges)
}

pub fn write_set_system(system: &SetSystem) -> String {
    let mut out = format!("n {}\n", system.ground_size());
    for &r in system.ranges() {
        if r == 0 {
            out.push_str("-\n");
        } else {
            let els: Vec<String> = elements(r).iter().map(|e| e.to_string()).collect();
            out.push_str(&els.join(" "));
            out.push('\n');
        }
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let n = parse_header(&mut lines)?;
    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (no, line) in lines {
        let nums = parse_numbers(no, line)?;
        let [u, v] = nums[..] else {
            return parse_err(no, "expected `u v`");
        };
        if !(1 <= u && u < v && v <= n) {
            return parse_err(no, format!("edge `{u} {v}` must satisfy 1 <= u < v <= {n}"));
        }
        if !seen.insert((u, v)) {
            return parse_err(no, "duplicate edge");
        }
        edges.push((u - 1, v - 1));
    }
    Graph::new(n, edges)
}

pub fn write_graph(graph: &Graph) -> String {
    let mut out = format!("n {}\n", graph.vertex_count());
    for &(u, v) in graph.edges() {
        let _ = writeln!(out, "{} {}", u + 1, v + 1);
    }
    out
}

pub fn parse_family(text: &str) -> Result<PermutationFamily> {
    let mut lines = content_lines(text);
    let n = parse_header(&mut lines)?;
    let mut members = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (no, line) in lines {
        let nums = parse_numbers(no, line)?;
        if nums.len() != n {
            return parse_err(no, format!("expected {n} values, found {}", nums.len()));
        }
        let p = Permutation::from_one_line(&nums).map_err(|e| Error::Parse {
            line: no,
            msg: e.to_string(),
        })?;
        if !seen.insert(p.clone()) {
            return parse_err(no, "duplicate permutation");
        }
        members.push(p);
    }
    PermutationFamily::new(n, members)
}

pub fn write_family(family: &PermutationFamily) -> String {
    let mut out = format!("n {}\n", family.n());
    for p in family.members() {
        let vals: Vec<String> = p.one_line().iter().map(|v| v.to_string()).collect();
        out.push_str(&vals.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn set_system_format() {
        let text = "# comment\nn 3\n1 2\n-\n3\n";
        let s = parse_set_system(text).unwrap();
        assert_eq!(s.ranges(), &[0, 0b011, 0b100]);
        assert_eq!(write_set_system(&s), "n 3\n-\n1 2\n3\n");
    }

    #[test]
    fn set_system_rejections() {
        assert!(matches!(
            parse_set_system("n 3\n1 2\n2 1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(parse_set_system("n 3\n1 4\n").is_err());
        assert!(parse_set_system("n 3\n1 2\n1 2\n").is_err());
        assert!(parse_set_system("n 3\n-\n-\n").is_err());
        assert!(parse_set_system("3\n").is_err());
        assert!(parse_set_system("n 65\n").is_err());
        assert!(parse_set_system("n 3\nx\n").is_err());
        assert!(parse_set_system("").is_err());
    }

    #[test]
    fn graph_format() {
        let g = parse_graph("n 4\n1 2\n3 4\n").unwrap();
        assert_eq!(g.edges(), &[(0, 1), (2, 3)]);
        assert_eq!(write_graph(&g), "n 4\n1 2\n3 4\n");
        assert!(parse_graph("n 4\n2 1\n").is_err());
        assert!(parse_graph("n 4\n1 2 3\n").is_err());
        assert!(parse_graph("n 4\n1 2\n1 2\n").is_err());
    }

    #[test]
    fn family_format() {
        let f = parse_family("n 3\n2 1 3\n1 2 3\n").unwrap();
        assert_eq!(write_family(&f), "n 3\n1 2 3\n2 1 3\n");
        assert!(parse_family("n 3\n1 2\n").is_err());
        assert!(parse_family("n 3\n1 1 2\n").is_err());
        assert!(parse_family("n 2\n1 2\n1 2\n").is_err());
    }

    proptest! {
        #[test]
        fn set_system_roundtrip(n in 0usize..10, raw in prop::collection::vec(any::<u64>(), 0..30)) {
            let s = SetSystem::new(n, raw.into_iter().map(|r| r & crate::bits::full_mask(n))).unwrap();
            prop_assert_eq!(parse_set_system(&write_set_system(&s)).unwrap(), s);
        }
    }
}
