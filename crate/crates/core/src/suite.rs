//! Cross-checks between closed forms, bijections and brute force.
//!
//! Each check yields one deterministic [`Check`] line; nothing here depends on
//! timing or hash order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::bijection::{parking_to_tree, tree_to_parking};
use crate::egf::{
    lagrange_closed_form, lagrange_coefficient, rooted_counts_by_construction, rooted_tree_counts,
    verify_functional_equation, TreeCounts,
};
use crate::error::{Error, Result};
use crate::hypergraph::{count_spanning_trees_formula, enumerate_spanning_trees, tree_edge_count, HyperTree};
use crate::matching::{count_matchings_formula, enumerate_matchings, extract_matching, RMatching};
use crate::parking::{count_parking, enumerate_parking, is_r_parking, simulate_parking};
use crate::prufer::{count_trees_for_matching, decode, encode, PruferCode};
use crate::shi::{count_regions, verify_triangle};
use crate::Vertex;

/// `(k, r)` sizes used for the parking bijection and the Shi triangle.
pub const BIJECTION_SIZES: [(usize, u64); 6] = [(1, 1), (2, 1), (3, 1), (2, 2), (3, 2), (2, 3)];

/// Named group of checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    All,
    Counts,
    Matchings,
    Prufer,
    Parking,
    Bijection,
    Egf,
    Shi,
}

impl Suite {
    pub const NAMES: [&'static str; 8] = ["all", "counts", "matchings", "prufer", "parking", "bijection", "egf", "shi"];

    fn parts(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::Counts,
                Suite::Matchings,
                Suite::Prufer,
                Suite::Parking,
                Suite::Bijection,
                Suite::Egf,
                Suite::Shi,
            ],
            other => vec![other],
        }
    }

    fn label(self) -> &'static str {
        Suite::NAMES[self as usize]
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        const ALL: [Suite; 8] = [
            Suite::All,
            Suite::Counts,
            Suite::Matchings,
            Suite::Prufer,
            Suite::Parking,
            Suite::Bijection,
            Suite::Egf,
            Suite::Shi,
        ];
        ALL.into_iter()
            .find(|suite| suite.label() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}; expected one of {:?}", Suite::NAMES)))
    }
}

/// One line of the report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status}  {:<10} {:<28} {}", self.suite, self.name, self.detail)
    }
}

fn check(suite: Suite, name: impl Into<String>, outcome: Result<(bool, String)>) -> Check {
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, e.to_string()));
    Check {
        suite: suite.label(),
        name: name.into(),
        passed,
        detail,
    }
}

/// Feasible `(n, r)` pairs with `n <= max_n`, `r ∈ {3, 4}` and at least two
/// hyperedges.
pub fn tree_sizes(max_n: Vertex) -> Vec<(Vertex, usize)> {
    let mut out = Vec::new();
    for r in [3usize, 4] {
        for n in 1..=max_n {
            if tree_edge_count(n as u64, r).is_some_and(|k| k >= 2) {
                out.push((n, r));
            }
        }
    }
    out
}

/// Spanning trees grouped by the matching they arise from.
pub fn fibers(n: Vertex, r: usize) -> Result<BTreeMap<RMatching, Vec<HyperTree>>> {
    let mut map: BTreeMap<RMatching, Vec<HyperTree>> = BTreeMap::new();
    for t in enumerate_spanning_trees(n, r, None)? {
        map.entry(extract_matching(&t)?).or_default().push(t);
    }
    Ok(map)
}

/// Runs a suite. `max_n` bounds the vertex counts of the tree checks.
pub fn run(suite: Suite, max_n: Vertex) -> Vec<Check> {
    let mut out = Vec::new();
    for part in suite.parts() {
        match part {
            Suite::Counts => counts(max_n, &mut out),
            Suite::Matchings => matchings(max_n, &mut out),
            Suite::Prufer => prufer(max_n, &mut out),
            Suite::Parking => parking(&mut out),
            Suite::Bijection => bijection(&mut out),
            Suite::Egf => egf(max_n, &mut out),
            Suite::Shi => shi(&mut out),
            Suite::All => unreachable!("expanded above"),
        }
    }
    out
}

fn counts(max_n: Vertex, out: &mut Vec<Check>) {
    for r in [3usize, 4] {
        for n in 1..=max_n {
            out.push(check(
                Suite::Counts,
                format!("trees n={n} r={r}"),
                (|| {
                    let brute = BigUint::from(enumerate_spanning_trees(n, r, None)?.count());
                    let formula = count_spanning_trees_formula(n, r)?;
                    Ok((brute == formula, format!("brute={brute} formula={formula}")))
                })(),
            ));
        }
    }
}

fn matchings(max_n: Vertex, out: &mut Vec<Check>) {
    for b in 2..=3usize {
        for m in 0..max_n as usize {
            out.push(check(
                Suite::Matchings,
                format!("matchings m={m} b={b}"),
                (|| {
                    let brute = BigUint::from(enumerate_matchings(m, b, None)?.count());
                    let formula = count_matchings_formula(m as u64, b)?;
                    Ok((brute == formula, format!("brute={brute} formula={formula}")))
                })(),
            ));
        }
    }
    for (n, r) in tree_sizes(max_n) {
        out.push(check(
            Suite::Matchings,
            format!("fibers n={n} r={r}"),
            (|| {
                let all: BTreeSet<RMatching> = enumerate_matchings(n as usize - 1, r - 1, None)?.collect();
                let fibers = fibers(n, r)?;
                let expected = count_trees_for_matching(n, r)?;
                let sizes_ok = fibers.values().all(|f| BigUint::from(f.len()) == expected);
                let keys_ok = fibers.keys().all(|m| all.contains(m)) && fibers.len() == all.len();
                let structure_ok = fibers.iter().all(|(m, trees)| trees.iter().all(|t| one_block_per_edge(t, m)));
                Ok((
                    sizes_ok && keys_ok && structure_ok,
                    format!("{} matchings, each fiber {expected}", fibers.len()),
                ))
            })(),
        ));
    }
}

/// Each hyperedge contains exactly one block, and some block is a leaf.
pub fn one_block_per_edge(t: &HyperTree, m: &RMatching) -> bool {
    let deg = t.degrees();
    let per_edge = t
        .edges()
        .iter()
        .all(|e| m.blocks().iter().filter(|b| e.contains_all(b)).count() == 1);
    let has_leaf = m.blocks().iter().any(|b| b.iter().all(|&v| deg[v as usize] == 1));
    per_edge && has_leaf
}

fn prufer(max_n: Vertex, out: &mut Vec<Check>) {
    for (n, r) in tree_sizes(max_n) {
        out.push(check(
            Suite::Prufer,
            format!("round trips n={n} r={r}"),
            (|| {
                let k = tree_edge_count(n as u64, r).expect("feasible size") as usize;
                let mut failures = 0usize;
                let mut checked = 0usize;
                let mut images = BTreeSet::new();
                for (m, trees) in fibers(n, r)? {
                    for t in &trees {
                        checked += 1;
                        let code = encode(t, &m)?;
                        if &decode(&code, &m, r)? != t {
                            failures += 1;
                        }
                    }
                    for code in PruferCode::all(n, k - 1) {
                        checked += 1;
                        let t = decode(&code, &m, r)?;
                        if encode(&t, &m)? != code || extract_matching(&t)? != m || !images.insert(t) {
                            failures += 1;
                        }
                    }
                }
                let total = count_spanning_trees_formula(n, r)?;
                let covered = BigUint::from(images.len()) == total;
                Ok((
                    failures == 0 && covered,
                    format!("{checked} round trips, {failures} failures, {} distinct trees", images.len()),
                ))
            })(),
        ));
    }
}

fn parking(out: &mut Vec<Check>) {
    for k in 1..=6usize {
        out.push(check(
            Suite::Parking,
            format!("simulation k={k}"),
            (|| {
                let mut disagreements = 0u64;
                let mut total = 0u64;
                let mut cur = vec![0u64; k];
                loop {
                    total += 1;
                    let raw: Vec<i64> = cur.iter().map(|&v| v as i64).collect();
                    if simulate_parking(&cur) != is_r_parking(&raw, 1)? {
                        disagreements += 1;
                    }
                    let Some(i) = (0..k).rev().find(|&i| cur[i] + 1 < k as u64) else {
                        break;
                    };
                    cur[i] += 1;
                    cur[i + 1..].iter_mut().for_each(|v| *v = 0);
                }
                Ok((disagreements == 0, format!("{total} sequences, {disagreements} disagreements")))
            })(),
        ));
    }
    for (k, r) in BIJECTION_SIZES {
        out.push(check(
            Suite::Parking,
            format!("count k={k} r={r}"),
            (|| {
                let brute = BigUint::from(enumerate_parking(k, r, None)?.count());
                let formula = count_parking(k, r)?;
                Ok((brute == formula, format!("brute={brute} formula={formula}")))
            })(),
        ));
    }
}

fn bijection(out: &mut Vec<Check>) {
    for (k, r) in BIJECTION_SIZES {
        out.push(check(
            Suite::Bijection,
            format!("round trips k={k} r={r}"),
            (|| {
                let n = (r as usize * k + 1) as Vertex;
                let consecutive = RMatching::consecutive(k, r as usize);
                let fiber = fibers(n, r as usize + 1)?.remove(&consecutive).unwrap_or_default();
                let mut failures = 0usize;
                let mut image = BTreeSet::new();
                for t in &fiber {
                    let a = tree_to_parking(t)?;
                    if &parking_to_tree(&a, r)? != t {
                        failures += 1;
                    }
                    image.insert(a);
                }
                let parking: Vec<_> = enumerate_parking(k, r, None)?.collect();
                for a in &parking {
                    if &tree_to_parking(&parking_to_tree(a, r)?)? != a {
                        failures += 1;
                    }
                }
                let expected = count_parking(k, r)?;
                let sizes_ok = BigUint::from(fiber.len()) == expected
                    && BigUint::from(image.len()) == expected
                    && BigUint::from(parking.len()) == expected;
                Ok((
                    failures == 0 && sizes_ok,
                    format!("{} trees, {} parking functions, {failures} failures", fiber.len(), parking.len()),
                ))
            })(),
        ));
    }
}

fn egf(max_n: Vertex, out: &mut Vec<Check>) {
    for (r, order) in [(3usize, max_n as usize), (4, (max_n as usize).max(10))] {
        out.push(check(
            Suite::Egf,
            format!("functional eq r={r} N={order}"),
            (|| {
                let report = verify_functional_equation(r, order, TreeCounts::BruteForce { cap: None })?;
                let detail = match &report.first_failure {
                    None => format!("orders 0..={order} agree"),
                    Some((i, lhs, rhs)) => format!("order {i}: {lhs} vs {rhs}"),
                };
                Ok((report.holds(), detail))
            })(),
        ));
    }
    for k in 1..=4u32 {
        out.push(check(
            Suite::Egf,
            format!("lagrange k={k}"),
            lagrange_coefficient(3, k).map(|v| (v == lagrange_closed_form(k), format!("{v}"))),
        ));
    }
    for r in [3usize, 4] {
        out.push(check(
            Suite::Egf,
            format!("construction r={r}"),
            (|| {
                let order = max_n as usize;
                let rec = rooted_counts_by_construction(r, order)?;
                let brute = rooted_tree_counts(r, order, TreeCounts::BruteForce { cap: None })?;
                Ok((rec == brute, format!("t_0..t_{order} match brute force")))
            })(),
        ));
    }
}

fn shi(out: &mut Vec<Check>) {
    for (k, r) in BIJECTION_SIZES {
        out.push(check(
            Suite::Shi,
            format!("triangle k={k} r={r}"),
            verify_triangle(k, r).map(|rep| {
                (
                    true,
                    format!("{} = {} = {}", rep.regions, rep.parking_enumerated, rep.trees_for_matching),
                )
            }),
        ));
        out.push(check(
            Suite::Shi,
            format!("witnesses k={k} r={r}"),
            count_regions(k, r).map(|res| {
                let valid = res.regions.iter().filter(|reg| reg.witness_is_valid(&res.arrangement)).count();
                (valid == res.regions.len(), format!("{valid}/{} strict", res.regions.len()))
            }),
        ));
    }
}
