//! Hyperedges, candidate hypertrees, the spanning-tree test and the
//! brute-force enumerator used as the counting oracle.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::combin::binomial;
use crate::error::{invalid, Error, Result};
use crate::matching::count_matchings_formula;
use crate::{BigCount, Vertex, DEFAULT_CAP};

/// A set of vertices stored strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperedge(Vec<Vertex>);

impl Hyperedge {
    /// Builds a hyperedge, sorting the labels. Rejects repeated or zero labels
    /// and edges with fewer than two vertices.
    pub fn new(mut vertices: Vec<Vertex>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.len() < 2 {
            return Err(invalid(format!(
                "hyperedge needs at least 2 vertices, got {}",
                vertices.len()
            )));
        }
        if vertices[0] == 0 {
            return Err(invalid("vertex labels are 1-based"));
        }
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid(format!("duplicate vertex in hyperedge {vertices:?}")));
        }
        Ok(Hyperedge(vertices))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// `true` when every vertex of `block` lies in this edge.
    pub fn contains_all(&self, block: &[Vertex]) -> bool {
        block.iter().all(|&v| self.contains(v))
    }
}

impl fmt::Display for Hyperedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.0, ",")
    }
}

pub(crate) fn write_joined(f: &mut fmt::Formatter<'_>, items: &[Vertex], sep: &str) -> fmt::Result {
    for (i, v) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

/// An `r`-uniform hypergraph on `[n]` in canonical form: vertices ascending
/// inside each edge, edges sorted lexicographically.
///
/// Construction only checks well-formedness; whether the edges form a
/// spanning tree is answered by [`HyperTree::is_spanning_tree`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTree", into = "RawTree")]
pub struct HyperTree {
    n: Vertex,
    r: usize,
    edges: Vec<Hyperedge>,
}

#[derive(Serialize, Deserialize)]
struct RawTree {
    n: Vertex,
    r: usize,
    edges: Vec<Vec<Vertex>>,
}

impl TryFrom<RawTree> for HyperTree {
    type Error = Error;

    fn try_from(raw: RawTree) -> Result<Self> {
        HyperTree::new(raw.n, raw.r, raw.edges)
    }
}

impl From<HyperTree> for RawTree {
    fn from(t: HyperTree) -> Self {
        RawTree {
            n: t.n,
            r: t.r,
            edges: t.edges.into_iter().map(|e| e.0).collect(),
        }
    }
}

impl HyperTree {
    pub fn new(n: Vertex, r: usize, edges: Vec<Vec<Vertex>>) -> Result<Self> {
        let edges = edges
            .into_iter()
            .map(Hyperedge::new)
            .collect::<Result<Vec<_>>>()?;
        Self::from_edges(n, r, edges)
    }

    pub fn from_edges(n: Vertex, r: usize, mut edges: Vec<Hyperedge>) -> Result<Self> {
        if n == 0 {
            return Err(invalid("vertex count must be at least 1"));
        }
        if r < 2 {
            return Err(invalid(format!("uniformity must be at least 2, got {r}")));
        }
        for e in &edges {
            if e.len() != r {
                return Err(invalid(format!("hyperedge {e} has size {}, expected {r}", e.len())));
            }
            if let Some(&v) = e.vertices().last() {
                if v > n {
                    return Err(invalid(format!("label {v} outside [1, {n}]")));
                }
            }
        }
        edges.sort();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(invalid(format!("duplicate hyperedge {}", w[0])));
        }
        Ok(HyperTree { n, r, edges })
    }

    /// Parses `"1,2,3;3,4,7"`. The empty string is the edgeless hypergraph.
    pub fn parse(text: &str, n: Vertex, r: usize) -> Result<Self> {
        let text = text.trim();
        let edges = if text.is_empty() {
            Vec::new()
        } else {
            text.split(';').map(parse_labels).collect::<Result<Vec<_>>>()?
        };
        Self::new(n, r, edges)
    }

    pub fn n(&self) -> Vertex {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    /// Number of hyperedges.
    pub fn k(&self) -> usize {
        self.edges.len()
    }

    /// Vertex degrees indexed by label; index 0 is unused.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n as usize + 1];
        for e in &self.edges {
            for &v in e.vertices() {
                deg[v as usize] += 1;
            }
        }
        deg
    }

    /// `true` iff the vertex/hyperedge incidence graph is a tree.
    pub fn is_spanning_tree(&self) -> bool {
        let nodes = self.n as usize + self.edges.len();
        let arcs = self.r * self.edges.len();
        if arcs + 1 != nodes {
            return false;
        }
        let mut uf = UnionFind::new(self.n as usize);
        self.edges.iter().all(|e| uf.insert_edge(e.vertices()))
    }

    /// Applies `perm` (where `perm[v - 1]` is the image of `v`) to every label.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Self> {
        if perm.len() != self.n as usize {
            return Err(invalid("permutation length differs from vertex count"));
        }
        let mut seen = vec![false; perm.len() + 1];
        for &p in perm {
            if p == 0 || p > self.n || std::mem::replace(&mut seen[p as usize], true) {
                return Err(invalid(format!("{perm:?} is not a permutation of [{}]", self.n)));
            }
        }
        let edges = self
            .edges
            .iter()
            .map(|e| e.vertices().iter().map(|&v| perm[v as usize - 1]).collect())
            .collect();
        Self::new(self.n, self.r, edges)
    }
}

impl fmt::Display for HyperTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

pub(crate) fn parse_labels(text: &str) -> Result<Vec<Vertex>> {
    text.split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<Vertex>()
                .map_err(|_| Error::Parse(format!("expected a positive integer, found {s:?}")))
        })
        .collect()
}

/// Disjoint-set forest over vertex labels `1..=n`.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..=n as u32).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    /// Adds a hyperedge. Returns `false` (leaving the forest untouched) when
    /// two of its vertices are already connected, i.e. it would close a cycle.
    pub(crate) fn insert_edge(&mut self, vertices: &[Vertex]) -> bool {
        let roots: Vec<u32> = vertices.iter().map(|&v| self.find(v)).collect();
        for (i, a) in roots.iter().enumerate() {
            if roots[i + 1..].contains(a) {
                return false;
            }
        }
        let head = roots[0];
        for &root in &roots[1..] {
            self.parent[root as usize] = head;
        }
        true
    }
}

pub fn is_spanning_tree(t: &HyperTree) -> bool {
    t.is_spanning_tree()
}

/// Number of hyperedges of an `r`-spanning tree on `n` vertices, or `None`
/// when `n ≢ 1 (mod r - 1)`.
pub fn tree_edge_count(n: u64, r: usize) -> Option<u64> {
    let step = (r as u64).checked_sub(1).filter(|&s| s > 0)?;
    if n == 0 || !(n - 1).is_multiple_of(step) {
        None
    } else {
        Some((n - 1) / step)
    }
}

/// All `r`-element subsets of `[n]` in lexicographic order.
pub fn all_hyperedges(n: Vertex, r: usize) -> Vec<Hyperedge> {
    let mut out = Vec::new();
    if r == 0 || r > n as usize {
        return out;
    }
    let mut cur: Vec<Vertex> = (1..=r as Vertex).collect();
    loop {
        out.push(Hyperedge(cur.clone()));
        let mut i = r;
        while i > 0 && cur[i - 1] == n - (r - i) as Vertex {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for j in i..r {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Lazily enumerates every spanning tree of the complete `r`-uniform
/// hypergraph on `[n]` in canonical lexicographic order.
///
/// The search walks `k`-subsets of the `C(n, r)` hyperedges depth first and
/// abandons a prefix as soon as it contains an incidence cycle. Acyclicity is
/// hereditary, so no spanning tree is skipped.
pub fn enumerate_spanning_trees(n: Vertex, r: usize, cap: Option<u64>) -> Result<SpanningTrees> {
    if n == 0 {
        return Err(invalid("vertex count must be at least 1"));
    }
    if r < 2 {
        return Err(invalid(format!("uniformity must be at least 2, got {r}")));
    }
    let cap = cap.unwrap_or(DEFAULT_CAP);
    let Some(k) = tree_edge_count(n as u64, r) else {
        return Ok(SpanningTrees::empty(n, r));
    };
    let needed = binomial(binomial(n as u64, r as u64).to_u64().unwrap_or(u64::MAX), k);
    if needed > BigUint::from(cap) {
        return Err(Error::CapExceeded {
            what: "spanning-tree enumeration",
            needed: needed.to_string(),
            cap,
        });
    }
    Ok(SpanningTrees {
        n,
        r,
        k: k as usize,
        edges: all_hyperedges(n, r),
        chosen: Vec::with_capacity(k as usize),
        forests: vec![UnionFind::new(n as usize)],
        cursor: 0,
        done: false,
    })
}

/// Iterator returned by [`enumerate_spanning_trees`].
#[derive(Clone, Debug)]
pub struct SpanningTrees {
    n: Vertex,
    r: usize,
    k: usize,
    edges: Vec<Hyperedge>,
    chosen: Vec<usize>,
    // forests[d] is the union-find state after the first d chosen edges
    forests: Vec<UnionFind>,
    cursor: usize,
    done: bool,
}

impl SpanningTrees {
    fn empty(n: Vertex, r: usize) -> Self {
        SpanningTrees {
            n,
            r,
            k: 0,
            edges: Vec::new(),
            chosen: Vec::new(),
            forests: Vec::new(),
            cursor: 0,
            done: true,
        }
    }

    fn pop(&mut self) -> bool {
        match self.chosen.pop() {
            Some(last) => {
                self.forests.pop();
                self.cursor = last + 1;
                true
            }
            None => false,
        }
    }
}

impl Iterator for SpanningTrees {
    type Item = HyperTree;

    fn next(&mut self) -> Option<HyperTree> {
        if self.done {
            return None;
        }
        if self.k == 0 {
            self.done = true;
            return Some(HyperTree {
                n: self.n,
                r: self.r,
                edges: Vec::new(),
            });
        }
        loop {
            let depth = self.chosen.len();
            let last_start = self.edges.len() + depth + 1 - self.k;
            let mut extended = false;
            while self.cursor < last_start {
                let idx = self.cursor;
                let mut forest = self.forests[depth].clone();
                if forest.insert_edge(self.edges[idx].vertices()) {
                    self.chosen.push(idx);
                    self.forests.push(forest);
                    self.cursor = idx + 1;
                    extended = true;
                    break;
                }
                self.cursor += 1;
            }
            if !extended {
                if !self.pop() {
                    self.done = true;
                    return None;
                }
                continue;
            }
            if self.chosen.len() == self.k {
                let tree = HyperTree {
                    n: self.n,
                    r: self.r,
                    edges: self.chosen.iter().map(|&i| self.edges[i].clone()).collect(),
                };
                self.pop();
                return Some(tree);
            }
        }
    }
}

/// Closed-form number of `r`-spanning trees on `[n]`: the number of
/// `(r-1)`-perfect matchings of `[n-1]` times `n^(k-1)`.
pub fn count_spanning_trees_formula(n: Vertex, r: usize) -> Result<BigCount> {
    if n == 0 || r < 2 {
        return Err(invalid(format!("need n >= 1 and r >= 2, got n={n}, r={r}")));
    }
    let Some(k) = tree_edge_count(n as u64, r) else {
        return Ok(BigCount::zero());
    };
    if k == 0 {
        return Ok(BigCount::one());
    }
    let matchings = count_matchings_formula(n as u64 - 1, r - 1)?;
    Ok(matchings * BigUint::from(n).pow((k - 1) as u32))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(n: Vertex, r: usize, text: &str) -> HyperTree {
        HyperTree::parse(text, n, r).unwrap()
    }

    #[test]
    fn spanning_tree_examples() {
        assert!(tree(7, 3, "1,2,3;3,4,7;3,5,6").is_spanning_tree());
        assert!(!tree(7, 3, "1,2,3;4,5,6").is_spanning_tree());
        assert!(!tree(5, 3, "1,2,3;1,2,4").is_spanning_tree());
        assert!(tree(3, 3, "1,2,3").is_spanning_tree());
        assert!(tree(1, 3, "").is_spanning_tree());
    }

    #[test]
    fn right_edge_count_but_cyclic() {
        // 7 vertices, 3 edges, but 1 and 2 share two edges
        assert!(!tree(7, 3, "1,2,3;1,2,4;5,6,7").is_spanning_tree());
    }

    #[test]
    fn malformed_edges_are_rejected() {
        assert!(matches!(HyperTree::parse("1,1,2", 5, 3), Err(Error::Invalid(_))));
        assert!(matches!(HyperTree::parse("1,2,9", 5, 3), Err(Error::Invalid(_))));
        assert!(matches!(HyperTree::parse("0,1,2", 5, 3), Err(Error::Invalid(_))));
        assert!(matches!(HyperTree::parse("1,2", 5, 3), Err(Error::Invalid(_))));
        assert!(matches!(HyperTree::parse("1,2,3;3,2,1", 5, 3), Err(Error::Invalid(_))));
        assert!(matches!(HyperTree::parse("1,x,3", 5, 3), Err(Error::Parse(_))));
    }

    #[test]
    fn canonical_form_and_display() {
        let t = tree(7, 3, "5,6,3;7,4,3;2,1,3");
        assert_eq!(t.to_string(), "1,2,3;3,4,7;3,5,6");
    }

    #[test]
    fn enumeration_small_cases() {
        let trees: Vec<_> = enumerate_spanning_trees(3, 3, None).unwrap().collect();
        assert_eq!(trees.len(), 1);
        assert_eq!(trees[0].to_string(), "1,2,3");
        assert_eq!(enumerate_spanning_trees(5, 3, None).unwrap().count(), 15);
        assert_eq!(enumerate_spanning_trees(4, 3, None).unwrap().count(), 0);
        assert_eq!(enumerate_spanning_trees(1, 3, None).unwrap().count(), 1);
    }

    #[test]
    fn enumeration_is_sorted_and_valid() {
        let trees: Vec<_> = enumerate_spanning_trees(7, 3, None).unwrap().collect();
        assert!(trees.windows(2).all(|w| w[0] < w[1]));
        assert!(trees.iter().all(HyperTree::is_spanning_tree));
    }

    #[test]
    fn enumeration_respects_cap() {
        let err = enumerate_spanning_trees(7, 3, Some(100)).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }

    #[test]
    fn formula_values() {
        let f = |n, r| count_spanning_trees_formula(n, r).unwrap();
        assert_eq!(f(7, 3), BigUint::from(735u32));
        assert_eq!(f(5, 3), BigUint::from(15u32));
        assert_eq!(f(7, 4), BigUint::from(70u32));
        assert_eq!(f(9, 4), BigUint::from(0u32));
        assert_eq!(f(1, 3), BigUint::from(1u32));
        assert_eq!(f(4, 3), BigUint::from(0u32));
    }

    #[test]
    fn hyperedge_listing() {
        let all = all_hyperedges(5, 3);
        assert_eq!(all.len(), 10);
        assert_eq!(all[0].to_string(), "1,2,3");
        assert_eq!(all[9].to_string(), "3,4,5");
    }
}
