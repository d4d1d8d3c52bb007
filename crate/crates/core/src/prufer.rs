//! Prüfer-type bijection between the spanning trees that arise from a fixed
//! matching and sequences in `[n]^(k-1)`.
//!
//! Blocks are compared by their position in [`RMatching::blocks`], i.e. by
//! minimum element.

use std::fmt;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::hypergraph::{parse_labels, tree_edge_count, HyperTree};
use crate::matching::{extract_matching, extraction_with_edges, RMatching};
use crate::{BigCount, Vertex};

/// A sequence of `k - 1` labels in `[n]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PruferCode {
    n: Vertex,
    entries: Vec<Vertex>,
}

impl Serialize for PruferCode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(s)
    }
}

impl PruferCode {
    pub fn new(n: Vertex, entries: Vec<Vertex>) -> Result<Self> {
        if let Some(&bad) = entries.iter().find(|&&v| v == 0 || v > n) {
            return Err(invalid(format!("code entry {bad} outside [1, {n}]")));
        }
        Ok(PruferCode { n, entries })
    }

    /// Parses `"3,3,4"`; the empty string is the empty code.
    pub fn parse(text: &str, n: Vertex) -> Result<Self> {
        let text = text.trim();
        let entries = if text.is_empty() { Vec::new() } else { parse_labels(text)? };
        Self::new(n, entries)
    }

    pub fn n(&self) -> Vertex {
        self.n
    }

    pub fn entries(&self) -> &[Vertex] {
        &self.entries
    }

    /// Every code of length `len` over `[n]`, lexicographically.
    pub fn all(n: Vertex, len: usize) -> impl Iterator<Item = PruferCode> {
        let total = (n as u64).checked_pow(len as u32).unwrap_or(u64::MAX);
        (0..total).map(move |mut idx| {
            let mut entries = vec![1; len];
            for slot in entries.iter_mut().rev() {
                *slot = (idx % n as u64) as Vertex + 1;
                idx /= n as u64;
            }
            PruferCode { n, entries }
        })
    }
}

impl fmt::Display for PruferCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::hypergraph::write_joined(f, &self.entries, ",")
    }
}

/// Encodes a spanning tree relative to the matching it arises from.
///
/// Repeatedly takes the smallest block whose vertices all have degree one,
/// records the remaining vertex of its hyperedge and deletes the block.
pub fn encode(t: &HyperTree, m: &RMatching) -> Result<PruferCode> {
    let extracted = extract_matching(t)?;
    if &extracted != m {
        return Err(Error::Mismatch(format!("{t} arises from {extracted}, not {m}")));
    }
    let k = m.blocks().len();
    if k == 0 {
        return Ok(PruferCode { n: t.n(), entries: Vec::new() });
    }
    let mut degree = t.degrees();
    let mut owner: Vec<&[Vertex]> = vec![&[]; k];
    for (block, edge) in extraction_with_edges(t)? {
        let idx = m
            .block_index(block[0])
            .ok_or_else(|| Error::Defect(format!("block {block:?} missing from matching")))?;
        owner[idx] = t.edges()[edge].vertices();
    }
    let mut removed = vec![false; k];
    let mut entries = Vec::with_capacity(k - 1);
    for _ in 0..k - 1 {
        let leaf = (0..k)
            .find(|&i| !removed[i] && m.blocks()[i].iter().all(|&v| degree[v as usize] == 1))
            .ok_or_else(|| Error::Defect("no leaf hyperedge left".into()))?;
        let block = &m.blocks()[leaf];
        let edge = owner[leaf];
        let connection = edge
            .iter()
            .copied()
            .find(|v| !block.contains(v))
            .ok_or_else(|| Error::Defect("leaf hyperedge has no connection point".into()))?;
        entries.push(connection);
        for &v in edge {
            degree[v as usize] -= 1;
        }
        removed[leaf] = true;
    }
    Ok(PruferCode { n: t.n(), entries })
}

/// Rebuilds the spanning tree with code `c` over matching `m`.
///
/// Step `i` joins `s_i` to the smallest unfinished block that is not the block
/// of any `s_j`, `j >= i`. The single block left at the end is joined to `n`.
pub fn decode(c: &PruferCode, m: &RMatching, r: usize) -> Result<HyperTree> {
    if r < 2 || m.block_size() != r - 1 {
        return Err(invalid(format!(
            "matching has block size {}, uniformity {r} needs {}",
            m.block_size(),
            r.saturating_sub(1)
        )));
    }
    let k = m.blocks().len();
    let n = (m.ground_size() + 1) as Vertex;
    if c.n != n {
        return Err(invalid(format!("code is over [{}], matching needs [{n}]", c.n)));
    }
    if k == 0 || c.entries.len() != k - 1 {
        return Err(invalid(format!(
            "code length {} does not match {k} blocks",
            c.entries.len()
        )));
    }
    let block_of = m.block_table(1);
    // pending[b] counts the j >= i with s_j in block b
    let mut pending = vec![0usize; k];
    for &s in &c.entries {
        if let Some(b) = block_of[s as usize] {
            pending[b] += 1;
        }
    }
    let mut finished = vec![false; k];
    let mut edges = Vec::with_capacity(k);
    for &s in &c.entries {
        let chosen = (0..k)
            .find(|&b| !finished[b] && pending[b] == 0)
            .ok_or_else(|| Error::Defect("every unfinished block is still referenced".into()))?;
        let mut edge = m.blocks()[chosen].clone();
        edge.push(s);
        edges.push(edge);
        finished[chosen] = true;
        if let Some(b) = block_of[s as usize] {
            pending[b] -= 1;
        }
    }
    let last = (0..k)
        .find(|&b| !finished[b])
        .ok_or_else(|| Error::Defect("no block left for the final hyperedge".into()))?;
    let mut edge = m.blocks()[last].clone();
    edge.push(n);
    edges.push(edge);
    HyperTree::new(n, r, edges)
}

/// Number of `r`-spanning trees on `[n]` arising from one fixed matching:
/// `n^(k-1)`.
pub fn count_trees_for_matching(n: Vertex, r: usize) -> Result<BigCount> {
    let k = tree_edge_count(n as u64, r).ok_or_else(|| {
        invalid(format!("no {r}-spanning trees on {n} vertices: need n ≡ 1 (mod {})", r.saturating_sub(1)))
    })?;
    if k == 0 {
        return Ok(BigCount::from(1u32));
    }
    Ok(BigUint::from(n).pow((k - 1) as u32))
}
