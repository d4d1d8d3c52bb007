//! Partitions of `[m]` into equal-size blocks, and the deletion procedure that
//! recovers the unique matching a spanning tree arises from.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::combin::binomial;
use crate::error::{invalid, Error, Result};
use crate::hypergraph::{parse_labels, write_joined, HyperTree};
use crate::{BigCount, Vertex, DEFAULT_CAP};

/// A partition of `[m]` into blocks of `block_size` vertices.
///
/// Blocks are kept sorted by their minimum element; that order is the fixed
/// total order used by the Prüfer code and the parking bijection.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Vertex>>", into = "Vec<Vec<Vertex>>")]
pub struct RMatching {
    block_size: usize,
    blocks: Vec<Vec<Vertex>>,
}

impl TryFrom<Vec<Vec<Vertex>>> for RMatching {
    type Error = Error;

    fn try_from(blocks: Vec<Vec<Vertex>>) -> Result<Self> {
        let size = blocks
            .first()
            .map(Vec::len)
            .ok_or_else(|| invalid("a matching needs at least one block"))?;
        RMatching::new(size, blocks)
    }
}

impl From<RMatching> for Vec<Vec<Vertex>> {
    fn from(m: RMatching) -> Self {
        m.blocks
    }
}

impl RMatching {
    pub fn new(block_size: usize, mut blocks: Vec<Vec<Vertex>>) -> Result<Self> {
        if block_size == 0 {
            return Err(invalid("block size must be positive"));
        }
        let total: usize = blocks.iter().map(Vec::len).sum();
        let mut seen = vec![false; total + 1];
        for block in &mut blocks {
            if block.len() != block_size {
                return Err(invalid(format!(
                    "block {block:?} has size {}, expected {block_size}",
                    block.len()
                )));
            }
            block.sort_unstable();
            for &v in block.iter() {
                if v == 0 || v as usize > total {
                    return Err(invalid(format!("label {v} outside [1, {total}]")));
                }
                if std::mem::replace(&mut seen[v as usize], true) {
                    return Err(invalid(format!("vertex {v} appears in two blocks")));
                }
            }
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(RMatching { block_size, blocks })
    }

    /// The matching with no blocks (on the empty ground set).
    pub fn empty(block_size: usize) -> Self {
        RMatching {
            block_size: block_size.max(1),
            blocks: Vec::new(),
        }
    }

    /// `{1..b | b+1..2b | ...}` with `count` blocks.
    pub fn consecutive(count: usize, block_size: usize) -> Self {
        let blocks = (0..count)
            .map(|i| {
                let lo = (i * block_size) as Vertex;
                (lo + 1..=lo + block_size as Vertex).collect()
            })
            .collect();
        RMatching {
            block_size: block_size.max(1),
            blocks,
        }
    }

    /// Parses `"1,2|3,4"`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty matching".into()));
        }
        let blocks = text.split('|').map(parse_labels).collect::<Result<Vec<_>>>()?;
        Self::try_from(blocks)
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn blocks(&self) -> &[Vec<Vertex>] {
        &self.blocks
    }

    /// Size of the ground set.
    pub fn ground_size(&self) -> usize {
        self.blocks.len() * self.block_size
    }

    /// Index of the block containing `v`, or `None` outside the ground set.
    pub fn block_index(&self, v: Vertex) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&v))
    }

    /// Lookup table `label -> block index` covering `0..=ground_size + extra`.
    pub(crate) fn block_table(&self, extra: usize) -> Vec<Option<usize>> {
        let mut table = vec![None; self.ground_size() + extra + 1];
        for (i, b) in self.blocks.iter().enumerate() {
            for &v in b {
                table[v as usize] = Some(i);
            }
        }
        table
    }
}

impl fmt::Display for RMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write_joined(f, b, ",")?;
        }
        Ok(())
    }
}

/// `∏_{j=1}^{m/b} C(jb - 1, b - 1)`, the number of partitions of `[m]` into
/// blocks of size `b`; zero when `b` does not divide `m`.
pub fn count_matchings_formula(m: u64, b: usize) -> Result<BigCount> {
    if b == 0 {
        return Err(invalid("block size must be positive"));
    }
    let b = b as u64;
    if !m.is_multiple_of(b) {
        return Ok(BigCount::from(0u32));
    }
    Ok((1..=m / b).fold(BigUint::one(), |acc, j| acc * binomial(j * b - 1, b - 1)))
}

/// All partitions of `[m]` into blocks of size `b`, in lexicographic order of
/// their block lists.
pub fn enumerate_matchings(m: usize, b: usize, cap: Option<u64>) -> Result<std::vec::IntoIter<RMatching>> {
    let cap = cap.unwrap_or(DEFAULT_CAP);
    let needed = count_matchings_formula(m as u64, b)?;
    if needed > BigUint::from(cap) {
        return Err(Error::CapExceeded {
            what: "matching enumeration",
            needed: needed.to_string(),
            cap,
        });
    }
    let mut out = Vec::new();
    if m.is_multiple_of(b) {
        let mut used = vec![false; m + 1];
        let mut blocks = Vec::with_capacity(m / b);
        extend_matchings(m, b, &mut used, &mut blocks, &mut out);
    }
    Ok(out.into_iter())
}

fn extend_matchings(
    m: usize,
    b: usize,
    used: &mut [bool],
    blocks: &mut Vec<Vec<Vertex>>,
    out: &mut Vec<RMatching>,
) {
    let Some(first) = (1..=m).find(|&v| !used[v]) else {
        out.push(RMatching {
            block_size: b,
            blocks: blocks.clone(),
        });
        return;
    };
    used[first] = true;
    let free: Vec<usize> = (first + 1..=m).filter(|&v| !used[v]).collect();
    let mut block = vec![first as Vertex];
    choose_rest(&free, 0, b - 1, &mut block, &mut |block| {
        for &v in &block[1..] {
            used[v as usize] = true;
        }
        blocks.push(block.to_vec());
        extend_matchings(m, b, used, blocks, out);
        blocks.pop();
        for &v in &block[1..] {
            used[v as usize] = false;
        }
    });
    used[first] = false;
}

fn choose_rest(
    free: &[usize],
    start: usize,
    remaining: usize,
    block: &mut Vec<Vertex>,
    visit: &mut dyn FnMut(&[Vertex]),
) {
    if remaining == 0 {
        visit(block);
        return;
    }
    for i in start..free.len() {
        if free.len() - i < remaining {
            break;
        }
        block.push(free[i] as Vertex);
        choose_rest(free, i + 1, remaining - 1, block, visit);
        block.pop();
    }
}

/// Runs the deletion procedure and returns the matched blocks in the order
/// they are produced: round by round, and within a round in canonical edge
/// order.
///
/// Round one deletes vertex `n`; each later round deletes the vertices matched
/// in the previous one. An edge left with exactly `r - 1` live vertices turns
/// those into a block.
pub fn extraction_order(t: &HyperTree) -> Result<Vec<Vec<Vertex>>> {
    Ok(extraction_with_edges(t)?.into_iter().map(|(b, _)| b).collect())
}

/// Like [`extraction_order`], pairing each block with the index (into
/// `t.edges()`) of the hyperedge that produced it.
///
/// With blocks of size one a block vertex can lie in several hyperedges; the
/// producing one is the edge towards the root.
pub fn extraction_with_edges(t: &HyperTree) -> Result<Vec<(Vec<Vertex>, usize)>> {
    if !t.is_spanning_tree() {
        return Err(invalid(format!("{t} is not a spanning tree on [{}]", t.n())));
    }
    let r = t.r();
    let mut deleted = vec![false; t.n() as usize + 1];
    deleted[t.n() as usize] = true;
    let mut pending: Vec<usize> = (0..t.k()).collect();
    let mut order = Vec::with_capacity(t.k());
    while !pending.is_empty() {
        let mut round = Vec::new();
        let mut rest = Vec::new();
        for idx in pending {
            let edge = t.edges()[idx].vertices();
            let live: Vec<Vertex> = edge.iter().copied().filter(|&v| !deleted[v as usize]).collect();
            match live.len().cmp(&(r - 1)) {
                std::cmp::Ordering::Equal => round.push((live, idx)),
                std::cmp::Ordering::Greater => rest.push(idx),
                std::cmp::Ordering::Less => {
                    return Err(Error::Defect(format!("edge {edge:?} lost more than one vertex")))
                }
            }
        }
        if round.is_empty() {
            return Err(Error::Defect("deletion round produced no block".into()));
        }
        for (block, _) in &round {
            for &v in block {
                deleted[v as usize] = true;
            }
        }
        order.extend(round);
        pending = rest;
    }
    Ok(order)
}

/// The unique `(r-1)`-perfect matching of `[n-1]` a spanning tree arises from.
pub fn extract_matching(t: &HyperTree) -> Result<RMatching> {
    let blocks = extraction_order(t)?;
    if blocks.is_empty() {
        return Ok(RMatching::empty(t.r() - 1));
    }
    RMatching::new(t.r() - 1, blocks)
}

/// Formats blocks as `{{3,4},{1,2}}`.
pub fn format_block_list(blocks: &[Vec<Vertex>]) -> String {
    let inner: Vec<String> = blocks
        .iter()
        .map(|b| {
            let labels: Vec<String> = b.iter().map(Vertex::to_string).collect();
            format!("{{{}}}", labels.join(","))
        })
        .collect();
    format!("{{{}}}", inner.join(","))
}

/// Number of pairs `{i,k}, {j,l}` in the matching with `i < j < k < l`.
pub fn cross_count(m: &RMatching) -> Result<u64> {
    if m.block_size() != 2 {
        return Err(Error::Unsupported(format!(
            "crossings are defined for block size 2, got {}",
            m.block_size()
        )));
    }
    let blocks = m.blocks();
    let mut count = 0;
    for p in blocks {
        for q in blocks {
            if p[0] < q[0] && q[0] < p[1] && p[1] < q[1] {
                count += 1;
            }
        }
    }
    Ok(count)
}
