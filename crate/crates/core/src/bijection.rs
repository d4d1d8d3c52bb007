//! Breadth-first-search bijection between `(r+1)`-spanning trees on
//! `[rk+1]` arising from the consecutive `r`-matching and `r`-parking
//! functions of length `k`.
//!
//! Here `r` is the parking parameter, so blocks have `r` vertices and
//! hyperedges `r + 1`.

use std::collections::VecDeque;

use crate::error::{invalid, Error, Result};
use crate::hypergraph::HyperTree;
use crate::matching::{extract_matching, extraction_with_edges, RMatching};
use crate::parking::{is_r_parking, ParkingFn};
use crate::Vertex;

/// Vertices ordered by hyperedge distance from the root `n`, ties by label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfsOrder {
    order: Vec<Vertex>,
    // position[v] is the rank of v; usize::MAX for vertices not reached
    position: Vec<usize>,
}

impl BfsOrder {
    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    /// 0-based rank of `v` (the root has rank 0).
    pub fn rank(&self, v: Vertex) -> Option<usize> {
        self.position.get(v as usize).copied().filter(|&p| p != usize::MAX)
    }

    /// The vertex at rank `rank`.
    pub fn at(&self, rank: usize) -> Option<Vertex> {
        self.order.get(rank).copied()
    }

    /// Orders the vertices reachable from `root` through `edges`.
    fn build(n: Vertex, root: Vertex, edges: &[Vec<Vertex>]) -> Self {
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n as usize + 1];
        for (i, e) in edges.iter().enumerate() {
            for &v in e {
                incident[v as usize].push(i);
            }
        }
        let mut dist = vec![usize::MAX; n as usize + 1];
        dist[root as usize] = 0;
        let mut queue = VecDeque::from([root]);
        let mut used = vec![false; edges.len()];
        while let Some(v) = queue.pop_front() {
            for &ei in &incident[v as usize] {
                if std::mem::replace(&mut used[ei], true) {
                    continue;
                }
                for &u in &edges[ei] {
                    if dist[u as usize] == usize::MAX {
                        dist[u as usize] = dist[v as usize] + 1;
                        queue.push_back(u);
                    }
                }
            }
        }
        let mut order: Vec<Vertex> = (1..=n).filter(|&v| dist[v as usize] != usize::MAX).collect();
        order.sort_by_key(|&v| (dist[v as usize], v));
        let mut position = vec![usize::MAX; n as usize + 1];
        for (rank, &v) in order.iter().enumerate() {
            position[v as usize] = rank;
        }
        BfsOrder { order, position }
    }
}

/// BFS order of a spanning tree rooted at its largest label `n`.
pub fn bfs_order(t: &HyperTree) -> Result<BfsOrder> {
    if !t.is_spanning_tree() {
        return Err(invalid(format!("{t} is not a spanning tree on [{}]", t.n())));
    }
    let edges: Vec<Vec<Vertex>> = t.edges().iter().map(|e| e.vertices().to_vec()).collect();
    Ok(BfsOrder::build(t.n(), t.n(), &edges))
}

/// Maps a tree to the parking function whose `i`-th entry is the number of
/// hyperedges `block_i ∪ {x}` that precede the tree's own hyperedge through
/// block `i`, ordering candidates by the BFS rank of `x`.
pub fn tree_to_parking(t: &HyperTree) -> Result<ParkingFn> {
    let r = t.r() - 1;
    let k = t.k();
    let consecutive = RMatching::consecutive(k, r);
    let extracted = extract_matching(t)?;
    if extracted != consecutive {
        return Err(Error::Mismatch(format!(
            "{t} arises from {extracted}, not the consecutive matching {consecutive}"
        )));
    }
    let bfs = bfs_order(t)?;
    let mut owner = vec![0; k];
    for (block, edge) in extraction_with_edges(t)? {
        owner[(block[0] as usize - 1) / r] = edge;
    }
    let mut entries = Vec::with_capacity(k);
    for (block, &edge) in consecutive.blocks().iter().zip(&owner) {
        let x = t.edges()[edge]
            .vertices()
            .iter()
            .copied()
            .find(|v| !block.contains(v))
            .ok_or_else(|| Error::Defect("hyperedge equals its block".into()))?;
        let rank_x = bfs.rank(x).expect("spanning tree reaches every vertex");
        let preceding = (1..=t.n())
            .filter(|v| !block.contains(v))
            .filter(|&v| bfs.rank(v).expect("spanning tree reaches every vertex") < rank_x)
            .count();
        entries.push(preceding as u64);
    }
    ParkingFn::new(entries, r as u64)
        .map_err(|e| Error::Defect(format!("image of {t} is not parking: {e}")))
}

/// Inverse of [`tree_to_parking`].
///
/// Blocks are attached in the order of the weakly increasing rearrangement
/// (ties by block index); block `i` hangs off the vertex at rank `a_i` of the
/// BFS order of the partial tree built so far.
pub fn parking_to_tree(a: &ParkingFn, r: u64) -> Result<HyperTree> {
    if r == 0 {
        return Err(invalid("r must be at least 1"));
    }
    let raw: Vec<i64> = a.entries().iter().map(|&v| v as i64).collect();
    if !is_r_parking(&raw, r)? {
        return Err(invalid(format!("{a} is not a {r}-parking function")));
    }
    let r = r as usize;
    let k = a.len();
    let n = (r * k + 1) as Vertex;
    let blocks = RMatching::consecutive(k, r);
    let mut schedule: Vec<usize> = (0..k).collect();
    schedule.sort_by_key(|&i| (a.entries()[i], i));
    let mut edges: Vec<Vec<Vertex>> = Vec::with_capacity(k);
    for i in schedule {
        let partial = BfsOrder::build(n, n, &edges);
        let rank = a.entries()[i] as usize;
        let anchor = partial.at(rank).ok_or_else(|| {
            Error::Defect(format!("rank {rank} beyond the {} placed vertices", partial.order.len()))
        })?;
        let mut edge = blocks.blocks()[i].clone();
        edge.push(anchor);
        edges.push(edge);
    }
    HyperTree::new(n, r + 1, edges)
}
