use std::collections::BTreeSet;

use num_bigint::BigUint;
use proptest::prelude::*;

use hypertrees::hypergraph::all_hyperedges;
use hypertrees::matching::extraction_order;
use hypertrees::suite::{fibers, one_block_per_edge};
use hypertrees::{
    count_spanning_trees_formula, count_trees_for_matching, decode, encode, enumerate_matchings,
    enumerate_spanning_trees, extract_matching, HyperTree, PruferCode, RMatching, Vertex,
};

#[test]
fn brute_force_matches_formula() {
    for r in [3, 4] {
        for n in 1..=10 {
            let brute = enumerate_spanning_trees(n, r, None).unwrap().count();
            assert_eq!(
                BigUint::from(brute),
                count_spanning_trees_formula(n, r).unwrap(),
                "n={n} r={r}"
            );
        }
    }
}

#[test]
fn five_uniform_trees() {
    // n = 9, r = 5: 35 matchings of [8] into 4-sets, 9 trees each
    assert_eq!(enumerate_spanning_trees(9, 5, None).unwrap().count(), 315);
}

#[test]
fn naive_subset_scan_agrees_with_pruned_search() {
    // every k-subset of hyperedges, filtered by the spanning-tree test
    let (n, r) = (7, 3);
    let edges = all_hyperedges(n, r);
    let mut naive = Vec::new();
    for a in 0..edges.len() {
        for b in a + 1..edges.len() {
            for c in b + 1..edges.len() {
                let t = HyperTree::from_edges(n, r, vec![edges[a].clone(), edges[b].clone(), edges[c].clone()]).unwrap();
                if t.is_spanning_tree() {
                    naive.push(t);
                }
            }
        }
    }
    let pruned: Vec<_> = enumerate_spanning_trees(n, r, None).unwrap().collect();
    assert_eq!(naive, pruned);
}

#[test]
fn fibers_are_uniform_and_structured() {
    for (n, r) in [(5, 3), (7, 3), (7, 4), (10, 4)] {
        let expected = count_trees_for_matching(n, r).unwrap();
        let matchings: BTreeSet<RMatching> = enumerate_matchings(n as usize - 1, r - 1, None).unwrap().collect();
        let fib = fibers(n, r).unwrap();
        assert_eq!(fib.len(), matchings.len(), "n={n} r={r}");
        let mut total = BigUint::from(0u32);
        for (m, trees) in &fib {
            assert!(matchings.contains(m));
            assert_eq!(BigUint::from(trees.len()), expected, "fiber of {m}");
            assert!(trees.iter().all(|t| one_block_per_edge(t, m)));
            total += trees.len();
        }
        assert_eq!(total, count_spanning_trees_formula(n, r).unwrap());
    }
}

#[test]
fn prufer_round_trips_exhaustive() {
    for (n, r) in [(5, 3), (7, 3), (7, 4)] {
        let k = (n as usize - 1) / (r - 1);
        for (m, trees) in fibers(n, r).unwrap() {
            for t in &trees {
                assert_eq!(&decode(&encode(t, &m).unwrap(), &m, r).unwrap(), t);
            }
            let decoded: BTreeSet<HyperTree> = PruferCode::all(n, k - 1)
                .map(|c| {
                    let t = decode(&c, &m, r).unwrap();
                    assert_eq!(encode(&t, &m).unwrap(), c);
                    t
                })
                .collect();
            assert_eq!(decoded, trees.into_iter().collect());
        }
    }
}

#[test]
fn prufer_over_arbitrary_matchings_r5() {
    let (n, r) = (9, 5);
    for m in enumerate_matchings(8, 4, None).unwrap() {
        for c in PruferCode::all(n, 1) {
            let t = decode(&c, &m, r).unwrap();
            assert!(t.is_spanning_tree());
            assert_eq!(extract_matching(&t).unwrap(), m);
            assert_eq!(encode(&t, &m).unwrap(), c);
        }
    }
}

#[test]
fn tree_json_round_trip() {
    let t = HyperTree::parse("1,2,3;3,4,7;3,5,6", 7, 3).unwrap();
    let text = serde_json::to_string(&t).unwrap();
    assert_eq!(text, r#"{"n":7,"r":3,"edges":[[1,2,3],[3,4,7],[3,5,6]]}"#);
    let back: HyperTree = serde_json::from_str(&text).unwrap();
    assert_eq!(back, t);
    assert!(serde_json::from_str::<HyperTree>(r#"{"n":7,"r":3,"edges":[[1,1,3]]}"#).is_err());
    let m: RMatching = serde_json::from_str("[[3,4],[1,2]]").unwrap();
    assert_eq!(m.to_string(), "1,2|3,4");
}

fn permutation(n: Vertex) -> impl Strategy<Value = Vec<Vertex>> {
    Just((1..=n).collect::<Vec<_>>()).prop_shuffle()
}

fn random_tree(n: Vertex, r: usize) -> impl Strategy<Value = HyperTree> {
    let k = (n as usize - 1) / (r - 1);
    let m = n as usize - 1;
    (
        0..enumerate_matchings(m, r - 1, None).unwrap().count(),
        proptest::collection::vec(1..=n, k - 1),
    )
        .prop_map(move |(mi, code)| {
            let matching = enumerate_matchings(m, r - 1, None).unwrap().nth(mi).unwrap();
            decode(&PruferCode::new(n, code).unwrap(), &matching, r).unwrap()
        })
}

proptest! {
    #[test]
    fn spanning_test_is_label_invariant(t in random_tree(9, 3), perm in permutation(9)) {
        prop_assert!(t.relabel(&perm).unwrap().is_spanning_tree());
    }

    #[test]
    fn non_trees_stay_non_trees(perm in permutation(7)) {
        let bad = HyperTree::parse("1,2,3;1,2,4;5,6,7", 7, 3).unwrap();
        prop_assert!(!bad.relabel(&perm).unwrap().is_spanning_tree());
    }

    #[test]
    fn larger_trees_round_trip(t in random_tree(13, 3)) {
        let m = extract_matching(&t).unwrap();
        prop_assert_eq!(decode(&encode(&t, &m).unwrap(), &m, 3).unwrap(), t);
    }

    #[test]
    fn four_uniform_trees_round_trip(t in random_tree(13, 4)) {
        let m = extract_matching(&t).unwrap();
        prop_assert_eq!(decode(&encode(&t, &m).unwrap(), &m, 4).unwrap(), t.clone());
        // the discovery order lists the same blocks
        let mut order = extraction_order(&t).unwrap();
        order.sort();
        let mut blocks = m.blocks().to_vec();
        blocks.sort();
        prop_assert_eq!(order, blocks);
    }
}
