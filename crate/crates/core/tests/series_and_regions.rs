use std::collections::BTreeSet;

use num_rational::BigRational;
use proptest::prelude::*;

use hypertrees::shi::{count_regions_with, RegionOptions, Sign};
use hypertrees::{
    build_arrangement, count_parking, count_regions, egf_matchings, egf_rooted_trees, RationalSeries,
    Series, TreeCounts,
};

type Q = BigRational;

fn small_series(order: usize, zero_constant: bool) -> impl Strategy<Value = RationalSeries> {
    proptest::collection::vec((-5i64..=5, 1i64..=4), order + 1).prop_map(move |c| {
        let mut coeffs: Vec<Q> = c.into_iter().map(|(n, d)| Q::new(n.into(), d.into())).collect();
        if zero_constant {
            coeffs[0] = Q::from_integer(0.into());
        }
        Series::from_coeffs(coeffs, order)
    })
}

proptest! {
    #[test]
    fn truncation_commutes_with_composition(f in small_series(6, false), g in small_series(6, true), cut in 0usize..=6) {
        let whole = f.compose(&g).unwrap().truncate(cut);
        let parts = f.truncate(cut).compose(&g.truncate(cut)).unwrap();
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn composition_is_associative(f in small_series(5, false), g in small_series(5, true), h in small_series(5, true)) {
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn region_set_ignores_processing_order(order in Just((0..12usize).collect::<Vec<_>>()).prop_shuffle()) {
        let opts = RegionOptions { order: Some(order), ..RegionOptions::default() };
        let shuffled = count_regions_with::<Q>(3, 2, &opts).unwrap();
        let canonical = count_regions(3, 2).unwrap();
        let signs = |v: &[hypertrees::Region<Q>]| v.iter().map(|r| r.signs.clone()).collect::<BTreeSet<Vec<Sign>>>();
        prop_assert_eq!(signs(&shuffled.regions), signs(&canonical.regions));
        prop_assert!(shuffled.regions.iter().all(|r| r.witness_is_valid(&shuffled.arrangement)));
    }
}

#[test]
fn tree_egf_satisfies_equation_via_series_ops() {
    let order = 11;
    let t: RationalSeries = egf_rooted_trees(3, order, TreeCounts::Formula).unwrap();
    let e: RationalSeries = egf_matchings(2, order).unwrap();
    assert_eq!(e.compose(&t).unwrap().shift(), t);
}

#[test]
fn regions_match_parking_counts() {
    for (k, r) in [(1, 1), (2, 1), (3, 1), (4, 1), (2, 2), (3, 2), (2, 3), (2, 4), (3, 3)] {
        let res = count_regions(k, r).unwrap();
        assert_eq!(res.count(), count_parking(k, r).unwrap(), "k={k} r={r}");
        assert!(res.regions.iter().all(|reg| reg.witness_is_valid(&res.arrangement)));
        assert_eq!(res.arrangement, build_arrangement(k, r).unwrap());
    }
}

#[test]
fn regions_are_distinct() {
    let res = count_regions(3, 2).unwrap();
    let distinct: BTreeSet<_> = res.regions.iter().map(|r| r.signs.clone()).collect();
    assert_eq!(distinct.len(), res.regions.len());
}

#[test]
fn float_search_agrees_on_small_arrangements() {
    for (k, r) in [(2, 1), (3, 1), (3, 2)] {
        let float = count_regions_with::<f64>(k, r, &RegionOptions::default()).unwrap();
        assert_eq!(float.count(), count_regions(k, r).unwrap().count());
    }
}
