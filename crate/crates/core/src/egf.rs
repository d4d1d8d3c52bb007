//! Exponential generating functions for uniform matchings and rooted
//! spanning trees, and the checks tying them together.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combin::{binomial, factorial};
use crate::error::{invalid, Error, Result};
use crate::hypergraph::{count_spanning_trees_formula, enumerate_spanning_trees};
use crate::matching::count_matchings_formula;
use crate::scalar::Scalar;
use crate::series::Series;
use crate::{BigCount, RationalSeries, Vertex};

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 12;

/// Where the tree counts feeding `T(x)` come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeCounts {
    /// Closed-form count.
    Formula,
    /// Exhaustive enumeration, subject to the cap.
    BruteForce { cap: Option<u64> },
}

/// `Σ pm_n x^n / n!` where `pm_n` counts partitions of `[n]` into blocks of
/// size `b`; `pm_0 = 1`.
pub fn egf_matchings<T: Scalar>(b: usize, order: usize) -> Result<Series<T>> {
    if b < 1 {
        return Err(invalid("block size must be positive"));
    }
    let coeffs = (0..=order)
        .map(|n| {
            let count = count_matchings_formula(n as u64, b)?;
            Ok(T::from_count(&count) / T::from_count(&factorial(n as u64)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Series::from_coeffs(coeffs, order))
}

/// `t_0, ..., t_order`: rooted `r`-spanning trees on `[n]`, i.e. `n` times
/// the unrooted count, with `t_0 = 0` and `t_1 = 1`.
pub fn rooted_tree_counts(r: usize, order: usize, source: TreeCounts) -> Result<Vec<BigCount>> {
    if r < 2 {
        return Err(invalid(format!("uniformity must be at least 2, got {r}")));
    }
    let mut out = vec![BigCount::zero()];
    for n in 1..=order as Vertex {
        let unrooted = match source {
            TreeCounts::Formula => count_spanning_trees_formula(n, r)?,
            TreeCounts::BruteForce { cap } => BigUint::from(enumerate_spanning_trees(n, r, cap)?.count()),
        };
        out.push(unrooted * n);
    }
    Ok(out)
}

/// `T(x) = Σ t_n x^n / n!` for rooted `r`-spanning trees.
pub fn egf_rooted_trees<T: Scalar>(r: usize, order: usize, source: TreeCounts) -> Result<Series<T>> {
    let counts = rooted_tree_counts(r, order, source)?;
    Ok(series_from_counts(&counts))
}

fn series_from_counts<T: Scalar>(counts: &[BigCount]) -> Series<T> {
    let coeffs = counts
        .iter()
        .enumerate()
        .map(|(n, c)| T::from_count(c) / T::from_count(&factorial(n as u64)))
        .collect();
    Series::from_coeffs(coeffs, counts.len() - 1)
}

/// `f(g(x))` on truncated series.
pub fn compose<T: Scalar>(f: &Series<T>, g: &Series<T>) -> Result<Series<T>> {
    f.compose(g)
}

/// Outcome of comparing `T(x)` with `x · E(T(x))`.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctionalEquationReport {
    pub r: usize,
    pub order: usize,
    pub tree_series: RationalSeries,
    pub composed: RationalSeries,
    /// First order where the two sides differ, with both coefficients.
    pub first_failure: Option<(usize, BigRational, BigRational)>,
}

impl FunctionalEquationReport {
    pub fn holds(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Checks `T(x) = x E(T(x))` coefficient by coefficient through `order`,
/// where `E` is the EGF of `(r-1)`-uniform matchings.
pub fn verify_functional_equation(r: usize, order: usize, source: TreeCounts) -> Result<FunctionalEquationReport> {
    if r < 2 || order < 1 {
        return Err(invalid(format!("need r >= 2 and order >= 1, got r={r}, order={order}")));
    }
    let tree_series: RationalSeries = egf_rooted_trees(r, order, source)?;
    let matchings: RationalSeries = egf_matchings(r - 1, order)?;
    let composed = matchings.compose(&tree_series)?.shift();
    let first_failure = tree_series
        .first_difference(&composed)
        .map(|i| (i, tree_series.coeff(i), composed.coeff(i)));
    Ok(FunctionalEquationReport {
        r,
        order,
        tree_series,
        composed,
        first_failure,
    })
}

/// `[y^(2k)] E_pm(y)^(2k+1)` for perfect matchings (`r = 3`), computed by an
/// exact series power and checked against `((2k+1)/2)^k / k!`.
pub fn lagrange_coefficient(r: usize, k: u32) -> Result<BigRational> {
    if r != 3 {
        return Err(Error::Unsupported(format!("closed form only for r = 3, got {r}")));
    }
    if k < 1 {
        return Err(invalid("k must be at least 1"));
    }
    let order = 2 * k as usize;
    let matchings: RationalSeries = egf_matchings(2, order)?;
    let value = matchings.pow(2 * k + 1).coeff(order);
    let closed = lagrange_closed_form(k);
    if value != closed {
        return Err(Error::Defect(format!(
            "series power gives {value}, closed form gives {closed} at k={k}"
        )));
    }
    Ok(value)
}

/// `((2k+1)/2)^k / k!`.
pub fn lagrange_closed_form(k: u32) -> BigRational {
    let base = BigRational::new(BigInt::from(2 * k + 1), BigInt::from(2));
    let kf = BigInt::from(factorial(k as u64));
    num_traits::pow(base, k as usize) / BigRational::from_integer(kf)
}

/// `t_(2k+1)` recovered by Lagrange inversion: `(2k)! · [y^(2k)] E_pm(y)^(2k+1)`.
pub fn rooted_count_by_lagrange(k: u32) -> Result<BigCount> {
    let coeff = lagrange_coefficient(3, k)?;
    let scaled = coeff * BigRational::from_integer(BigInt::from(factorial(2 * k as u64)));
    if !scaled.is_integer() {
        return Err(Error::Defect(format!("non-integer count {scaled}")));
    }
    scaled
        .to_integer()
        .to_biguint()
        .ok_or_else(|| Error::Defect("negative count".into()))
}

/// Rooted tree counts from the recursive construction: choose a root, split
/// the other vertices into branches, each branch being `r - 1` rooted subtrees
/// whose roots join the root in one hyperedge.
///
/// Integer recurrences only, no series arithmetic.
pub fn rooted_counts_by_construction(r: usize, order: usize) -> Result<Vec<BigCount>> {
    if r < 2 {
        return Err(invalid(format!("uniformity must be at least 2, got {r}")));
    }
    let b = r - 1;
    let mut t = vec![BigCount::zero(); order + 1];
    for s in 1..=order {
        let u = s - 1;
        // sets[c][j]: unordered sets of c rooted trees covering j labels
        let mut sets = vec![vec![BigCount::zero(); u + 1]; b + 1];
        sets[0][0] = BigCount::one();
        for c in 1..=b {
            for j in 1..=u {
                sets[c][j] = containing_smallest(j, |size| &t[size], |rest| &sets[c - 1][rest]);
            }
        }
        let branch = &sets[b];
        let mut forests = vec![BigCount::zero(); u + 1];
        forests[0] = BigCount::one();
        for j in 1..=u {
            forests[j] = containing_smallest(j, |size| &branch[size], |rest| &forests[rest]);
        }
        t[s] = BigCount::from(s) * &forests[u];
    }
    Ok(t)
}

/// `Σ_size C(total-1, size-1) · part(size) · rest(total - size)`: the part
/// holding the smallest label has `size` labels.
fn containing_smallest<'a>(
    total: usize,
    part: impl Fn(usize) -> &'a BigCount,
    rest: impl Fn(usize) -> &'a BigCount,
) -> BigCount {
    (1..=total)
        .map(|size| binomial(total as u64 - 1, size as u64 - 1) * part(size) * rest(total - size))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn matching_series() {
        let e: RationalSeries = egf_matchings(2, 6).unwrap();
        assert_eq!(e.coeff(0), q(1, 1));
        assert_eq!(e.coeff(1), q(0, 1));
        assert_eq!(e.coeff(2), q(1, 2));
        assert_eq!(e.coeff(4), q(3, 24));
        assert_eq!(e.coeff(6), q(15, 720));
        let e3: RationalSeries = egf_matchings(3, 3).unwrap();
        assert_eq!(e3.coeff(3), q(1, 6));
    }

    #[test]
    fn rooted_counts() {
        let t = rooted_tree_counts(3, 5, TreeCounts::Formula).unwrap();
        let t: Vec<u64> = t.iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(t, [0, 1, 0, 3, 0, 75]);
    }

    #[test]
    fn functional_equation_small() {
        assert!(verify_functional_equation(3, 9, TreeCounts::Formula).unwrap().holds());
        assert!(verify_functional_equation(4, 10, TreeCounts::Formula).unwrap().holds());
        let rep = verify_functional_equation(3, 2, TreeCounts::Formula).unwrap();
        assert!(rep.holds());
        assert_eq!(rep.tree_series.order(), 2);
    }

    #[test]
    fn functional_equation_detects_wrong_t1() {
        // forcing t_1 = 0 must break the identity at order 1
        let mut counts = rooted_tree_counts(3, 5, TreeCounts::Formula).unwrap();
        counts[1] = BigCount::zero();
        let t: RationalSeries = series_from_counts(&counts);
        let e: RationalSeries = egf_matchings(2, 5).unwrap();
        let rhs = e.compose(&t).unwrap().shift();
        assert_eq!(t.first_difference(&rhs), Some(1));
    }

    #[test]
    fn lagrange_values() {
        assert_eq!(lagrange_coefficient(3, 1).unwrap(), q(3, 2));
        assert_eq!(lagrange_coefficient(3, 2).unwrap(), q(25, 8));
        assert_eq!(lagrange_coefficient(3, 3).unwrap(), q(343, 48));
        assert!(lagrange_coefficient(4, 1).is_err());
    }

    #[test]
    fn lagrange_recovers_counts() {
        // 1·3···(2k-1)·(2k+1)^k
        assert_eq!(rooted_count_by_lagrange(1).unwrap(), BigUint::from(3u32));
        assert_eq!(rooted_count_by_lagrange(2).unwrap(), BigUint::from(75u32));
        assert_eq!(rooted_count_by_lagrange(3).unwrap(), BigUint::from(15u32 * 343));
    }

    #[test]
    fn construction_recurrence_matches_formula() {
        for r in 2..=5 {
            let rec = rooted_counts_by_construction(r, 12).unwrap();
            let formula = rooted_tree_counts(r, 12, TreeCounts::Formula).unwrap();
            assert_eq!(rec, formula, "r = {r}");
        }
    }

    #[test]
    fn float_series_agree_approximately() {
        let exact: RationalSeries = egf_rooted_trees(3, 7, TreeCounts::Formula).unwrap();
        let float: Series<f64> = egf_rooted_trees(3, 7, TreeCounts::Formula).unwrap();
        for n in 0..=7 {
            let e: f64 = num_traits::ToPrimitive::to_f64(&exact.coeff(n)).unwrap();
            assert!((e - float.coeff(n)).abs() < 1e-12);
        }
    }
}
