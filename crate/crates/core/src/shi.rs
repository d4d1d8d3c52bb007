//! The `r`-extended Shi arrangement `x_i - x_j = c`, `1 <= i < j <= m`,
//! `c ∈ {-r+1, ..., r}`, and exact region counting.
//!
//! Regions are found by a depth-first search over sign vectors: hyperplanes
//! are fixed one at a time to a side, and a partial assignment is dropped as
//! soon as its strict system has no solution. Every complete assignment that
//! survives is a region, certified by a witness point.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{invalid, Error, Result};
use crate::fm::{feasible_point, Inequality};
use crate::parking::{count_parking, enumerate_parking};
use crate::prufer::count_trees_for_matching;
use crate::scalar::Scalar;
use crate::{BigCount, Vertex};

/// Default limit on search nodes for [`count_regions`].
pub const DEFAULT_NODE_CAP: u64 = 5_000_000;

/// `x_i - x_j = c` with 1-based `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperplane {
    pub i: usize,
    pub j: usize,
    pub c: i64,
}

impl Hyperplane {
    /// `x_i - x_j - c` at `point` (1-based coordinates).
    pub fn eval<T: Scalar>(&self, point: &[T]) -> T {
        point[self.i - 1].clone() - point[self.j - 1].clone() - T::from_int(self.c)
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{} - x{} = {}", self.i, self.j, self.c)
    }
}

/// Side of a hyperplane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    /// `x_i - x_j > c`
    Above,
    /// `x_i - x_j < c`
    Below,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Above => '+',
            Sign::Below => '-',
        }
    }
}

/// All `C(m, 2) · 2r` hyperplanes ordered by `(i, j, c)`.
pub fn build_arrangement(m: usize, r: u64) -> Result<Vec<Hyperplane>> {
    if m < 1 || r < 1 {
        return Err(invalid(format!("need m >= 1 and r >= 1, got m={m}, r={r}")));
    }
    let r = r as i64;
    let mut out = Vec::with_capacity(m * (m - 1) * r as usize);
    for i in 1..=m {
        for j in i + 1..=m {
            for c in (1 - r)..=r {
                out.push(Hyperplane { i, j, c });
            }
        }
    }
    Ok(out)
}

/// A region given by its sign vector (indexed like [`build_arrangement`])
/// and a point strictly inside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region<T> {
    pub signs: Vec<Sign>,
    pub witness: Vec<T>,
}

impl<T: Scalar> Region<T> {
    /// `true` iff the witness lies strictly on the recorded side of every
    /// hyperplane.
    pub fn witness_is_valid(&self, arrangement: &[Hyperplane]) -> bool {
        arrangement.len() == self.signs.len()
            && arrangement.iter().zip(&self.signs).all(|(h, s)| {
                let v = h.eval(&self.witness);
                match s {
                    Sign::Above => v > T::zero(),
                    Sign::Below => v < T::zero(),
                }
            })
    }

    pub fn sign_string(&self) -> String {
        self.signs.iter().map(|s| s.symbol()).collect()
    }
}

impl<T: Scalar> fmt::Display for Region<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (", self.sign_string())?;
        for (i, v) in self.witness.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// Knobs for [`count_regions_with`].
#[derive(Clone, Debug)]
pub struct RegionOptions {
    /// Maximum number of search nodes before giving up.
    pub node_cap: u64,
    /// Pin `x_m = 0` and search in `m - 1` coordinates.
    pub reduce_dimension: bool,
    /// Processing order as a permutation of hyperplane indices; `None` keeps
    /// the canonical order.
    pub order: Option<Vec<usize>>,
}

impl Default for RegionOptions {
    fn default() -> Self {
        RegionOptions {
            node_cap: DEFAULT_NODE_CAP,
            reduce_dimension: true,
            order: None,
        }
    }
}

/// Result of a region search.
#[derive(Clone, Debug)]
pub struct RegionCount<T> {
    pub arrangement: Vec<Hyperplane>,
    /// Sorted by sign vector.
    pub regions: Vec<Region<T>>,
    pub explored: u64,
}

impl<T> RegionCount<T> {
    pub fn count(&self) -> BigCount {
        BigCount::from(self.regions.len())
    }
}

/// Exact region count of `S_m^r` with rational witnesses.
pub fn count_regions(m: usize, r: u64) -> Result<RegionCount<BigRational>> {
    count_regions_with(m, r, &RegionOptions::default())
}

pub fn count_regions_with<T: Scalar>(m: usize, r: u64, opts: &RegionOptions) -> Result<RegionCount<T>> {
    let arrangement = build_arrangement(m, r)?;
    let order: Vec<usize> = match &opts.order {
        Some(order) => {
            let mut sorted = order.clone();
            sorted.sort_unstable();
            if sorted != (0..arrangement.len()).collect::<Vec<_>>() {
                return Err(invalid("processing order is not a permutation of the hyperplanes"));
            }
            order.clone()
        }
        None => (0..arrangement.len()).collect(),
    };
    let dim = if opts.reduce_dimension { m - 1 } else { m };
    let mut search = Search {
        arrangement: &arrangement,
        order: &order,
        dim,
        coords: m,
        node_cap: opts.node_cap,
        explored: 0,
        system: Vec::with_capacity(order.len()),
        signs: vec![Sign::Above; arrangement.len()],
        regions: Vec::new(),
    };
    let start = vec![T::zero(); dim];
    search.descend(0, start)?;
    let explored = search.explored;
    let mut regions = search.regions;
    regions.sort_by(|a, b| a.signs.cmp(&b.signs));
    Ok(RegionCount {
        arrangement,
        regions,
        explored,
    })
}

struct Search<'a, T> {
    arrangement: &'a [Hyperplane],
    order: &'a [usize],
    dim: usize,
    coords: usize,
    node_cap: u64,
    explored: u64,
    system: Vec<Inequality<T>>,
    signs: Vec<Sign>,
    regions: Vec<Region<T>>,
}

impl<T: Scalar> Search<'_, T> {
    fn constraint(&self, h: &Hyperplane, sign: Sign) -> Inequality<T> {
        let mut coeffs = vec![T::zero(); self.dim];
        let unit = match sign {
            Sign::Above => T::one(),
            Sign::Below => -T::one(),
        };
        coeffs[h.i - 1] = unit.clone();
        // with the reduction the last coordinate is pinned to zero
        if h.j - 1 < self.dim {
            coeffs[h.j - 1] = -unit.clone();
        }
        Inequality::new(coeffs, unit * T::from_int(h.c), true)
    }

    fn full_point(&self, point: &[T]) -> Vec<T> {
        let mut full = point.to_vec();
        full.resize(self.coords, T::zero());
        full
    }

    /// `point` satisfies every constraint fixed so far.
    fn descend(&mut self, depth: usize, point: Vec<T>) -> Result<()> {
        self.explored += 1;
        if self.explored > self.node_cap {
            return Err(Error::CapExceeded {
                what: "region search",
                needed: format!("more than {} explored nodes", self.explored - 1),
                cap: self.node_cap,
            });
        }
        if depth == self.order.len() {
            let witness = self.full_point(&point);
            self.regions.push(Region {
                signs: self.signs.clone(),
                witness,
            });
            return Ok(());
        }
        let idx = self.order[depth];
        let h = self.arrangement[idx];
        for sign in [Sign::Above, Sign::Below] {
            let c = self.constraint(&h, sign);
            let next = if c.is_satisfied_by(&point) {
                Some(point.clone())
            } else {
                self.system.push(c.clone());
                let found = feasible_point(self.dim, &self.system);
                self.system.pop();
                found
            };
            if let Some(next) = next {
                self.system.push(c);
                self.signs[idx] = sign;
                self.descend(depth + 1, next)?;
                self.system.pop();
            }
        }
        Ok(())
    }
}

/// The three equal quantities for `(k, r)`: Shi regions in dimension `k`,
/// `r`-parking functions of length `k`, and `(r+1)`-spanning trees on
/// `[rk+1]` over one fixed matching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleReport {
    pub k: usize,
    pub r: u64,
    pub regions: BigCount,
    pub parking_enumerated: BigCount,
    pub parking_formula: BigCount,
    pub trees_for_matching: BigCount,
}

impl fmt::Display for TriangleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k={} r={} regions={} parking={} trees={}",
            self.k, self.r, self.regions, self.parking_enumerated, self.trees_for_matching
        )
    }
}

/// Computes all three counts and fails with a defect if any two disagree.
pub fn verify_triangle(k: usize, r: u64) -> Result<TriangleReport> {
    if k < 1 || r < 1 {
        return Err(invalid(format!("need k >= 1 and r >= 1, got k={k}, r={r}")));
    }
    let regions = count_regions(k, r)?.count();
    let parking_enumerated = BigCount::from(enumerate_parking(k, r, None)?.count());
    let parking_formula = count_parking(k, r)?;
    let n = (r as usize * k + 1) as Vertex;
    let trees_for_matching = count_trees_for_matching(n, r as usize + 1)?;
    let report = TriangleReport {
        k,
        r,
        regions,
        parking_enumerated,
        parking_formula,
        trees_for_matching,
    };
    let values = [
        ("regions", &report.regions),
        ("parking (enumerated)", &report.parking_enumerated),
        ("parking (formula)", &report.parking_formula),
        ("trees for matching", &report.trees_for_matching),
    ];
    if let Some((name, value)) = values.iter().find(|(_, v)| *v != &report.regions) {
        return Err(Error::Defect(format!(
            "k={k} r={r}: regions={} but {name}={value}",
            report.regions
        )));
    }
    if report.regions.is_zero() {
        return Err(Error::Defect("empty region set".into()));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrangement_sizes() {
        let a = build_arrangement(2, 1).unwrap();
        assert_eq!(a, [Hyperplane { i: 1, j: 2, c: 0 }, Hyperplane { i: 1, j: 2, c: 1 }]);
        assert_eq!(build_arrangement(3, 2).unwrap().len(), 12);
        assert!(build_arrangement(1, 3).unwrap().is_empty());
    }

    #[test]
    fn region_examples() {
        let count = |m, r| count_regions(m, r).unwrap().count();
        assert_eq!(count(2, 1), BigCount::from(3u32));
        assert_eq!(count(3, 1), BigCount::from(16u32));
        assert_eq!(count(3, 2), BigCount::from(49u32));
        assert_eq!(count(2, 3), BigCount::from(7u32));
        assert_eq!(count(1, 2), BigCount::from(1u32));
    }

    #[test]
    fn witnesses_are_strict() {
        let res = count_regions(3, 2).unwrap();
        assert!(res.regions.iter().all(|reg| reg.witness_is_valid(&res.arrangement)));
        assert!(res.regions.iter().all(|reg| reg.witness.len() == 3));
    }

    #[test]
    fn dimension_reduction_is_consistent() {
        let opts = RegionOptions {
            reduce_dimension: false,
            ..RegionOptions::default()
        };
        let full = count_regions_with::<BigRational>(3, 1, &opts).unwrap();
        let reduced = count_regions(3, 1).unwrap();
        let signs = |rc: &RegionCount<BigRational>| rc.regions.iter().map(|r| r.signs.clone()).collect::<Vec<_>>();
        assert_eq!(signs(&full), signs(&reduced));
        assert!(full.regions.iter().all(|reg| reg.witness_is_valid(&full.arrangement)));
    }

    #[test]
    fn node_cap_refuses() {
        let opts = RegionOptions {
            node_cap: 10,
            ..RegionOptions::default()
        };
        let err = count_regions_with::<BigRational>(3, 2, &opts).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }

    #[test]
    fn triangle_examples() {
        let t = verify_triangle(2, 1).unwrap();
        assert_eq!(t.regions, BigCount::from(3u32));
        let t = verify_triangle(1, 3).unwrap();
        assert_eq!(t.regions, BigCount::from(1u32));
    }

    #[test]
    fn region_display() {
        let res = count_regions(2, 1).unwrap();
        let lines: Vec<String> = res.regions.iter().map(|r| r.to_string()).collect();
        assert_eq!(lines, ["++ (2, 0)", "+- (1/2, 0)", "-- (-1, 0)"]);
    }
}
