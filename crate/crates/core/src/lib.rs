//! Spanning trees of complete uniform hypergraphs and the objects they are
//! counted by.
//!
//! * [`hypergraph`]: hypertrees, the spanning-tree test, brute-force
//!   enumeration and the closed-form count.
//! * [`matching`]: equal-size set partitions and the matching a tree arises
//!   from.
//! * [`prufer`]: Prüfer-type codes for the trees over a fixed matching.
//! * [`parking`] and [`bijection`]: `r`-parking functions and the BFS
//!   bijection with trees over the consecutive matching.
//! * [`egf`] and [`series`]: exponential generating functions over exact
//!   rationals.
//! * [`shi`] and [`fm`]: regions of the `r`-extended Shi arrangement.
//! * [`suite`]: the cross-checks behind `hypertrees verify`.
//!
//! Field arithmetic is generic over [`Scalar`]; the aliases below fix it to
//! exact rationals.

pub mod bijection;
pub mod combin;
pub mod egf;
pub mod error;
pub mod fm;
pub mod hypergraph;
pub mod matching;
pub mod parking;
pub mod prufer;
pub mod scalar;
pub mod series;
pub mod shi;
pub mod suite;

pub use bijection::{bfs_order, parking_to_tree, tree_to_parking, BfsOrder};
pub use egf::{
    egf_matchings, egf_rooted_trees, lagrange_coefficient, verify_functional_equation, TreeCounts,
};
pub use error::{Error, Result};
pub use hypergraph::{
    count_spanning_trees_formula, enumerate_spanning_trees, is_spanning_tree, HyperTree, Hyperedge,
};
pub use matching::{count_matchings_formula, cross_count, enumerate_matchings, extract_matching, RMatching};
pub use parking::{count_parking, enumerate_parking, is_r_parking, simulate_parking, ParkingFn};
pub use prufer::{count_trees_for_matching, decode, encode, PruferCode};
pub use scalar::Scalar;
pub use series::Series;
pub use shi::{build_arrangement, count_regions, verify_triangle, Hyperplane, Region};

/// Vertex label, 1-based.
pub type Vertex = u32;

/// Exact non-negative count.
pub type BigCount = num_bigint::BigUint;

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;

/// Power series with exact rational coefficients.
pub type RationalSeries = Series<Rational>;

/// Region of a Shi arrangement with a rational witness.
pub type RationalRegion = Region<Rational>;

/// Default cap on the number of candidates an enumeration may examine.
pub const DEFAULT_CAP: u64 = 20_000_000;
