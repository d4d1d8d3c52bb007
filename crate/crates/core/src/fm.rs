//! Feasibility of systems of strict and non-strict linear inequalities by
//! Fourier–Motzkin elimination, with a witness point recovered by
//! back-substitution.

use crate::scalar::Scalar;

/// `coeffs · x > bound` when `strict`, otherwise `coeffs · x >= bound`.
#[derive(Clone, Debug, PartialEq)]
pub struct Inequality<T> {
    pub coeffs: Vec<T>,
    pub bound: T,
    pub strict: bool,
}

impl<T: Scalar> Inequality<T> {
    pub fn new(coeffs: Vec<T>, bound: T, strict: bool) -> Self {
        Inequality { coeffs, bound, strict }
    }

    pub fn is_satisfied_by(&self, x: &[T]) -> bool {
        let lhs = self
            .coeffs
            .iter()
            .zip(x)
            .fold(T::zero(), |acc, (a, v)| acc + a.clone() * v.clone());
        if self.strict {
            lhs > self.bound
        } else {
            lhs >= self.bound
        }
    }

    /// Scales so that the first nonzero coefficient has absolute value one.
    fn normalized(mut self) -> Self {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
            for c in &mut self.coeffs {
                *c = c.clone() / lead.clone();
            }
            self.bound = self.bound / lead;
        }
        self
    }

    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Truth value of a constraint with no variables left.
    fn constant_holds(&self) -> bool {
        if self.strict {
            self.bound < T::zero()
        } else {
            self.bound <= T::zero()
        }
    }
}

/// Adds `c` unless an identical-direction constraint at least as tight is
/// present; replaces looser ones.
fn push_tightest<T: Scalar>(set: &mut Vec<Inequality<T>>, c: Inequality<T>) {
    if let Some(existing) = set.iter_mut().find(|e| e.coeffs == c.coeffs) {
        let tighter = c.bound > existing.bound || (c.bound == existing.bound && c.strict && !existing.strict);
        if tighter {
            *existing = c;
        }
        return;
    }
    set.push(c);
}

/// Returns a point satisfying every inequality, or `None` if the system is
/// infeasible. All inequalities must have `dim` coefficients.
pub fn feasible_point<T: Scalar>(dim: usize, system: &[Inequality<T>]) -> Option<Vec<T>> {
    // stages[d] only involves variables 0..d
    let mut stages: Vec<Vec<Inequality<T>>> = vec![Vec::new(); dim + 1];
    for c in system {
        debug_assert_eq!(c.coeffs.len(), dim);
        let c = c.clone().normalized();
        if c.is_constant() {
            if !c.constant_holds() {
                return None;
            }
        } else {
            push_tightest(&mut stages[dim], c);
        }
    }
    for var in (0..dim).rev() {
        let current = std::mem::take(&mut stages[var + 1]);
        let mut next = Vec::new();
        let (mut lower, mut upper) = (Vec::new(), Vec::new());
        for c in &current {
            let a = &c.coeffs[var];
            if a.is_zero() {
                push_tightest(&mut next, c.clone());
            } else if *a > T::zero() {
                lower.push(c);
            } else {
                upper.push(c);
            }
        }
        for lo in &lower {
            for up in &upper {
                // both are normalized only on their lead coefficient, rescale on var
                let wl = lo.coeffs[var].abs();
                let wu = up.coeffs[var].abs();
                let coeffs = lo
                    .coeffs
                    .iter()
                    .zip(&up.coeffs)
                    .map(|(a, b)| a.clone() / wl.clone() + b.clone() / wu.clone())
                    .collect();
                let bound = lo.bound.clone() / wl.clone() + up.bound.clone() / wu.clone();
                let mut combined = Inequality::new(coeffs, bound, lo.strict || up.strict);
                combined.coeffs[var] = T::zero();
                let combined = combined.normalized();
                if combined.is_constant() {
                    if !combined.constant_holds() {
                        return None;
                    }
                } else {
                    push_tightest(&mut next, combined);
                }
            }
        }
        stages[var + 1] = current;
        stages[var] = next;
    }
    if stages[0].iter().any(|c| !c.constant_holds()) {
        return None;
    }
    let mut point: Vec<T> = Vec::with_capacity(dim);
    for var in 0..dim {
        let mut low: Option<(T, bool)> = None;
        let mut high: Option<(T, bool)> = None;
        for c in &stages[var + 1] {
            let a = c.coeffs[var].clone();
            if a.is_zero() {
                continue;
            }
            let rest = point
                .iter()
                .zip(&c.coeffs)
                .fold(T::zero(), |acc, (v, b)| acc + v.clone() * b.clone());
            let edge = (c.bound.clone() - rest) / a.clone();
            if a > T::zero() {
                if low.as_ref().is_none_or(|(l, s)| edge > *l || (edge == *l && c.strict && !s)) {
                    low = Some((edge, c.strict));
                }
            } else if high.as_ref().is_none_or(|(h, s)| edge < *h || (edge == *h && c.strict && !s)) {
                high = Some((edge, c.strict));
            }
        }
        let value = match (low, high) {
            (Some((l, _)), Some((h, _))) if l == h => l,
            (Some((l, _)), Some((h, _))) => T::midpoint(&l, &h),
            (Some((l, _)), None) => l + T::one(),
            (None, Some((h, _))) => h - T::one(),
            (None, None) => T::zero(),
        };
        point.push(value);
    }
    Some(point)
}
