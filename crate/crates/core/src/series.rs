//! Truncated formal power series over any [`Scalar`].

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{invalid, Result};
use crate::scalar::Scalar;

/// `c_0 + c_1 x + ... + c_N x^N`, everything above `x^N` discarded.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Series<T> {
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![T::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = T::one();
        s
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = T::one();
        }
        s
    }

    /// Pads with zeros or truncates to the requested order.
    pub fn from_coeffs(mut coeffs: Vec<T>, order: usize) -> Self {
        coeffs.resize(order + 1, T::zero());
        Series { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `x^n`; zero past the truncation order.
    pub fn coeff(&self, n: usize) -> T {
        self.coeffs.get(n).cloned().unwrap_or_else(T::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.clone(), order)
    }

    pub fn scale(&self, c: &T) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// Multiplies by `x`, dropping the top coefficient.
    pub fn shift(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(T::zero());
        coeffs.extend_from_slice(&self.coeffs[..self.order()]);
        Series { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(g(x))`. Requires `g(0) = 0`; the result has `g`'s order.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if !g.coeffs[0].is_zero() {
            return Err(invalid(format!(
                "inner series must have zero constant term, found {}",
                g.coeffs[0]
            )));
        }
        let order = g.order();
        // Horner; terms of self above `order` cannot reach x^order
        let top = self.order().min(order);
        let mut acc = Self::from_coeffs(vec![self.coeff(top)], order);
        for i in (0..top).rev() {
            acc = &acc * g;
            acc.coeffs[0] = acc.coeffs[0].clone() + self.coeffs[i].clone();
        }
        Ok(acc)
    }

    /// Index of the first coefficient where the two series differ, comparing
    /// up to the smaller order.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }
}

impl<T: Scalar> Add for &Series<T> {
    type Output = Series<T>;

    fn add(self, rhs: Self) -> Series<T> {
        let order = self.order().min(rhs.order());
        Series {
            coeffs: (0..=order)
                .map(|i| self.coeffs[i].clone() + rhs.coeffs[i].clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Sub for &Series<T> {
    type Output = Series<T>;

    fn sub(self, rhs: Self) -> Series<T> {
        let order = self.order().min(rhs.order());
        Series {
            coeffs: (0..=order)
                .map(|i| self.coeffs[i].clone() - rhs.coeffs[i].clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Mul for &Series<T> {
    type Output = Series<T>;

    fn mul(self, rhs: Self) -> Series<T> {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![T::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Series { coeffs }
    }
}

impl<T: Scalar> fmt::Display for Series<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    fn series(c: &[(i64, i64)], order: usize) -> Series<Q> {
        Series::from_coeffs(c.iter().map(|&(n, d)| q(n, d)).collect(), order)
    }

    #[test]
    fn compose_identity_like() {
        let f = series(&[(1, 1), (1, 1)], 4);
        let g = Series::<Q>::x(4);
        assert_eq!(f.compose(&g).unwrap(), series(&[(1, 1), (1, 1)], 4));
    }

    #[test]
    fn compose_exp_with_square() {
        // sum y^j / j!  composed with x^2
        let exp = series(&[(1, 1), (1, 1), (1, 2), (1, 6), (1, 24)], 8);
        let g = series(&[(0, 1), (0, 1), (1, 1)], 8);
        let expected = series(&[(1, 1), (0, 1), (1, 1), (0, 1), (1, 2), (0, 1), (1, 6), (0, 1), (1, 24)], 8);
        assert_eq!(exp.compose(&g).unwrap(), expected);
    }

    #[test]
    fn compose_rejects_constant_term() {
        let f = Series::<Q>::x(3);
        let g = Series::<Q>::one(3);
        assert!(f.compose(&g).is_err());
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let s = series(&[(1, 1), (1, 2), (1, 3)], 6);
        let mut acc = Series::one(6);
        for _ in 0..5 {
            acc = &acc * &s;
        }
        assert_eq!(s.pow(5), acc);
    }

    #[test]
    fn shift_and_sub() {
        let s = series(&[(1, 1), (2, 1), (3, 1)], 2);
        assert_eq!(s.shift(), series(&[(0, 1), (1, 1), (2, 1)], 2));
        assert_eq!((&s - &s).first_difference(&Series::zero(2)), None);
    }

    #[test]
    fn float_instantiation() {
        let s = Series::<f64>::from_coeffs(vec![1.0, 1.0], 3);
        let sq = s.pow(2);
        assert_eq!(sq.coeffs(), &[1.0, 2.0, 1.0, 0.0]);
    }
}
