//! Truncated series in a generating parameter `w` with coefficients in a
//! commutative algebra over the rationals.

use num_traits::Zero;

use crate::rational::{int, Rational};
use crate::series::TruncatedSeries;

/// Minimal commutative-algebra surface needed by [`GenSeries`].
pub trait Algebra: Clone + PartialEq {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, k: &Rational) -> Self;
}

/// `sum_{k <= N} p_k w^k + O(w^(N+1))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSeries<T> {
    coeffs: Vec<T>,
}

impl<T> GenSeries<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a generating series needs at least one coefficient");
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &T {
        &self.coeffs[k]
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> GenSeries<U> {
        GenSeries::new(self.coeffs.iter().map(f).collect())
    }

    pub fn try_map<U, E>(&self, f: impl FnMut(&T) -> Result<U, E>) -> Result<GenSeries<U>, E> {
        Ok(GenSeries::new(self.coeffs.iter().map(f).collect::<Result<_, _>>()?))
    }
}

impl<T: Clone> GenSeries<T> {
    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec())
    }
}

impl<T: Algebra> GenSeries<T> {
    pub fn zero(order: usize) -> Self {
        Self::new(vec![T::zero(); order + 1])
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::new((0..=order).map(|k| self.coeffs[k].add(&other.coeffs[k])).collect())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        self.map(|c| c.scale(k))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![T::zero(); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=order - i {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&self.coeffs[i].mul(&other.coeffs[j]));
            }
        }
        Self::new(out)
    }

    /// Multiplies by a scalar series in `w`.
    pub fn mul_scalar_series(&self, s: &TruncatedSeries) -> Self {
        let order = self.order().min(s.order());
        let mut out = vec![T::zero(); order + 1];
        for i in 0..=order {
            for j in 0..=order - i {
                let c = s.coeff(j);
                if c.is_zero() || self.coeffs[i].is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&self.coeffs[i].scale(&c));
            }
        }
        Self::new(out)
    }

    /// `d/dw`; the order drops by one (clamped at zero).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self::new(
            (1..=self.order())
                .map(|k| self.coeffs[k].scale(&int(k as i64)))
                .collect(),
        )
    }

    /// Multiplies by `w^k`, keeping the order fixed.
    pub fn shift_up(&self, k: usize) -> Self {
        let order = self.order();
        Self::new(
            (0..=order)
                .map(|n| if n >= k { self.coeffs[n - k].clone() } else { T::zero() })
                .collect(),
        )
    }
}
