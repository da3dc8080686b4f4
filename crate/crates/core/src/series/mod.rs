//! Truncated univariate formal power series over the rationals.
//!
//! A [`TruncatedSeries`] of order `N` stores the ordinary coefficients
//! `c_0 .. c_N` of `sum c_n t^n + O(t^(N+1))`. The exponential view
//! `A_n = n! c_n` is computed on demand. Binary operations truncate to the
//! smaller of the two orders.

pub mod taylor;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{factorial_q, int, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Builds a series from ordinary coefficients; the order is `len - 1`.
    ///
    /// Panics on an empty coefficient list.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        Self { coeffs }
    }

    /// Builds a series from EGF coefficients `A_0 .. A_N`.
    pub fn from_egf(egf: Vec<Rational>) -> Self {
        let coeffs = egf
            .into_iter()
            .enumerate()
            .map(|(n, a)| a / factorial_q(n))
            .collect();
        Self::new(coeffs)
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![Rational::zero(); order + 1])
    }

    pub fn constant(value: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = value;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    /// The series `t`.
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    /// `e^t`.
    pub fn exp_t(order: usize) -> Self {
        Self::from_egf(vec![Rational::one(); order + 1])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Ordinary coefficient of `t^n`; zero past the order.
    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    /// EGF coefficient `A_n = n! c_n`.
    pub fn egf(&self, n: usize) -> Rational {
        self.coeff(n) * factorial_q(n)
    }

    pub fn egf_coeffs(&self) -> Vec<Rational> {
        (0..=self.order()).map(|n| self.egf(n)).collect()
    }

    pub fn is_delta(&self) -> bool {
        self.coeffs[0].is_zero() && self.coeffs.get(1).is_some_and(|c| !c.is_zero())
    }

    pub fn is_unit(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Drops coefficients above `order`. Never extends.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Self::new(self.coeffs[..=order].to_vec())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Multiplies by `t`, raising the order by one.
    pub fn mul_t(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    /// Formal derivative; the order drops by one (clamped at zero).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, c)| c * int(n as i64))
                .collect(),
        )
    }

    /// Anti-derivative with zero integration constant; the order rises by one.
    pub fn integral(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c / int(n as i64 + 1)),
        );
        Self::new(coeffs)
    }

    /// Evaluates the truncated polynomial part at a rational point.
    pub fn eval_truncated(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, exp: usize) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse `1 / c`.
    pub fn mul_inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = c0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..=self.order() {
            let mut acc = Rational::zero();
            for k in 1..=n {
                acc += &self.coeffs[k] * &out[n - k];
            }
            out.push(-acc * &inv0);
        }
        Ok(Self::new(out))
    }

    /// `self(inner(t))`; requires `inner` to have zero constant term.
    ///
    /// Horner evaluation, truncating at every step.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::InnerConstantTerm);
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = Self::constant(self.coeffs[order].clone(), order);
        for c in self.coeffs[..order].iter().rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// Compositional inverse of a delta series.
    ///
    /// Solved order by order: in `B(R(t))` the coefficient of `t^n` is
    /// `b_1 r_n` plus terms involving only `r_1 .. r_{n-1}`.
    pub fn comp_inverse(&self) -> Result<Self> {
        if !self.is_delta() {
            return Err(Error::NotDeltaSeries);
        }
        let order = self.order();
        let b1_inv = self.coeffs[1].recip();
        let mut r = Self::zero(order);
        r.coeffs[1] = b1_inv.clone();
        for n in 2..=order {
            let partial = self.truncate(n).compose(&r.truncate(n))?;
            r.coeffs[n] = -partial.coeffs[n].clone() * &b1_inv;
        }
        Ok(r)
    }

    /// `A^{(n)}(t) = sum_{m >= n} A_m t^(m-n) / (m-n)!` for any integer `n`,
    /// with `A_m = 0` for `m < 0`.
    ///
    /// For `n >= 0` this is the n-th derivative and the order becomes
    /// `N - n` (clamped at zero); for `n < 0` it is an iterated
    /// anti-derivative of order `N + |n|`.
    pub fn shift_egf(&self, n: i64) -> Self {
        self.shift_egf_ext(n, &[])
    }

    /// As [`shift_egf`](Self::shift_egf) with an explicit extension of the
    /// EGF sequence to negative indices: `negative[k]` is `A_{-(k+1)}`,
    /// missing entries default to zero.
    pub fn shift_egf_ext(&self, n: i64, negative: &[Rational]) -> Self {
        let order = self.order() as i64;
        let new_order = if n >= 0 { (order - n).max(0) } else { order - n } as usize;
        let egf = (0..=new_order as i64)
            .map(|k| extended_egf(self, k + n, negative))
            .collect();
        Self::from_egf(egf)
    }

    /// `B*(t) = B'(B̄(t))` for a delta series `B`. The result has order `N - 1`.
    pub fn b_star(&self) -> Result<Self> {
        let inverse = self.comp_inverse()?;
        self.derivative().compose(&inverse)
    }

    /// `exp(a(t))` for `a` with zero constant term.
    pub fn exp_series(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        // E' = a' E, so n e_n = sum_{k=1}^{n} k a_k e_{n-k}
        let order = self.order();
        let mut e: Vec<Rational> = Vec::with_capacity(order + 1);
        e.push(Rational::one());
        for n in 1..=order {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc += &self.coeffs[k] * int(k as i64) * &e[n - k];
            }
            e.push(acc / int(n as i64));
        }
        Ok(Self::new(e))
    }

    /// `log(c(t))` for `c` with constant term one.
    pub fn log_series(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        if self.order() == 0 {
            return Ok(Self::zero(0));
        }
        let quotient = self.derivative().mul(&self.mul_inverse()?);
        Ok(quotient.integral())
    }
}

fn extended_egf(a: &TruncatedSeries, m: i64, negative: &[Rational]) -> Rational {
    if m >= 0 {
        a.egf(m as usize)
    } else {
        negative
            .get((-m - 1) as usize)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: Self) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries::new((0..=order).map(|n| &self.coeffs[n] + &rhs.coeffs[n]).collect())
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: Self) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries::new((0..=order).map(|n| &self.coeffs[n] - &rhs.coeffs[n]).collect())
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        TruncatedSeries::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{binomial, rat};
    use num_bigint::BigInt;

    fn series(cs: &[i64]) -> TruncatedSeries {
        TruncatedSeries::new(cs.iter().map(|&c| int(c)).collect())
    }

    fn exp_minus_one(order: usize) -> TruncatedSeries {
        let mut e = TruncatedSeries::exp_t(order);
        e.coeffs[0] = Rational::zero();
        e
    }

    /// Bell numbers by `B_{n+1} = sum_k C(n, k) B_k`.
    fn bell_oracle(n: usize) -> Vec<BigInt> {
        let mut bell = vec![BigInt::one()];
        for m in 0..n {
            let next = (0..=m).map(|k| binomial(m, k) * &bell[k]).sum();
            bell.push(next);
        }
        bell
    }

    #[test]
    fn difference_of_squares() {
        let a = series(&[1, 1, 0, 0]);
        let b = series(&[1, -1, 0, 0]);
        assert_eq!(a.mul(&b), series(&[1, 0, -1, 0]));
    }

    #[test]
    fn exp_squared_has_powers_of_two() {
        let e = TruncatedSeries::exp_t(10);
        let sq = e.mul(&e);
        for n in 0..=10 {
            // binomial convolution: sum_k C(n,k) * 1 * 1
            let oracle: BigInt = (0..=n).map(|k| binomial(n, k)).sum();
            assert_eq!(sq.egf(n), Rational::from_integer(oracle));
        }
    }

    #[test]
    fn product_truncates_to_min_order() {
        let a = series(&[1, 2, 3]);
        let b = series(&[1, 1, 1, 1, 1, 1]);
        assert_eq!(a.mul(&b).order(), 2);
    }

    #[test]
    fn inverse_of_geometric_and_exp() {
        assert_eq!(TruncatedSeries::one(4).mul_inverse().unwrap(), TruncatedSeries::one(4));
        let inv = series(&[1, -1, 0, 0, 0, 0]).mul_inverse().unwrap();
        assert_eq!(inv, series(&[1, 1, 1, 1, 1, 1]));
        let e = TruncatedSeries::exp_t(8);
        let inv = e.mul_inverse().unwrap();
        for n in 0..=8 {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(inv.egf(n), int(sign));
        }
        assert!(e.mul(&inv) == TruncatedSeries::one(8));
        assert_eq!(series(&[0, 1]).mul_inverse(), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn composition_examples() {
        let a = series(&[3, -1, 4, 1, 5]);
        assert_eq!(a.compose(&TruncatedSeries::identity(4)).unwrap(), a);
        assert_eq!(
            series(&[0, 0, 1]).compose(&series(&[0, 2, 0])).unwrap(),
            series(&[0, 0, 4])
        );
        assert_eq!(a.compose(&series(&[1, 1])), Err(Error::InnerConstantTerm));
    }

    #[test]
    fn exp_of_exp_minus_one_gives_bell_numbers() {
        let n = 15;
        let bell = TruncatedSeries::exp_t(n).compose(&exp_minus_one(n)).unwrap();
        let oracle = bell_oracle(n);
        for (k, b) in oracle.iter().enumerate() {
            assert_eq!(bell.egf(k), Rational::from_integer(b.clone()));
        }
        assert_eq!(
            bell.egf_coeffs()[..7],
            [1, 1, 2, 5, 15, 52, 203].map(int)
        );
    }

    #[test]
    fn compositional_inverses() {
        let t = TruncatedSeries::identity(6);
        assert_eq!(t.comp_inverse().unwrap(), t);

        let log1p = exp_minus_one(10).comp_inverse().unwrap();
        for n in 1..=10i64 {
            let sign = if n % 2 == 1 { 1 } else { -1 };
            assert_eq!(log1p.coeff(n as usize), rat(sign, n));
        }
        assert_eq!(exp_minus_one(10).compose(&log1p).unwrap(), TruncatedSeries::identity(10));

        // t/(1-t) -> t/(1+t)
        let b = series(&[0, 1, 1, 1, 1, 1, 1, 1]);
        let inv = b.comp_inverse().unwrap();
        assert_eq!(inv, series(&[0, 1, -1, 1, -1, 1, -1, 1]));
        assert_eq!(inv.compose(&b).unwrap(), TruncatedSeries::identity(7));
        assert_eq!(series(&[1, 1]).comp_inverse(), Err(Error::NotDeltaSeries));
        assert_eq!(series(&[0, 0, 1]).comp_inverse(), Err(Error::NotDeltaSeries));
    }

    #[test]
    fn shift_egf_examples() {
        let e = TruncatedSeries::exp_t(6);
        assert_eq!(e.shift_egf(1), TruncatedSeries::exp_t(5));
        assert_eq!(TruncatedSeries::identity(4).shift_egf(1), TruncatedSeries::one(3));
        assert_eq!(TruncatedSeries::one(3).shift_egf(-1), TruncatedSeries::identity(4));
        assert_eq!(TruncatedSeries::one(2).shift_egf(5).order(), 0);
        // extension A_{-1} = 7 supplies the integration constant
        let ext = TruncatedSeries::one(2).shift_egf_ext(-1, &[int(7)]);
        assert_eq!(ext, series(&[7, 1, 0, 0]));
    }

    #[test]
    fn b_star_examples() {
        assert_eq!(TruncatedSeries::identity(5).b_star().unwrap(), TruncatedSeries::one(4));
        // e^t - 1 -> 1 + t
        let bs = exp_minus_one(8).b_star().unwrap();
        assert_eq!(bs, series(&[1, 1, 0, 0, 0, 0, 0, 0]));
        // t/(1-t) -> (1+t)^2
        let bs = series(&[0, 1, 1, 1, 1, 1, 1, 1]).b_star().unwrap();
        assert_eq!(bs, series(&[1, 2, 1, 0, 0, 0, 0]));
        // cross-check against 1 / B̄'
        let inv_prime = series(&[0, 1, 1, 1, 1, 1, 1, 1]).comp_inverse().unwrap().derivative();
        assert_eq!(inv_prime.mul_inverse().unwrap(), bs);
    }

    #[test]
    fn exp_and_log_examples() {
        assert_eq!(TruncatedSeries::zero(5).exp_series().unwrap(), TruncatedSeries::one(5));
        assert_eq!(
            TruncatedSeries::identity(7).exp_series().unwrap(),
            TruncatedSeries::exp_t(7)
        );
        let log1p = series(&[1, 1, 0, 0, 0, 0, 0, 0]).log_series().unwrap();
        for n in 1..=7i64 {
            let sign = if n % 2 == 1 { 1 } else { -1 };
            assert_eq!(log1p.coeff(n as usize), rat(sign, n));
        }
        assert_eq!(log1p.exp_series().unwrap(), series(&[1, 1, 0, 0, 0, 0, 0, 0]));
        assert_eq!(TruncatedSeries::one(4).log_series().unwrap(), TruncatedSeries::zero(4));
        assert_eq!(
            TruncatedSeries::exp_t(6).log_series().unwrap(),
            TruncatedSeries::identity(6)
        );
        assert_eq!(series(&[2, 1]).log_series(), Err(Error::ConstantTermNotOne));
        assert_eq!(series(&[1, 1]).exp_series(), Err(Error::NonzeroConstantTerm));
    }
}
