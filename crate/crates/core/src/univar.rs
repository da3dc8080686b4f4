//! Dense polynomials in a single variable `x`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::genseries::{Algebra, GenSeries};
use crate::rational::{binomial, factorial_q, int, Rational};

/// Polynomial `sum p_n x^n`, stored low-to-high with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UnivarPoly {
    coeffs: Vec<Rational>,
}

impl UnivarPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// `c x^n`.
    pub fn monomial(n: usize, c: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(1, Rational::one())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, c)| c * int(n as i64))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|n| self.coeff(n) + other.coeff(n)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `e^{w d/dx} p`: the coefficient of `w^k` is `p^{(k)} / k!`.
    pub fn taylor_expansion(&self) -> GenSeries<UnivarPoly> {
        let order = self.degree().unwrap_or(0);
        let mut out = Vec::with_capacity(order + 1);
        let mut current = self.clone();
        for k in 0..=order {
            out.push(current.scale(&factorial_q(k).recip()));
            current = current.derivative();
        }
        GenSeries::new(out)
    }

    /// `p(x + w)` expanded binomially, as a series in `w` with polynomial
    /// coefficients.
    pub fn translate(&self) -> GenSeries<UnivarPoly> {
        let order = self.degree().unwrap_or(0);
        let mut out = vec![UnivarPoly::zero(); order + 1];
        for (n, pn) in self.coeffs.iter().enumerate() {
            for (k, slot) in out.iter_mut().enumerate().take(n + 1) {
                let c = pn * Rational::from_integer(binomial(n, k));
                *slot = slot.add(&UnivarPoly::monomial(n - k, c));
            }
        }
        GenSeries::new(out)
    }
}

impl Algebra for UnivarPoly {
    fn zero() -> Self {
        UnivarPoly::zero()
    }

    fn is_zero(&self) -> bool {
        UnivarPoly::is_zero(self)
    }

    fn add(&self, other: &Self) -> Self {
        UnivarPoly::add(self, other)
    }

    fn mul(&self, other: &Self) -> Self {
        UnivarPoly::mul(self, other)
    }

    fn scale(&self, k: &Rational) -> Self {
        UnivarPoly::scale(self, k)
    }
}

impl fmt::Display for UnivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let is_unit = c.is_one();
            match (n, is_unit) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{c}*x")?,
                (_, true) => write!(f, "x^{n}")?,
                (_, false) => write!(f, "{c}*x^{n}")?,
            }
        }
        Ok(())
    }
}

/// Error from parsing a comma-separated coefficient list.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid coefficient `{0}` (expected an integer or p/q)")]
pub struct ParsePolyError(pub String);

/// Parses `"c0,c1,...,cd"`, each entry an integer or `p/q`, low-to-high degree.
impl FromStr for UnivarPoly {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParsePolyError(String::new()));
        }
        s.split(',')
            .map(|part| {
                let part = part.trim();
                part.parse::<Rational>()
                    .ok()
                    .filter(|_| !part.is_empty())
                    .ok_or_else(|| ParsePolyError(part.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(UnivarPoly::new)
    }
}
