//! The polynomial ring `C[..., y_{-1}, y_0, y_1, ..., x_1, x_2, ...]` with
//! two plain variables `x` and `w`, the derivation
//!
//! ```text
//! D y_i = y_{i+1} x_1,    D x_j = x_{j+1}
//! ```
//!
//! its truncated exponential `e^{wD}`, and the substitution homomorphisms
//! `χ_B`, `ψ_A` and `φ_B`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::genseries::{Algebra, GenSeries};
use crate::rational::{factorial_q, int, pow, Rational};
use crate::series::TruncatedSeries;
use crate::univar::UnivarPoly;

/// Lowest `y`-index accepted by [`MultiPoly::y`].
pub const DEFAULT_Y_FLOOR: i64 = -4;

/// A monomial: sparse exponents for `y_i` (`i ∈ Z`) and `x_j` (`j >= 1`),
/// plus exponents of the plain variables `x` and `w`.
///
/// Sparse lists are sorted by index and never hold a zero exponent, so the
/// derived ordering and equality are canonical.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    ys: Vec<(i64, u32)>,
    xs: Vec<(u32, u32)>,
    x: u32,
    w: u32,
}

fn bump<K: Ord + Copy>(list: &mut Vec<(K, u32)>, key: K, delta: i64) {
    match list.binary_search_by(|(k, _)| k.cmp(&key)) {
        Ok(pos) => {
            let e = list[pos].1 as i64 + delta;
            assert!(e >= 0, "negative exponent");
            if e == 0 {
                list.remove(pos);
            } else {
                list[pos].1 = e as u32;
            }
        }
        Err(pos) => {
            assert!(delta >= 0, "negative exponent");
            if delta > 0 {
                list.insert(pos, (key, delta as u32));
            }
        }
    }
}

fn exponent<K: Ord + Copy>(list: &[(K, u32)], key: K) -> u32 {
    list.binary_search_by(|(k, _)| k.cmp(&key))
        .map(|pos| list[pos].1)
        .unwrap_or(0)
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn ys(&self) -> &[(i64, u32)] {
        &self.ys
    }

    pub fn xs(&self) -> &[(u32, u32)] {
        &self.xs
    }

    pub fn plain_x(&self) -> u32 {
        self.x
    }

    pub fn plain_w(&self) -> u32 {
        self.w
    }

    pub fn y_exp(&self, i: i64) -> u32 {
        exponent(&self.ys, i)
    }

    pub fn x_exp(&self, j: u32) -> u32 {
        exponent(&self.xs, j)
    }

    pub fn bump_y(&mut self, i: i64, delta: i64) {
        bump(&mut self.ys, i, delta);
    }

    pub fn bump_x(&mut self, j: u32, delta: i64) {
        assert!(j >= 1, "x-indices start at 1");
        bump(&mut self.xs, j, delta);
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for &(i, e) in &other.ys {
            out.bump_y(i, e as i64);
        }
        for &(j, e) in &other.xs {
            out.bump_x(j, e as i64);
        }
        out.x += other.x;
        out.w += other.w;
        out
    }

    /// Total `y`-degree.
    pub fn y_degree(&self) -> u32 {
        self.ys.iter().map(|&(_, e)| e).sum()
    }

    /// `sum j * m_j` over the `x_j` exponents.
    pub fn x_weight(&self) -> u64 {
        self.xs.iter().map(|&(j, e)| j as u64 * e as u64).sum()
    }

    fn has_plain(&self) -> bool {
        self.x > 0 || self.w > 0
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let power = |name: String, e: u32| if e == 1 { name } else { format!("{name}^{e}") };
        for &(i, e) in &self.ys {
            parts.push(power(format!("y_{i}"), e));
        }
        for &(j, e) in &self.xs {
            parts.push(power(format!("x_{j}"), e));
        }
        if self.x > 0 {
            parts.push(power("x".into(), self.x));
        }
        if self.w > 0 {
            parts.push(power("w".into(), self.w));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Finitely supported element of the ring; zero coefficients are never
/// stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    /// `y_i`, rejecting indices below [`DEFAULT_Y_FLOOR`].
    pub fn y(i: i64) -> Result<Self> {
        Self::y_with_floor(i, DEFAULT_Y_FLOOR)
    }

    pub fn y_with_floor(i: i64, floor: i64) -> Result<Self> {
        if i < floor {
            return Err(Error::IndexBelowFloor { index: i, floor });
        }
        let mut m = Monomial::one();
        m.bump_y(i, 1);
        Ok(Self::term(m, Rational::one()))
    }

    /// `x_j` for `j >= 1`.
    pub fn x(j: u32) -> Self {
        let mut m = Monomial::one();
        m.bump_x(j, 1);
        Self::term(m, Rational::one())
    }

    /// The plain variable `x`.
    pub fn plain_x() -> Self {
        Self::term(Monomial { x: 1, ..Monomial::one() }, Rational::one())
    }

    /// The plain variable `w`.
    pub fn plain_w() -> Self {
        Self::term(Monomial { w: 1, ..Monomial::one() }, Rational::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Applies a linear map defined on monomials.
    pub fn map_monomials(&self, mut f: impl FnMut(&Monomial) -> MultiPoly) -> MultiPoly {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for (m2, c2) in f(m).terms {
                out.add_term(m2, c2 * c);
            }
        }
        out
    }

    /// `∂/∂x_j`.
    pub fn partial_x(&self, j: u32) -> Self {
        self.map_monomials(|m| {
            let e = m.x_exp(j);
            if e == 0 {
                return Self::zero();
            }
            let mut m2 = m.clone();
            m2.bump_x(j, -1);
            Self::term(m2, int(e as i64))
        })
    }

    /// The derivation `D`: `y_i ↦ y_{i+1} x_1`, `x_j ↦ x_{j+1}`.
    pub fn derivation_d(&self) -> Result<Self> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if m.has_plain() {
                return Err(unsupported_plain(m));
            }
            for &(i, e) in &m.ys {
                let mut m2 = m.clone();
                m2.bump_y(i, -1);
                m2.bump_y(i + 1, 1);
                m2.bump_x(1, 1);
                out.add_term(m2, c * int(e as i64));
            }
            for &(j, e) in &m.xs {
                let mut m2 = m.clone();
                m2.bump_x(j, -1);
                m2.bump_x(j + 1, 1);
                out.add_term(m2, c * int(e as i64));
            }
        }
        Ok(out)
    }

    /// `e^{wD} p` to order `N`: the coefficient of `w^k` is `D^k p / k!`.
    pub fn exp_wd(&self, order: usize) -> Result<GenSeries<MultiPoly>> {
        let mut out = Vec::with_capacity(order + 1);
        let mut current = self.clone();
        for k in 0..=order {
            if k > 0 {
                current = current.derivation_d()?;
            }
            out.push(current.scale(&factorial_q(k).recip()));
        }
        if order == 0 {
            // still validate the input
            self.derivation_d()?;
        }
        Ok(GenSeries::new(out))
    }

    /// `χ_B`: fixes every `y_i` and sends `x_j ↦ B_j x` (`B_j` the EGF
    /// coefficient).
    pub fn chi_b(&self, b: &TruncatedSeries) -> Result<Self> {
        if !b.is_delta() {
            return Err(Error::NotDeltaSeries);
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut m2 = Monomial { ys: m.ys.clone(), xs: Vec::new(), x: m.x, w: m.w };
            for &(j, e) in &m.xs {
                if j as usize > b.order() {
                    return Err(Error::OrderTooSmall { needed: j as usize, available: b.order() });
                }
                coeff *= pow(&b.egf(j as usize), e);
                m2.x += e;
            }
            out.add_term(m2, coeff);
        }
        Ok(out)
    }

    /// `ψ_A`: sends `y_i ↦ A_i` and fixes `x`; negative indices read zero.
    pub fn psi_a(&self, a: &TruncatedSeries) -> Result<Self> {
        self.psi_a_ext(a, &[])
    }

    /// As [`psi_a`](Self::psi_a) with `negative[k] = A_{-(k+1)}`.
    pub fn psi_a_ext(&self, a: &TruncatedSeries, negative: &[Rational]) -> Result<Self> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Some(&(j, _)) = m.xs.first() {
                return Err(Error::UnsupportedVariable(format!("x_{j}")));
            }
            let mut coeff = c.clone();
            for &(i, e) in &m.ys {
                let value = if i >= 0 {
                    if i as usize > a.order() {
                        return Err(Error::OrderTooSmall { needed: i as usize, available: a.order() });
                    }
                    a.egf(i as usize)
                } else {
                    negative
                        .get((-i - 1) as usize)
                        .cloned()
                        .unwrap_or_else(Rational::zero)
                };
                coeff *= pow(&value, e);
            }
            out.add_term(Monomial { ys: Vec::new(), xs: Vec::new(), x: m.x, w: m.w }, coeff);
        }
        Ok(out)
    }

    /// `φ_B` on `y C[x_1, ...]` (with `y` written as `y_0`) or on
    /// `C[x_1, ...]`: `y ↦ 1`, `x_j ↦ B_j x`.
    pub fn phi_b(&self, b: &TruncatedSeries) -> Result<Self> {
        let mut stripped = Self::zero();
        for (m, c) in &self.terms {
            match m.ys.as_slice() {
                [] | [(0, 1)] => {}
                [(i, _), ..] => return Err(Error::UnsupportedVariable(format!("y_{i}"))),
            }
            if m.has_plain() {
                return Err(unsupported_plain(m));
            }
            stripped.add_term(Monomial { ys: Vec::new(), ..m.clone() }, c.clone());
        }
        stripped.chi_b(b)
    }

    /// Sends every `y_i` to `y_0`.
    pub fn collapse_y(&self) -> Self {
        self.map_monomials(|m| {
            let deg = m.y_degree();
            let mut m2 = Monomial { ys: Vec::new(), ..m.clone() };
            if deg > 0 {
                m2.bump_y(0, deg as i64);
            }
            Self::term(m2, Rational::one())
        })
    }

    /// Reads a polynomial in the plain variable `x` alone.
    pub fn to_univar(&self) -> Result<UnivarPoly> {
        let mut coeffs: Vec<Rational> = Vec::new();
        for (m, c) in &self.terms {
            if let Some(&(i, _)) = m.ys.first() {
                return Err(Error::UnsupportedVariable(format!("y_{i}")));
            }
            if let Some(&(j, _)) = m.xs.first() {
                return Err(Error::UnsupportedVariable(format!("x_{j}")));
            }
            if m.w > 0 {
                return Err(Error::UnsupportedVariable("w".into()));
            }
            let n = m.x as usize;
            if coeffs.len() <= n {
                coeffs.resize(n + 1, Rational::zero());
            }
            coeffs[n] += c;
        }
        Ok(UnivarPoly::new(coeffs))
    }

    pub fn from_univar(p: &UnivarPoly) -> Self {
        let mut out = Self::zero();
        for (n, c) in p.coeffs().iter().enumerate() {
            out.add_term(Monomial { x: n as u32, ..Monomial::one() }, c.clone());
        }
        out
    }
}

fn unsupported_plain(m: &Monomial) -> Error {
    Error::UnsupportedVariable(if m.x > 0 { "x".into() } else { "w".into() })
}

impl Algebra for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }

    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }

    fn add(&self, other: &Self) -> Self {
        MultiPoly::add(self, other)
    }

    fn mul(&self, other: &Self) -> Self {
        MultiPoly::mul(self, other)
    }

    fn scale(&self, k: &Rational) -> Self {
        MultiPoly::scale(self, k)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if m == &Monomial::one() {
                    c.to_string()
                } else if c.is_one() {
                    m.to_string()
                } else {
                    format!("{c}*{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `sum_n y_n (sum_{m>=1} w^m x_m / m!)^n / n!` truncated to order `N` in `w`.
pub fn faa_rhs(order: usize) -> GenSeries<MultiPoly> {
    let inner = GenSeries::new(
        (0..=order)
            .map(|m| {
                if m == 0 {
                    MultiPoly::zero()
                } else {
                    MultiPoly::x(m as u32).scale(&factorial_q(m).recip())
                }
            })
            .collect(),
    );
    let mut power = GenSeries::new(
        (0..=order)
            .map(|k| if k == 0 { MultiPoly::one() } else { MultiPoly::zero() })
            .collect(),
    );
    let mut total = GenSeries::<MultiPoly>::zero(order);
    for n in 0..=order {
        let yn = MultiPoly::y(n as i64).expect("nonnegative index").scale(&factorial_q(n).recip());
        total = total.add(&power.map(|c| c.mul(&yn)));
        power = power.mul(&inner);
    }
    total
}

/// Applies `ψ_A ∘ χ_B` coefficientwise and reads the result in `C[x]`.
pub fn psi_chi(
    g: &GenSeries<MultiPoly>,
    a: &TruncatedSeries,
    b: &TruncatedSeries,
) -> Result<GenSeries<UnivarPoly>> {
    g.try_map(|p| p.chi_b(b)?.psi_a(a)?.to_univar())
}
