//! The module `y C[x_1, x_2, ...]` with Heisenberg operators `h(n)` and the
//! quadratic Virasoro operators `L(m)`, normalized by
//! `α(n) = 1/(n-1)!`, `β(n) = n!`.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly_ring::{Monomial, MultiPoly};
use crate::rational::{factorial_q, int, rat, Rational};
use crate::series::TruncatedSeries;
use crate::univar::UnivarPoly;

/// An element `y * q(x_1, x_2, ...)`; only `q` is stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FockPoly {
    inner: MultiPoly,
}

impl FockPoly {
    /// The lowest weight vector `y`.
    pub fn vacuum() -> Self {
        Self { inner: MultiPoly::one() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// `y * prod x_j^{e_j}` from `(j, e_j)` pairs.
    pub fn monomial(exponents: &[(u32, u32)]) -> Self {
        let mut m = Monomial::one();
        for &(j, e) in exponents {
            m.bump_x(j, e as i64);
        }
        Self { inner: MultiPoly::term(m, Rational::one()) }
    }

    /// Wraps the `C[x_1, ...]` factor; fails on any `y_i`, `x` or `w`.
    pub fn from_x_part(inner: MultiPoly) -> Result<Self> {
        for (m, _) in inner.terms() {
            if let Some(&(i, _)) = m.ys().first() {
                return Err(Error::UnsupportedVariable(format!("y_{i}")));
            }
            if m.plain_x() > 0 || m.plain_w() > 0 {
                return Err(Error::UnsupportedVariable("x or w".into()));
            }
        }
        Ok(Self { inner })
    }

    pub fn x_part(&self) -> &MultiPoly {
        &self.inner
    }

    /// Embeds into the big ring with `y` written as `y_0`.
    pub fn to_multipoly(&self) -> MultiPoly {
        self.inner.mul(&MultiPoly::y(0).expect("y_0 is above the floor"))
    }

    /// Inverse of [`to_multipoly`](Self::to_multipoly): every term must carry
    /// exactly one `y_0`.
    pub fn from_multipoly(p: &MultiPoly) -> Result<Self> {
        let mut inner = MultiPoly::zero();
        for (m, c) in p.terms() {
            if m.ys() != [(0, 1)] {
                return Err(Error::UnsupportedVariable(format!("{m}")));
            }
            let mut stripped = m.clone();
            stripped.bump_y(0, -1);
            inner.add_term(stripped, c.clone());
        }
        Self::from_x_part(inner)
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { inner: self.inner.add(&other.inner) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { inner: self.inner.sub(&other.inner) }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self { inner: self.inner.scale(k) }
    }

    /// `φ_B`: `y ↦ 1`, `x_j ↦ B_j x`.
    pub fn phi_b(&self, b: &TruncatedSeries) -> Result<UnivarPoly> {
        self.inner.chi_b(b)?.to_univar()
    }
}

impl fmt::Display for FockPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y*({})", self.inner)
    }
}

fn h_on_monomial(n: i64, m: &Monomial) -> MultiPoly {
    match n {
        0 => MultiPoly::term(m.clone(), Rational::one()),
        n if n < 0 => {
            let j = (-n) as u32;
            let mut m2 = m.clone();
            m2.bump_x(j, 1);
            MultiPoly::term(m2, factorial_q(j as usize - 1).recip())
        }
        n => {
            let j = n as u32;
            let e = m.x_exp(j);
            if e == 0 {
                return MultiPoly::zero();
            }
            let mut m2 = m.clone();
            m2.bump_x(j, -1);
            MultiPoly::term(m2, factorial_q(j as usize) * int(e as i64))
        }
    }
}

fn h_on(n: i64, p: &MultiPoly) -> MultiPoly {
    p.map_monomials(|m| h_on_monomial(n, m))
}

/// Heisenberg operator `h(n)`: multiplication by `x_{-n}/(-n-1)!` for
/// `n < 0`, `n! ∂/∂x_n` for `n > 0`, identity for `n = 0`.
pub fn h_op(n: i64, p: &FockPoly) -> FockPoly {
    FockPoly { inner: h_on(n, &p.inner) }
}

/// `L(m) = (1/2) sum_k :h(m-k) h(k):`.
///
/// For `m != 0` the two factors commute; for `m = 0` the sum is the normal
/// ordered one. Either way each product is applied annihilator first, and
/// only the finitely many `k` that can act nonzero on a given monomial are
/// visited: indices of variables present, their complements `m - j`, and
/// (for `m <= 0`) the double-creation range `m <= k <= 0`.
pub fn l_op(m: i64, p: &FockPoly) -> FockPoly {
    let half = rat(1, 2);
    let inner = p.inner.map_monomials(|mono| {
        let mut ks: BTreeSet<i64> = BTreeSet::new();
        for &(j, _) in mono.xs() {
            ks.insert(j as i64);
            ks.insert(m - j as i64);
        }
        if m <= 0 {
            ks.extend(m..=0);
        }
        let single = MultiPoly::term(mono.clone(), Rational::one());
        let mut out = MultiPoly::zero();
        for k in ks {
            let (first, second) = if k > 0 { (k, m - k) } else { (m - k, k) };
            let image = h_on(second, &h_on(first, &single));
            out = out.add(&image);
        }
        out.scale(&half)
    });
    FockPoly { inner }
}

/// The derivation `𝒟` with `𝒟y = y x_1`, `𝒟x_j = x_{j+1}`.
pub fn fock_derivation(p: &FockPoly) -> FockPoly {
    let inner = p.inner.map_monomials(|mono| {
        let mut out = MultiPoly::zero();
        let mut with_x1 = mono.clone();
        with_x1.bump_x(1, 1);
        out.add_term(with_x1, Rational::one());
        for &(j, e) in mono.xs() {
            let mut m2 = mono.clone();
            m2.bump_x(j, -1);
            m2.bump_x(j + 1, 1);
            out.add_term(m2, int(e as i64));
        }
        out
    });
    FockPoly { inner }
}

/// `L(0)` eigenvalue `1/2 + sum j m_j`; fails unless every term has the
/// same weight (and on zero).
pub fn weight(p: &FockPoly) -> Result<Rational> {
    let mut weights = p.inner.terms().map(|(m, _)| m.x_weight());
    let first = weights.next().ok_or(Error::NotHomogeneous)?;
    if weights.any(|w| w != first) {
        return Err(Error::NotHomogeneous);
    }
    Ok(rat(1, 2) + int(first as i64))
}

/// Every monomial `y * prod x_j^{m_j}` with `sum j m_j = n`.
pub fn monomials_of_weight(n: u32) -> Vec<FockPoly> {
    fn parts(rest: u32, max_part: u32, acc: &mut Vec<(u32, u32)>, out: &mut Vec<FockPoly>) {
        if rest == 0 {
            out.push(FockPoly::monomial(acc));
            return;
        }
        for j in (1..=max_part.min(rest)).rev() {
            for e in 1..=rest / j {
                acc.push((j, e));
                parts(rest - j * e, j - 1, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    parts(n, n, &mut Vec::new(), &mut out);
    out
}

/// All basis monomials of weight at most `max + 1/2`.
pub fn monomials_up_to_weight(max: u32) -> Vec<FockPoly> {
    (0..=max).flat_map(monomials_of_weight).collect()
}

/// `L(-1)^n y`.
pub fn ladder_vector(n: usize) -> FockPoly {
    (0..n).fold(FockPoly::vacuum(), |acc, _| l_op(-1, &acc))
}

impl FockPoly {
    /// Coefficient ratio `self = c * other` if it exists.
    pub fn ratio_to(&self, other: &Self) -> Option<Rational> {
        if other.is_zero() {
            return self.is_zero().then(Rational::zero);
        }
        let (m, c) = other.inner.terms().next()?;
        let k = self.inner.coeff(m) / c;
        (other.scale(&k) == *self).then_some(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bracket(a: i64, b: i64, p: &FockPoly, op: fn(i64, &FockPoly) -> FockPoly) -> FockPoly {
        op(a, &op(b, p)).sub(&op(b, &op(a, p)))
    }

    #[test]
    fn heisenberg_generators() {
        let y = FockPoly::vacuum();
        assert_eq!(h_op(-1, &y), FockPoly::monomial(&[(1, 1)]));
        assert_eq!(h_op(1, &FockPoly::monomial(&[(1, 1)])), y);
        assert_eq!(h_op(0, &y), y);
        // h(-3) y = x_3 / 2!
        assert_eq!(h_op(-3, &y), FockPoly::monomial(&[(3, 1)]).scale(&rat(1, 2)));
        // h(2) x_2^2 = 2! * 2 x_2
        assert_eq!(
            h_op(2, &FockPoly::monomial(&[(2, 2)])),
            FockPoly::monomial(&[(2, 1)]).scale(&int(4))
        );
    }

    #[test]
    fn virasoro_low_examples() {
        let y = FockPoly::vacuum();
        assert_eq!(l_op(0, &y), y.scale(&rat(1, 2)));
        assert_eq!(l_op(-1, &y), FockPoly::monomial(&[(1, 1)]));
        assert_eq!(l_op(1, &FockPoly::monomial(&[(1, 1)])), y);
        assert!(l_op(1, &y).is_zero());
        assert!(l_op(2, &y).is_zero());
        // L(-2) y = (1/2) h(-1)^2 y + h(-2) h(0) y = x_1^2/2 + x_2
        let expected = FockPoly::monomial(&[(1, 2)])
            .scale(&rat(1, 2))
            .add(&FockPoly::monomial(&[(2, 1)]));
        assert_eq!(l_op(-2, &y), expected);
    }

    #[test]
    fn weights() {
        assert_eq!(weight(&FockPoly::vacuum()).unwrap(), rat(1, 2));
        assert_eq!(weight(&FockPoly::monomial(&[(1, 1), (3, 1)])).unwrap(), rat(9, 2));
        assert_eq!(weight(&FockPoly::monomial(&[(2, 2)])).unwrap(), rat(9, 2));
        let mixed = FockPoly::vacuum().add(&FockPoly::monomial(&[(1, 1)]));
        assert_eq!(weight(&mixed), Err(Error::NotHomogeneous));
        assert_eq!(weight(&FockPoly::zero()), Err(Error::NotHomogeneous));
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=8).map(|n| monomials_of_weight(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        for n in 0..=8 {
            for p in monomials_of_weight(n) {
                assert_eq!(weight(&p).unwrap(), rat(1, 2) + int(n as i64));
            }
        }
    }

    #[test]
    fn small_window_brackets() {
        for p in monomials_up_to_weight(4) {
            for a in -2..=2i64 {
                for b in -2..=2i64 {
                    let lhs = bracket(a, b, &p, l_op);
                    let central = if a + b == 0 { rat(a * a * a - a, 12) } else { int(0) };
                    let rhs = l_op(a + b, &p).scale(&int(a - b)).add(&p.scale(&central));
                    assert_eq!(lhs, rhs, "[L({a}), L({b})] on {p}");
                    let heis = bracket(a, b, &p, h_op);
                    let expected = if a + b == 0 { p.scale(&int(a)) } else { FockPoly::zero() };
                    assert_eq!(heis, expected);
                }
            }
        }
    }

    #[test]
    fn l_minus_one_is_the_derivation() {
        for p in monomials_up_to_weight(6) {
            assert_eq!(l_op(-1, &p), fock_derivation(&p));
            let via_ring = FockPoly::from_multipoly(
                &p.to_multipoly().derivation_d().unwrap().collapse_y(),
            )
            .unwrap();
            assert_eq!(via_ring, fock_derivation(&p));
        }
    }

    #[test]
    fn embedding_round_trip() {
        let p = FockPoly::monomial(&[(1, 2), (4, 1)]).add(&FockPoly::vacuum().scale(&rat(3, 7)));
        assert_eq!(FockPoly::from_multipoly(&p.to_multipoly()).unwrap(), p);
        assert!(FockPoly::from_multipoly(&MultiPoly::x(1)).is_err());
    }
}
