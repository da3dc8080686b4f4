//! The umbral pairing, attached umbral sequences `B_n(x)`, the umbral
//! operator `θ_B`, the umbral shift `D_B`, the generalized shift `D^A_B`,
//! and exact adjointness checks.
//!
//! Conventions follow the "attached" indexing: the sequence attached to a
//! delta series `B(w)` is defined by `e^{xB(w)} = sum B_n(x) w^n / n!`.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::genseries::GenSeries;
use crate::poly_ring::MultiPoly;
use crate::rational::{factorial_q, Rational};
use crate::series::TruncatedSeries;
use crate::univar::UnivarPoly;

fn require_order(series: &TruncatedSeries, needed: usize) -> Result<()> {
    if series.order() < needed {
        Err(Error::OrderTooSmall { needed, available: series.order() })
    } else {
        Ok(())
    }
}

fn require_delta(b: &TruncatedSeries) -> Result<()> {
    if b.is_delta() {
        Ok(())
    } else {
        Err(Error::NotDeltaSeries)
    }
}

/// A series `A(v)` acting on `C[x]` by `x^n ↦ A_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFunctional(pub TruncatedSeries);

impl LinearFunctional {
    pub fn apply(&self, p: &UnivarPoly) -> Result<Rational> {
        pairing(&self.0, p)
    }
}

/// `<A(v) | p(x)> = sum p_n A_n`.
pub fn pairing(a: &TruncatedSeries, p: &UnivarPoly) -> Result<Rational> {
    if let Some(d) = p.degree() {
        require_order(a, d)?;
    }
    Ok(p.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(n, c)| c * a.egf(n))
        .sum())
}

/// Coefficientwise pairing against a `w`-series of polynomials.
pub fn pairing_gen(a: &TruncatedSeries, g: &GenSeries<UnivarPoly>) -> Result<TruncatedSeries> {
    Ok(TruncatedSeries::new(
        g.coeffs().iter().map(|p| pairing(a, p)).collect::<Result<_>>()?,
    ))
}

/// Expansion of `A(x B(w))` in `w` to the given order.
pub fn compose_xb(
    a: &TruncatedSeries,
    b: &TruncatedSeries,
    order: usize,
) -> Result<GenSeries<UnivarPoly>> {
    if !b.coeff(0).is_zero() {
        return Err(Error::InnerConstantTerm);
    }
    require_order(a, order)?;
    require_order(b, order)?;
    let b = b.truncate(order);
    let mut out = vec![UnivarPoly::zero(); order + 1];
    let mut power = TruncatedSeries::one(order);
    for m in 0..=order {
        let am = a.coeff(m);
        if !am.is_zero() {
            for (k, slot) in out.iter_mut().enumerate() {
                let c = power.coeff(k);
                if !c.is_zero() {
                    *slot = slot.add(&UnivarPoly::monomial(m, &am * c));
                }
            }
        }
        power = power.mul(&b);
    }
    Ok(GenSeries::new(out))
}

/// `e^{x B(w)}` expanded to the given order in `w`.
pub fn exp_xb(b: &TruncatedSeries, order: usize) -> Result<GenSeries<UnivarPoly>> {
    compose_xb(&TruncatedSeries::exp_t(order), b, order)
}

/// The attached umbral polynomials `B_0(x) .. B_N(x)` of a delta series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UmbralBasis {
    polys: Vec<UnivarPoly>,
}

impl UmbralBasis {
    /// Basis up to and including degree `max_degree`.
    pub fn new(b: &TruncatedSeries, max_degree: usize) -> Result<Self> {
        require_delta(b)?;
        require_order(b, max_degree)?;
        let expansion = exp_xb(b, max_degree)?;
        let polys = expansion
            .coeffs()
            .iter()
            .enumerate()
            .map(|(n, p)| p.scale(&factorial_q(n)))
            .collect();
        Ok(Self { polys })
    }

    pub fn max_degree(&self) -> usize {
        self.polys.len() - 1
    }

    /// `B_n(x)`; zero for `n < 0`.
    pub fn get(&self, n: i64) -> UnivarPoly {
        if n < 0 {
            UnivarPoly::zero()
        } else {
            self.polys[n as usize].clone()
        }
    }

    pub fn polys(&self) -> &[UnivarPoly] {
        &self.polys
    }

    /// Coordinates `c_n` with `p = sum c_n B_n`, by back-substitution on
    /// the triangular change of basis.
    pub fn expand(&self, p: &UnivarPoly) -> Result<Vec<Rational>> {
        let Some(deg) = p.degree() else {
            return Ok(Vec::new());
        };
        if deg > self.max_degree() {
            return Err(Error::OrderTooSmall { needed: deg, available: self.max_degree() });
        }
        let mut rest = p.clone();
        let mut coords = vec![Rational::zero(); deg + 1];
        for n in (0..=deg).rev() {
            let c = rest.coeff(n) / self.polys[n].leading_coeff();
            if !c.is_zero() {
                rest = rest.sub(&self.polys[n].scale(&c));
            }
            coords[n] = c;
        }
        debug_assert!(rest.is_zero());
        Ok(coords)
    }

    /// `sum c_n image(n)`.
    pub fn map_linear(
        &self,
        p: &UnivarPoly,
        mut image: impl FnMut(usize) -> Result<UnivarPoly>,
    ) -> Result<UnivarPoly> {
        let mut out = UnivarPoly::zero();
        for (n, c) in self.expand(p)?.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&image(n)?.scale(c));
            }
        }
        Ok(out)
    }
}

/// `B_n(x) = n! [w^n] e^{x B(w)}`.
pub fn umbral_sequence(b: &TruncatedSeries, n: usize) -> Result<UnivarPoly> {
    Ok(UmbralBasis::new(b, n)?.get(n as i64))
}

/// The umbral operator `θ_B`: `x^n ↦ B_n(x)`.
pub fn theta(b: &TruncatedSeries, p: &UnivarPoly) -> Result<UnivarPoly> {
    let basis = UmbralBasis::new(b, p.degree().unwrap_or(0))?;
    let mut out = UnivarPoly::zero();
    for (n, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            out = out.add(&basis.polys[n].scale(c));
        }
    }
    Ok(out)
}

/// The umbral shift `D_B`: `B_n ↦ B_{n+1}`.
pub fn shift_d(b: &TruncatedSeries, p: &UnivarPoly) -> Result<UnivarPoly> {
    let basis = UmbralBasis::new(b, p.degree().unwrap_or(0) + 1)?;
    basis.map_linear(p, |n| Ok(basis.get(n as i64 + 1)))
}

/// The generalized shift `D^A_B`: `B_n(x) ↦ ψ_A ∘ χ_B (D^{n+1} y_0)`.
pub fn gen_shift_dab(
    a: &TruncatedSeries,
    b: &TruncatedSeries,
    p: &UnivarPoly,
) -> Result<UnivarPoly> {
    let deg = p.degree().unwrap_or(0);
    let basis = UmbralBasis::new(b, deg + 1)?;
    require_order(a, deg + 1)?;
    let mut images = Vec::with_capacity(deg + 1);
    let mut current = MultiPoly::y(0)?;
    for _ in 0..=deg {
        current = current.derivation_d()?;
        images.push(current.chi_b(b)?.psi_a(a)?.to_univar()?);
    }
    basis.map_linear(p, |n| Ok(images[n].clone()))
}

/// Which adjoint pair to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AdjointKind {
    /// Multiplication by `q(x)` against `q(d/dv)`.
    Mul,
    /// `F(d/dx)` against multiplication by `F(v)`.
    Diff,
    /// `θ_B` against the substitution `S_B: g(v) ↦ g(B(v))`.
    Subst,
    /// `D_B` against `B*(v) ∘ d/dv`.
    Shift,
}

impl AdjointKind {
    pub const ALL: [AdjointKind; 4] = [Self::Mul, Self::Diff, Self::Subst, Self::Shift];

    pub fn tag(self) -> &'static str {
        match self {
            Self::Mul => "ADJ-MUL",
            Self::Diff => "ADJ-DIFF",
            Self::Subst => "ADJ-SUBST",
            Self::Shift => "ADJ-SHIFT",
        }
    }
}

impl fmt::Display for AdjointKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for AdjointKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.to_ascii_uppercase();
        let bare = upper.strip_prefix("ADJ-").unwrap_or(&upper);
        match bare {
            "MUL" => Ok(Self::Mul),
            "DIFF" => Ok(Self::Diff),
            "SUBST" => Ok(Self::Subst),
            "SHIFT" => Ok(Self::Shift),
            _ => Err(Error::UnknownIdentityTag(s.to_string())),
        }
    }
}

/// Outcome of [`adjoint_report`]: the first basis degree where the two
/// sides disagree, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointReport {
    pub kind: AdjointKind,
    pub degree: usize,
    pub failure: Option<(usize, Rational, Rational)>,
}

impl AdjointReport {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks `<φ* A | x^k> = <A | φ x^k>` for `k = 0 ..= degree`.
///
/// `b` parametrizes the operator: for [`AdjointKind::Mul`] its truncation
/// to `degree` gives the multiplier polynomial `q(x) = sum b_k x^k`; for
/// [`AdjointKind::Diff`] it is the symbol `F`; for the other two it is the
/// delta series `B`.
pub fn adjoint_report(
    kind: AdjointKind,
    a: &TruncatedSeries,
    b: &TruncatedSeries,
    degree: usize,
) -> Result<AdjointReport> {
    let sides: Vec<(Rational, Rational)> = match kind {
        AdjointKind::Mul => {
            let q = UnivarPoly::new(b.truncate(degree).coeffs().to_vec());
            let qdeg = q.degree().unwrap_or(0);
            require_order(a, degree + qdeg)?;
            // q(d/dv) A = sum q_i A^{(i)}
            let mut lhs_series = TruncatedSeries::zero(degree);
            for (i, qi) in q.coeffs().iter().enumerate() {
                let term = a.shift_egf(i as i64).truncate(degree).scale(qi);
                lhs_series = &lhs_series + &term;
            }
            (0..=degree)
                .map(|k| {
                    let xk = UnivarPoly::monomial(k, Rational::from_integer(1.into()));
                    Ok((lhs_series.egf(k), pairing(a, &q.mul(&xk))?))
                })
                .collect::<Result<_>>()?
        }
        AdjointKind::Diff => {
            require_order(a, degree)?;
            require_order(b, degree)?;
            let lhs_series = b.mul(a);
            (0..=degree)
                .map(|k| {
                    // F(d/dx) x^k = sum_i f_i (d/dx)^i x^k
                    let mut image = UnivarPoly::zero();
                    let mut deriv = UnivarPoly::monomial(k, Rational::from_integer(1.into()));
                    for i in 0..=k {
                        image = image.add(&deriv.scale(&b.coeff(i)));
                        deriv = deriv.derivative();
                    }
                    Ok((lhs_series.egf(k), pairing(a, &image)?))
                })
                .collect::<Result<_>>()?
        }
        AdjointKind::Subst => {
            require_delta(b)?;
            require_order(a, degree)?;
            let basis = UmbralBasis::new(b, degree)?;
            let lhs_series = a.compose(b)?;
            (0..=degree)
                .map(|k| Ok((lhs_series.egf(k), pairing(a, &basis.get(k as i64))?)))
                .collect::<Result<_>>()?
        }
        AdjointKind::Shift => {
            require_delta(b)?;
            require_order(b, degree + 1)?;
            require_order(a, degree + 1)?;
            let lhs_series = b.b_star()?.mul(&a.derivative());
            (0..=degree)
                .map(|k| {
                    let xk = UnivarPoly::monomial(k, Rational::from_integer(1.into()));
                    Ok((lhs_series.egf(k), pairing(a, &shift_d(b, &xk)?)?))
                })
                .collect::<Result<_>>()?
        }
    };
    let failure = sides
        .into_iter()
        .enumerate()
        .find(|(_, (l, r))| l != r)
        .map(|(k, (l, r))| (k, l, r));
    Ok(AdjointReport { kind, degree, failure })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn series(cs: &[i64]) -> TruncatedSeries {
        TruncatedSeries::new(cs.iter().map(|&c| int(c)).collect())
    }

    fn poly(cs: &[i64]) -> UnivarPoly {
        UnivarPoly::new(cs.iter().map(|&c| int(c)).collect())
    }

    fn exp_minus_one(order: usize) -> TruncatedSeries {
        &TruncatedSeries::exp_t(order) - &TruncatedSeries::one(order)
    }

    #[test]
    fn pairing_examples() {
        for k in 0..6usize {
            let vk = TruncatedSeries::new(
                (0..=6).map(|n| if n == k { factorial_q(k).recip() } else { int(0) }).collect(),
            );
            for n in 0..6usize {
                let expected = if k == n { int(1) } else { int(0) };
                assert_eq!(pairing(&vk, &UnivarPoly::monomial(n, int(1))).unwrap(), expected);
            }
        }
        let e = TruncatedSeries::exp_t(5);
        assert_eq!(pairing(&e, &UnivarPoly::monomial(4, int(1))).unwrap(), int(1));
        assert_eq!(
            pairing(&e, &UnivarPoly::monomial(6, int(1))),
            Err(Error::OrderTooSmall { needed: 6, available: 5 })
        );
        // <A | e^{xw}> = A(w)
        let a = series(&[2, -1, 3, 7, 1]);
        let exw = exp_xb(&TruncatedSeries::identity(4), 4).unwrap();
        assert_eq!(pairing_gen(&a, &exw).unwrap(), a);
    }

    #[test]
    fn umbral_sequence_examples() {
        for n in 0..6 {
            assert_eq!(
                umbral_sequence(&TruncatedSeries::identity(6), n).unwrap(),
                UnivarPoly::monomial(n, int(1))
            );
        }
        assert_eq!(umbral_sequence(&exp_minus_one(4), 2).unwrap(), poly(&[0, 1, 1]));
        assert_eq!(umbral_sequence(&exp_minus_one(4), 0).unwrap(), poly(&[1]));
        assert_eq!(umbral_sequence(&series(&[1, 1]), 0), Err(Error::NotDeltaSeries));
        assert!(matches!(
            umbral_sequence(&exp_minus_one(2), 3),
            Err(Error::OrderTooSmall { .. })
        ));
    }

    #[test]
    fn theta_examples() {
        let p = poly(&[3, 0, -2, 5]);
        assert_eq!(theta(&TruncatedSeries::identity(4), &p).unwrap(), p);
        assert_eq!(theta(&exp_minus_one(3), &poly(&[0, 0, 1])).unwrap(), poly(&[0, 1, 1]));
        assert_eq!(theta(&series(&[0, 3, 1]), &UnivarPoly::one()).unwrap(), UnivarPoly::one());
    }

    #[test]
    fn shift_examples() {
        let p = poly(&[1, -2, 0, 4]);
        assert_eq!(
            shift_d(&TruncatedSeries::identity(5), &p).unwrap(),
            p.mul(&UnivarPoly::x())
        );
        assert_eq!(shift_d(&exp_minus_one(4), &UnivarPoly::one()).unwrap(), UnivarPoly::x());
        assert_eq!(
            shift_d(&exp_minus_one(4), &poly(&[0, 1, 1])).unwrap(),
            poly(&[0, 1, 3, 1])
        );
        assert!(matches!(
            shift_d(&exp_minus_one(3), &poly(&[0, 0, 0, 1])),
            Err(Error::OrderTooSmall { .. })
        ));
    }

    #[test]
    fn generalized_shift_examples() {
        let b = series(&[0, 2, -1, 3, 1, 1]);
        let e = TruncatedSeries::exp_t(5);
        let p = poly(&[4, 0, -1, 2]);
        assert_eq!(gen_shift_dab(&e, &b, &p).unwrap(), shift_d(&b, &p).unwrap());
        let t = TruncatedSeries::identity(6);
        for n in 0..5 {
            assert_eq!(
                gen_shift_dab(&TruncatedSeries::exp_t(6), &t, &UnivarPoly::monomial(n, int(1))).unwrap(),
                UnivarPoly::monomial(n + 1, int(1))
            );
        }
        // D^A_B 1 = A_1 B_1 x
        let a = TruncatedSeries::new(vec![int(1), rat(5, 2), int(3)]);
        let got = gen_shift_dab(&a, &b, &UnivarPoly::one()).unwrap();
        assert_eq!(got, UnivarPoly::monomial(1, a.egf(1) * b.egf(1)));
    }

    #[test]
    fn adjoint_tags_parse() {
        assert_eq!("ADJ-SUBST".parse::<AdjointKind>().unwrap(), AdjointKind::Subst);
        assert_eq!("shift".parse::<AdjointKind>().unwrap(), AdjointKind::Shift);
        assert_eq!(
            "ADJ-FOO".parse::<AdjointKind>(),
            Err(Error::UnknownIdentityTag("ADJ-FOO".into()))
        );
    }

    #[test]
    fn adjoints_hold_on_fixed_inputs() {
        let a = TruncatedSeries::new((0..=10).map(|n| rat(n * n - 3, n + 1)).collect());
        let t = TruncatedSeries::identity(10);
        assert!(adjoint_report(AdjointKind::Subst, &a, &t, 8).unwrap().holds());
        assert!(adjoint_report(AdjointKind::Subst, &a, &exp_minus_one(10), 8).unwrap().holds());
        let geometric = TruncatedSeries::new((0..=10).map(|n| int((n > 0) as i64)).collect());
        assert!(adjoint_report(AdjointKind::Shift, &a, &geometric, 8).unwrap().holds());
        let q = series(&[1, -2, 0, 3]);
        assert!(adjoint_report(AdjointKind::Mul, &a, &q, 6).unwrap().holds());
        assert!(adjoint_report(AdjointKind::Diff, &a, &exp_minus_one(10), 8).unwrap().holds());
    }
}
