//! Exponential generating function of the higher derivatives of a composite.
//!
//! Both sides of
//!
//! ```text
//! e^{w d/dx} f(g(x)) = sum_n f^{(n)}(g(x))/n! (sum_{m>=1} g^{(m)}(x) w^m/m!)^n
//! ```
//!
//! are series in two variables. They are stored as [`Graded`] values: the
//! coefficient of `w^k` is a series in `x` known to order `N - k`, i.e. the
//! truncation is by total degree.

use num_traits::Zero;

use crate::error::Result;
use crate::rational::factorial_q;
use crate::series::TruncatedSeries;

/// Series in `w` whose `w^k` coefficient is a series in `x` of order `N - k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graded {
    rows: Vec<TruncatedSeries>,
}

impl Graded {
    pub fn zero(order: usize) -> Self {
        Self {
            rows: (0..=order).map(|k| TruncatedSeries::zero(order - k)).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.rows.len() - 1
    }

    /// Coefficient of `w^k`.
    pub fn row(&self, k: usize) -> &TruncatedSeries {
        &self.rows[k]
    }

    /// Coefficient of `w^k x^j`.
    pub fn coeff(&self, k: usize, j: usize) -> num_rational::BigRational {
        self.rows[k].coeff(j)
    }

    fn from_rows(order: usize, rows: impl IntoIterator<Item = TruncatedSeries>) -> Self {
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(k, r)| r.truncate(order - k))
            .collect::<Vec<_>>();
        debug_assert_eq!(rows.len(), order + 1);
        Self { rows }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::from_rows(order, (0..=order).map(|k| &self.rows[k] + &other.rows[k]))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = Self::zero(order);
        for i in 0..=order {
            if self.rows[i].is_zero() {
                continue;
            }
            for j in 0..=order - i {
                let prod = self.rows[i].mul(&other.rows[j]).truncate(order - i - j);
                out.rows[i + j] = &out.rows[i + j] + &prod;
            }
        }
        out
    }

    /// Multiplies every row by a series in `x`. Rows that are identically
    /// zero stay zero at their full order.
    pub fn mul_x_series(&self, s: &TruncatedSeries) -> Self {
        let order = self.order();
        Self::from_rows(
            order,
            self.rows.iter().enumerate().map(|(k, r)| {
                if r.is_zero() {
                    TruncatedSeries::zero(order - k)
                } else {
                    r.mul(s)
                }
            }),
        )
    }

    /// Mismatch location `(k, j)` of the first coefficient of `w^k x^j` that
    /// differs, if any.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        let order = self.order().min(other.order());
        for k in 0..=order {
            for j in 0..=order - k {
                if self.coeff(k, j) != other.coeff(k, j) {
                    return Some((k, j));
                }
            }
        }
        None
    }
}

/// Left side: `e^{w d/dx} f(g(x))`, i.e. row `k` is `(f∘g)^{(k)} / k!`.
pub fn taylor_of_composite(f: &TruncatedSeries, g: &TruncatedSeries) -> Result<Graded> {
    let h = f.compose(g)?;
    let order = h.order();
    let mut rows = Vec::with_capacity(order + 1);
    let mut current = h;
    for k in 0..=order {
        rows.push(current.scale(&factorial_q(k).recip()));
        current = current.derivative();
    }
    Ok(Graded::from_rows(order, rows))
}

/// Right side: `sum_n f^{(n)}(g(x))/n! * G^n` with
/// `G = sum_{m>=1} g^{(m)}(x) w^m / m!`.
pub fn faa_expansion(f: &TruncatedSeries, g: &TruncatedSeries) -> Result<Graded> {
    let order = f.order().min(g.order());
    let f = f.truncate(order);
    let g = g.truncate(order);
    if !g.coeff(0).is_zero() {
        return Err(crate::Error::InnerConstantTerm);
    }

    let inner = Graded::from_rows(
        order,
        (0..=order).map(|m| {
            if m == 0 {
                TruncatedSeries::zero(order)
            } else {
                g.shift_egf(m as i64).scale(&factorial_q(m).recip())
            }
        }),
    );

    let mut total = Graded::zero(order);
    let mut power = Graded::from_rows(order, (0..=order).map(|k| {
        if k == 0 {
            TruncatedSeries::one(order)
        } else {
            TruncatedSeries::zero(order - k)
        }
    }));
    for n in 0..=order {
        let outer = f
            .shift_egf(n as i64)
            .compose(&g.truncate(order - n))?
            .scale(&factorial_q(n).recip());
        total = total.add(&power.mul_x_series(&outer));
        power = power.mul(&inner);
    }
    Ok(total)
}
