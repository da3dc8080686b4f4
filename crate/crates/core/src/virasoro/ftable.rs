//! Ladder coefficients `f_m(n)` with `L(m) L(-1)^n y = f_m(n) L(-1)^{n-m} y`,
//! the generalized attached umbral shifts `D_B(m)`, and the companion
//! Sheffer sequences `t_n`, `s_n`.

use num_traits::{One, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::rational::{binomial_q, factorial_q, int, rat, Rational};
use crate::series::TruncatedSeries;
use crate::umbral::UmbralBasis;
use crate::univar::UnivarPoly;

/// `f_m(n)` for `-1 <= m <= max_m`, `0 <= n <= max_n`, filled by
/// `f_m(n) = f_m(n-1) + (m+1) f_{m-1}(n-1)` from the boundary
/// `f_{-1}(n) = 1`, `f_0(0) = 1/2`, `f_m(0) = 0` for `m >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FTable {
    max_m: i64,
    max_n: usize,
    rows: Vec<Vec<Rational>>,
}

impl FTable {
    pub fn new(max_m: i64, max_n: usize) -> Result<Self> {
        if max_m < -1 {
            return Err(Error::IndexOutOfRange(format!("max m = {max_m} < -1")));
        }
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity((max_m + 2) as usize);
        rows.push(vec![Rational::one(); max_n + 1]);
        for m in 0..=max_m {
            let prev = rows.last().expect("row m - 1 exists");
            let mut row = Vec::with_capacity(max_n + 1);
            row.push(if m == 0 { rat(1, 2) } else { Rational::zero() });
            for n in 1..=max_n {
                row.push(&row[n - 1] + int(m + 1) * &prev[n - 1]);
            }
            rows.push(row);
        }
        Ok(Self { max_m, max_n, rows })
    }

    pub fn max_m(&self) -> i64 {
        self.max_m
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn get(&self, m: i64, n: usize) -> Result<&Rational> {
        if m < -1 || m > self.max_m || n > self.max_n {
            return Err(Error::IndexOutOfRange(format!("f_{m}({n})")));
        }
        Ok(&self.rows[(m + 1) as usize][n])
    }

    /// Row `m` as a slice over `n = 0 ..= max_n`.
    pub fn row(&self, m: i64) -> &[Rational] {
        &self.rows[(m + 1) as usize]
    }

    /// Rows `m`, columns `n`; exact rationals as `p/q` (integers bare).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m");
        for n in 0..=self.max_n {
            out.push_str(&format!(",{n}"));
        }
        out.push('\n');
        for m in -1..=self.max_m {
            out.push_str(&m.to_string());
            for v in self.row(m) {
                out.push_str(&format!(",{v}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<_> = (-1..=self.max_m)
            .map(|m| {
                json!({
                    "m": m,
                    "values": self.row(m).iter().map(ToString::to_string).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({ "max_m": self.max_m, "max_n": self.max_n, "rows": rows })
    }
}

/// `f_m(n)` from the recurrence.
pub fn f_rec(m: i64, n: i64) -> Result<Rational> {
    if m < -1 || n < 0 {
        return Err(Error::IndexOutOfRange(format!("f_{m}({n})")));
    }
    Ok(FTable::new(m, n as usize)?.get(m, n as usize)?.clone())
}

/// Closed form: `f_{-1} = 1`, otherwise
/// `f_m(n) = (1/2) n (n-1) ... (n-m+1) (2n - m + 1)`, at any rational `n`.
pub fn f_closed(m: i64, n: &Rational) -> Result<Rational> {
    match m {
        m if m < -1 => Err(Error::IndexOutOfRange(format!("f_{m}"))),
        -1 => Ok(Rational::one()),
        m => {
            let falling: Rational = (0..m).map(|i| n - int(i)).product();
            Ok(falling * (n * int(2) - int(m) + int(1)) * rat(1, 2))
        }
    }
}

/// Generalized attached umbral shift `D_B(m)`: `B_n ↦ f_m(n) B_{n-m}`, with
/// `B_k = 0` for `k < 0`. `m = -1` is the ordinary umbral shift.
pub fn gen_umbral_shift_m(b: &TruncatedSeries, m: i64, p: &UnivarPoly) -> Result<UnivarPoly> {
    if m < -1 {
        return Err(Error::IndexOutOfRange(format!("m = {m} < -1")));
    }
    let deg = p.degree().unwrap_or(0);
    let top = if m == -1 { deg + 1 } else { deg };
    let basis = UmbralBasis::new(b, top)?;
    let table = FTable::new(m, deg)?;
    basis.map_linear(p, |n| {
        let target = n as i64 - m;
        Ok(basis.get(target).scale(table.get(m, n)?))
    })
}

/// `(t_n(x), s_n(x))` with `t_n(x) = f_{n-1}(x + n)` and `s_n = t_n / n!`.
pub fn sheffer_ts(n: usize, x: &Rational) -> (Rational, Rational) {
    let t = f_closed(n as i64 - 1, &(x + int(n as i64))).expect("n - 1 >= -1");
    let s = &t / factorial_q(n);
    (t, s)
}

/// `s_n(x) = C(x+n+1, n) - (1/2) C(x+n, n-1)` via generalized binomials.
pub fn s_binomial(n: usize, x: &Rational) -> Rational {
    let n_i = n as i64;
    binomial_q(&(x + int(n_i + 1)), n_i) - binomial_q(&(x + int(n_i)), n_i - 1) * rat(1, 2)
}

/// `t_n(x) = (1/2)(x+2)(x+3)...(x+n)(2x+n+2)` for `n >= 1`.
pub fn t_product(n: usize, x: &Rational) -> Option<Rational> {
    if n == 0 {
        return None;
    }
    let n_i = n as i64;
    let prod: Rational = (2..=n_i).map(|k| x + int(k)).product();
    Some(prod * (x * int(2) + int(n_i + 2)) * rat(1, 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recurrence_examples() {
        assert_eq!(f_rec(-1, 5).unwrap(), int(1));
        assert_eq!(f_rec(0, 0).unwrap(), rat(1, 2));
        assert_eq!(f_rec(1, 4).unwrap(), int(16));
        assert!(matches!(f_rec(-2, 3), Err(Error::IndexOutOfRange(_))));
        assert!(matches!(f_rec(1, -1), Err(Error::IndexOutOfRange(_))));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(f_closed(2, &int(3)).unwrap(), int(15));
        assert_eq!(f_closed(3, &int(3)).unwrap(), int(12));
        assert_eq!(f_rec(2, 3).unwrap(), int(15));
        assert_eq!(f_rec(3, 3).unwrap(), int(12));
        for m in 1..=8 {
            assert_eq!(f_closed(m, &int(0)).unwrap(), int(0));
        }
    }

    #[test]
    fn listed_rows() {
        let table = FTable::new(7, 12).unwrap();
        for n in 0..=12i64 {
            let q = int(n);
            let nu = n as usize;
            assert_eq!(table.get(0, nu).unwrap(), &(int(n) + rat(1, 2)));
            assert_eq!(table.get(1, nu).unwrap(), &int(n * n));
            assert_eq!(table.get(2, nu).unwrap(), &(rat(1, 2) * int(n * (n - 1) * (2 * n - 1))));
            assert_eq!(table.get(3, nu).unwrap(), &int(n * (n - 1) * (n - 1) * (n - 2)));
            assert_eq!(
                table.get(4, nu).unwrap(),
                &(rat(1, 2) * int(n * (n - 1) * (n - 2) * (n - 3) * (2 * n - 3)))
            );
            assert_eq!(
                table.get(5, nu).unwrap(),
                &int(n * (n - 1) * (n - 2) * (n - 2) * (n - 3) * (n - 4))
            );
            assert_eq!(
                table.get(7, nu).unwrap(),
                &int(n * (n - 1) * (n - 2) * (n - 3) * (n - 3) * (n - 4) * (n - 5) * (n - 6))
            );
            assert_eq!(f_closed(6, &q).unwrap(), *table.get(6, nu).unwrap());
        }
    }

    #[test]
    fn csv_has_square_row() {
        let csv = FTable::new(3, 5).unwrap().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "m,0,1,2,3,4,5");
        assert_eq!(lines[1], "-1,1,1,1,1,1,1");
        assert_eq!(lines[2], "0,1/2,3/2,5/2,7/2,9/2,11/2");
        assert_eq!(lines[3], "1,0,1,4,9,16,25");
    }

    #[test]
    fn json_shape() {
        let v = FTable::new(1, 2).unwrap().to_json();
        assert_eq!(v["max_m"], 1);
        assert_eq!(v["rows"][1]["values"][0], "1/2");
        assert_eq!(v["rows"][2]["values"][2], "4");
    }

    #[test]
    fn generalized_shift_examples() {
        let b = TruncatedSeries::new(vec![int(0), int(1), rat(1, 2), rat(1, 6), rat(1, 24), rat(1, 120)]);
        let basis = UmbralBasis::new(&b, 5).unwrap();
        let p = UnivarPoly::new(vec![int(2), int(-1), int(3)]);
        assert_eq!(
            gen_umbral_shift_m(&b, -1, &p).unwrap(),
            crate::umbral::shift_d(&b, &p).unwrap()
        );
        for n in 0..5 {
            assert_eq!(
                gen_umbral_shift_m(&b, 0, &basis.get(n)).unwrap(),
                basis.get(n).scale(&(int(n) + rat(1, 2)))
            );
        }
        assert_eq!(gen_umbral_shift_m(&b, 1, &basis.get(2)).unwrap(), basis.get(1).scale(&int(4)));
        assert!(gen_umbral_shift_m(&b, 3, &basis.get(2)).unwrap().is_zero());
    }

    #[test]
    fn sheffer_examples() {
        assert_eq!(sheffer_ts(2, &int(1)).1, rat(9, 2));
        assert_eq!(s_binomial(2, &int(1)), rat(9, 2));
        assert_eq!(sheffer_ts(0, &int(-2)).0, int(1));
        assert_eq!(sheffer_ts(1, &int(-2)).0, rat(-1, 2));
        for n in 2..6 {
            assert_eq!(sheffer_ts(n, &int(-2)).0, int(0));
        }
        assert_eq!(t_product(1, &rat(1, 3)).unwrap(), sheffer_ts(1, &rat(1, 3)).0);
        assert_eq!(t_product(0, &int(0)), None);
    }
}
