//! Exact rational scalars and the few combinatorial helpers built on them.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den`, reduced. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn factorial_q(n: usize) -> Rational {
    Rational::from_integer(factorial(n))
}

/// Ordinary binomial coefficient `C(n, k)` for `0 <= k <= n`, zero otherwise.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Generalized binomial `C(z, k) = z (z-1) ... (z-k+1) / k!` at a rational
/// top argument. Negative `k` gives zero.
pub fn binomial_q(z: &Rational, k: i64) -> Rational {
    if k < 0 {
        return Rational::zero();
    }
    let k = k as usize;
    let mut acc = Rational::one();
    for i in 0..k {
        acc *= z - int(i as i64);
    }
    acc / factorial_q(k)
}

/// Integer power of a rational, `0^0 = 1`.
pub fn pow(base: &Rational, exp: u32) -> Rational {
    num_traits::pow(base.clone(), exp as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials_match_pascal() {
        for n in 0..12usize {
            for k in 1..n {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
        assert_eq!(binomial(3, 5), BigInt::zero());
    }

    #[test]
    fn generalized_binomial_agrees_on_integers() {
        for n in 0..10i64 {
            for k in 0..=n {
                assert_eq!(
                    binomial_q(&int(n), k),
                    Rational::from_integer(binomial(n as usize, k as usize))
                );
            }
        }
        // C(-1/2, 2) = (-1/2)(-3/2)/2 = 3/8
        assert_eq!(binomial_q(&rat(-1, 2), 2), rat(3, 8));
        assert_eq!(binomial_q(&rat(7, 3), -1), int(0));
    }
}
