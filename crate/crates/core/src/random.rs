//! Seeded generators for small random test inputs. Numerators lie in
//! `[-9, 9]` and denominators in `[1, 9]`, which keeps intermediate
//! rationals manageable.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly_ring::{Monomial, MultiPoly};
use crate::rational::{rat, Rational};
use crate::series::TruncatedSeries;
use crate::univar::UnivarPoly;

const BOUND: i64 = 9;

pub struct Sampler {
    rng: ChaCha8Rng,
}

/// FNV-1a; stable across platforms and toolchains, unlike `DefaultHasher`.
fn tag_hash(tag: &str) -> u64 {
    tag.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// An independent stream per tag, so entries don't perturb each other.
    pub fn for_tag(seed: u64, tag: &str) -> Self {
        Self::new(seed ^ tag_hash(tag))
    }

    pub fn rational(&mut self) -> Rational {
        rat(self.rng.random_range(-BOUND..=BOUND), self.rng.random_range(1..=BOUND))
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn series(&mut self, order: usize) -> TruncatedSeries {
        TruncatedSeries::new((0..=order).map(|_| self.rational()).collect())
    }

    /// Nonzero constant term.
    pub fn unit_series(&mut self, order: usize) -> TruncatedSeries {
        let mut c: Vec<Rational> = (0..=order).map(|_| self.rational()).collect();
        c[0] = self.nonzero_rational();
        TruncatedSeries::new(c)
    }

    /// Zero constant term, nonzero linear term; `order >= 1`.
    pub fn delta_series(&mut self, order: usize) -> TruncatedSeries {
        let order = order.max(1);
        let mut c: Vec<Rational> = (0..=order).map(|_| self.rational()).collect();
        c[0] = Rational::zero();
        c[1] = self.nonzero_rational();
        TruncatedSeries::new(c)
    }

    pub fn poly(&mut self, degree: usize) -> UnivarPoly {
        UnivarPoly::new((0..=degree).map(|_| self.rational()).collect())
    }

    /// A sum of `terms` monomials in `y_0..y_2`, `x_1..x_3`, each of total
    /// degree at most 2.
    pub fn multipoly(&mut self, terms: usize) -> MultiPoly {
        let mut p = MultiPoly::zero();
        for _ in 0..terms {
            let mut m = Monomial::one();
            for _ in 0..self.rng.random_range(0..=2) {
                if self.rng.random_bool(0.5) {
                    m.bump_y(self.rng.random_range(0..=2), 1);
                } else {
                    m.bump_x(self.rng.random_range(1..=3), 1);
                }
            }
            p.add_term(m, self.nonzero_rational());
        }
        p
    }

    pub fn index(&mut self, range: std::ops::RangeInclusive<i64>) -> i64 {
        self.rng.random_range(range)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn same_seed_same_stream() {
        let a: Vec<_> = (0..5).map(|_| Sampler::for_tag(7, "FAA").series(4)).collect();
        let b: Vec<_> = (0..5).map(|_| Sampler::for_tag(7, "FAA").series(4)).collect();
        assert_eq!(a, b);
        assert_ne!(Sampler::for_tag(7, "FAA").series(8), Sampler::for_tag(7, "FDBU").series(8));
    }

    #[test]
    fn bounds_and_shapes() {
        let mut s = Sampler::new(1);
        for _ in 0..200 {
            let r = s.rational();
            assert!(r.numer().abs() <= 9.into() && *r.denom() <= 9.into());
        }
        assert!(s.delta_series(6).is_delta());
        assert!(s.unit_series(6).is_unit());
        assert!(s.poly(4).coeffs().len() <= 5);
    }
}
