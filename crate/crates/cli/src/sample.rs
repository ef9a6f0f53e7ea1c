//! Seeded draws of small rationals.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use superbethe_core::Rational;

pub const MAX_NUM: i64 = 64;
pub const MAX_DEN: i64 = 64;

/// All randomness of a run comes from one of these.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// `p/q` with `|p| ≤ 64`, `1 ≤ q ≤ 64`.
    pub fn rational(&mut self) -> Rational {
        let p = self.rng.gen_range(-MAX_NUM..=MAX_NUM);
        let q = self.rng.gen_range(1..=MAX_DEN);
        Rational::new(p, q).expect("q is positive")
    }

    pub fn nonzero(&mut self) -> Rational {
        loop {
            let x = self.rational();
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// `n` draws that are generic with respect to `avoid`, `c` and each other:
    /// no two differ by `0` or `±c`.
    pub fn generic(&mut self, n: usize, avoid: &[Rational], c: &Rational) -> Vec<Rational> {
        let mut taken: Vec<Rational> = avoid.to_vec();
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let x = self.rational();
            let clash = taken.iter().any(|y| {
                let d = &x - y;
                d.is_zero() || &d == c || d == -c
            });
            if !clash {
                taken.push(x.clone());
                out.push(x);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_bounded() {
        let a: Vec<Rational> = {
            let mut s = Sampler::new(7);
            (0..50).map(|_| s.rational()).collect()
        };
        let mut s = Sampler::new(7);
        let b: Vec<Rational> = (0..50).map(|_| s.rational()).collect();
        assert_eq!(a, b);
        for x in &a {
            assert!(x.numer().magnitude() <= &64u32.into());
            assert!(x.denom() <= &64.into());
        }
    }

    #[test]
    fn generic_draws_avoid_clashes() {
        let c = Rational::one();
        let avoid = [Rational::zero()];
        let xs = Sampler::new(3).generic(6, &avoid, &c);
        for (i, x) in xs.iter().enumerate() {
            for y in xs[i + 1..].iter().chain(&avoid) {
                let d = x - y;
                assert!(!d.is_zero() && d != c && d != -&c);
            }
        }
    }
}
