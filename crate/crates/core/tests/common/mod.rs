#![allow(dead_code)]

use proptest::prelude::*;
use superbethe_core::{EpsScalar, Rational};

pub fn q(n: i64) -> EpsScalar {
    EpsScalar::from_int(n)
}

pub fn qq(p: i64, d: i64) -> EpsScalar {
    EpsScalar::from(Rational::new(p, d).unwrap())
}

pub fn rat(p: i64, d: i64) -> Rational {
    Rational::new(p, d).unwrap()
}

/// Small rationals p/q with |p| ≤ 64, 1 ≤ q ≤ 8.
pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-64i64..=64, 1i64..=8).prop_map(|(p, d)| Rational::new(p, d).unwrap())
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |r| !r.is_zero())
}

/// True when no two values coincide or differ by ±c.
pub fn generic(values: &[Rational], c: &Rational) -> bool {
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            let d = a - b;
            if d.is_zero() || d == *c || d == -c {
                return false;
            }
        }
    }
    true
}
