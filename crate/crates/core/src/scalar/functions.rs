use super::{EpsScalar, Rational};
use crate::error::Result;

/// `g(u,v) = c/(u-v)`.
pub fn g(u: &EpsScalar, v: &EpsScalar, c: &Rational) -> Result<EpsScalar> {
    EpsScalar::from(c.clone()).div(&u.sub(v))
}

/// `f(u,v) = 1 + g(u,v)`.
pub fn f(u: &EpsScalar, v: &EpsScalar, c: &Rational) -> Result<EpsScalar> {
    Ok(EpsScalar::one().add(&g(u, v, c)?))
}

/// `h(u,v) = f(u,v)/g(u,v) = (u-v+c)/c`. Defined for `u = v` as well.
pub fn h(u: &EpsScalar, v: &EpsScalar, c: &Rational) -> Result<EpsScalar> {
    u.sub(v).add(&EpsScalar::from(c.clone())).div(&EpsScalar::from(c.clone()))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PairFn {
    G,
    F,
    H,
}

impl PairFn {
    pub fn eval(self, u: &EpsScalar, v: &EpsScalar, c: &Rational) -> Result<EpsScalar> {
        match self {
            PairFn::G => g(u, v, c),
            PairFn::F => f(u, v, c),
            PairFn::H => h(u, v, c),
        }
    }
}

/// Product of `kind(x, y)` over every `x` in `left` and `y` in `right`.
pub fn set_product(
    kind: PairFn,
    left: &[EpsScalar],
    right: &[EpsScalar],
    c: &Rational,
) -> Result<EpsScalar> {
    let mut acc = EpsScalar::one();
    for x in left {
        for y in right {
            acc = acc.mul(&kind.eval(x, y, c)?);
        }
    }
    Ok(acc)
}
