use alloc::vec;
use core::fmt;

use super::poly::Poly;
use super::Rational;
use crate::error::{Error, Result};

/// Rational function of one formal infinitesimal `ε` with rational coefficients.
///
/// Stored in lowest terms with a monic denominator. Values free of `ε` take the
/// `Const` fast path, which keeps plain rational arithmetic cheap.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EpsScalar(Repr);

#[derive(Clone, PartialEq, Eq, Debug)]
enum Repr {
    Const(Rational),
    Frac { num: Poly, den: Poly },
}

impl EpsScalar {
    pub fn zero() -> Self {
        EpsScalar(Repr::Const(Rational::zero()))
    }

    pub fn one() -> Self {
        EpsScalar(Repr::Const(Rational::one()))
    }

    pub fn from_int(n: i64) -> Self {
        EpsScalar(Repr::Const(Rational::from_int(n)))
    }

    /// The infinitesimal itself.
    pub fn eps() -> Self {
        EpsScalar(Repr::Frac {
            num: Poly::from_coeffs(vec![Rational::zero(), Rational::one()]),
            den: Poly::constant(Rational::one()),
        })
    }

    /// Builds `num / den` from ascending coefficient lists.
    pub fn from_coeffs(num: &[Rational], den: &[Rational]) -> Result<Self> {
        Self::reduce(Poly::from_coeffs(num.to_vec()), Poly::from_coeffs(den.to_vec()))
    }

    fn reduce(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        if den.is_constant() {
            let inv = den.at_zero().recip()?;
            return Ok(Self::from_poly(num.scale(&inv)));
        }
        let gcd = num.gcd(&den);
        let (mut num, mut den) = if gcd.is_one() {
            (num, den)
        } else {
            (num.div_rem(&gcd).0, den.div_rem(&gcd).0)
        };
        let lead = den.lead().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.recip().unwrap();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        if den.is_one() {
            return Ok(Self::from_poly(num));
        }
        Ok(EpsScalar(Repr::Frac { num, den }))
    }

    fn from_poly(p: Poly) -> Self {
        if p.is_constant() {
            EpsScalar(Repr::Const(p.at_zero()))
        } else {
            EpsScalar(Repr::Frac { num: p, den: Poly::constant(Rational::one()) })
        }
    }

    fn parts(&self) -> (Poly, Poly) {
        match &self.0 {
            Repr::Const(c) => (Poly::constant(c.clone()), Poly::constant(Rational::one())),
            Repr::Frac { num, den } => (num.clone(), den.clone()),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match &self.0 {
            Repr::Const(c) => Some(c),
            Repr::Frac { .. } => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Const(c) if c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.0, Repr::Const(c) if c.is_one())
    }

    pub fn depends_on_eps(&self) -> bool {
        matches!(self.0, Repr::Frac { .. })
    }

    pub fn add(&self, other: &Self) -> Self {
        if let (Repr::Const(a), Repr::Const(b)) = (&self.0, &other.0) {
            return EpsScalar(Repr::Const(a + b));
        }
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (n1, d1) = self.parts();
        let (n2, d2) = other.parts();
        let r = if d1 == d2 {
            Self::reduce(n1.add(&n2), d1)
        } else {
            Self::reduce(n1.mul(&d2).add(&n2.mul(&d1)), d1.mul(&d2))
        };
        r.expect("denominators of reduced fractions are nonzero")
    }

    pub fn neg(&self) -> Self {
        match &self.0 {
            Repr::Const(c) => EpsScalar(Repr::Const(-c)),
            Repr::Frac { num, den } => EpsScalar(Repr::Frac { num: num.neg(), den: den.clone() }),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Const(a), Repr::Const(b)) => EpsScalar(Repr::Const(a * b)),
            (Repr::Const(a), _) => other.scale(a),
            (_, Repr::Const(b)) => self.scale(b),
            _ => {
                let (n1, d1) = self.parts();
                let (n2, d2) = other.parts();
                Self::reduce(n1.mul(&n2), d1.mul(&d2)).expect("nonzero denominators")
            }
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        match &self.0 {
            Repr::Const(c) => EpsScalar(Repr::Const(c * k)),
            Repr::Frac { num, den } => EpsScalar(Repr::Frac { num: num.scale(k), den: den.clone() }),
        }
    }

    pub fn recip(&self) -> Result<Self> {
        match &self.0 {
            Repr::Const(c) => Ok(EpsScalar(Repr::Const(c.recip()?))),
            Repr::Frac { num, den } => Self::reduce(den.clone(), num.clone()),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        match (&self.0, &other.0) {
            (Repr::Const(a), Repr::Const(b)) => Ok(EpsScalar(Repr::Const(a.checked_div(b)?))),
            (_, Repr::Const(b)) => Ok(self.scale(&b.recip()?)),
            _ => Ok(self.mul(&other.recip()?)),
        }
    }

    pub fn limit(&self) -> Result<Rational> {
        eps_limit(self)
    }
}

/// Value at `ε = 0` after cancelling common factors.
pub fn eps_limit(x: &EpsScalar) -> Result<Rational> {
    match &x.0 {
        Repr::Const(c) => Ok(c.clone()),
        Repr::Frac { num, den } => {
            let d0 = den.at_zero();
            if d0.is_zero() {
                return Err(Error::PoleAtZero);
            }
            Ok(num.at_zero().checked_div(&d0).unwrap())
        }
    }
}

impl From<Rational> for EpsScalar {
    fn from(r: Rational) -> Self {
        EpsScalar(Repr::Const(r))
    }
}

impl From<i64> for EpsScalar {
    fn from(n: i64) -> Self {
        EpsScalar::from_int(n)
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, p: &Poly) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        match k {
            0 => write!(f, "{c}")?,
            1 => write!(f, "({c})e")?,
            _ => write!(f, "({c})e^{k}")?,
        }
    }
    Ok(())
}

impl fmt::Display for EpsScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Const(c) => write!(f, "{c}"),
            Repr::Frac { num, den } => {
                write!(f, "(")?;
                write_poly(f, num)?;
                if !den.is_one() {
                    write!(f, ")/(")?;
                    write_poly(f, den)?;
                }
                write!(f, ")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn removable_singularity() {
        // (ε² + ε) / (2ε)
        let x = EpsScalar::from_coeffs(&[r(0), r(1), r(1)], &[r(0), r(2)]).unwrap();
        assert_eq!(eps_limit(&x).unwrap(), Rational::new(1, 2).unwrap());
    }

    #[test]
    fn constants_and_poles() {
        assert_eq!(eps_limit(&EpsScalar::from_int(5)).unwrap(), r(5));
        let pole = EpsScalar::eps().recip().unwrap();
        assert_eq!(eps_limit(&pole), Err(Error::PoleAtZero));
        assert_eq!(EpsScalar::zero().recip(), Err(Error::DivisionByZero));
    }

    #[test]
    fn cancellation_returns_to_const() {
        let e = EpsScalar::eps();
        let x = e.add(&EpsScalar::one()).mul(&e).div(&e).unwrap().sub(&e);
        assert_eq!(x, EpsScalar::one());
        assert!(!x.depends_on_eps());
    }

    #[test]
    fn canonical_equality() {
        // 2ε/(4ε+2) and ε/(2ε+1)
        let a = EpsScalar::from_coeffs(&[r(0), r(2)], &[r(2), r(4)]).unwrap();
        let b = EpsScalar::from_coeffs(&[r(0), r(1)], &[r(1), r(2)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.sub(&b), EpsScalar::zero());
    }
}
