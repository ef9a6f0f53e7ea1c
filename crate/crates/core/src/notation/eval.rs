use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::ast::{Expr, Func, IntExpr};
use crate::error::{Error, Result};
use crate::scalar::{self, EpsScalar, PairFn, Rational};

/// Vacuum eigenvalues available to `l1`, `l2`, `l3`, `r1`, `r3`.
/// `part` is `None` for the whole model, `Some(1)`/`Some(2)` for a factor.
pub trait VacuumSource {
    fn lambda(&self, part: Option<u8>, i: usize, u: &EpsScalar) -> Result<EpsScalar>;
}

/// Named parameter sets plus the data needed to evaluate expressions on them.
#[derive(Clone)]
pub struct Binding<'a> {
    pub c: Rational,
    sets: BTreeMap<String, Vec<EpsScalar>>,
    vacuum: Option<&'a dyn VacuumSource>,
}

impl<'a> Binding<'a> {
    pub fn new(c: Rational) -> Self {
        Binding { c, sets: BTreeMap::new(), vacuum: None }
    }

    pub fn with_vacuum(mut self, v: &'a dyn VacuumSource) -> Self {
        self.vacuum = Some(v);
        self
    }

    /// Binds `name`; rebinding an existing name is an error.
    pub fn bind(&mut self, name: &str, values: Vec<EpsScalar>) -> Result<()> {
        if self.sets.contains_key(name) {
            return Err(Error::InvalidParameters(alloc::format!("`{name}` bound twice")));
        }
        self.sets.insert(name.to_string(), values);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&[EpsScalar]> {
        self.sets
            .get(name)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::UnboundName(name.to_string()))
    }

    pub fn sets(&self) -> &BTreeMap<String, Vec<EpsScalar>> {
        &self.sets
    }
}

fn eval_int(e: &IntExpr, b: &Binding<'_>) -> Result<i64> {
    Ok(match e {
        IntExpr::Lit(n) => *n as i64,
        IntExpr::Card(s) => b.get(s)?.len() as i64,
        IntExpr::Neg(x) => -eval_int(x, b)?,
        IntExpr::Add(x, y) => eval_int(x, b)? + eval_int(y, b)?,
        IntExpr::Sub(x, y) => eval_int(x, b)? - eval_int(y, b)?,
        IntExpr::Mul(x, y) => eval_int(x, b)? * eval_int(y, b)?,
    })
}

pub fn eval_expr(e: &Expr, b: &Binding<'_>) -> Result<EpsScalar> {
    match e {
        Expr::Int(n) => Ok(EpsScalar::from(Rational::from(*n as i64))),
        Expr::Neg(x) => Ok(eval_expr(x, b)?.neg()),
        Expr::Mul(x, y) => Ok(eval_expr(x, b)?.mul(&eval_expr(y, b)?)),
        Expr::Div(x, y) => eval_expr(x, b)?.div(&eval_expr(y, b)?),
        Expr::SignPow(n) => {
            Ok(if eval_int(n, b)?.rem_euclid(2) == 0 { EpsScalar::one() } else { EpsScalar::from_int(-1) })
        }
        Expr::Izergin { left, right } => scalar::izergin_k(b.get(left)?, b.get(right)?, &b.c),
        Expr::Call { func, part, args } => {
            let pair = match func {
                Func::G => Some(PairFn::G),
                Func::F => Some(PairFn::F),
                Func::H => Some(PairFn::H),
                _ => None,
            };
            if let Some(kind) = pair {
                let (l, r) = (b.get(&args[0])?, b.get(&args[1])?);
                if args[0] == args[1] {
                    let mut acc = EpsScalar::one();
                    for (i, x) in l.iter().enumerate() {
                        for (j, y) in r.iter().enumerate() {
                            if i != j {
                                acc = acc.mul(&kind.eval(x, y, &b.c)?);
                            }
                        }
                    }
                    return Ok(acc);
                }
                return scalar::set_product(kind, l, r, &b.c);
            }
            let src = b
                .vacuum
                .ok_or_else(|| Error::UnboundName(alloc::format!("{} (no vacuum data)", func.name())))?;
            let mut acc = EpsScalar::one();
            for u in b.get(&args[0])? {
                let val = match func {
                    Func::L1 => src.lambda(*part, 1, u)?,
                    Func::L2 => src.lambda(*part, 2, u)?,
                    Func::L3 => src.lambda(*part, 3, u)?,
                    Func::R1 => src.lambda(*part, 1, u)?.div(&src.lambda(*part, 2, u)?)?,
                    Func::R3 => src.lambda(*part, 3, u)?.div(&src.lambda(*part, 2, u)?)?,
                    _ => unreachable!(),
                };
                acc = acc.mul(&val);
            }
            Ok(acc)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse;

    fn q(n: i64) -> EpsScalar {
        EpsScalar::from_int(n)
    }

    #[test]
    fn worked_coefficient() {
        let mut b = Binding::new(Rational::one());
        b.bind("uI", alloc::vec![q(1)]).unwrap();
        b.bind("uII", alloc::vec![q(3)]).unwrap();
        b.bind("vI", alloc::vec![q(5)]).unwrap();
        b.bind("vII", alloc::vec![q(7)]).unwrap();
        let e = parse("f(uII,uI)*g(vI,vII)/f(vII,uI)").unwrap();
        assert_eq!(eval_expr(&e, &b).unwrap(), EpsScalar::from(Rational::new(-9, 14).unwrap()));
    }

    #[test]
    fn empty_and_izergin() {
        let mut b = Binding::new(Rational::one());
        b.bind("vI", Vec::new()).unwrap();
        b.bind("vII", alloc::vec![q(4)]).unwrap();
        b.bind("v", alloc::vec![q(2)]).unwrap();
        b.bind("u", alloc::vec![q(1)]).unwrap();
        assert!(eval_expr(&parse("g(vI,vII)").unwrap(), &b).unwrap().is_one());
        assert!(eval_expr(&parse("K(v|u)").unwrap(), &b).unwrap().is_one());
        assert_eq!(
            eval_expr(&parse("g(w,v)").unwrap(), &b),
            Err(Error::UnboundName("w".into()))
        );
        assert!(eval_expr(&parse("r1(v)").unwrap(), &b).is_err());
        assert!(b.bind("v", Vec::new()).is_err());
    }

    #[test]
    fn diagonal_skipped_for_same_set() {
        let mut b = Binding::new(Rational::one());
        b.bind("v", alloc::vec![q(2), q(5)]).unwrap();
        // h(2,5)·h(5,2) = (-2)(4)
        assert_eq!(eval_expr(&parse("h(v,v)").unwrap(), &b).unwrap(), q(-8));
        assert_eq!(eval_expr(&parse("(-1)^(#v+1)").unwrap(), &b).unwrap(), q(-1));
    }
}
