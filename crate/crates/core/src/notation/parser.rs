use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::ast::{Expr, Func, IntExpr};
use crate::error::{Error, Result};

/// Parses a coefficient expression.
///
/// Errors carry a 1-based character column; an unexpected end of input is
/// reported one past the last character.
pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser { s: text.chars().collect(), i: 0 };
    let e = p.expr()?;
    p.ws();
    if p.i < p.s.len() {
        return Err(p.err("end of input"));
    }
    Ok(e)
}

struct Parser {
    s: Vec<char>,
    i: usize,
}

impl Parser {
    fn err(&self, expected: &str) -> Error {
        Error::Syntax { position: self.i + 1, expected: expected.to_string() }
    }

    fn ws(&mut self) {
        while self.s.get(self.i).is_some_and(|c| c.is_whitespace()) {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&alloc::format!("`{c}`")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.atom()
    }

    fn number(&mut self) -> Option<u64> {
        self.ws();
        let start = self.i;
        while self.s.get(self.i).is_some_and(char::is_ascii_digit) {
            self.i += 1;
        }
        if start == self.i {
            return None;
        }
        self.s[start..self.i].iter().collect::<String>().parse().ok()
    }

    fn ident(&mut self) -> Option<String> {
        self.ws();
        let start = self.i;
        if !self.s.get(self.i).is_some_and(char::is_ascii_alphabetic) {
            return None;
        }
        while self.s.get(self.i).is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
            self.i += 1;
        }
        Some(self.s[start..self.i].iter().collect())
    }

    fn sign_pow_head(&mut self) -> bool {
        let save = self.i;
        if self.eat('(') && self.eat('-') && self.number() == Some(1) && self.eat(')') && self.eat('^') {
            return true;
        }
        self.i = save;
        false
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            None => Err(self.err("operand")),
            Some('(') => {
                if self.sign_pow_head() {
                    return Ok(Expr::SignPow(self.int_factor()?));
                }
                self.i += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number().ok_or_else(|| self.err("integer"))?;
                Ok(Expr::Int(n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.i;
                let name = self.ident().unwrap();
                if name == "K" {
                    self.expect('(')?;
                    let left = self.ident().ok_or_else(|| self.err("set name"))?;
                    self.expect('|')?;
                    let right = self.ident().ok_or_else(|| self.err("set name"))?;
                    self.expect(')')?;
                    return Ok(Expr::Izergin { left, right });
                }
                let Some(func) = Func::from_name(&name) else {
                    self.i = start;
                    return Err(self.err("one of g, f, h, r1, r3, l1, l2, l3, K"));
                };
                let part = self.part_tag()?;
                self.expect('(')?;
                let mut args = Vec::new();
                loop {
                    args.push(self.ident().ok_or_else(|| self.err("set name"))?);
                    if !self.eat(',') {
                        break;
                    }
                }
                if args.len() != func.arity() {
                    return Err(self.err(if func.arity() == 2 { "`,`" } else { "`)`" }));
                }
                self.expect(')')?;
                Ok(Expr::Call { func, part, args })
            }
            Some(_) => Err(self.err("operand")),
        }
    }

    fn part_tag(&mut self) -> Result<Option<u8>> {
        match self.s.get(self.i) {
            Some('¹') => {
                self.i += 1;
                Ok(Some(1))
            }
            Some('²') => {
                self.i += 1;
                Ok(Some(2))
            }
            Some('^') => {
                self.i += 1;
                self.expect('(')?;
                let n = match self.number() {
                    Some(n @ (1 | 2)) => n as u8,
                    _ => return Err(self.err("part 1 or 2")),
                };
                self.expect(')')?;
                Ok(Some(n))
            }
            _ => Ok(None),
        }
    }

    fn int_expr(&mut self) -> Result<IntExpr> {
        let mut lhs = self.int_term()?;
        loop {
            if self.eat('+') {
                lhs = IntExpr::Add(Box::new(lhs), Box::new(self.int_term()?));
            } else if self.eat('-') {
                lhs = IntExpr::Sub(Box::new(lhs), Box::new(self.int_term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn int_term(&mut self) -> Result<IntExpr> {
        let mut lhs = self.int_factor()?;
        while self.eat('*') {
            lhs = IntExpr::Mul(Box::new(lhs), Box::new(self.int_factor()?));
        }
        Ok(lhs)
    }

    fn int_factor(&mut self) -> Result<IntExpr> {
        if self.eat('-') {
            return Ok(IntExpr::Neg(Box::new(self.int_factor()?)));
        }
        if self.eat('#') {
            return Ok(IntExpr::Card(self.ident().ok_or_else(|| self.err("set name"))?));
        }
        if self.eat('(') {
            let e = self.int_expr()?;
            self.expect(')')?;
            return Ok(e);
        }
        self.number().map(IntExpr::Lit).ok_or_else(|| self.err("integer, `#set` or `(`"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structure() {
        let e = parse("f(uII,uI)*g(vI,vII)/f(vII,uI)").unwrap();
        let Expr::Div(num, _) = &e else { panic!("{e:?}") };
        assert!(matches!(**num, Expr::Mul(..)));
        assert_eq!(
            parse("K(vI|uI)").unwrap(),
            Expr::Izergin { left: "vI".into(), right: "uI".into() }
        );
    }

    #[test]
    fn unclosed_call() {
        assert_eq!(
            parse("f(uII,uI"),
            Err(Error::Syntax { position: 9, expected: "`)`".into() })
        );
    }

    #[test]
    fn part_tags() {
        let a = parse("r1²(uI)*r3¹(vII)").unwrap();
        let b = parse("r1^(2)(uI) * r3^(1)(vII)").unwrap();
        assert_eq!(a, b);
        assert!(parse("r1^(3)(uI)").is_err());
    }

    #[test]
    fn sign_powers() {
        let e = parse("(-1)^(#uI*(#uI-1))*g(u,v)").unwrap();
        assert_eq!(e.to_string(), "(-1)^(#uI*(#uI-1))*g(u,v)");
        assert_eq!(parse("(-1)^#vI").unwrap().to_string(), "(-1)^(#vI)");
        // a parenthesised negative literal is an ordinary expression
        assert_eq!(parse("(-1)").unwrap(), Expr::Neg(Box::new(Expr::Int(1))));
    }

    #[test]
    fn rejects() {
        for bad in ["", "g(u)", "r1(u,v)", "q(u,v)", "f(u,v)*", "K(u,v)", "1 2"] {
            assert!(parse(bad).is_err(), "{bad}");
        }
    }
}
