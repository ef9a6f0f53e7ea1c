use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Func {
    G,
    F,
    H,
    R1,
    R3,
    L1,
    L2,
    L3,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::G => "g",
            Func::F => "f",
            Func::H => "h",
            Func::R1 => "r1",
            Func::R3 => "r3",
            Func::L1 => "l1",
            Func::L2 => "l2",
            Func::L3 => "l3",
        }
    }

    pub fn from_name(s: &str) -> Option<Func> {
        Some(match s {
            "g" => Func::G,
            "f" => Func::F,
            "h" => Func::H,
            "r1" => Func::R1,
            "r3" => Func::R3,
            "l1" => Func::L1,
            "l2" => Func::L2,
            "l3" => Func::L3,
            _ => return None,
        })
    }

    /// Two-set functions versus one-set vacuum functions.
    pub fn arity(self) -> usize {
        match self {
            Func::G | Func::F | Func::H => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum IntExpr {
    Lit(u64),
    Card(String),
    Neg(Box<IntExpr>),
    Add(Box<IntExpr>, Box<IntExpr>),
    Sub(Box<IntExpr>, Box<IntExpr>),
    Mul(Box<IntExpr>, Box<IntExpr>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Expr {
    Int(u64),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    /// `func^(part)(args…)`; `part` selects a factor of a composite model.
    Call { func: Func, part: Option<u8>, args: Vec<String> },
    Izergin { left: String, right: String },
    /// `(-1)^(n)`
    SignPow(IntExpr),
}

impl IntExpr {
    fn prec(&self) -> u8 {
        match self {
            IntExpr::Add(..) | IntExpr::Sub(..) => 1,
            IntExpr::Mul(..) => 2,
            IntExpr::Neg(..) => 3,
            _ => 4,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            IntExpr::Lit(n) => write!(f, "{n}"),
            IntExpr::Card(s) => write!(f, "#{s}"),
            IntExpr::Neg(e) => {
                write!(f, "-")?;
                e.write_at(f, 3)
            }
            IntExpr::Add(a, b) => {
                a.write_at(f, 1)?;
                write!(f, "+")?;
                b.write_at(f, 2)
            }
            IntExpr::Sub(a, b) => {
                a.write_at(f, 1)?;
                write!(f, "-")?;
                b.write_at(f, 2)
            }
            IntExpr::Mul(a, b) => {
                a.write_at(f, 2)?;
                write!(f, "*")?;
                b.write_at(f, 3)
            }
        }
    }
}

impl fmt::Display for IntExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

impl Expr {
    fn prec(&self) -> u8 {
        match self {
            Expr::Mul(..) | Expr::Div(..) => 1,
            Expr::Neg(..) => 2,
            _ => 3,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Neg(e) => {
                write!(f, "-")?;
                e.write_at(f, 2)
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.write_at(f, 1)?;
                write!(f, "{}", if matches!(self, Expr::Mul(..)) { "*" } else { "/" })?;
                b.write_at(f, 2)
            }
            Expr::Call { func, part, args } => {
                write!(f, "{}", func.name())?;
                if let Some(p) = part {
                    write!(f, "^({p})")?;
                }
                write!(f, "({})", args.join(","))
            }
            Expr::Izergin { left, right } => write!(f, "K({left}|{right})"),
            Expr::SignPow(e) => write!(f, "(-1)^({e})"),
        }
    }

    /// Every set name the expression refers to.
    pub fn names(&self, out: &mut Vec<String>) {
        match self {
            Expr::Int(_) | Expr::SignPow(_) => {}
            Expr::Neg(e) => e.names(out),
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.names(out);
                b.names(out);
            }
            Expr::Call { args, .. } => out.extend(args.iter().cloned()),
            Expr::Izergin { left, right } => {
                out.push(left.clone());
                out.push(right.clone());
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}
