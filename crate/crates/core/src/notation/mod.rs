//! Shorthand coefficient expressions over named parameter sets.
//!
//! `f(uII,uI)` stands for the product of `f(x,y)` over all `x ∈ uII`, `y ∈ uI`;
//! empty sets give empty products. When both arguments name the same set the
//! diagonal pairs are skipped.

mod ast;
mod eval;
mod parser;
mod partition;

pub use ast::{Expr, Func, IntExpr};
pub use eval::{eval_expr, Binding, VacuumSource};
pub use parser::parse;
pub use partition::{enumerate_partitions, partition_terms, Part, PartSize, PartitionSpec, SetSplit};
