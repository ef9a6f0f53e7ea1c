//! Partition sums whose terms are a scalar coefficient times a Bethe vector or
//! a product of two partial Bethe vectors.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Result;
use crate::graded::Vector;
use crate::notation::{eval_expr, parse, partition_terms, Binding, Expr, PartitionSpec, VacuumSource};
use crate::scalar::{EpsScalar, Rational};

/// Arguments of one vector factor. `u` and `v` list named sets whose union is
/// the argument; `part` selects a factor of a split model (`None`: the whole).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorArgs {
    pub part: Option<u8>,
    pub u: Vec<String>,
    pub v: Vec<String>,
}

impl VectorArgs {
    pub fn new(part: Option<u8>, u: &[&str], v: &[&str]) -> Self {
        VectorArgs { part, u: u.iter().map(|s| (*s).into()).collect(), v: v.iter().map(|s| (*s).into()).collect() }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Term {
    pub partition: PartitionSpec,
    pub coefficient: Expr,
    /// Factors in written order.
    pub factors: Vec<VectorArgs>,
}

impl Term {
    pub fn new(partition: PartitionSpec, coefficient: &str, factors: Vec<VectorArgs>) -> Result<Self> {
        Ok(Term { partition, coefficient: parse(coefficient)?, factors })
    }
}

/// A factor with its parameter lists resolved.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ResolvedFactor {
    pub part: Option<u8>,
    pub u: Vec<EpsScalar>,
    pub v: Vec<EpsScalar>,
}

/// Supplies the vectors named by a term.
pub trait VectorBuilder<S> {
    fn zero(&self) -> Vector<S>;
    fn build(&mut self, factors: &[ResolvedFactor]) -> Result<Vector<S>>;
}

fn union(names: &[String], b: &Binding<'_>) -> Result<Vec<EpsScalar>> {
    let mut out = Vec::new();
    for n in names {
        out.extend_from_slice(b.get(n)?);
    }
    Ok(out)
}

/// `Σ_terms Σ_partitions coefficient · vector`. A term none of whose
/// partitions is admissible contributes nothing.
pub fn evaluate<S: Clone>(
    terms: &[Term],
    base: &BTreeMap<String, Vec<EpsScalar>>,
    c: &Rational,
    vacuum: Option<&dyn VacuumSource>,
    builder: &mut dyn VectorBuilder<S>,
) -> Result<Vector<S>> {
    let mut total = builder.zero();
    for term in terms {
        for parts in partition_terms(&term.partition, base)? {
            let mut b = Binding::new(c.clone());
            if let Some(v) = vacuum {
                b = b.with_vacuum(v);
            }
            for (k, x) in base.iter().chain(&parts) {
                b.bind(k, x.clone())?;
            }
            let coef = eval_expr(&term.coefficient, &b)?;
            if coef.is_zero() {
                continue;
            }
            let mut factors = Vec::with_capacity(term.factors.len());
            for f in &term.factors {
                factors.push(ResolvedFactor { part: f.part, u: union(&f.u, &b)?, v: union(&f.v, &b)? });
            }
            let x = builder.build(&factors)?;
            total.axpy(&coef, &x)?;
        }
    }
    Ok(total)
}
