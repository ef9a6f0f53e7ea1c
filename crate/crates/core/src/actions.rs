//! Actions of monodromy entries on Bethe vectors: the left-hand side by
//! operator application, the right-hand side as a partition sum read from
//! `data/actions.json`.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use serde::Deserialize;

use crate::bethe::{build_side, MonodromyCache};
use crate::error::{Error, Result};
use crate::formula::{evaluate, ResolvedFactor, Term, VectorArgs, VectorBuilder};
use crate::graded::{GradedVector, Signature, Vector};
use crate::monodromy::Model;
use crate::notation::{PartSize, PartitionSpec, VacuumSource};
use crate::scalar::{h, EpsScalar};

/// The formula table shipped with the crate.
pub const ACTIONS_JSON: &str = include_str!("../data/actions.json");

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Element {
    T11,
    T22,
    T33,
    T12,
    T13,
    T23,
    T21,
}

impl Element {
    pub const ALL: [Element; 7] =
        [Element::T11, Element::T22, Element::T33, Element::T12, Element::T13, Element::T23, Element::T21];

    pub fn indices(self) -> (usize, usize) {
        match self {
            Element::T11 => (1, 1),
            Element::T22 => (2, 2),
            Element::T33 => (3, 3),
            Element::T12 => (1, 2),
            Element::T13 => (1, 3),
            Element::T23 => (2, 3),
            Element::T21 => (2, 1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Element::T11 => "T11",
            Element::T22 => "T22",
            Element::T33 => "T33",
            Element::T12 => "T12",
            Element::T13 => "T13",
            Element::T23 => "T23",
            Element::T21 => "T21",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Element::ALL.into_iter().find(|e| e.name() == s)
    }
}

/// One term: partition, coefficient expression and the arguments of the
/// Bethe vector it multiplies.
#[derive(Clone, PartialEq, Debug)]
pub struct ActionTerm {
    pub partition: PartitionSpec,
    pub coefficient: String,
    pub target_u: Vec<String>,
    pub target_v: Vec<String>,
}

#[derive(Clone, PartialEq, Debug)]
pub struct ActionFormula {
    pub element: Element,
    pub terms: Vec<ActionTerm>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPart {
    name: String,
    #[serde(default)]
    size: Option<usize>,
    #[serde(default)]
    same_as: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSplit {
    source: String,
    parts: Vec<RawPart>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTarget {
    u: Vec<String>,
    v: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    partition_spec: Vec<RawSplit>,
    coefficient_expr: String,
    target_vector_args: RawTarget,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFormula {
    element: String,
    terms: Vec<RawTerm>,
}

/// Parses a formula table; every coefficient expression is syntax-checked.
pub fn parse_formulas(json: &str) -> Result<Vec<ActionFormula>> {
    let raw: Vec<RawFormula> = serde_json::from_str(json).map_err(|e| Error::MalformedData(e.to_string()))?;
    let mut out = Vec::with_capacity(raw.len());
    for f in raw {
        let element = Element::from_name(&f.element)
            .ok_or_else(|| Error::MalformedData(alloc::format!("unknown element `{}`", f.element)))?;
        let mut terms = Vec::with_capacity(f.terms.len());
        for t in f.terms {
            let mut spec = PartitionSpec::new();
            for s in t.partition_spec {
                let mut parts = Vec::new();
                for p in s.parts {
                    let size = match (p.size, p.same_as) {
                        (None, None) => PartSize::Free,
                        (Some(n), None) => PartSize::Exactly(n),
                        (None, Some(o)) => PartSize::SameAs(o),
                        _ => return Err(Error::MalformedData(alloc::format!("part `{}` has two sizes", p.name))),
                    };
                    parts.push((p.name, size));
                }
                let refs: Vec<(&str, PartSize)> = parts.iter().map(|(n, s)| (n.as_str(), s.clone())).collect();
                spec = spec.split(&s.source, &refs);
            }
            crate::notation::parse(&t.coefficient_expr)?;
            terms.push(ActionTerm {
                partition: spec,
                coefficient: t.coefficient_expr,
                target_u: t.target_vector_args.u,
                target_v: t.target_vector_args.v,
            });
        }
        out.push(ActionFormula { element, terms });
    }
    Ok(out)
}

/// The shipped table, keyed by element.
pub fn action_formulas() -> Result<BTreeMap<Element, ActionFormula>> {
    Ok(parse_formulas(ACTIONS_JSON)?.into_iter().map(|f| (f.element, f)).collect())
}

struct ChainBuilder<'m, M: ?Sized> {
    cache: MonodromyCache<'m, M>,
    memo: Vec<(ResolvedFactor, GradedVector)>,
}

impl<M: Model + ?Sized> VectorBuilder<crate::graded::Ket> for ChainBuilder<'_, M> {
    fn zero(&self) -> GradedVector {
        Vector::zero(self.cache.model().signature(), self.cache.model().sites())
    }

    fn build(&mut self, factors: &[ResolvedFactor]) -> Result<GradedVector> {
        let [f] = factors else {
            return Err(Error::InvalidParameters("expected a single vector".into()));
        };
        if let Some((_, x)) = self.memo.iter().find(|(k, _)| k == f) {
            return Ok(x.clone());
        }
        let x: GradedVector = build_side(&mut self.cache, &f.u, &f.v, false)?;
        self.memo.push((f.clone(), x.clone()));
        Ok(x)
    }
}

fn check_case<M: Model + ?Sized>(model: &M, u: &[EpsScalar], v: &[EpsScalar], z: &EpsScalar) -> Result<()> {
    if model.signature() != Signature::GL21 {
        return Err(Error::SignatureMismatch);
    }
    if u.contains(z) || v.contains(z) || z.as_rational().is_some_and(|r| model.inhomogeneities().contains(r)) {
        return Err(Error::InvalidParameters("z must avoid ū, v̄ and the inhomogeneities".into()));
    }
    Ok(())
}

/// `T_el(z) / (λ_2(z) h(v̄,z)) · 𝔹_{a,b}(ū;v̄)`
pub fn action_lhs<M: Model + ?Sized>(
    model: &M,
    element: Element,
    u: &[EpsScalar],
    v: &[EpsScalar],
    z: &EpsScalar,
) -> Result<GradedVector> {
    check_case(model, u, v, z)?;
    let mut cache = MonodromyCache::new(model);
    let b: GradedVector = build_side(&mut cache, u, v, false)?;
    let (i, j) = element.indices();
    let mut den = model.lambda(2, z)?;
    for x in v {
        den = den.mul(&h(x, z, model.c())?);
    }
    Ok(cache.get(z)?.t(i, j).apply(&b)?.scale(&den.recip()?))
}

/// The partition sum of `formula` with `ū`, `v̄`, `z` bound to `u`, `v`, `z`.
pub fn action_rhs<M: Model + VacuumSource>(
    model: &M,
    formula: &ActionFormula,
    u: &[EpsScalar],
    v: &[EpsScalar],
    z: &EpsScalar,
) -> Result<GradedVector> {
    check_case(model, u, v, z)?;
    let mut terms = Vec::with_capacity(formula.terms.len());
    for t in &formula.terms {
        let target = VectorArgs {
            part: None,
            u: t.target_u.clone(),
            v: t.target_v.clone(),
        };
        terms.push(Term::new(t.partition.clone(), &t.coefficient, vec![target])?);
    }
    let mut base = BTreeMap::new();
    base.insert("u".to_string(), u.to_vec());
    base.insert("v".to_string(), v.to_vec());
    base.insert("z".to_string(), vec![z.clone()]);
    let mut builder = ChainBuilder { cache: MonodromyCache::new(model), memo: Vec::new() };
    evaluate(&terms, &base, model.c(), Some(model), &mut builder)
}

pub fn action_check<M: Model + VacuumSource>(
    model: &M,
    formula: &ActionFormula,
    u: &[EpsScalar],
    v: &[EpsScalar],
    z: &EpsScalar,
) -> Result<GradedVector> {
    action_lhs(model, formula.element, u, v, z)?.sub(&action_rhs(model, formula, u, v, z)?)
}
