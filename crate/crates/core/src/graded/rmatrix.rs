use alloc::vec::Vec;

use super::operator::{tensor_chain, GradedOperator, SignRule};
use super::signature::Signature;
use crate::error::{Error, Result};
use crate::scalar::{g, EpsScalar, Rational};

/// `P = Σ_{i,j} (−1)^{[j]} E_ij ⊗ E_ji`.
pub fn super_permutation(sig: Signature) -> GradedOperator {
    super_permutation_embedded(sig, 2, 0, 1, SignRule::Koszul).unwrap()
}

/// The superpermutation acting on sites `a` and `b` (0-based) of an arity-`n`
/// space, with identities on all other sites.
pub fn super_permutation_embedded(
    sig: Signature,
    n: usize,
    a: usize,
    b: usize,
    rule: SignRule,
) -> Result<GradedOperator> {
    if a == b || a >= n || b >= n {
        return Err(Error::InvalidParameters(alloc::format!("bad sites ({a},{b}) for arity {n}")));
    }
    let id = GradedOperator::identity(sig, 1);
    let mut p = GradedOperator::zero(sig, n);
    for i in 1..=3 {
        for j in 1..=3 {
            let factors: Vec<_> = (0..n)
                .map(|k| match k {
                    k if k == a => GradedOperator::matrix_unit(sig, i, j),
                    k if k == b => GradedOperator::matrix_unit(sig, j, i),
                    _ => id.clone(),
                })
                .collect();
            let mut term = tensor_chain(&factors, rule)?;
            if sig.parity(j) == 1 {
                term = term.neg();
            }
            p = p.add(&term)?;
        }
    }
    Ok(p)
}

/// `R(u,v) = I ⊗ I + g(u,v) P`.
pub fn r_matrix(u: &EpsScalar, v: &EpsScalar, sig: Signature, c: &Rational) -> Result<GradedOperator> {
    r_matrix_embedded(sig, 2, 0, 1, u, v, c, SignRule::Koszul)
}

#[allow(clippy::too_many_arguments)]
pub fn r_matrix_embedded(
    sig: Signature,
    n: usize,
    a: usize,
    b: usize,
    u: &EpsScalar,
    v: &EpsScalar,
    c: &Rational,
    rule: SignRule,
) -> Result<GradedOperator> {
    let gp = super_permutation_embedded(sig, n, a, b, rule)?.scale(&g(u, v, c)?);
    GradedOperator::identity(sig, n).add(&gp)
}

/// `R₁₂(u,v)R₁₃(u,w)R₂₃(v,w) − R₂₃(v,w)R₁₃(u,w)R₁₂(u,v)` on arity 3.
pub fn check_ybe(
    u: &EpsScalar,
    v: &EpsScalar,
    w: &EpsScalar,
    sig: Signature,
    c: &Rational,
) -> Result<GradedOperator> {
    let r12 = r_matrix_embedded(sig, 3, 0, 1, u, v, c, SignRule::Koszul)?;
    let r13 = r_matrix_embedded(sig, 3, 0, 2, u, w, c, SignRule::Koszul)?;
    let r23 = r_matrix_embedded(sig, 3, 1, 2, v, w, c, SignRule::Koszul)?;
    let lhs = r12.compose(&r13)?.compose(&r23)?;
    let rhs = r23.compose(&r13)?.compose(&r12)?;
    lhs.sub(&rhs)
}
