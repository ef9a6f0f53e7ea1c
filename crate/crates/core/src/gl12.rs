//! The gl(1|2) side: tilde Bethe vectors and their bilinear expansions.
//!
//! The algebraic coproduct of the gl(1|2) algebra carries an extra minus,
//! so that `λ̃_j = −λ̃^{(1)}_j λ̃^{(2)}_j`. On a concrete two-component chain the
//! total monodromy is an honest matrix product; whether the normalisation of
//! total vectors needs the minus is decided by [`resolve_sign`].

use alloc::vec::Vec;

use crate::bethe::{build_bethe, build_dual_bethe, BetheSpec, BetheVector, DualBetheVector};
use crate::composite::{tilde_checks, SplitChain};
use crate::error::{Error, Result};
use crate::graded::{Bra, DualGradedVector, GradedVector, Ket, Signature};
use crate::monodromy::Model;
use crate::scalar::{EpsScalar, Rational};

/// Sign `σ` multiplying the total eigenvalues `λ̃_j` of a split chain.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SignConvention {
    Plain,
    Negated,
}

impl SignConvention {
    pub fn sigma(self) -> i8 {
        match self {
            SignConvention::Plain => 1,
            SignConvention::Negated => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SignConvention::Plain => "+1",
            SignConvention::Negated => "-1",
        }
    }
}

fn require<M: Model + ?Sized>(model: &M) -> Result<()> {
    if model.signature() != Signature::GL12 {
        return Err(Error::SignatureMismatch);
    }
    Ok(())
}

/// `𝔹̃_{a,b}(ū;v̄)`
pub fn build_tilde_bethe<M: Model + ?Sized>(model: &M, spec: &BetheSpec) -> Result<BetheVector> {
    require(model)?;
    build_bethe(model, spec)
}

/// `ℂ̃_{a,b}(ū;v̄)`
pub fn build_tilde_dual<M: Model + ?Sized>(model: &M, spec: &BetheSpec) -> Result<DualBetheVector> {
    require(model)?;
    build_dual_bethe(model, spec)
}

fn signed(split: &SplitChain, conv: SignConvention) -> SplitChain {
    split.clone().with_negated_total(conv == SignConvention::Negated)
}

/// `𝔹̃_{a,b}(ū;v̄)` minus `Σ r̃_3^{(1)}(v̄_II) r̃_1^{(2)}(ū_I) f(v̄_I,v̄_II) g(ū_II,ū_I)/f(ū_I,v̄_II) 𝔹̃^{(1)}(ū_I;v̄_I) 𝔹̃^{(2)}(ū_II;v̄_II)`.
pub fn coproduct_tilde_bethe_check(split: &SplitChain, u: &[EpsScalar], v: &[EpsScalar], conv: SignConvention) -> Result<GradedVector> {
    tilde_checks::<Ket>(&signed(split, conv), u, v)
}

/// `ℂ̃_{a,b}(ū;v̄)` minus `Σ r̃_3^{(2)}(v̄_I) r̃_1^{(1)}(ū_II) f(v̄_II,v̄_I) g(ū_I,ū_II)/f(ū_II,v̄_I) ℂ̃^{(2)}(ū_II;v̄_II) ℂ̃^{(1)}(ū_I;v̄_I)`.
pub fn coproduct_tilde_dual_check(
    split: &SplitChain,
    u: &[EpsScalar],
    v: &[EpsScalar],
    conv: SignConvention,
) -> Result<DualGradedVector> {
    tilde_checks::<Bra>(&signed(split, conv), u, v)
}

/// Runs the `(a,b) = (1,1)` bilinear check under both conventions at the
/// given point and returns the one that holds.
pub fn resolve_sign_at(split: &SplitChain, u: &EpsScalar, v: &EpsScalar) -> Result<SignConvention> {
    let mut ok = Vec::new();
    for conv in [SignConvention::Plain, SignConvention::Negated] {
        if coproduct_tilde_bethe_check(split, core::slice::from_ref(u), core::slice::from_ref(v), conv)?.is_zero() {
            ok.push(conv);
        }
    }
    match ok.as_slice() {
        [one] => Ok(*one),
        [] => Err(Error::AmbiguousConvention("no sign makes the expansion hold".into())),
        _ => Err(Error::AmbiguousConvention("both signs make the expansion hold".into())),
    }
}

/// [`resolve_sign_at`] at a fixed generic probe point of the chain.
pub fn resolve_sign(split: &SplitChain) -> Result<SignConvention> {
    let c = split.c().clone();
    let xi = split.inhomogeneities();
    let mut picked: Vec<Rational> = Vec::new();
    let mut k = 1i64;
    while picked.len() < 2 {
        let cand = Rational::new(2 * k + 1, 7)?;
        let clash = |x: &Rational| {
            let d = &cand - x;
            d.is_zero() || d == c || d == -&c
        };
        if !xi.iter().any(clash) && !picked.iter().any(clash) {
            picked.push(cand);
        }
        k += 1;
    }
    resolve_sign_at(split, &EpsScalar::from(picked[0].clone()), &EpsScalar::from(picked[1].clone()))
}

/// `[i]_{gl(2|1)} = [4−i]_{gl(1|2)} + 1 (mod 2)` for `i = 1,2,3`.
pub fn gradation_relation_holds() -> bool {
    (1..=3).all(|i| Signature::GL21.parity(i) == (Signature::GL12.parity(4 - i) + 1) % 2)
}

/// Correspondence `T_ij ↦ (−1)^{[i][j]+[j]+1} T̃_{4−j,4−i}` used to name
/// gl(1|2) entries after their gl(2|1) counterparts: returns the sign and
/// the tilde indices.
pub fn phi_image(i: usize, j: usize) -> (i8, usize, usize) {
    let p = |k| Signature::GL21.parity(k) as usize;
    let e = p(i) * p(j) + p(j) + 1;
    (if e % 2 == 0 { 1 } else { -1 }, 4 - j, 4 - i)
}
