//! Monodromy matrices of inhomogeneous, diagonally twisted fundamental chains.
//!
//! `T(u) = D · R_{0L}(u,ξ_L) ··· R_{01}(u,ξ_1)` on `aux ⊗ sites`, with the
//! auxiliary space as the leading tensor factor. Entries are read off through
//! `T(u) = Σ E_ij ⊗ T_ij(u)`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graded::{
    koszul_tensor, r_matrix, r_matrix_embedded, tensor_chain, DualGradedVector, GradedOperator,
    GradedVector, Parity, SignRule, Signature,
};
use crate::scalar::{f, g, EpsScalar, Rational};
use crate::notation::VacuumSource;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainSpec {
    xi: Vec<Rational>,
    twist: [Rational; 3],
    sig: Signature,
    c: Rational,
}

impl ChainSpec {
    pub fn new(xi: Vec<Rational>, twist: [Rational; 3], sig: Signature, c: Rational) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::InvalidChain("c must be nonzero".into()));
        }
        if twist.iter().any(Rational::is_zero) {
            return Err(Error::InvalidChain("twist entries must be nonzero".into()));
        }
        for (i, a) in xi.iter().enumerate() {
            if xi[i + 1..].contains(a) {
                return Err(Error::InvalidChain(alloc::format!("inhomogeneity {a} repeated")));
            }
        }
        Ok(ChainSpec { xi, twist, sig, c })
    }

    pub fn untwisted(xi: Vec<Rational>, sig: Signature, c: Rational) -> Result<Self> {
        Self::new(xi, [Rational::one(), Rational::one(), Rational::one()], sig, c)
    }

    pub fn len(&self) -> usize {
        self.xi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xi.is_empty()
    }

    pub fn xi(&self) -> &[Rational] {
        &self.xi
    }

    pub fn twist(&self) -> &[Rational; 3] {
        &self.twist
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    /// Closed forms `λ_1 = d_1 f(u,ξ̄)`, `λ_2 = d_2`, `λ_3 = d_3`.
    pub fn lambda(&self, i: usize, u: &EpsScalar) -> Result<EpsScalar> {
        let d = EpsScalar::from(self.twist[i - 1].clone());
        if i != 1 {
            return Ok(d);
        }
        let mut acc = d;
        for x in &self.xi {
            acc = acc.mul(&f(u, &EpsScalar::from(x.clone()), &self.c)?);
        }
        Ok(acc)
    }
}

/// The nine entries `T_ij(u)` as operators on the quantum space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Monodromy {
    u: EpsScalar,
    entries: Vec<GradedOperator>,
}

impl Monodromy {
    pub(crate) fn from_entries(u: EpsScalar, entries: Vec<GradedOperator>) -> Self {
        Monodromy { u, entries }
    }

    pub fn t(&self, i: usize, j: usize) -> &GradedOperator {
        &self.entries[3 * (i - 1) + (j - 1)]
    }

    pub fn u(&self) -> &EpsScalar {
        &self.u
    }

    pub fn arity(&self) -> usize {
        self.entries[0].arity()
    }
}

/// A concrete model: a monodromy on some quantum space together with its
/// pseudovacuum eigenvalues.
pub trait Model {
    fn signature(&self) -> Signature;
    fn c(&self) -> &Rational;
    fn sites(&self) -> usize;
    fn inhomogeneities(&self) -> Vec<Rational>;
    fn monodromy(&self, u: &EpsScalar) -> Result<Monodromy>;
    fn lambda(&self, i: usize, u: &EpsScalar) -> Result<EpsScalar>;

    /// `r_i = λ_i / λ_2`.
    fn r(&self, i: usize, u: &EpsScalar) -> Result<EpsScalar> {
        self.lambda(i, u)?.div(&self.lambda(2, u)?)
    }

    /// `Ω = e_1^{⊗L}`.
    fn vacuum(&self) -> GradedVector {
        GradedVector::basis(self.signature(), &alloc::vec![1; self.sites()])
    }

    fn dual_vacuum(&self) -> DualGradedVector {
        DualGradedVector::basis(self.signature(), &alloc::vec![1; self.sites()])
    }
}

impl Model for ChainSpec {
    fn signature(&self) -> Signature {
        self.sig
    }

    fn c(&self) -> &Rational {
        &self.c
    }

    fn sites(&self) -> usize {
        self.xi.len()
    }

    fn inhomogeneities(&self) -> Vec<Rational> {
        self.xi.clone()
    }

    fn monodromy(&self, u: &EpsScalar) -> Result<Monodromy> {
        direct_monodromy(&[self], u, SignRule::Koszul)
    }

    fn lambda(&self, i: usize, u: &EpsScalar) -> Result<EpsScalar> {
        ChainSpec::lambda(self, i, u)
    }
}

impl VacuumSource for ChainSpec {
    fn lambda(&self, part: Option<u8>, i: usize, u: &EpsScalar) -> Result<EpsScalar> {
        match part {
            None => ChainSpec::lambda(self, i, u),
            Some(p) => Err(Error::UnboundName(alloc::format!("part {p} of an unsplit chain"))),
        }
    }
}

pub fn build_monodromy(chain: &ChainSpec, u: &EpsScalar) -> Result<Monodromy> {
    direct_monodromy(&[chain], u, SignRule::Koszul)
}

/// `D_s R…R ··· D_1 R_{0,L_1}…R_{01}`: consecutive segments of sites, each with
/// its own twist applied after its block of R-matrices.
pub fn direct_monodromy(segments: &[&ChainSpec], u: &EpsScalar, rule: SignRule) -> Result<Monodromy> {
    let first = segments.first().ok_or_else(|| Error::InvalidChain("no segments".into()))?;
    let (sig, c) = (first.sig, first.c.clone());
    if segments.iter().any(|s| s.sig != sig || s.c != c) {
        return Err(Error::InvalidChain("segments disagree on signature or c".into()));
    }
    let n: usize = segments.iter().map(|s| s.len()).sum();
    let mut acc = GradedOperator::identity(sig, n + 1);
    let mut site = 0;
    for seg in segments {
        for x in &seg.xi {
            site += 1;
            let xe = EpsScalar::from(x.clone());
            let r = r_matrix_embedded(sig, n + 1, 0, site, u, &xe, &c, rule)?;
            acc = r.compose(&acc)?;
        }
        acc = twist_operator(seg, n)?.compose(&acc)?;
    }
    extract(sig, n, u, &acc)
}

fn twist_operator(seg: &ChainSpec, n: usize) -> Result<GradedOperator> {
    let sig = seg.sig;
    let d = GradedOperator::from_entries(
        sig,
        1,
        (0..3u64).map(|k| (k, k, EpsScalar::from(seg.twist[k as usize].clone()))),
    );
    if n == 0 {
        return Ok(d);
    }
    koszul_tensor(&d, &GradedOperator::identity(sig, n))
}

/// `T_ij[r,c] = (−1)^{([i]+[j])[j]} T[(i r),(j c)]`.
fn extract(sig: Signature, n: usize, u: &EpsScalar, full: &GradedOperator) -> Result<Monodromy> {
    let block = 3u64.pow(n as u32);
    let mut buckets: Vec<Vec<(u64, u64, EpsScalar)>> = (0..9).map(|_| Vec::new()).collect();
    for (row, col, x) in full.entries() {
        let (i, r) = ((row / block) as usize + 1, row % block);
        let (j, cc) = ((col / block) as usize + 1, col % block);
        let flip = (sig.parity(i) + sig.parity(j)) * sig.parity(j) % 2 == 1;
        buckets[3 * (i - 1) + (j - 1)].push((r, cc, if flip { x.neg() } else { x.clone() }));
    }
    let mut entries = Vec::with_capacity(9);
    for (k, b) in buckets.into_iter().enumerate() {
        let (i, j) = (k / 3 + 1, k % 3 + 1);
        let op = GradedOperator::from_entries(sig, n, b);
        entries.push(op.declare(Parity::of(sig.parity(i) + sig.parity(j)))?);
    }
    Ok(Monodromy { u: u.clone(), entries })
}

/// `T(u) ⊗ I` or `I ⊗ T(u)` on `aux ⊗ aux ⊗ sites`, i.e. `Σ E_ij ⊗ I ⊗ T_ij`.
fn lift(t: &Monodromy, sig: Signature, slot: usize, rule: SignRule) -> Result<GradedOperator> {
    let n = t.arity();
    let id = GradedOperator::identity(sig, 1);
    let mut acc = GradedOperator::zero(sig, n + 2);
    for i in 1..=3 {
        for j in 1..=3 {
            let eij = GradedOperator::matrix_unit(sig, i, j);
            let aux = if slot == 0 { [eij, id.clone()] } else { [id.clone(), eij] };
            let mut factors = aux.to_vec();
            factors.push(t.t(i, j).clone());
            let term = tensor_chain(&factors, rule)?;
            acc = acc.add(&term)?;
        }
    }
    Ok(acc)
}

/// `R(u,v)(T(u)⊗I)(I⊗T(v)) − (I⊗T(v))(T(u)⊗I)R(u,v)`.
pub fn check_rtt<M: Model + ?Sized>(model: &M, u: &EpsScalar, v: &EpsScalar) -> Result<GradedOperator> {
    check_rtt_with(model, u, v, SignRule::Koszul)
}

pub fn check_rtt_with<M: Model + ?Sized>(
    model: &M,
    u: &EpsScalar,
    v: &EpsScalar,
    rule: SignRule,
) -> Result<GradedOperator> {
    let sig = model.signature();
    let n = model.sites();
    let tu = lift(&model.monodromy(u)?, sig, 0, rule)?;
    let tv = lift(&model.monodromy(v)?, sig, 1, rule)?;
    let r = koszul_tensor(&r_matrix(u, v, sig, model.c())?, &GradedOperator::identity(sig, n))?;
    let lhs = r.compose(&tu)?.compose(&tv)?;
    let rhs = tv.compose(&tu)?.compose(&r)?;
    lhs.sub(&rhs)
}

/// Residuals of both forms of the exchange relation for `[T_ij(u), T_kl(v)}`.
pub fn check_supercommutator<M: Model + ?Sized>(
    model: &M,
    (i, j, k, l): (usize, usize, usize, usize),
    u: &EpsScalar,
    v: &EpsScalar,
) -> Result<(GradedOperator, GradedOperator)> {
    let tu = model.monodromy(u)?;
    let tv = model.monodromy(v)?;
    supercommutator_residuals(model.signature(), model.c(), &tu, &tv, (i, j, k, l))
}

/// `(i,j,k,l)` and the residuals of both forms.
pub type TupleResiduals = ((usize, usize, usize, usize), GradedOperator, GradedOperator);

/// [`check_supercommutator`] for all 81 index tuples, sharing the two monodromies.
pub fn check_all_supercommutators<M: Model + ?Sized>(
    model: &M,
    u: &EpsScalar,
    v: &EpsScalar,
) -> Result<Vec<TupleResiduals>> {
    let tu = model.monodromy(u)?;
    let tv = model.monodromy(v)?;
    let mut out = Vec::with_capacity(81);
    for i in 1..=3 {
        for j in 1..=3 {
            for k in 1..=3 {
                for l in 1..=3 {
                    let (a, b) = supercommutator_residuals(model.signature(), model.c(), &tu, &tv, (i, j, k, l))?;
                    out.push(((i, j, k, l), a, b));
                }
            }
        }
    }
    Ok(out)
}

pub(crate) fn supercommutator_residuals(
    sig: Signature,
    c: &Rational,
    tu: &Monodromy,
    tv: &Monodromy,
    (i, j, k, l): (usize, usize, usize, usize),
) -> Result<(GradedOperator, GradedOperator)> {
    let p = |x: usize| sig.parity(x) as u32;
    let sign = |e: u32| if e.is_multiple_of(2) { EpsScalar::one() } else { EpsScalar::from_int(-1) };
    let guv = g(tu.u(), tv.u(), c)?;
    let comm = tu.t(i, j).compose(tv.t(k, l))?.sub(
        &tv.t(k, l).compose(tu.t(i, j))?.scale(&sign((p(i) + p(j)) * (p(k) + p(l)))),
    )?;
    let form1 = tu
        .t(i, l)
        .compose(tv.t(k, j))?
        .sub(&tv.t(i, l).compose(tu.t(k, j))?)?
        .scale(&guv.mul(&sign(p(i) * p(j) + p(i) * p(l) + p(j) * p(l))));
    let form2 = tu
        .t(k, j)
        .compose(tv.t(i, l))?
        .sub(&tv.t(k, j).compose(tu.t(i, l))?)?
        .scale(&guv.mul(&sign(p(i) * p(k) + p(i) * p(l) + p(k) * p(l))).neg());
    Ok((comm.sub(&form1)?, comm.sub(&form2)?))
}
