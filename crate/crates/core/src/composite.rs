//! Two-component models `T(u) = T^{(2)}(u) T^{(1)}(u)` and the bilinear
//! expansion of Bethe vectors in partial ones.
//!
//! Part 1 occupies the first sites. For kets `X^{(1)}Y^{(2)} = X ⊗ Y` and
//! `X^{(2)}Y^{(1)} = (−1)^{|X||Y|} Y ⊗ X`; for bras the sign sits on the
//! `(1)(2)` order instead.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bethe::{build_side, separate, BetheSide, MonodromyCache};
use crate::error::{Error, Result};
use crate::formula::{evaluate, ResolvedFactor, Term, VectorArgs, VectorBuilder};
use crate::graded::{koszul_tensor, DualGradedVector, GradedOperator, GradedVector, Ket, Signature, SignRule, Vector};
use crate::monodromy::{direct_monodromy, ChainSpec, Model, Monodromy};
use crate::notation::{PartSize, PartitionSpec, VacuumSource};
use crate::scalar::{g, h, set_product, EpsScalar, PairFn, Rational};

/// A chain cut into two consecutive pieces with independent twists.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SplitChain {
    part1: ChainSpec,
    part2: ChainSpec,
    negate_total: bool,
}

impl SplitChain {
    pub fn new(part1: ChainSpec, part2: ChainSpec) -> Result<Self> {
        if part1.signature() != part2.signature() || part1.c() != part2.c() {
            return Err(Error::InvalidChain("parts disagree on signature or c".into()));
        }
        if part1.xi().iter().any(|x| part2.xi().contains(x)) {
            return Err(Error::InvalidChain("parts share an inhomogeneity".into()));
        }
        Ok(SplitChain { part1, part2, negate_total: false })
    }

    /// Same chain with the total eigenvalues `λ_i` multiplied by `−1`.
    pub fn with_negated_total(mut self, negate: bool) -> Self {
        self.negate_total = negate;
        self
    }

    pub fn negated_total(&self) -> bool {
        self.negate_total
    }

    pub fn part(&self, k: u8) -> &ChainSpec {
        if k == 1 {
            &self.part1
        } else {
            &self.part2
        }
    }
}

impl Model for SplitChain {
    fn signature(&self) -> Signature {
        self.part1.signature()
    }

    fn c(&self) -> &Rational {
        self.part1.c()
    }

    fn sites(&self) -> usize {
        self.part1.len() + self.part2.len()
    }

    fn inhomogeneities(&self) -> Vec<Rational> {
        self.part1.xi().iter().chain(self.part2.xi()).cloned().collect()
    }

    fn monodromy(&self, u: &EpsScalar) -> Result<Monodromy> {
        direct_monodromy(&[&self.part1, &self.part2], u, SignRule::Koszul)
    }

    fn lambda(&self, i: usize, u: &EpsScalar) -> Result<EpsScalar> {
        let x = self.part1.lambda(i, u)?.mul(&self.part2.lambda(i, u)?);
        Ok(if self.negate_total { x.neg() } else { x })
    }
}

impl VacuumSource for SplitChain {
    fn lambda(&self, part: Option<u8>, i: usize, u: &EpsScalar) -> Result<EpsScalar> {
        match part {
            None => Model::lambda(self, i, u),
            Some(1) => self.part1.lambda(i, u),
            Some(2) => self.part2.lambda(i, u),
            Some(p) => Err(Error::UnboundName(alloc::format!("part {p}"))),
        }
    }
}

/// `T_ij(u) = Σ_k T^{(1)}_{kj}(u) ⊗ T^{(2)}_{ik}(u)`.
pub fn compose_monodromy(split: &SplitChain, u: &EpsScalar) -> Result<Monodromy> {
    let t1 = split.part1.monodromy(u)?;
    let t2 = split.part2.monodromy(u)?;
    let sig = split.signature();
    let mut entries = Vec::with_capacity(9);
    for i in 1..=3 {
        for j in 1..=3 {
            let mut acc = GradedOperator::zero(sig, split.sites());
            for k in 1..=3 {
                acc = acc.add(&koszul_tensor(t1.t(k, j), t2.t(i, k))?)?;
            }
            entries.push(acc);
        }
    }
    Ok(Monodromy::from_entries(u.clone(), entries))
}

/// Entrywise difference between the coproduct and the directly built total
/// monodromy, row-major.
pub fn coproduct_residual(split: &SplitChain, u: &EpsScalar) -> Result<Vec<GradedOperator>> {
    let a = compose_monodromy(split, u)?;
    let b = split.monodromy(u)?;
    let mut out = Vec::with_capacity(9);
    for i in 1..=3 {
        for j in 1..=3 {
            out.push(a.t(i, j).sub(b.t(i, j))?);
        }
    }
    Ok(out)
}

/// The product of a part-1 vector `x1` and a part-2 vector `x2` written with
/// the part-`first` factor on the left.
pub fn product<S: BetheSide>(first: u8, x1: &Vector<S>, x2: &Vector<S>) -> Result<Vector<S>> {
    let t = x1.tensor(x2)?;
    let signed = (first == 1) == S::SIGNED_ORDER_12;
    let odd = match (x1.parity(), x2.parity()) {
        (Some(p), Some(q)) => match (p.bit(), q.bit()) {
            (Some(a), Some(b)) => a * b == 1,
            _ => return Err(Error::InvalidParameters("factor of mixed parity".into())),
        },
        _ => false,
    };
    Ok(if signed && odd { t.neg() } else { t })
}

/// Builds single and product vectors on a split chain.
pub struct SplitBuilder<'a, S> {
    split: &'a SplitChain,
    raw: bool,
    total: MonodromyCache<'a, SplitChain>,
    parts: [MonodromyCache<'a, ChainSpec>; 2],
    memo: Vec<(ResolvedFactor, Vector<S>)>,
}

impl<'a, S: BetheSide> SplitBuilder<'a, S> {
    /// With `raw` the parameters are taken as given (possibly depending on
    /// `ε`) and no limits are taken.
    pub fn new(split: &'a SplitChain, raw: bool) -> Self {
        SplitBuilder {
            split,
            raw,
            total: MonodromyCache::new(split),
            parts: [MonodromyCache::new(&split.part1), MonodromyCache::new(&split.part2)],
            memo: Vec::new(),
        }
    }

    fn single(&mut self, f: &ResolvedFactor) -> Result<Vector<S>> {
        if let Some((_, x)) = self.memo.iter().find(|(k, _)| k == f) {
            return Ok(x.clone());
        }
        let x = match f.part {
            None => build_side(&mut self.total, &f.u, &f.v, self.raw)?,
            Some(p @ (1 | 2)) => build_side(&mut self.parts[p as usize - 1], &f.u, &f.v, self.raw)?,
            Some(p) => return Err(Error::UnboundName(alloc::format!("part {p}"))),
        };
        self.memo.push((f.clone(), x.clone()));
        Ok(x)
    }
}

impl<S: BetheSide> VectorBuilder<S> for SplitBuilder<'_, S> {
    fn zero(&self) -> Vector<S> {
        Vector::zero(self.split.signature(), self.split.sites())
    }

    fn build(&mut self, factors: &[ResolvedFactor]) -> Result<Vector<S>> {
        if let [f] = factors {
            if f.part.is_none() {
                return self.single(f);
            }
        }
        let mut slots: [Option<Vector<S>>; 2] = [None, None];
        let mut first = None;
        for f in factors {
            let p = match f.part {
                Some(p @ (1 | 2)) => p,
                _ => return Err(Error::InvalidParameters("product factors must name parts 1 and 2".into())),
            };
            if slots[p as usize - 1].is_some() {
                return Err(Error::InvalidParameters("part repeated in product".into()));
            }
            first.get_or_insert(p);
            slots[p as usize - 1] = Some(self.single(f)?);
        }
        let [x1, x2] = slots;
        let x1 = x1.unwrap_or_else(|| Vector::basis(self.split.signature(), &vec![1; self.split.part1.len()]));
        let x2 = x2.unwrap_or_else(|| Vector::basis(self.split.signature(), &vec![1; self.split.part2.len()]));
        product(first.unwrap_or(1), &x1, &x2)
    }
}

/// Coefficient of the bilinear expansion and the part written first.
fn bilinear(sig: Signature, dual: bool) -> (&'static str, u8) {
    match (sig == Signature::GL21, dual) {
        (true, false) => ("r1^(2)(uI)*r3^(1)(vII)*f(uII,uI)*g(vI,vII)/f(vII,uI)", 2),
        (true, true) => ("r1^(1)(uII)*r3^(2)(vI)*f(uI,uII)*g(vII,vI)/f(vI,uII)", 1),
        (false, false) => ("r3^(1)(vII)*r1^(2)(uI)*f(vI,vII)*g(uII,uI)/f(uI,vII)", 1),
        (false, true) => ("r3^(2)(vI)*r1^(1)(uII)*f(vII,vI)*g(uI,uII)/f(uII,vI)", 2),
    }
}

/// The coefficient expression of the bilinear expansion on `sig`.
pub fn bilinear_coefficient(sig: Signature, dual: bool) -> &'static str {
    bilinear(sig, dual).0
}

fn free_split() -> PartitionSpec {
    PartitionSpec::new()
        .split("u", &[("uI", PartSize::Free), ("uII", PartSize::Free)])
        .split("v", &[("vI", PartSize::Free), ("vII", PartSize::Free)])
}

fn base(sets: &[(&str, &[EpsScalar])]) -> BTreeMap<String, Vec<EpsScalar>> {
    sets.iter().map(|(k, v)| (String::from(*k), v.to_vec())).collect()
}

fn check_params(split: &SplitChain, u: &[EpsScalar], v: &[EpsScalar]) -> Result<()> {
    let xi = split.inhomogeneities();
    if u.iter().chain(v).any(|p| p.as_rational().is_some_and(|r| xi.contains(r))) {
        return Err(Error::InvalidParameters("parameter is an inhomogeneity".into()));
    }
    Ok(())
}

/// The bilinear combination of partial vectors, i.e. the composite vector
/// `𝓑_{a,b}(ū;v̄)` (or its dual, or the gl(1|2) analogues). A single
/// coincidence between `ū` and `v̄` is resolved by the `ε`-limit of the sum.
pub fn composite_vector<S: BetheSide>(split: &SplitChain, u: &[EpsScalar], v: &[EpsScalar]) -> Result<Vector<S>> {
    composite_with::<S>(split, u, v, None)
}

fn composite_with<S: BetheSide>(
    split: &SplitChain,
    u: &[EpsScalar],
    v: &[EpsScalar],
    coefficient: Option<&str>,
) -> Result<Vector<S>> {
    check_params(split, u, v)?;
    let (v, shifted) = separate(u, v)?;
    let (coef, first) = bilinear(split.signature(), S::SIGNED_ORDER_12);
    let second = 3 - first;
    let arg = |p: u8| if p == 1 { VectorArgs::new(Some(1), &["uI"], &["vI"]) } else { VectorArgs::new(Some(2), &["uII"], &["vII"]) };
    let term = Term::new(free_split(), coefficient.unwrap_or(coef), vec![arg(first), arg(second)])?;
    let mut builder = SplitBuilder::<S>::new(split, true);
    let x = evaluate(&[term], &base(&[("u", u), ("v", &v)]), split.c(), Some(split), &mut builder)?;
    if shifted {
        x.limit()
    } else {
        Ok(x)
    }
}

fn bilinear_residual<S: BetheSide>(split: &SplitChain, u: &[EpsScalar], v: &[EpsScalar]) -> Result<Vector<S>> {
    let mut cache = MonodromyCache::new(split);
    let lhs: Vector<S> = build_side(&mut cache, u, v, false)?;
    lhs.sub(&composite_vector::<S>(split, u, v)?)
}

/// As the bilinear residual but with a caller-supplied coefficient
/// expression, for negative controls.
pub fn bilinear_residual_with<S: BetheSide>(
    split: &SplitChain,
    u: &[EpsScalar],
    v: &[EpsScalar],
    coefficient: &str,
) -> Result<Vector<S>> {
    let mut cache = MonodromyCache::new(split);
    let lhs: Vector<S> = build_side(&mut cache, u, v, false)?;
    lhs.sub(&composite_with::<S>(split, u, v, Some(coefficient))?)
}

fn require(split: &SplitChain, sig: Signature) -> Result<()> {
    if split.signature() != sig {
        return Err(Error::SignatureMismatch);
    }
    Ok(())
}

/// `𝔹_{a,b}(ū;v̄)` minus its bilinear expansion in partial Bethe vectors.
pub fn coproduct_bethe_check(split: &SplitChain, u: &[EpsScalar], v: &[EpsScalar]) -> Result<GradedVector> {
    require(split, Signature::GL21)?;
    bilinear_residual(split, u, v)
}

/// `ℂ_{a,b}(ū;v̄)` minus its bilinear expansion in partial dual vectors.
pub fn coproduct_dual_check(split: &SplitChain, u: &[EpsScalar], v: &[EpsScalar]) -> Result<DualGradedVector> {
    require(split, Signature::GL21)?;
    bilinear_residual(split, u, v)
}

pub(crate) fn tilde_checks<S: BetheSide>(split: &SplitChain, u: &[EpsScalar], v: &[EpsScalar]) -> Result<Vector<S>> {
    require(split, Signature::GL12)?;
    bilinear_residual(split, u, v)
}

/// `g(v̄_1,v̄_2) 𝔹^{(2)}(ū_2;v̄_2)𝔹^{(1)}(ū_1;v̄_1) − g(v̄_2,v̄_1) 𝔹^{(1)}(ū_1;v̄_1)𝔹^{(2)}(ū_2;v̄_2)`.
pub fn factor_exchange_check(
    split: &SplitChain,
    (u1, v1): (&[EpsScalar], &[EpsScalar]),
    (u2, v2): (&[EpsScalar], &[EpsScalar]),
) -> Result<GradedVector> {
    let c = split.c();
    let x1: GradedVector = build_side(&mut MonodromyCache::new(&split.part1), u1, v1, false)?;
    let x2: GradedVector = build_side(&mut MonodromyCache::new(&split.part2), u2, v2, false)?;
    let left = product(2, &x1, &x2)?.scale(&set_product(PairFn::G, v1, v2, c)?);
    let right = product(1, &x1, &x2)?.scale(&set_product(PairFn::G, v2, v1, c)?);
    left.sub(&right)
}

fn prepend(z: &EpsScalar, xs: &[EpsScalar]) -> Vec<EpsScalar> {
    let mut out = vec![z.clone()];
    out.extend_from_slice(xs);
    out
}

/// `1 / (λ_2(z) h(v̄,z))`
fn action_norm<M: Model + ?Sized>(model: &M, v: &[EpsScalar], z: &EpsScalar) -> Result<EpsScalar> {
    let mut den = model.lambda(2, z)?;
    for x in v {
        den = den.mul(&h(x, z, model.c())?);
    }
    den.recip()
}

/// `Σ_{ū⇒{u_0,ū_0}} g(u_0,z) f(u_0,ū_0) · term(ū_0)`
fn singleton_sum(
    u: &[EpsScalar],
    z: &EpsScalar,
    c: &Rational,
    mut term: impl FnMut(&[EpsScalar]) -> Result<GradedVector>,
    acc: &mut GradedVector,
) -> Result<()> {
    for k in 0..u.len() {
        let rest: Vec<EpsScalar> = u.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, x)| x.clone()).collect();
        let coef = g(&u[k], z, c)?.mul(&set_product(PairFn::F, &u[k..=k], &rest, c)?);
        acc.axpy(&coef, &term(&rest)?)?;
    }
    Ok(())
}

fn z_ok(u: &[EpsScalar], v: &[EpsScalar], z: &EpsScalar, xi: &[Rational]) -> Result<()> {
    if u.contains(z) || v.contains(z) || z.as_rational().is_some_and(|r| xi.contains(r)) {
        return Err(Error::InvalidParameters("z must avoid ū, v̄ and the inhomogeneities".into()));
    }
    Ok(())
}

/// Residual of the recursion expressing `𝔹_{a,b}(ū;{z,v̄})` through the
/// action of `T_23(z)` and `T_13(z)` on vectors with fewer parameters.
pub fn recursion_check<M: Model + ?Sized>(
    model: &M,
    u: &[EpsScalar],
    v: &[EpsScalar],
    z: &EpsScalar,
) -> Result<GradedVector> {
    if model.signature() != Signature::GL21 {
        return Err(Error::SignatureMismatch);
    }
    z_ok(u, v, z, &model.inhomogeneities())?;
    let c = model.c().clone();
    let mut cache = MonodromyCache::new(model);
    let tz = cache.get(z)?;
    let norm = action_norm(model, v, z)?;
    let b: GradedVector = build_side(&mut cache, u, v, false)?;
    let mut res = tz.t(2, 3).apply(&b)?.scale(&norm);
    let first: GradedVector = build_side(&mut cache, u, &prepend(z, v), false)?;
    res.axpy(&set_product(PairFn::F, core::slice::from_ref(z), u, &c)?.neg(), &first)?;
    let mut sum = GradedVector::zero(model.signature(), model.sites());
    singleton_sum(u, z, &c, |rest| {
        let x: GradedVector = build_side(&mut cache, rest, v, false)?;
        Ok(tz.t(1, 3).apply(&x)?.scale(&norm))
    }, &mut sum)?;
    res.sub(&sum)
}

/// Residuals of the `T_13(z)` and `T_23(z)` actions on composite vectors:
/// `T_13(z)/(λ_2(z)h(v̄,z)) 𝓑(ū;v̄) = 𝓑({z,ū};{z,v̄})` and
/// `T_23(z)/(λ_2(z)h(v̄,z)) 𝓑(ū;v̄) = f(z,ū)𝓑(ū;{z,v̄}) + Σ g(u_0,z)f(u_0,ū_0)𝓑({z,ū_0};{z,v̄})`.
pub fn intermediate_identities_check(
    split: &SplitChain,
    u: &[EpsScalar],
    v: &[EpsScalar],
    z: &EpsScalar,
) -> Result<(GradedVector, GradedVector)> {
    require(split, Signature::GL21)?;
    z_ok(u, v, z, &split.inhomogeneities())?;
    let c = split.c().clone();
    let tz = split.monodromy(z)?;
    let norm = action_norm(split, v, z)?;
    let b: GradedVector = composite_vector(split, u, v)?;
    let zv = prepend(z, v);
    let r13 = tz.t(1, 3).apply(&b)?.scale(&norm).sub(&composite_vector(split, &prepend(z, u), &zv)?)?;
    let mut r23 = tz.t(2, 3).apply(&b)?.scale(&norm);
    r23.axpy(&set_product(PairFn::F, core::slice::from_ref(z), u, &c)?.neg(), &composite_vector(split, u, &zv)?)?;
    let mut sum = GradedVector::zero(split.signature(), split.sites());
    singleton_sum(u, z, &c, |rest| composite_vector(split, &prepend(z, rest), &zv), &mut sum)?;
    Ok((r23.sub(&sum)?, r13))
}

/// Named sub-residuals of the replayed proof of the `T_13` identity.
#[derive(Clone, Debug)]
pub struct ProofReplay {
    pub residuals: Vec<(String, GradedVector)>,
    /// `g(v,z)g(v,u) + g(v,z)g(u,z) + g(z,u)g(v,u)` over all `u ∈ ū`, `v ∈ v̄`.
    pub g_identity: Vec<EpsScalar>,
}

impl ProofReplay {
    pub fn all_zero(&self) -> bool {
        self.residuals.iter().all(|(_, r)| r.is_zero()) && self.g_identity.iter().all(EpsScalar::is_zero)
    }
}

/// `g(v,z)g(v,u) + g(v,z)g(u,z) + g(z,u)g(v,u)`
pub fn g_identity(u: &EpsScalar, v: &EpsScalar, z: &EpsScalar, c: &Rational) -> Result<EpsScalar> {
    Ok(g(v, z, c)?
        .mul(&g(v, u, c)?)
        .add(&g(v, z, c)?.mul(&g(u, z, c)?))
        .add(&g(z, u, c)?.mul(&g(v, u, c)?)))
}

const PREFIX: &str = "r1^(2)(uI)*r3^(1)(vII)*f(uII,uI)*g(vI,vII)/f(vII,uI)";

fn args(part: u8, u: &[&str], v: &[&str]) -> VectorArgs {
    VectorArgs::new(Some(part), u, v)
}

fn piece(extra: &[(&str, &str, &str)], coef: &str, b2: (&[&str], &[&str]), b1: (&[&str], &[&str])) -> Result<Term> {
    let mut spec = free_split();
    for (src, one, rest) in extra {
        spec = spec.split(src, &[(one, PartSize::Exactly(1)), (rest, PartSize::Free)]);
    }
    let coef = alloc::format!("{PREFIX}*{coef}");
    Term::new(spec, &coef, vec![args(2, b2.0, b2.1), args(1, b1.0, b1.1)])
}

/// Pieces `C_{k,m}` of the coproduct action of `T_13(z)` on `𝓑(ū;v̄)`.
fn c_pieces() -> Result<Vec<(&'static str, Term)>> {
    let zu2 = ["z", "uII"];
    let zu1 = ["z", "uI"];
    let zv1 = ["z", "vI"];
    Ok(vec![
        ("C1,1", piece(&[], "r1^(2)(z)*f(uII,z)*g(z,vII)/f(vII,z)", (&["uII"], &["vII"]), (&zu1, &zv1))?),
        (
            "C1,2",
            piece(&[("uII", "ui", "uii")], "r1^(2)(ui)*f(uii,ui)*g(z,ui)*g(z,vII)/f(vII,ui)", (&["z", "uii"], &["vII"]), (&zu1, &zv1))?,
        ),
        (
            "C1,3",
            piece(
                &[("uII", "ui", "uii"), ("vII", "vi", "vii")],
                "r1^(2)(ui)*f(uii,ui)*g(vi,z)*g(vi,vii)/(f(vii,ui)*h(vi,z)*h(vi,ui))",
                (&["z", "uii"], &["z", "vii"]),
                (&zu1, &zv1),
            )?,
        ),
        ("C2,1", piece(&[], "g(z,vII)*f(z,uI)", (&zu2, &["vII"]), (&["uI"], &zv1))?),
        (
            "C2,2",
            piece(&[("uI", "ui", "uii")], "g(z,vII)*g(ui,z)*f(ui,uii)", (&zu2, &["vII"]), (&["z", "uii"], &zv1))?,
        ),
        (
            "C2,3",
            piece(&[("vII", "vi", "vii")], "g(vi,z)*g(vi,vii)/h(vi,z)*f(z,uI)", (&zu2, &["z", "vii"]), (&["uI"], &zv1))?,
        ),
        (
            "C2,4",
            piece(
                &[("vII", "vi", "vii"), ("uI", "ui", "uii")],
                "g(vi,z)*g(vi,vii)/h(vi,z)*g(ui,z)*f(ui,uii)",
                (&zu2, &["z", "vii"]),
                (&["z", "uii"], &zv1),
            )?,
        ),
        ("C3,1", piece(&[], "r3^(1)(z)*g(vI,z)", (&zu2, &["z", "vII"]), (&["uI"], &["vI"]))?),
        (
            "C3,2",
            piece(
                &[("vI", "vi", "vii")],
                "r3^(1)(vi)*f(z,uI)*g(z,vi)*g(vii,vi)/(h(vi,z)*f(vi,uI))",
                (&zu2, &["z", "vII"]),
                (&["uI"], &["z", "vii"]),
            )?,
        ),
        (
            "C3,3",
            piece(
                &[("uI", "ui", "uii"), ("vI", "vi", "vii")],
                "r3^(1)(vi)*g(ui,z)*f(ui,uii)*g(z,vi)*g(vii,vi)/(h(vi,ui)*f(vi,z)*f(vi,uii))",
                (&zu2, &["z", "vII"]),
                (&["z", "uii"], &["z", "vii"]),
            )?,
        ),
    ])
}

/// The three parts `A_i` of `𝓑({z,ū};{z,v̄})` according to where `z` lands.
fn a_pieces() -> Result<Vec<(&'static str, Term)>> {
    let t = |coef: &str, b2: (&[&str], &[&str]), b1: (&[&str], &[&str])| {
        Term::new(free_split(), coef, vec![args(2, b2.0, b2.1), args(1, b1.0, b1.1)])
    };
    Ok(vec![
        (
            "A1",
            t(
                "r1^(2)(z)*r1^(2)(uI)*r3^(1)(vII)*f(uII,z)*f(uII,uI)*g(vI,vII)*g(z,vII)/(f(vII,uI)*f(vII,z))",
                (&["uII"], &["vII"]),
                (&["z", "uI"], &["z", "vI"]),
            )?,
        ),
        (
            "A2",
            t(
                "r1^(2)(uI)*r3^(1)(z)*r3^(1)(vII)*f(uII,uI)*g(vI,z)*g(vI,vII)/f(vII,uI)",
                (&["z", "uII"], &["z", "vII"]),
                (&["uI"], &["vI"]),
            )?,
        ),
        (
            "A3",
            t(
                "r1^(2)(uI)*r3^(1)(vII)*f(z,uI)*f(uII,uI)*g(z,vII)*g(vI,vII)/f(vII,uI)",
                (&["z", "uII"], &["vII"]),
                (&["uI"], &["z", "vI"]),
            )?,
        ),
    ])
}

/// Replays the proof that `T_13(z)/(λ_2(z)h(v̄,z)) 𝓑(ū;v̄) = 𝓑({z,ū};{z,v̄})`
/// piece by piece.
pub fn proof_replay(split: &SplitChain, u: &[EpsScalar], v: &[EpsScalar], z: &EpsScalar) -> Result<ProofReplay> {
    require(split, Signature::GL21)?;
    z_ok(u, v, z, &split.inhomogeneities())?;
    let c = split.c().clone();
    let sets = base(&[("u", u), ("v", v), ("z", core::slice::from_ref(z))]);
    let mut builder = SplitBuilder::<Ket>::new(split, false);
    let mut eval = |terms: &[Term]| evaluate(terms, &sets, &c, Some(split), &mut builder);

    let mut a = BTreeMap::new();
    for (name, t) in a_pieces()? {
        a.insert(name, eval(&[t])?);
    }
    let mut pc = BTreeMap::new();
    for (name, t) in c_pieces()? {
        pc.insert(name, eval(&[t])?);
    }
    let sum = |names: &[&str], m: &BTreeMap<&str, GradedVector>| -> Result<GradedVector> {
        let mut acc = GradedVector::zero(split.signature(), split.sites());
        for n in names {
            acc = acc.add(&m[n])?;
        }
        Ok(acc)
    };

    let t1 = split.part1.monodromy(z)?;
    let t2 = split.part2.monodromy(z)?;
    let norm = action_norm(split, v, z)?;
    let b: GradedVector = composite_vector(split, u, v)?;
    let direct = |k: usize| -> Result<GradedVector> { Ok(koszul_tensor(t1.t(k, 3), t2.t(1, k))?.apply(&b)?.scale(&norm)) };

    let a_total = sum(&["A1", "A2", "A3"], &a)?;
    let c_total = sum(&["C1,1", "C1,2", "C1,3", "C2,1", "C2,2", "C2,3", "C2,4", "C3,1", "C3,2", "C3,3"], &pc)?;
    let target: GradedVector = composite_vector(split, &prepend(z, u), &prepend(z, v))?;
    let mut residuals = vec![
        ("A1+A2+A3 - B({z,u};{z,v})".into(), a_total.sub(&target)?),
        ("C1 - T13(1)T11(2) action".into(), sum(&["C1,1", "C1,2", "C1,3"], &pc)?.sub(&direct(1)?)?),
        ("C2 - T23(1)T12(2) action".into(), sum(&["C2,1", "C2,2", "C2,3", "C2,4"], &pc)?.sub(&direct(2)?)?),
        ("C3 - T33(1)T13(2) action".into(), sum(&["C3,1", "C3,2", "C3,3"], &pc)?.sub(&direct(3)?)?),
        ("A1 - C1,1".into(), a["A1"].sub(&pc["C1,1"])?),
        ("A2 - C3,1".into(), a["A2"].sub(&pc["C3,1"])?),
        ("A3 - C2,1".into(), a["A3"].sub(&pc["C2,1"])?),
        ("C1,2 + C2,2".into(), sum(&["C1,2", "C2,2"], &pc)?),
        ("C2,3 + C3,2".into(), sum(&["C2,3", "C3,2"], &pc)?),
        ("C1,3 + C2,4 + C3,3".into(), sum(&["C1,3", "C2,4", "C3,3"], &pc)?),
    ];
    residuals.push(("A1+A2+A3 - (C1+C2+C3)".into(), a_total.sub(&c_total)?));
    let mut g_id = Vec::new();
    for x in u {
        for y in v {
            g_id.push(g_identity(x, y, z, &c)?);
        }
    }
    Ok(ProofReplay { residuals, g_identity: g_id })
}
