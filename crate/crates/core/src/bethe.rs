//! Bethe vectors and dual Bethe vectors from their explicit partition sums.
//!
//! On a gl(2|1) model
//! `𝔹_{a,b}(ū;v̄) = Σ K_n(v̄_I|ū_I) f(ū_I,ū_II) g(v̄_II,v̄_I) / [λ_2(ū_II) λ_2(v̄) f(v̄,ū)]
//!                   · 𝕋_13(v̄_I) 𝕋_23(v̄_II) T_12(ū_II) Ω`,
//! and on a gl(1|2) model the analogous sum with
//! `(−1)^a g(ū_I,v̄_I) f(v̄_I,v̄_II) g(ū_II,ū_I) h(v̄_I,v̄_I) / [λ_2(ū_II) λ_2(v̄) f(ū,v̄)]`
//! in front of `𝕋_13(v̄_I) T_23(v̄_II) 𝕋_12(ū_II) Ω`.
//!
//! If one `v_k` coincides with one `u_l`, `v_k` is shifted by `ε`, the sum is
//! evaluated over rational functions of `ε`, and the limit is taken entrywise.

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graded::{DualGradedVector, GradedOperator, GradedVector, Parity, Signature, Vector};
use crate::monodromy::{Model, Monodromy};
use crate::scalar::{h, izergin_k, set_product, EpsScalar, PairFn};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BetheSpec {
    pub u: Vec<EpsScalar>,
    pub v: Vec<EpsScalar>,
}

impl BetheSpec {
    pub fn new(u: Vec<EpsScalar>, v: Vec<EpsScalar>) -> Self {
        BetheSpec { u, v }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BetheVector {
    pub value: GradedVector,
    pub spec: BetheSpec,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DualBetheVector {
    pub value: DualGradedVector,
    pub spec: BetheSpec,
}

/// Products of odd monodromy entries that are symmetrised by `h`-factors.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OddProduct {
    T13,
    T23,
    T31,
    T32,
    /// gl(1|2) entries
    Tt12,
    Tt13,
    Tt21,
    Tt31,
}

impl OddProduct {
    fn indices(self) -> (usize, usize) {
        match self {
            OddProduct::T13 | OddProduct::Tt13 => (1, 3),
            OddProduct::T23 => (2, 3),
            OddProduct::T31 | OddProduct::Tt31 => (3, 1),
            OddProduct::T32 => (3, 2),
            OddProduct::Tt12 => (1, 2),
            OddProduct::Tt21 => (2, 1),
        }
    }

    fn signature(self) -> Signature {
        match self {
            OddProduct::T13 | OddProduct::T23 | OddProduct::T31 | OddProduct::T32 => Signature::GL21,
            _ => Signature::GL12,
        }
    }

    /// Raising entries divide by `∏_{j<k} h(u_k,u_j)`, lowering ones by `∏_{j<k} h(u_j,u_k)`.
    fn raising(self) -> bool {
        let (i, j) = self.indices();
        i < j
    }
}

/// `∏_{j<k} h(p_k,p_j)` (raising) or `∏_{j<k} h(p_j,p_k)` (lowering).
fn h_order(params: &[EpsScalar], raising: bool, c: &crate::Rational) -> Result<EpsScalar> {
    let mut acc = EpsScalar::one();
    for j in 0..params.len() {
        for k in j + 1..params.len() {
            let x = if raising { h(&params[k], &params[j], c)? } else { h(&params[j], &params[k], c)? };
            acc = acc.mul(&x);
        }
    }
    Ok(acc)
}

/// The symmetrised product `T_ij(p_1)···T_ij(p_n) / ∏ h` as a single operator.
pub fn sym_odd_product<M: Model + ?Sized>(
    which: OddProduct,
    params: &[EpsScalar],
    model: &M,
) -> Result<GradedOperator> {
    if model.signature() != which.signature() {
        return Err(Error::SignatureMismatch);
    }
    let (i, j) = which.indices();
    let mut acc = GradedOperator::identity(model.signature(), model.sites());
    for p in params {
        acc = acc.compose(model.monodromy(p)?.t(i, j))?;
    }
    let den = h_order(params, which.raising(), model.c())?;
    Ok(acc.scale(&den.recip()?))
}

/// Monodromies reused across the terms of a partition sum.
pub struct MonodromyCache<'m, M: ?Sized> {
    model: &'m M,
    entries: Vec<(EpsScalar, Rc<Monodromy>)>,
}

impl<'m, M: Model + ?Sized> MonodromyCache<'m, M> {
    pub fn new(model: &'m M) -> Self {
        MonodromyCache { model, entries: Vec::new() }
    }

    pub fn model(&self) -> &'m M {
        self.model
    }

    pub fn get(&mut self, u: &EpsScalar) -> Result<Rc<Monodromy>> {
        if let Some((_, m)) = self.entries.iter().find(|(x, _)| x == u) {
            return Ok(m.clone());
        }
        let m = Rc::new(self.model.monodromy(u)?);
        self.entries.push((u.clone(), m.clone()));
        Ok(m)
    }

    /// `T_ij(p_1)···T_ij(p_n) x`, divided by the raising `h`-product if `sym`.
    pub fn raise(&mut self, (i, j): (usize, usize), params: &[EpsScalar], sym: bool, x: &GradedVector) -> Result<GradedVector> {
        let mut out = x.clone();
        for p in params.iter().rev() {
            out = self.get(p)?.t(i, j).apply(&out)?;
        }
        if sym && params.len() > 1 {
            out = out.scale(&h_order(params, true, self.model.c())?.recip()?);
        }
        Ok(out)
    }

    /// `y T_ij(p_1)···T_ij(p_n)`, divided by the lowering `h`-product if `sym`.
    pub fn lower(&mut self, (i, j): (usize, usize), params: &[EpsScalar], sym: bool, y: &DualGradedVector) -> Result<DualGradedVector> {
        let mut out = y.clone();
        for p in params {
            out = self.get(p)?.t(i, j).dual_apply(&out)?;
        }
        if sym && params.len() > 1 {
            out = out.scale(&h_order(params, false, self.model.c())?.recip()?);
        }
        Ok(out)
    }
}

fn pick(xs: &[EpsScalar], mask: u32) -> Vec<EpsScalar> {
    xs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, x)| x.clone()).collect()
}

fn sign(e: usize) -> EpsScalar {
    if e.is_multiple_of(2) {
        EpsScalar::one()
    } else {
        EpsScalar::from_int(-1)
    }
}

/// Partition coefficient without the common prefactor.
fn term_coefficient<M: Model + ?Sized>(
    model: &M,
    ui: &[EpsScalar],
    uii: &[EpsScalar],
    vi: &[EpsScalar],
    vii: &[EpsScalar],
) -> Result<EpsScalar> {
    let c = model.c();
    let mut lam = EpsScalar::one();
    for u in uii {
        lam = lam.mul(&model.lambda(2, u)?);
    }
    let num = if model.signature() == Signature::GL21 {
        izergin_k(vi, ui, c)?
            .mul(&set_product(PairFn::F, ui, uii, c)?)
            .mul(&set_product(PairFn::G, vii, vi, c)?)
    } else {
        let mut hvv = EpsScalar::one();
        for (j, x) in vi.iter().enumerate() {
            for (k, y) in vi.iter().enumerate() {
                if j != k {
                    hvv = hvv.mul(&h(x, y, c)?);
                }
            }
        }
        set_product(PairFn::G, ui, vi, c)?
            .mul(&set_product(PairFn::F, vi, vii, c)?)
            .mul(&set_product(PairFn::G, uii, ui, c)?)
            .mul(&hvv)
    };
    num.div(&lam)
}

/// `1 / [λ_2(v̄) f(v̄,ū)]` (gl(2|1)) or `1 / [λ_2(v̄) f(ū,v̄)]` (gl(1|2)).
fn common_factor<M: Model + ?Sized>(model: &M, u: &[EpsScalar], v: &[EpsScalar]) -> Result<EpsScalar> {
    let c = model.c();
    let mut den = if model.signature() == Signature::GL21 {
        set_product(PairFn::F, v, u, c)?
    } else {
        set_product(PairFn::F, u, v, c)?
    };
    for x in v {
        den = den.mul(&model.lambda(2, x)?);
    }
    den.recip()
}

fn subsets(n: usize) -> impl Iterator<Item = u32> {
    0..(1u32 << n)
}

/// The partition sum over whatever parameters are given, without limits.
pub(crate) fn bethe_raw<M: Model + ?Sized>(
    cache: &mut MonodromyCache<'_, M>,
    u: &[EpsScalar],
    v: &[EpsScalar],
) -> Result<GradedVector> {
    let model = cache.model();
    let gl21 = model.signature() == Signature::GL21;
    let (a, b) = (u.len(), v.len());
    let full_u = (1u32 << a) - 1;
    let full_v = (1u32 << b) - 1;
    let omega = model.vacuum();
    let mut stage1: BTreeMap<u32, GradedVector> = BTreeMap::new();
    let mut stage2: BTreeMap<(u32, u32), GradedVector> = BTreeMap::new();
    let mut total = GradedVector::zero(model.signature(), model.sites());
    for ui_mask in subsets(a) {
        let uii_mask = full_u & !ui_mask;
        for vi_mask in subsets(b) {
            if vi_mask.count_ones() != ui_mask.count_ones() {
                continue;
            }
            let vii_mask = full_v & !vi_mask;
            let (ui, uii, vi, vii) = (pick(u, ui_mask), pick(u, uii_mask), pick(v, vi_mask), pick(v, vii_mask));
            let coef = term_coefficient(model, &ui, &uii, &vi, &vii)?;
            if coef.is_zero() {
                continue;
            }
            if let alloc::collections::btree_map::Entry::Vacant(e) = stage1.entry(uii_mask) {
                let x = cache.raise((1, 2), &uii, !gl21, &omega)?;
                e.insert(x);
            }
            if let alloc::collections::btree_map::Entry::Vacant(e) = stage2.entry((uii_mask, vii_mask)) {
                let x = cache.raise((2, 3), &vii, gl21, &stage1[&uii_mask])?;
                e.insert(x);
            }
            let x = cache.raise((1, 3), &vi, true, &stage2[&(uii_mask, vii_mask)])?;
            total.axpy(&coef, &x)?;
        }
    }
    let mut pre = common_factor(model, u, v)?;
    if !gl21 {
        pre = pre.mul(&sign(a));
    }
    Ok(total.scale(&pre))
}

pub(crate) fn dual_bethe_raw<M: Model + ?Sized>(
    cache: &mut MonodromyCache<'_, M>,
    u: &[EpsScalar],
    v: &[EpsScalar],
) -> Result<DualGradedVector> {
    let model = cache.model();
    let gl21 = model.signature() == Signature::GL21;
    let (a, b) = (u.len(), v.len());
    let full_u = (1u32 << a) - 1;
    let full_v = (1u32 << b) - 1;
    let omega = model.dual_vacuum();
    let mut stage1: BTreeMap<u32, DualGradedVector> = BTreeMap::new();
    let mut stage2: BTreeMap<(u32, u32), DualGradedVector> = BTreeMap::new();
    let mut total = DualGradedVector::zero(model.signature(), model.sites());
    for ui_mask in subsets(a) {
        let uii_mask = full_u & !ui_mask;
        for vi_mask in subsets(b) {
            if vi_mask.count_ones() != ui_mask.count_ones() {
                continue;
            }
            let vii_mask = full_v & !vi_mask;
            let (ui, uii, vi, vii) = (pick(u, ui_mask), pick(u, uii_mask), pick(v, vi_mask), pick(v, vii_mask));
            let coef = term_coefficient(model, &ui, &uii, &vi, &vii)?;
            if coef.is_zero() {
                continue;
            }
            if let alloc::collections::btree_map::Entry::Vacant(e) = stage1.entry(uii_mask) {
                let y = cache.lower((2, 1), &uii, !gl21, &omega)?;
                e.insert(y);
            }
            if let alloc::collections::btree_map::Entry::Vacant(e) = stage2.entry((uii_mask, vii_mask)) {
                let y = cache.lower((3, 2), &vii, gl21, &stage1[&uii_mask])?;
                e.insert(y);
            }
            let y = cache.lower((3, 1), &vi, true, &stage2[&(uii_mask, vii_mask)])?;
            total.axpy(&coef, &y)?;
        }
    }
    let mut pre = common_factor(model, u, v)?;
    pre = pre.mul(&if gl21 { sign(b * b.saturating_sub(1) / 2) } else { sign(a * a.saturating_sub(1) / 2) });
    Ok(total.scale(&pre))
}

/// Checks distinctness and moves a single coincident `v` off its `u` partner
/// by `ε`. Returns whether a shift happened.
pub(crate) fn separate(u: &[EpsScalar], v: &[EpsScalar]) -> Result<(Vec<EpsScalar>, bool)> {
    for (name, xs) in [("u", u), ("v", v)] {
        for (i, x) in xs.iter().enumerate() {
            if xs[i + 1..].contains(x) {
                return Err(Error::InvalidParameters(alloc::format!("repeated {name} parameter {x}")));
            }
        }
    }
    let hits: Vec<usize> = v.iter().enumerate().filter(|(_, x)| u.contains(x)).map(|(k, _)| k).collect();
    match hits.as_slice() {
        [] => Ok((v.to_vec(), false)),
        [k] => {
            let mut out = v.to_vec();
            out[*k] = out[*k].add(&EpsScalar::eps());
            if u.contains(&out[*k]) || v.contains(&out[*k]) {
                return Err(Error::InvalidParameters("eps shift collides".into()));
            }
            Ok((out, true))
        }
        _ => Err(Error::MultipleCollisions),
    }
}

fn check_inhomogeneities<M: Model + ?Sized>(model: &M, spec: &BetheSpec) -> Result<()> {
    let xi = model.inhomogeneities();
    for p in spec.u.iter().chain(&spec.v) {
        if p.as_rational().is_some_and(|r| xi.contains(r)) {
            return Err(Error::InvalidParameters(alloc::format!("parameter {p} is an inhomogeneity")));
        }
    }
    Ok(())
}

/// `𝔹_{a,b}(ū;v̄)` on a gl(2|1) model, `𝔹̃_{a,b}(ū;v̄)` on a gl(1|2) model.
pub fn build_bethe<M: Model + ?Sized>(model: &M, spec: &BetheSpec) -> Result<BetheVector> {
    let value = build_side(&mut MonodromyCache::new(model), &spec.u, &spec.v, false)?;
    Ok(BetheVector { value, spec: spec.clone() })
}

/// `ℂ_{a,b}(ū;v̄)` on a gl(2|1) model, `ℂ̃_{a,b}(ū;v̄)` on a gl(1|2) model.
pub fn build_dual_bethe<M: Model + ?Sized>(model: &M, spec: &BetheSpec) -> Result<DualBetheVector> {
    let value = build_side(&mut MonodromyCache::new(model), &spec.u, &spec.v, false)?;
    Ok(DualBetheVector { value, spec: spec.clone() })
}

/// Support parity; the zero vector is reported with the `requested` parity.
pub fn grading_of<S: Clone>(x: &Vector<S>, requested: u8) -> Parity {
    x.parity().unwrap_or(Parity::of(requested))
}

/// Kets are Bethe vectors, bras are dual Bethe vectors.
pub trait BetheSide: Clone + Sized {
    /// Whether `X^{(1)}Y^{(2)}` (rather than `X^{(2)}Y^{(1)}`) picks up the
    /// Koszul sign when written as a plain tensor of factor vectors.
    const SIGNED_ORDER_12: bool;
    fn raw<M: Model + ?Sized>(cache: &mut MonodromyCache<'_, M>, u: &[EpsScalar], v: &[EpsScalar]) -> Result<Vector<Self>>;
}

impl BetheSide for crate::graded::Ket {
    const SIGNED_ORDER_12: bool = false;
    fn raw<M: Model + ?Sized>(cache: &mut MonodromyCache<'_, M>, u: &[EpsScalar], v: &[EpsScalar]) -> Result<Vector<Self>> {
        bethe_raw(cache, u, v)
    }
}

impl BetheSide for crate::graded::Bra {
    const SIGNED_ORDER_12: bool = true;
    fn raw<M: Model + ?Sized>(cache: &mut MonodromyCache<'_, M>, u: &[EpsScalar], v: &[EpsScalar]) -> Result<Vector<Self>> {
        dual_bethe_raw(cache, u, v)
    }
}

/// A Bethe vector of either side. With `raw` the parameters are used as given
/// and no limit is taken; otherwise a single `u`/`v` coincidence is resolved.
pub(crate) fn build_side<S: BetheSide, M: Model + ?Sized>(
    cache: &mut MonodromyCache<'_, M>,
    u: &[EpsScalar],
    v: &[EpsScalar],
    raw: bool,
) -> Result<Vector<S>> {
    if raw {
        return S::raw(cache, u, v);
    }
    check_inhomogeneities(cache.model(), &BetheSpec::new(u.to_vec(), v.to_vec()))?;
    let (v, shifted) = separate(u, v)?;
    let x = S::raw(cache, u, &v)?;
    if shifted {
        x.limit()
    } else {
        Ok(x)
    }
}
