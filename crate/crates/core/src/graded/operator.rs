use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::signature::{encode_key, Parity, Signature};
use super::vector::{DualGradedVector, GradedVector, Vector};
use crate::error::{Error, Result};
use crate::scalar::EpsScalar;

/// How signs are generated when graded factors are tensored.
/// `Dropped` ignores the grading and exists only to demonstrate that the
/// checks can fail.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum SignRule {
    #[default]
    Koszul,
    Dropped,
}

type Column = BTreeMap<u64, EpsScalar>;

/// Sparse operator stored column-major: column key → (row key → value).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedOperator {
    sig: Signature,
    arity: usize,
    cols: BTreeMap<u64, Column>,
    parity: Parity,
}

fn add_into(col: &mut Column, row: u64, x: EpsScalar) {
    if x.is_zero() {
        return;
    }
    match col.get_mut(&row) {
        Some(y) => {
            *y = y.add(&x);
            if y.is_zero() {
                col.remove(&row);
            }
        }
        None => {
            col.insert(row, x);
        }
    }
}

impl GradedOperator {
    pub fn zero(sig: Signature, arity: usize) -> Self {
        GradedOperator { sig, arity, cols: BTreeMap::new(), parity: Parity::Even }
    }

    pub fn identity(sig: Signature, arity: usize) -> Self {
        let mut op = Self::zero(sig, arity);
        for k in 0..3u64.pow(arity as u32) {
            op.cols.insert(k, BTreeMap::from([(k, EpsScalar::one())]));
        }
        op
    }

    /// `E_ij` on a single site.
    pub fn matrix_unit(sig: Signature, i: usize, j: usize) -> Self {
        let mut op = Self::zero(sig, 1);
        let (r, c) = (i as u64 - 1, j as u64 - 1);
        op.cols.insert(c, BTreeMap::from([(r, EpsScalar::one())]));
        op.parity = Parity::of(sig.parity(i) + sig.parity(j));
        op
    }

    /// Builds from `(row, column, value)` triples; the parity is inferred.
    pub fn from_entries(
        sig: Signature,
        arity: usize,
        entries: impl IntoIterator<Item = (u64, u64, EpsScalar)>,
    ) -> Self {
        let mut op = Self::zero(sig, arity);
        for (r, c, x) in entries {
            add_into(op.cols.entry(c).or_default(), r, x);
        }
        op.prune();
        op.parity = op.support_parity();
        op
    }

    fn prune(&mut self) {
        self.cols.retain(|_, col| !col.is_empty());
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn get(&self, row: &[u8], col: &[u8]) -> EpsScalar {
        self.get_key(encode_key(row), encode_key(col))
    }

    pub fn get_key(&self, row: u64, col: u64) -> EpsScalar {
        self.cols.get(&col).and_then(|c| c.get(&row)).cloned().unwrap_or_else(EpsScalar::zero)
    }

    /// `(row, column, value)` in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (u64, u64, &EpsScalar)> {
        self.cols.iter().flat_map(|(c, col)| col.iter().map(move |(r, x)| (*r, *c, x)))
    }

    pub fn nnz(&self) -> usize {
        self.cols.values().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.is_empty()
    }

    /// Parity of the support: `Even` for the zero operator.
    pub fn support_parity(&self) -> Parity {
        let mut it = self.entries().map(|(r, c, _)| {
            self.sig.key_parity(r, self.arity) ^ self.sig.key_parity(c, self.arity)
        });
        match it.next() {
            None => Parity::Even,
            Some(p) if it.all(|q| q == p) => Parity::of(p),
            Some(_) => Parity::Mixed,
        }
    }

    /// Sets the declared parity after checking every entry respects it.
    pub fn declare(mut self, p: Parity) -> Result<Self> {
        if !self.respects(p) {
            return Err(Error::InvalidParameters(alloc::format!("entries violate declared parity {p:?}")));
        }
        self.parity = p;
        Ok(self)
    }

    pub fn respects(&self, p: Parity) -> bool {
        match p.bit() {
            None => true,
            Some(b) => self.entries().all(|(r, c, _)| {
                self.sig.key_parity(r, self.arity) ^ self.sig.key_parity(c, self.arity) == b
            }),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch);
        }
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { left: self.arity, right: other.arity });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (c, col) in &other.cols {
            let dst = out.cols.entry(*c).or_default();
            for (r, x) in col {
                add_into(dst, *r, x.clone());
            }
        }
        out.prune();
        out.parity = if self.is_zero() {
            other.parity
        } else if other.is_zero() || self.parity == other.parity {
            self.parity
        } else {
            Parity::Mixed
        };
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&EpsScalar::from_int(-1))
    }

    pub fn scale(&self, k: &EpsScalar) -> Self {
        if k.is_zero() {
            return GradedOperator { parity: self.parity, ..Self::zero(self.sig, self.arity) };
        }
        let mut out = self.clone();
        for col in out.cols.values_mut() {
            for x in col.values_mut() {
                *x = x.mul(k);
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.sig, self.arity);
        for (c, bcol) in &other.cols {
            let mut acc = Column::new();
            for (k, b) in bcol {
                if let Some(acol) = self.cols.get(k) {
                    for (r, a) in acol {
                        add_into(&mut acc, *r, a.mul(b));
                    }
                }
            }
            if !acc.is_empty() {
                out.cols.insert(*c, acc);
            }
        }
        out.parity = self.parity.add(other.parity);
        Ok(out)
    }

    pub fn apply(&self, x: &GradedVector) -> Result<GradedVector> {
        if self.sig != x.signature() {
            return Err(Error::SignatureMismatch);
        }
        if self.arity != x.arity() {
            return Err(Error::ArityMismatch { left: self.arity, right: x.arity() });
        }
        let mut out = Vector::zero(self.sig, self.arity);
        for (k, xv) in x.entries() {
            if let Some(col) = self.cols.get(k) {
                for (r, a) in col {
                    out.add_at(*r, &a.mul(xv));
                }
            }
        }
        Ok(out)
    }

    /// Row vector times operator.
    pub fn dual_apply(&self, y: &DualGradedVector) -> Result<DualGradedVector> {
        if self.sig != y.signature() {
            return Err(Error::SignatureMismatch);
        }
        if self.arity != y.arity() {
            return Err(Error::ArityMismatch { left: self.arity, right: y.arity() });
        }
        let mut out = Vector::zero(self.sig, self.arity);
        for (c, col) in &self.cols {
            let mut acc = EpsScalar::zero();
            for (r, a) in col {
                if let Some(yv) = y.entries().get(r) {
                    acc = acc.add(&yv.mul(a));
                }
            }
            out.add_at(*c, &acc);
        }
        Ok(out)
    }

    /// Entrywise `ε → 0`.
    pub fn limit(&self) -> Result<Self> {
        let mut out = Self::zero(self.sig, self.arity);
        for (r, c, x) in self.entries() {
            add_into(out.cols.entry(c).or_default(), r, EpsScalar::from(x.limit()?));
        }
        out.prune();
        out.parity = self.parity;
        Ok(out)
    }

    /// A short rendering of the first few nonzero entries.
    pub fn sample(&self, max: usize) -> alloc::string::String {
        use super::signature::key_string;
        if self.is_zero() {
            return "0".into();
        }
        let mut parts: Vec<_> = self
            .entries()
            .take(max)
            .map(|(r, c, x)| {
                alloc::format!("[{},{}]:{}", key_string(r, self.arity), key_string(c, self.arity), x)
            })
            .collect();
        if self.nnz() > max {
            parts.push(alloc::format!("… ({} entries)", self.nnz()));
        }
        parts.join(", ")
    }
}

/// Graded tensor product:
/// `(A⊗B)[(r_A r_B),(c_A c_B)] = (−1)^{(p(r_B)+p(c_B))·p(c_A)} A[r_A,c_A]·B[r_B,c_B]`.
pub fn koszul_tensor(a: &GradedOperator, b: &GradedOperator) -> Result<GradedOperator> {
    koszul_tensor_with(a, b, SignRule::Koszul)
}

pub fn koszul_tensor_with(a: &GradedOperator, b: &GradedOperator, rule: SignRule) -> Result<GradedOperator> {
    if a.sig != b.sig {
        return Err(Error::SignatureMismatch);
    }
    let sig = a.sig;
    let shift = 3u64.pow(b.arity as u32);
    let mut out = GradedOperator::zero(sig, a.arity + b.arity);
    for (ca, acol) in &a.cols {
        let pca = sig.key_parity(*ca, a.arity);
        for (cb, bcol) in &b.cols {
            let pcb = sig.key_parity(*cb, b.arity);
            let col = out.cols.entry(ca * shift + cb).or_default();
            for (ra, x) in acol {
                for (rb, y) in bcol {
                    let prb = sig.key_parity(*rb, b.arity);
                    let odd = rule == SignRule::Koszul && ((prb ^ pcb) & pca) == 1;
                    let v = x.mul(y);
                    col.insert(ra * shift + rb, if odd { v.neg() } else { v });
                }
            }
        }
    }
    out.prune();
    out.parity = a.parity.add(b.parity);
    Ok(out)
}

/// Left-folded tensor product of a list of factors.
pub fn tensor_chain(factors: &[GradedOperator], rule: SignRule) -> Result<GradedOperator> {
    let (first, rest) = factors.split_first().ok_or_else(|| Error::InvalidParameters("empty tensor".into()))?;
    let mut acc = first.clone();
    for f in rest {
        acc = koszul_tensor_with(&acc, f, rule)?;
    }
    Ok(acc)
}
