use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Debug;
use core::marker::PhantomData;

use super::signature::{encode_key, key_string, Parity, Signature};
use crate::error::{Error, Result};
use crate::scalar::{EpsScalar, Rational};

/// Marker for column vectors (acted on from the left).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Ket;
/// Marker for row vectors (acted on from the right).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Bra;

/// Sparse vector; zero entries are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Vector<S> {
    sig: Signature,
    arity: usize,
    entries: BTreeMap<u64, EpsScalar>,
    _side: PhantomData<S>,
}

pub type GradedVector = Vector<Ket>;
pub type DualGradedVector = Vector<Bra>;

impl<S: Clone> Vector<S> {
    pub fn zero(sig: Signature, arity: usize) -> Self {
        Vector { sig, arity, entries: BTreeMap::new(), _side: PhantomData }
    }

    pub fn basis(sig: Signature, indices: &[u8]) -> Self {
        let mut v = Self::zero(sig, indices.len());
        v.entries.insert(encode_key(indices), EpsScalar::one());
        v
    }

    pub fn from_entries(
        sig: Signature,
        arity: usize,
        entries: impl IntoIterator<Item = (u64, EpsScalar)>,
    ) -> Self {
        let mut v = Self::zero(sig, arity);
        for (k, x) in entries {
            v.add_at(k, &x);
        }
        v
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn entries(&self) -> &BTreeMap<u64, EpsScalar> {
        &self.entries
    }

    pub fn get(&self, key: u64) -> EpsScalar {
        self.entries.get(&key).cloned().unwrap_or_else(EpsScalar::zero)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub(crate) fn add_at(&mut self, key: u64, x: &EpsScalar) {
        if x.is_zero() {
            return;
        }
        match self.entries.get_mut(&key) {
            Some(y) => {
                *y = y.add(x);
                if y.is_zero() {
                    self.entries.remove(&key);
                }
            }
            None => {
                self.entries.insert(key, x.clone());
            }
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
        for (k, x) in &other.entries {
            out.add_at(*k, x);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// In-place `self += k·other`.
    pub fn axpy(&mut self, k: &EpsScalar, other: &Self) -> Result<()> {
        self.check(other)?;
        if k.is_zero() {
            return Ok(());
        }
        for (key, x) in &other.entries {
            self.add_at(*key, &x.mul(k));
        }
        Ok(())
    }

    pub fn neg(&self) -> Self {
        self.map(|x| Ok(x.neg())).unwrap()
    }

    pub fn scale(&self, k: &EpsScalar) -> Self {
        if k.is_zero() {
            return Self::zero(self.sig, self.arity);
        }
        self.map(|x| Ok(x.mul(k))).unwrap()
    }

    fn map(&self, mut f: impl FnMut(&EpsScalar) -> Result<EpsScalar>) -> Result<Self> {
        let mut out = Self::zero(self.sig, self.arity);
        for (k, x) in &self.entries {
            let y = f(x)?;
            if !y.is_zero() {
                out.entries.insert(*k, y);
            }
        }
        Ok(out)
    }

    /// Entrywise `ε → 0`.
    pub fn limit(&self) -> Result<Self> {
        self.map(|x| Ok(EpsScalar::from(x.limit()?)))
    }

    /// Plain Kronecker product, `self` on the leading sites. No sign is applied.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch);
        }
        let shift = 3u64.pow(other.arity as u32);
        let mut out = Self::zero(self.sig, self.arity + other.arity);
        for (ka, a) in &self.entries {
            for (kb, b) in &other.entries {
                out.entries.insert(ka * shift + kb, a.mul(b));
            }
        }
        Ok(out)
    }

    /// Parity of the support, or `None` for the zero vector.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.entries.keys().map(|&k| self.sig.key_parity(k, self.arity));
        let first = it.next()?;
        Some(if it.all(|p| p == first) { Parity::of(first) } else { Parity::Mixed })
    }

    /// `(digit string, value at ε = 0)` pairs in key order.
    pub fn rational_entries(&self) -> Result<Vec<(String, Rational)>> {
        self.entries.iter().map(|(k, x)| Ok((key_string(*k, self.arity), x.limit()?))).collect()
    }

    /// Short rendering of the first few entries.
    pub fn sample(&self, max: usize) -> String {
        if self.entries.is_empty() {
            return String::from("0");
        }
        let mut parts: Vec<String> = self
            .entries
            .iter()
            .take(max)
            .map(|(k, x)| alloc::format!("{}:{}", key_string(*k, self.arity), x))
            .collect();
        if self.entries.len() > max {
            parts.push(alloc::format!("… ({} entries)", self.entries.len()));
        }
        parts.join(", ")
    }
}
