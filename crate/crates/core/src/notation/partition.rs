use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scalar::EpsScalar;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PartSize {
    Free,
    Exactly(usize),
    /// Same cardinality as another part, possibly of a different split.
    SameAs(String),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Part {
    pub name: String,
    pub size: PartSize,
}

impl Part {
    pub fn new(name: &str, size: PartSize) -> Self {
        Part { name: name.into(), size }
    }
}

/// `source ⇒ {parts…}`
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SetSplit {
    pub source: String,
    pub parts: Vec<Part>,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PartitionSpec {
    pub splits: Vec<SetSplit>,
}

impl PartitionSpec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn split(mut self, source: &str, parts: &[(&str, PartSize)]) -> Self {
        self.splits.push(SetSplit {
            source: source.into(),
            parts: parts.iter().map(|(n, s)| Part::new(n, s.clone())).collect(),
        });
        self
    }

    /// The usual two-set split `ū ⇒ {ū_I, ū_II}`, `v̄ ⇒ {v̄_I, v̄_II}` with
    /// `#ū_I = #v̄_I`.
    pub fn bethe(u: &str, v: &str) -> Self {
        let ui = format!("{u}I");
        PartitionSpec::new()
            .split(u, &[(&ui, PartSize::Free), (&format!("{u}II"), PartSize::Free)])
            .split(v, &[(&format!("{v}I"), PartSize::SameAs(ui)), (&format!("{v}II"), PartSize::Free)])
    }
}

/// Every admissible assignment of the source sets to their parts, each exactly
/// once. A source may be a set of `universe` or a part produced by an earlier
/// split. Earlier splits vary slowest, and within a split element `k` is the
/// `k`-th most significant digit, so the order is lexicographic.
///
/// An empty result is an error; see [`partition_terms`] for the lenient form.
pub fn enumerate_partitions(
    spec: &PartitionSpec,
    universe: &BTreeMap<String, Vec<EpsScalar>>,
) -> Result<Vec<BTreeMap<String, Vec<EpsScalar>>>> {
    let out = partition_terms(spec, universe)?;
    if out.is_empty() {
        return Err(Error::UnsatisfiableSpec("no admissible partition".into()));
    }
    Ok(out)
}

/// As [`enumerate_partitions`], but a spec that no partition satisfies yields
/// an empty list (an empty sum). Malformed specs are still errors.
pub fn partition_terms(
    spec: &PartitionSpec,
    universe: &BTreeMap<String, Vec<EpsScalar>>,
) -> Result<Vec<BTreeMap<String, Vec<EpsScalar>>>> {
    let mut names: Vec<&String> = Vec::new();
    for (k, s) in spec.splits.iter().enumerate() {
        if s.parts.is_empty() {
            return Err(Error::UnsatisfiableSpec(format!("`{}` split into no parts", s.source)));
        }
        let earlier = spec.splits[..k].iter().flat_map(|t| &t.parts).any(|p| p.name == s.source);
        if !earlier && !universe.contains_key(&s.source) {
            return Err(Error::UnboundName(s.source.clone()));
        }
        for p in &s.parts {
            if names.contains(&&p.name) || universe.contains_key(&p.name) {
                return Err(Error::UnsatisfiableSpec(format!("part `{}` named twice", p.name)));
            }
            names.push(&p.name);
        }
    }
    for s in &spec.splits {
        for p in &s.parts {
            if let PartSize::SameAs(o) = &p.size {
                if !names.contains(&o) {
                    return Err(Error::UnsatisfiableSpec(format!("unknown part `{o}`")));
                }
            }
        }
    }
    let mut out = Vec::new();
    walk(spec, universe, 0, &mut BTreeMap::new(), &mut out);
    Ok(out)
}

fn walk(
    spec: &PartitionSpec,
    universe: &BTreeMap<String, Vec<EpsScalar>>,
    k: usize,
    acc: &mut BTreeMap<String, Vec<EpsScalar>>,
    out: &mut Vec<BTreeMap<String, Vec<EpsScalar>>>,
) {
    let Some(s) = spec.splits.get(k) else {
        let ok = spec.splits.iter().flat_map(|s| &s.parts).all(|p| match &p.size {
            PartSize::SameAs(o) => acc[&p.name].len() == acc[o].len(),
            _ => true,
        });
        if ok {
            out.push(acc.clone());
        }
        return;
    };
    let items = acc.get(&s.source).or_else(|| universe.get(&s.source)).cloned().unwrap_or_default();
    for labels in assignments(items.len(), s) {
        for (pi, p) in s.parts.iter().enumerate() {
            let vals = items.iter().zip(&labels).filter(|(_, &l)| l == pi).map(|(x, _)| x.clone());
            acc.insert(p.name.clone(), vals.collect());
        }
        walk(spec, universe, k + 1, acc, out);
    }
    for p in &s.parts {
        acc.remove(&p.name);
    }
}

/// Part labels per element satisfying the fixed-size constraints of one split.
fn assignments(n: usize, s: &SetSplit) -> Vec<Vec<usize>> {
    let k = s.parts.len();
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    loop {
        let fits = s.parts.iter().enumerate().all(|(pi, p)| match p.size {
            PartSize::Exactly(m) => labels.iter().filter(|&&l| l == pi).count() == m,
            _ => true,
        });
        if fits {
            out.push(labels.clone());
        }
        // odometer, last element fastest
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            labels[i] += 1;
            if labels[i] < k {
                break;
            }
            labels[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn universe(sets: &[(&str, usize)]) -> BTreeMap<String, Vec<EpsScalar>> {
        let mut u = BTreeMap::new();
        let mut next = 1;
        for (name, n) in sets {
            let v = (0..*n).map(|_| {
                next += 1;
                EpsScalar::from_int(next)
            });
            u.insert(String::from(*name), v.collect());
        }
        u
    }

    #[test]
    fn free_split_counts_subsets() {
        let spec = PartitionSpec::new().split("u", &[("uI", PartSize::Free), ("uII", PartSize::Free)]);
        assert_eq!(enumerate_partitions(&spec, &universe(&[("u", 2)])).unwrap().len(), 4);
    }

    #[test]
    fn singleton() {
        let spec =
            PartitionSpec::new().split("u", &[("u0", PartSize::Exactly(1)), ("u0b", PartSize::Free)]);
        let bs = enumerate_partitions(&spec, &universe(&[("u", 3)])).unwrap();
        assert_eq!(bs.len(), 3);
        assert!(bs.iter().all(|b| b["u0"].len() == 1 && b["u0b"].len() == 2));
        // lexicographic: the first element is picked as u0 first
        assert_eq!(bs[0]["u0"], universe(&[("u", 3)])["u"][..1]);
    }

    #[test]
    fn linked_cardinality() {
        let spec = PartitionSpec::bethe("u", "v");
        let bs = enumerate_partitions(&spec, &universe(&[("u", 0), ("v", 1)])).unwrap();
        assert_eq!(bs.len(), 1);
        assert!(bs[0]["vI"].is_empty());
        // Σ_n C(2,n)C(2,n) = 1 + 4 + 1
        let bs = enumerate_partitions(&spec, &universe(&[("u", 2), ("v", 2)])).unwrap();
        assert_eq!(bs.len(), 6);
    }

    #[test]
    fn unsatisfiable() {
        let spec =
            PartitionSpec::new().split("u", &[("a", PartSize::Exactly(2)), ("b", PartSize::Exactly(2))]);
        assert!(matches!(
            enumerate_partitions(&spec, &universe(&[("u", 3)])),
            Err(Error::UnsatisfiableSpec(_))
        ));
        let spec = PartitionSpec::new().split("u", &[("a", PartSize::SameAs("zz".into()))]);
        assert!(enumerate_partitions(&spec, &universe(&[("u", 1)])).is_err());
        let spec = PartitionSpec::new().split("u", &[("u0", PartSize::Exactly(1)), ("u0b", PartSize::Free)]);
        assert!(partition_terms(&spec, &universe(&[("u", 0)])).unwrap().is_empty());
    }

    #[test]
    fn nested_split() {
        let spec = PartitionSpec::new()
            .split("u", &[("uI", PartSize::Free), ("uII", PartSize::Free)])
            .split("uII", &[("ui", PartSize::Exactly(1)), ("uii", PartSize::Free)]);
        let bs = enumerate_partitions(&spec, &universe(&[("u", 2)])).unwrap();
        // uII of size 1 (two ways, one singleton each) or size 2 (two singletons)
        assert_eq!(bs.len(), 4);
        assert!(bs.iter().all(|b| b["ui"].len() == 1 && b["uII"].len() == 1 + b["uii"].len()));
        let spec = PartitionSpec::new().split("w", &[("a", PartSize::Free)]);
        assert!(matches!(enumerate_partitions(&spec, &universe(&[("u", 1)])), Err(Error::UnboundName(_))));
    }
}
