//! Run configuration: JSON loading, defaulting and validation.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use superbethe_core::composite::SplitChain;
use superbethe_core::graded::{SignRule, Signature};
use superbethe_core::monodromy::ChainSpec;
use superbethe_core::Rational;

pub const SUITES: [&str; 10] = [
    "scalar",
    "ybe",
    "rtt",
    "commutator",
    "bethe",
    "actions",
    "recursion",
    "composite",
    "proof-replay",
    "gl12",
];

/// Suites that need the two-part split `chains[split]`, `chains[split+1]`.
const SPLIT_SUITES: [&str; 3] = ["composite", "proof-replay", "gl12"];

pub const DEFAULT_SEED: u64 = 20_240_601;

/// The configuration run by `verify`/`report` when no `--config` is given.
pub const DEFAULT_CONFIG: &str = include_str!("../data/default.json");

/// A schema or validation failure, located by a JSON pointer into the input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{pointer}: {message}")]
pub struct SchemaError {
    pub pointer: String,
    pub message: String,
}

impl SchemaError {
    fn at(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        SchemaError { pointer: pointer.into(), message: message.into() }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("schema error at {0}")]
    Schema(#[from] SchemaError),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    c: Option<String>,
    signature: Option<String>,
    #[serde(default)]
    chains: Vec<RawChain>,
    split: Option<usize>,
    u: Option<Vec<String>>,
    v: Option<Vec<String>>,
    z: Option<String>,
    #[serde(default)]
    suites: Vec<String>,
    campaigns: Option<usize>,
    seed: Option<u64>,
    caps: Option<RawCaps>,
    overrides: Option<RawOverrides>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChain {
    #[serde(rename = "L")]
    l: Option<usize>,
    xi: Option<Vec<String>>,
    twist: Option<Vec<String>>,
    signature: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCaps {
    max_a: Option<usize>,
    max_b: Option<usize>,
    max_l: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOverrides {
    bilinear_coefficient: Option<String>,
    dual_bilinear_coefficient: Option<String>,
    #[serde(default)]
    action_coefficients: BTreeMap<String, String>,
    koszul: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_a: usize,
    pub max_b: usize,
    pub max_l: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_a: 2, max_b: 2, max_l: 4 }
    }
}

/// Hooks for negative controls. Empty in any honest configuration.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub bilinear_coefficient: Option<String>,
    pub dual_bilinear_coefficient: Option<String>,
    /// `"T22#1"` → replacement coefficient of term 1 of the `T22` formula.
    pub action_coefficients: BTreeMap<String, String>,
    pub sign_rule: SignRule,
}

/// Explicit parameter sets; they form one extra campaign next to the random ones.
#[derive(Clone, Debug, Default)]
pub struct FixedParams {
    pub u: Vec<Rational>,
    pub v: Vec<Rational>,
    pub z: Option<Rational>,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub c: Rational,
    pub signature: Signature,
    pub chains: Vec<ChainSpec>,
    pub split: usize,
    pub fixed: Option<FixedParams>,
    pub suites: Vec<String>,
    pub campaigns: usize,
    pub seed: u64,
    pub caps: Caps,
    pub overrides: Overrides,
}

impl RunConfig {
    /// The two-part chain `chains[split] ⊗ chains[split+1]`, if present.
    pub fn split_chain(&self) -> Option<SplitChain> {
        let p1 = self.chains.get(self.split)?;
        let p2 = self.chains.get(self.split + 1)?;
        SplitChain::new(p1.clone(), p2.clone()).ok()
    }

    pub fn runs(&self, suite: &str) -> bool {
        self.suites.iter().any(|s| s == suite)
    }

    /// Replaces the configured suites, as `verify --suite` does.
    pub fn select_suites(&mut self, names: &[String]) -> Result<(), SchemaError> {
        for (i, s) in names.iter().enumerate() {
            if !SUITES.contains(&s.as_str()) {
                return Err(SchemaError::at(format!("/suites/{i}"), format!("unknown suite `{s}`")));
            }
            if SPLIT_SUITES.contains(&s.as_str()) && self.split_chain().is_none() {
                return Err(SchemaError::at("/split", format!("suite `{s}` needs chains[split] and chains[split+1]")));
            }
        }
        self.suites = SUITES.iter().filter(|s| names.iter().any(|n| n == *s)).map(|s| s.to_string()).collect();
        Ok(())
    }

    pub fn set_caps(&mut self, max_a: Option<usize>, max_b: Option<usize>) -> Result<(), SchemaError> {
        for (name, x) in [("max_a", max_a), ("max_b", max_b)] {
            if x.is_some_and(|x| x > 3) {
                return Err(SchemaError::at(format!("/caps/{name}"), "at most 3"));
            }
        }
        self.caps.max_a = max_a.unwrap_or(self.caps.max_a);
        self.caps.max_b = max_b.unwrap_or(self.caps.max_b);
        Ok(())
    }
}

pub fn load_config(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
    Ok(parse_config(&text)?)
}

pub fn parse_config(text: &str) -> Result<RunConfig, SchemaError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let pointer = pointer_of(e.path());
        SchemaError::at(pointer, e.into_inner().to_string())
    })?;
    validate(raw)
}

/// `serde_path_to_error` paths are dotted (`chains[0].xi`); reports use JSON pointers.
fn pointer_of(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        match seg {
            Segment::Seq { index } => out.push_str(&format!("/{index}")),
            Segment::Map { key } | Segment::Enum { variant: key } => out.push_str(&format!("/{key}")),
            Segment::Unknown => out.push_str("/?"),
        }
    }
    if out.is_empty() {
        out.push('/');
    }
    out
}

fn rational(s: &str, pointer: &str) -> Result<Rational, SchemaError> {
    s.parse().map_err(|_| SchemaError::at(pointer, format!("`{s}` is not a rational p/q")))
}

fn rationals(xs: &[String], pointer: &str) -> Result<Vec<Rational>, SchemaError> {
    xs.iter().enumerate().map(|(i, s)| rational(s, &format!("{pointer}/{i}"))).collect()
}

fn signature(s: &str, pointer: &str) -> Result<Signature, SchemaError> {
    Signature::from_name(s).ok_or_else(|| SchemaError::at(pointer, format!("unknown signature `{s}`")))
}

fn validate(raw: RawConfig) -> Result<RunConfig, SchemaError> {
    let c = match &raw.c {
        Some(s) => rational(s, "/c")?,
        None => Rational::one(),
    };
    if c.is_zero() {
        return Err(SchemaError::at("/c", "c must be nonzero"));
    }
    let sig = match &raw.signature {
        Some(s) => signature(s, "/signature")?,
        None => Signature::GL21,
    };

    let mut caps = Caps::default();
    if let Some(rc) = &raw.caps {
        caps.max_a = rc.max_a.unwrap_or(caps.max_a);
        caps.max_b = rc.max_b.unwrap_or(caps.max_b);
        caps.max_l = rc.max_l.unwrap_or(caps.max_l);
    }
    for (name, x) in [("max_a", caps.max_a), ("max_b", caps.max_b)] {
        if x > 3 {
            return Err(SchemaError::at(format!("/caps/{name}"), "at most 3"));
        }
    }
    if caps.max_l > 6 {
        return Err(SchemaError::at("/caps/max_l", "at most 6"));
    }

    let mut chains = Vec::with_capacity(raw.chains.len());
    for (k, rc) in raw.chains.iter().enumerate() {
        let at = |field: &str| format!("/chains/{k}{field}");
        let xi = match (&rc.xi, rc.l) {
            (Some(xs), l) => {
                let xi = rationals(xs, &at("/xi"))?;
                if l.is_some_and(|l| l != xi.len()) {
                    return Err(SchemaError::at(at("/L"), "L disagrees with the number of inhomogeneities"));
                }
                xi
            }
            // evenly spaced, away from c-shifts of each other
            (None, Some(l)) => (0..l as i64).map(|i| Rational::from_int(3 * i)).collect(),
            (None, None) => return Err(SchemaError::at(at(""), "chain needs `L` or `xi`")),
        };
        for (i, a) in xi.iter().enumerate() {
            if xi[i + 1..].contains(a) {
                return Err(SchemaError::at(at("/xi"), format!("inhomogeneity {a} repeated")));
            }
        }
        if xi.len() > caps.max_l {
            return Err(SchemaError::at(at("/L"), format!("chain length {} exceeds max_l {}", xi.len(), caps.max_l)));
        }
        let twist = match &rc.twist {
            None => [Rational::one(), Rational::one(), Rational::one()],
            Some(t) => {
                let t = rationals(t, &at("/twist"))?;
                let t: [Rational; 3] =
                    t.try_into().map_err(|_| SchemaError::at(at("/twist"), "twist needs three entries"))?;
                if let Some(i) = t.iter().position(Rational::is_zero) {
                    return Err(SchemaError::at(at(&format!("/twist/{i}")), "twist entries must be nonzero"));
                }
                t
            }
        };
        let chain_sig = match &rc.signature {
            Some(s) => signature(s, &at("/signature"))?,
            None => sig,
        };
        let chain = ChainSpec::new(xi, twist, chain_sig, c.clone()).map_err(|e| SchemaError::at(at(""), e.to_string()))?;
        chains.push(chain);
    }

    let mut suites = Vec::new();
    for (i, s) in raw.suites.iter().enumerate() {
        if !SUITES.contains(&s.as_str()) {
            return Err(SchemaError::at(format!("/suites/{i}"), format!("unknown suite `{s}`")));
        }
        if suites.contains(s) {
            return Err(SchemaError::at(format!("/suites/{i}"), format!("suite `{s}` listed twice")));
        }
        suites.push(s.clone());
    }

    let split = raw.split.unwrap_or(0);
    if suites.iter().any(|s| SPLIT_SUITES.contains(&s.as_str())) {
        let (Some(p1), Some(p2)) = (chains.get(split), chains.get(split + 1)) else {
            return Err(SchemaError::at("/split", "split suites need chains[split] and chains[split+1]"));
        };
        if p1.signature() != p2.signature() {
            return Err(SchemaError::at("/split", "the two parts have different signatures"));
        }
        if p1.len() + p2.len() > caps.max_l {
            return Err(SchemaError::at("/split", "composite chain exceeds max_l"));
        }
        SplitChain::new(p1.clone(), p2.clone()).map_err(|e| SchemaError::at("/split", e.to_string()))?;
    }

    let fixed = if raw.u.is_some() || raw.v.is_some() || raw.z.is_some() {
        let u = rationals(raw.u.as_deref().unwrap_or_default(), "/u")?;
        let v = rationals(raw.v.as_deref().unwrap_or_default(), "/v")?;
        let z = raw.z.as_deref().map(|s| rational(s, "/z")).transpose()?;
        for (name, xs) in [("u", &u), ("v", &v)] {
            for (i, a) in xs.iter().enumerate() {
                if xs[i + 1..].contains(a) {
                    return Err(SchemaError::at(format!("/{name}"), format!("parameter {a} repeated")));
                }
            }
        }
        Some(FixedParams { u, v, z })
    } else {
        None
    };

    let mut overrides = Overrides::default();
    if let Some(ro) = raw.overrides {
        overrides.bilinear_coefficient = ro.bilinear_coefficient;
        overrides.dual_bilinear_coefficient = ro.dual_bilinear_coefficient;
        for key in ro.action_coefficients.keys() {
            let ok = key
                .split_once('#')
                .is_some_and(|(el, n)| superbethe_core::actions::Element::from_name(el).is_some() && n.parse::<usize>().is_ok());
            if !ok {
                return Err(SchemaError::at(
                    format!("/overrides/action_coefficients/{key}"),
                    "expected a key of the form ELEMENT#TERM, e.g. T22#1",
                ));
            }
        }
        overrides.action_coefficients = ro.action_coefficients;
        overrides.sign_rule = match ro.koszul.as_deref() {
            None | Some("koszul") => SignRule::Koszul,
            Some("dropped") => SignRule::Dropped,
            Some(other) => {
                return Err(SchemaError::at("/overrides/koszul", format!("expected `koszul` or `dropped`, got `{other}`")))
            }
        };
    }

    Ok(RunConfig {
        c,
        signature: sig,
        chains,
        split,
        fixed,
        suites,
        campaigns: raw.campaigns.unwrap_or(1),
        seed: raw.seed.unwrap_or(DEFAULT_SEED),
        caps,
        overrides,
    })
}
