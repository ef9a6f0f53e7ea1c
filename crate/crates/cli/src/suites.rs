//! Planning and running the verification suites.
//!
//! Planning is sequential and owns all randomness; the planned checks are
//! pure closures, run on the rayon pool and collected in plan order.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use superbethe_core::actions::{action_check, action_formulas, ActionFormula, Element};
use superbethe_core::bethe::{build_bethe, build_dual_bethe, BetheSpec};
use superbethe_core::composite::{
    bilinear_residual_with, coproduct_residual, factor_exchange_check, intermediate_identities_check,
    proof_replay, recursion_check, coproduct_bethe_check, coproduct_dual_check, SplitChain,
};
use superbethe_core::gl12::{
    build_tilde_bethe, gradation_relation_holds, resolve_sign, resolve_sign_at, coproduct_tilde_bethe_check, coproduct_tilde_dual_check,
    SignConvention,
};
use superbethe_core::graded::{check_ybe, r_matrix, GradedOperator, Parity, Signature, Vector};
use superbethe_core::monodromy::{check_all_supercommutators, check_rtt_with, ChainSpec, Model};
use superbethe_core::composite::g_identity;
use superbethe_core::scalar::{f, g, h, izergin_k};
use superbethe_core::{EpsScalar, Error, Rational};

use crate::config::{RunConfig, SUITES};
use crate::report::{CheckRecord, Environment, Report, Summary};
use crate::sample::Sampler;

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    pub zero: bool,
    pub sample: String,
}

impl Residual {
    pub fn exact(zero: bool, sample: impl Into<String>) -> Self {
        Residual { zero, sample: sample.into() }
    }

    /// Zero iff every part is; the sample names the first nonzero part.
    pub fn all(parts: Vec<(String, Residual)>) -> Self {
        match parts.into_iter().find(|(_, r)| !r.zero) {
            None => Residual::exact(true, "0"),
            Some((label, r)) => Residual::exact(false, format!("{label}: {}", r.sample)),
        }
    }
}

pub trait Measure {
    fn residual(&self) -> Residual;
}

const SAMPLE: usize = 3;

impl<S: Clone> Measure for Vector<S> {
    fn residual(&self) -> Residual {
        Residual::exact(self.is_zero(), self.sample(SAMPLE))
    }
}

impl Measure for GradedOperator {
    fn residual(&self) -> Residual {
        Residual::exact(self.is_zero(), self.sample(SAMPLE))
    }
}

impl Measure for EpsScalar {
    fn residual(&self) -> Residual {
        Residual::exact(self.is_zero(), self.to_string())
    }
}

type CheckFn = Box<dyn Fn() -> superbethe_core::Result<Residual> + Send + Sync>;

pub struct Job {
    pub suite: &'static str,
    pub name: String,
    pub parameters: BTreeMap<String, String>,
    run: CheckFn,
}

/// One set of sample points.
#[derive(Clone, Debug)]
pub struct Campaign {
    pub label: String,
    pub u: Vec<Rational>,
    pub v: Vec<Rational>,
    pub z: Rational,
    pub w: Rational,
}

impl Campaign {
    fn u(&self, n: usize) -> Vec<EpsScalar> {
        self.u[..n].iter().cloned().map(EpsScalar::from).collect()
    }

    fn v(&self, n: usize) -> Vec<EpsScalar> {
        self.v[..n].iter().cloned().map(EpsScalar::from).collect()
    }

    fn z(&self) -> EpsScalar {
        EpsScalar::from(self.z.clone())
    }

    fn w(&self) -> EpsScalar {
        EpsScalar::from(self.w.clone())
    }
}

pub struct Plan {
    pub jobs: Vec<Job>,
    pub sign_convention: Option<SignConvention>,
}

fn list(xs: &[Rational]) -> String {
    let items: Vec<String> = xs.iter().map(Rational::to_string).collect();
    format!("[{}]", items.join(", "))
}

fn eps_list(xs: &[EpsScalar]) -> String {
    let items: Vec<String> = xs.iter().map(EpsScalar::to_string).collect();
    format!("[{}]", items.join(", "))
}

fn with_signature(chain: &ChainSpec, sig: Signature) -> ChainSpec {
    ChainSpec::new(chain.xi().to_vec(), chain.twist().clone(), sig, chain.c().clone())
        .expect("a validated chain stays valid under a change of signature")
}

fn split_with_signature(split: &SplitChain, sig: Signature) -> SplitChain {
    SplitChain::new(with_signature(split.part(1), sig), with_signature(split.part(2), sig))
        .expect("a validated split stays valid under a change of signature")
}

struct Planner<'a> {
    cfg: &'a RunConfig,
    jobs: Vec<Job>,
}

impl Planner<'_> {
    fn push(
        &mut self,
        suite: &'static str,
        name: String,
        parameters: Vec<(&str, String)>,
        run: impl Fn() -> superbethe_core::Result<Residual> + Send + Sync + 'static,
    ) {
        let parameters = parameters.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        self.jobs.push(Job { suite, name, parameters, run: Box::new(run) });
    }

    fn grid(&self, camp: &Campaign, max_sum: Option<usize>) -> Vec<(usize, usize)> {
        let amax = self.cfg.caps.max_a.min(camp.u.len());
        let bmax = self.cfg.caps.max_b.min(camp.v.len());
        let mut out = Vec::new();
        for a in 0..=amax {
            for b in 0..=bmax {
                if max_sum.is_none_or(|m| a + b <= m) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

fn draw_campaigns(cfg: &RunConfig) -> Vec<Campaign> {
    let mut rng = Sampler::new(cfg.seed);
    let mut avoid: Vec<Rational> = cfg.chains.iter().flat_map(|ch| ch.xi().to_vec()).collect();
    avoid.sort_by_key(|x| x.to_string());
    avoid.dedup();
    let pool = 4;
    let mut out = Vec::new();
    if let Some(fx) = &cfg.fixed {
        let mut taken = avoid.clone();
        taken.extend(fx.u.iter().cloned());
        taken.extend(fx.v.iter().cloned());
        let extra = rng.generic(2, &taken, &cfg.c);
        out.push(Campaign {
            label: "fixed".into(),
            u: fx.u.clone(),
            v: fx.v.clone(),
            z: fx.z.clone().unwrap_or_else(|| extra[0].clone()),
            w: extra[1].clone(),
        });
    }
    for k in 0..cfg.campaigns {
        let xs = rng.generic(2 * pool + 2, &avoid, &cfg.c);
        out.push(Campaign {
            label: k.to_string(),
            u: xs[..pool].to_vec(),
            v: xs[pool..2 * pool].to_vec(),
            z: xs[2 * pool].clone(),
            w: xs[2 * pool + 1].clone(),
        });
    }
    out
}

/// Expands the configuration into the full ordered list of checks.
pub fn plan(cfg: &RunConfig) -> Plan {
    let campaigns = draw_campaigns(cfg);
    let mut p = Planner { cfg, jobs: Vec::new() };
    let mut sign_convention = None;
    for suite in SUITES {
        if !cfg.runs(suite) {
            continue;
        }
        match suite {
            "scalar" => plan_scalar(&mut p, &campaigns),
            "ybe" => plan_ybe(&mut p, &campaigns),
            "rtt" => plan_rtt(&mut p, &campaigns),
            "commutator" => plan_commutator(&mut p, &campaigns),
            "bethe" => plan_bethe(&mut p, &campaigns),
            "actions" => plan_actions(&mut p, &campaigns),
            "recursion" => plan_recursion(&mut p, &campaigns),
            "composite" => plan_composite(&mut p, &campaigns),
            "proof-replay" => plan_replay(&mut p, &campaigns),
            "gl12" => sign_convention = plan_gl12(&mut p, &campaigns),
            _ => unreachable!("suite names are validated"),
        }
    }
    Plan { jobs: p.jobs, sign_convention }
}

fn plan_scalar(p: &mut Planner, campaigns: &[Campaign]) {
    let c = p.cfg.c.clone();
    p.push("scalar", "izergin-k2-example".into(), vec![("v", "[5, 6]".into()), ("u", "[1, 2]".into())], || {
        let q = |n| EpsScalar::from_int(n);
        let k = izergin_k(&[q(5), q(6)], &[q(1), q(2)], &Rational::one())?;
        Ok(k.sub(&EpsScalar::from(Rational::new(1, 6)?)).residual())
    });
    for camp in campaigns {
        let params = || vec![("campaign", camp.label.clone()), ("u", list(&camp.u)), ("v", list(&camp.v))];
        let (u, v, cc) = (camp.u(camp.u.len()), camp.v(camp.v.len()), c.clone());
        p.push("scalar", "fgh-relations".into(), params(), move || {
            let mut parts = Vec::new();
            for x in &u {
                parts.push((format!("h({x},{x})-1"), h(x, x, &cc)?.sub(&EpsScalar::one()).residual()));
                for y in &v {
                    let gxy = g(x, y, &cc)?;
                    parts.push(("g(x,y)+g(y,x)".into(), gxy.add(&g(y, x, &cc)?).residual()));
                    parts.push(("f-1-g".into(), f(x, y, &cc)?.sub(&EpsScalar::one()).sub(&gxy).residual()));
                    parts.push(("h-f/g".into(), h(x, y, &cc)?.sub(&f(x, y, &cc)?.div(&gxy)?).residual()));
                }
            }
            Ok(Residual::all(parts))
        });
        let (u, v, cc) = (camp.u(1), camp.v(1), c.clone());
        p.push("scalar", "izergin-k1".into(), params(), move || {
            Ok(izergin_k(&v, &u, &cc)?.sub(&g(&v[0], &u[0], &cc)?).residual())
        });
        for n in 2..=camp.u.len().min(camp.v.len()).min(3) {
            let (u, v, cc) = (camp.u(n), camp.v(n), c.clone());
            p.push("scalar", format!("izergin-permutation n={n}"), params(), move || {
                let base = izergin_k(&v, &u, &cc)?;
                let mut parts = Vec::new();
                for shift in 0..n {
                    let mut vp = v.clone();
                    vp.rotate_left(shift);
                    let mut up = u.clone();
                    up.reverse();
                    up.rotate_left((shift + 1) % n);
                    parts.push((format!("shift {shift}"), izergin_k(&vp, &up, &cc)?.sub(&base).residual()));
                }
                Ok(Residual::all(parts))
            });
        }
        let (u, v, z, cc) = (camp.u(1), camp.v(1), camp.z(), c.clone());
        p.push("scalar", "g-identity".into(), params(), move || Ok(g_identity(&u[0], &v[0], &z, &cc)?.residual()));
    }
}

fn plan_ybe(p: &mut Planner, campaigns: &[Campaign]) {
    for camp in campaigns {
        for sig in [Signature::GL21, Signature::GL12] {
            let params = vec![
                ("campaign", camp.label.clone()),
                ("signature", sig.name().into()),
                ("u", camp.u[0].to_string()),
                ("v", camp.v[0].to_string()),
                ("w", camp.w.to_string()),
            ];
            let (u, v, w, c) = (camp.u(1).remove(0), camp.v(1).remove(0), camp.w(), p.cfg.c.clone());
            p.push("ybe", format!("yang-baxter {}", sig.name()), params.clone(), move || {
                Ok(check_ybe(&u, &v, &w, sig, &c)?.residual())
            });
            let (u, v, c) = (camp.u(1).remove(0), camp.v(1).remove(0), p.cfg.c.clone());
            p.push("ybe", format!("unitarity {}", sig.name()), params[..4].to_vec(), move || {
                let prod = r_matrix(&u, &v, sig, &c)?.compose(&r_matrix(&v, &u, sig, &c)?)?;
                let g2 = g(&u, &v, &c)?.mul(&g(&u, &v, &c)?);
                let expected = GradedOperator::identity(sig, 2).scale(&EpsScalar::one().sub(&g2));
                Ok(prod.sub(&expected)?.residual())
            });
        }
    }
}

fn chain_params(k: usize, camp: &Campaign) -> Vec<(&'static str, String)> {
    vec![("chain", k.to_string()), ("campaign", camp.label.clone())]
}

fn plan_rtt(p: &mut Planner, campaigns: &[Campaign]) {
    let rule = p.cfg.overrides.sign_rule;
    for (k, chain) in p.cfg.chains.clone().into_iter().enumerate() {
        for camp in campaigns {
            let mut params = chain_params(k, camp);
            params.extend([("u", camp.u[0].to_string()), ("v", camp.v[0].to_string())]);
            let (u, v, ch) = (camp.u(1).remove(0), camp.v(1).remove(0), chain.clone());
            p.push("rtt", "rtt".into(), params, move || Ok(check_rtt_with(&ch, &u, &v, rule)?.residual()));
        }
    }
}

fn plan_commutator(p: &mut Planner, campaigns: &[Campaign]) {
    for (k, chain) in p.cfg.chains.clone().into_iter().enumerate() {
        for camp in campaigns {
            let mut params = chain_params(k, camp);
            params.extend([("u", camp.u[0].to_string()), ("v", camp.v[0].to_string())]);
            let (u, v, ch) = (camp.u(1).remove(0), camp.v(1).remove(0), chain.clone());
            p.push("commutator", "supercommutator all 81 tuples".into(), params, move || {
                let mut parts = Vec::new();
                for ((i, j, kk, l), a, b) in check_all_supercommutators(&ch, &u, &v)? {
                    parts.push((format!("({i},{j},{kk},{l}) first form"), a.residual()));
                    parts.push((format!("({i},{j},{kk},{l}) second form"), b.residual()));
                }
                Ok(Residual::all(parts))
            });
        }
    }
}

/// `T_ii Ω = λ_i Ω`, `T_ij Ω = 0` for `i > j`, and the dual statements.
pub fn vacuum_residual<M: Model + ?Sized>(model: &M, u: &EpsScalar) -> superbethe_core::Result<Residual> {
    let t = model.monodromy(u)?;
    let om = model.vacuum();
    let dom = model.dual_vacuum();
    let mut parts = Vec::new();
    for i in 1..=3 {
        let l = model.lambda(i, u)?;
        parts.push((format!("T{i}{i} Ω"), t.t(i, i).apply(&om)?.sub(&om.scale(&l))?.residual()));
        parts.push((format!("Ω† T{i}{i}"), t.t(i, i).dual_apply(&dom)?.sub(&dom.scale(&l))?.residual()));
        for j in 1..=3 {
            if i > j {
                parts.push((format!("T{i}{j} Ω"), t.t(i, j).apply(&om)?.residual()));
            } else if i < j {
                parts.push((format!("Ω† T{i}{j}"), t.t(i, j).dual_apply(&dom)?.residual()));
            }
        }
    }
    Ok(Residual::all(parts))
}

fn parity_residual<S: Clone>(x: &Vector<S>, expected: u8) -> Residual {
    match x.parity() {
        None => Residual::exact(true, "0"),
        Some(p) if p == Parity::of(expected) => Residual::exact(true, "0"),
        Some(p) => Residual::exact(false, format!("parity {p:?}, expected {expected}")),
    }
}

fn plan_bethe(p: &mut Planner, campaigns: &[Campaign]) {
    for (k, chain) in p.cfg.chains.clone().into_iter().enumerate() {
        for camp in campaigns {
            let mut params = chain_params(k, camp);
            params.push(("u", camp.u[0].to_string()));
            let (u, ch) = (camp.u(1).remove(0), chain.clone());
            p.push("bethe", "vacuum".into(), params, move || vacuum_residual(&ch, &u));
            for (a, b) in p.grid(camp, None) {
                let (u, v) = (camp.u(a), camp.v(b));
                let mut params = chain_params(k, camp);
                params.extend([("a", a.to_string()), ("b", b.to_string()), ("u", eps_list(&u)), ("v", eps_list(&v))]);
                let ch = chain.clone();
                let expected = if ch.signature() == Signature::GL21 { b % 2 } else { a % 2 } as u8;
                let (uu, vv) = (u.clone(), v.clone());
                p.push("bethe", format!("gradation a={a} b={b}"), params.clone(), move || {
                    let spec = BetheSpec::new(uu.clone(), vv.clone());
                    Ok(Residual::all(vec![
                        ("ket".into(), parity_residual(&build_bethe(&ch, &spec)?.value, expected)),
                        ("bra".into(), parity_residual(&build_dual_bethe(&ch, &spec)?.value, expected)),
                    ]))
                });
                if a >= 2 || b >= 2 {
                    let ch = chain.clone();
                    p.push("bethe", format!("symmetry a={a} b={b}"), params, move || {
                        let x = build_bethe(&ch, &BetheSpec::new(u.clone(), v.clone()))?.value;
                        let (mut ur, mut vr) = (u.clone(), v.clone());
                        ur.reverse();
                        vr.reverse();
                        let y = build_bethe(&ch, &BetheSpec::new(ur, vr))?.value;
                        Ok(x.sub(&y)?.residual())
                    });
                }
            }
        }
    }
}

fn gl21_chains(cfg: &RunConfig) -> Vec<(usize, ChainSpec)> {
    cfg.chains.iter().cloned().enumerate().filter(|(_, ch)| ch.signature() == Signature::GL21).collect()
}

/// The action formulas with any configured coefficient overrides applied.
fn configured_formulas(cfg: &RunConfig) -> superbethe_core::Result<BTreeMap<Element, ActionFormula>> {
    let mut formulas = action_formulas()?;
    for (key, coef) in &cfg.overrides.action_coefficients {
        let (el, n) = key.split_once('#').expect("validated key");
        let el = Element::from_name(el).expect("validated key");
        let n: usize = n.parse().expect("validated key");
        let term = formulas
            .get_mut(&el)
            .and_then(|f| f.terms.get_mut(n))
            .ok_or_else(|| Error::MalformedData(format!("override {key} names no term")))?;
        term.coefficient = coef.clone();
    }
    Ok(formulas)
}

fn plan_actions(p: &mut Planner, campaigns: &[Campaign]) {
    let formulas = match configured_formulas(p.cfg) {
        Ok(f) => Arc::new(f),
        Err(e) => {
            p.push("actions", "load formulas".into(), vec![], move || Err(e.clone()));
            return;
        }
    };
    for (k, chain) in gl21_chains(p.cfg) {
        for camp in campaigns {
            for (a, b) in p.grid(camp, Some(3)) {
                for el in Element::ALL {
                    let (u, v, z) = (camp.u(a), camp.v(b), camp.z());
                    let mut params = chain_params(k, camp);
                    params.extend([
                        ("a", a.to_string()),
                        ("b", b.to_string()),
                        ("u", eps_list(&u)),
                        ("v", eps_list(&v)),
                        ("z", z.to_string()),
                    ]);
                    let (ch, fs) = (chain.clone(), Arc::clone(&formulas));
                    p.push("actions", format!("{} a={a} b={b}", el.name()), params, move || {
                        Ok(action_check(&ch, &fs[&el], &u, &v, &z)?.residual())
                    });
                }
            }
        }
    }
}

fn plan_recursion(p: &mut Planner, campaigns: &[Campaign]) {
    for (k, chain) in gl21_chains(p.cfg) {
        for camp in campaigns {
            for (a, b) in p.grid(camp, None) {
                if b == 0 {
                    continue;
                }
                let (u, v, z) = (camp.u(a), camp.v(b - 1), camp.z());
                let mut params = chain_params(k, camp);
                params.extend([
                    ("a", a.to_string()),
                    ("b", b.to_string()),
                    ("u", eps_list(&u)),
                    ("v", format!("{{z}} ∪ {}", eps_list(&v))),
                    ("z", z.to_string()),
                ]);
                let ch = chain.clone();
                p.push("recursion", format!("recursion a={a} b={b}"), params, move || {
                    Ok(recursion_check(&ch, &u, &v, &z)?.residual())
                });
            }
        }
    }
}

fn split_params(camp: &Campaign, a: usize, b: usize, u: &[EpsScalar], v: &[EpsScalar]) -> Vec<(&'static str, String)> {
    vec![
        ("chain", "split".into()),
        ("campaign", camp.label.clone()),
        ("a", a.to_string()),
        ("b", b.to_string()),
        ("u", eps_list(u)),
        ("v", eps_list(v)),
    ]
}

fn plan_composite(p: &mut Planner, campaigns: &[Campaign]) {
    let split = split_with_signature(&p.cfg.split_chain().expect("validated split"), Signature::GL21);
    let over1 = p.cfg.overrides.bilinear_coefficient.clone();
    let over2 = p.cfg.overrides.dual_bilinear_coefficient.clone();
    for camp in campaigns {
        let (s, z) = (split.clone(), camp.z());
        p.push("composite", "coproduct".into(), vec![("campaign", camp.label.clone()), ("u", z.to_string())], move || {
            let parts = coproduct_residual(&s, &z)?;
            Ok(Residual::all(parts.iter().enumerate().map(|(n, r)| (format!("T{}{}", n / 3 + 1, n % 3 + 1), r.residual())).collect()))
        });
        for (a, b) in p.grid(camp, None) {
            let (u, v) = (camp.u(a), camp.v(b));
            let params = split_params(camp, a, b, &u, &v);
            let (s, uu, vv, over) = (split.clone(), u.clone(), v.clone(), over1.clone());
            p.push("composite", format!("coproduct-bethe a={a} b={b}"), params.clone(), move || {
                Ok(match &over {
                    None => coproduct_bethe_check(&s, &uu, &vv)?.residual(),
                    Some(coef) => bilinear_residual_with::<superbethe_core::graded::Ket>(&s, &uu, &vv, coef)?.residual(),
                })
            });
            let (s, uu, vv, over) = (split.clone(), u.clone(), v.clone(), over2.clone());
            p.push("composite", format!("coproduct-dual a={a} b={b}"), params.clone(), move || {
                Ok(match &over {
                    None => coproduct_dual_check(&s, &uu, &vv)?.residual(),
                    Some(coef) => bilinear_residual_with::<superbethe_core::graded::Bra>(&s, &uu, &vv, coef)?.residual(),
                })
            });
            if a + b <= 3 {
                let (s, z) = (split.clone(), camp.z());
                let mut params = params;
                params.push(("z", z.to_string()));
                p.push("composite", format!("intermediate-identities a={a} b={b}"), params, move || {
                    let (r23, r13) = intermediate_identities_check(&s, &u, &v, &z)?;
                    Ok(Residual::all(vec![("T23".into(), r23.residual()), ("T13".into(), r13.residual())]))
                });
            }
        }
        let bmax = p.cfg.caps.max_b.min(2);
        for b1 in 1..=bmax {
            for b2 in 1..=bmax {
                if b1 + b2 > camp.u.len() || b1 + b2 > camp.v.len() {
                    continue;
                }
                let (u, v) = (camp.u(b1 + b2), camp.v(b1 + b2));
                let params = vec![
                    ("chain", "split".into()),
                    ("campaign", camp.label.clone()),
                    ("b1", b1.to_string()),
                    ("b2", b2.to_string()),
                    ("u", eps_list(&u)),
                    ("v", eps_list(&v)),
                ];
                let s = split.clone();
                p.push("composite", format!("factor-exchange b1={b1} b2={b2}"), params, move || {
                    let r = factor_exchange_check(&s, (&u[..b1], &v[..b1]), (&u[b1..], &v[b1..]))?;
                    Ok(r.residual())
                });
            }
        }
    }
}

fn plan_replay(p: &mut Planner, campaigns: &[Campaign]) {
    let split = split_with_signature(&p.cfg.split_chain().expect("validated split"), Signature::GL21);
    for camp in campaigns {
        for (a, b) in p.grid(camp, Some(3)) {
            let (u, v, z) = (camp.u(a), camp.v(b), camp.z());
            let mut params = split_params(camp, a, b, &u, &v);
            params.push(("z", z.to_string()));
            let s = split.clone();
            p.push("proof-replay", format!("replay a={a} b={b}"), params, move || {
                let replay = proof_replay(&s, &u, &v, &z)?;
                let mut parts: Vec<(String, Residual)> =
                    replay.residuals.iter().map(|(name, r)| (name.clone(), r.residual())).collect();
                for x in &replay.g_identity {
                    parts.push(("g-identity".into(), x.residual()));
                }
                Ok(Residual::all(parts))
            });
        }
    }
}

fn plan_gl12(p: &mut Planner, campaigns: &[Campaign]) -> Option<SignConvention> {
    let split = split_with_signature(&p.cfg.split_chain().expect("validated split"), Signature::GL12);
    p.push("gl12", "gradation-relation".into(), vec![], || {
        Ok(Residual::exact(gradation_relation_holds(), if gradation_relation_holds() { "0" } else { "violated" }))
    });
    let resolved = resolve_sign(&split);
    let conv = resolved.as_ref().ok().copied();
    let rendered = match &resolved {
        Ok(c) => c.name().to_string(),
        Err(e) => e.to_string(),
    };
    p.push("gl12", "resolve-sign".into(), vec![("probe", "fixed".into())], move || match &resolved {
        Ok(_) => Ok(Residual::exact(true, rendered.clone())),
        Err(e) => Err(e.clone()),
    });
    let unresolved = || Error::AmbiguousConvention("no convention was resolved for this chain".into());
    for camp in campaigns {
        let (u, v) = (camp.u(1).remove(0), camp.v(1).remove(0));
        let params = vec![("campaign", camp.label.clone()), ("u", u.to_string()), ("v", v.to_string())];
        let s = split.clone();
        p.push("gl12", "sign-stable".into(), params, move || {
            let c = conv.ok_or_else(unresolved)?;
            let here = resolve_sign_at(&s, &u, &v)?;
            Ok(Residual::exact(here == c, here.name()))
        });
        for (a, b) in p.grid(camp, None) {
            let (u, v) = (camp.u(a), camp.v(b));
            let params = split_params(camp, a, b, &u, &v);
            let (s, uu, vv) = (split.clone(), u.clone(), v.clone());
            p.push("gl12", format!("coproduct-tilde-bethe a={a} b={b}"), params.clone(), move || {
                Ok(coproduct_tilde_bethe_check(&s, &uu, &vv, conv.ok_or_else(unresolved)?)?.residual())
            });
            let (s, uu, vv) = (split.clone(), u.clone(), v.clone());
            p.push("gl12", format!("coproduct-tilde-dual a={a} b={b}"), params.clone(), move || {
                Ok(coproduct_tilde_dual_check(&s, &uu, &vv, conv.ok_or_else(unresolved)?)?.residual())
            });
            let s = split.clone();
            p.push("gl12", format!("tilde-gradation a={a} b={b}"), params, move || {
                let x = build_tilde_bethe(&s, &BetheSpec::new(u.clone(), v.clone()))?.value;
                Ok(parity_residual(&x, (a % 2) as u8))
            });
        }
    }
    conv
}

fn environment(cfg: &RunConfig) -> Environment {
    let chains = cfg
        .chains
        .iter()
        .map(|ch| {
            let mut m = BTreeMap::new();
            m.insert("L".to_string(), serde_json::json!(ch.len()));
            m.insert("xi".to_string(), serde_json::json!(ch.xi().iter().map(Rational::to_string).collect::<Vec<_>>()));
            m.insert(
                "twist".to_string(),
                serde_json::json!(ch.twist().iter().map(Rational::to_string).collect::<Vec<_>>()),
            );
            m.insert("signature".to_string(), serde_json::json!(ch.signature().name()));
            m
        })
        .collect();
    let o = &cfg.overrides;
    Environment {
        tool: env!("CARGO_PKG_NAME").into(),
        version: env!("CARGO_PKG_VERSION").into(),
        seed: cfg.seed,
        c: cfg.c.to_string(),
        signature: cfg.signature.name().into(),
        chains,
        split: cfg.split,
        suites: cfg.suites.clone(),
        campaigns: cfg.campaigns,
        caps: BTreeMap::from([
            ("max_a".to_string(), cfg.caps.max_a),
            ("max_b".to_string(), cfg.caps.max_b),
            ("max_l".to_string(), cfg.caps.max_l),
        ]),
        overrides: o.bilinear_coefficient.is_some()
            || o.dual_bilinear_coefficient.is_some()
            || !o.action_coefficients.is_empty()
            || o.sign_rule != Default::default(),
    }
}

fn run_job(job: &Job) -> CheckRecord {
    let start = Instant::now();
    let outcome = (job.run)();
    let runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    let (residual_is_zero, residual_sample, error) = match outcome {
        Ok(r) => (r.zero, r.sample, None),
        Err(e) => (false, String::new(), Some(format!("{}/{}: {e}", job.suite, job.name))),
    };
    CheckRecord {
        suite: job.suite.into(),
        name: job.name.clone(),
        parameters: job.parameters.clone(),
        residual_is_zero,
        residual_sample,
        error,
        runtime_ms,
    }
}

/// Runs every configured check. Outcomes depend only on the configuration.
pub fn run_suite(cfg: &RunConfig) -> Report {
    let plan = plan(cfg);
    let checks: Vec<CheckRecord> = plan.jobs.par_iter().map(run_job).collect();
    let failed = checks.iter().filter(|c| !c.residual_is_zero).count();
    Report {
        environment: environment(cfg),
        sign_convention: plan.sign_convention.map(|c| if c.sigma() > 0 { "+1".into() } else { "-1".into() }),
        summary: Summary { checks: checks.len(), failed },
        checks,
    }
}
