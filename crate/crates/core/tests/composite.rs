mod common;

use common::*;
use proptest::prelude::*;
use superbethe_core::bethe::{build_bethe, build_dual_bethe, BetheSpec};
use superbethe_core::composite::*;
use superbethe_core::graded::{DualGradedVector, GradedVector, Ket, Signature};
use superbethe_core::monodromy::{ChainSpec, Model};
use superbethe_core::scalar::{f, set_product, PairFn};
use superbethe_core::{EpsScalar, Error, Rational};

fn chain(xi: &[i64], d: [i64; 3], sig: Signature) -> ChainSpec {
    ChainSpec::new(xi.iter().map(|&x| Rational::from_int(x)).collect(), d.map(Rational::from_int), sig, Rational::one())
        .unwrap()
}

fn split22() -> SplitChain {
    SplitChain::new(chain(&[0, 5], [2, 1, 3], Signature::GL21), chain(&[11, -7], [1, 3, -1], Signature::GL21)).unwrap()
}

fn e(xs: &[(i64, i64)]) -> Vec<EpsScalar> {
    xs.iter().map(|&(p, d)| qq(p, d)).collect()
}

const GRID: [(usize, usize); 9] = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2), (2, 1), (1, 2), (2, 2)];

#[test]
fn coproduct_matches_direct() {
    for sig in [Signature::GL21, Signature::GL12] {
        let s = SplitChain::new(chain(&[0], [1, 1, 1], sig), chain(&[3], [1, 1, 1], sig)).unwrap();
        assert!(coproduct_residual(&s, &qq(7, 3)).unwrap().iter().all(|r| r.is_zero()));
        let s = SplitChain::new(chain(&[0, 2], [2, 1, 3], sig), chain(&[9], [1, 1, -1], sig)).unwrap();
        assert!(coproduct_residual(&s, &qq(7, 3)).unwrap().iter().all(|r| r.is_zero()), "{sig}");
    }
}

#[test]
fn split_validation_and_lambda() {
    let s = SplitChain::new(chain(&[0, 1], [2, 1, 1], Signature::GL21), chain(&[2], [5, 1, 1], Signature::GL21)).unwrap();
    let c = Rational::one();
    let expected = set_product(PairFn::F, &[q(3)], &[q(0), q(1), q(2)], &c).unwrap().mul(&q(10));
    assert_eq!(s.lambda(1, &q(3)).unwrap(), expected);
    assert_eq!(s.lambda(1, &q(3)).unwrap(), f(&q(3), &q(0), &c).unwrap().mul(&f(&q(3), &q(1), &c).unwrap()).mul(&f(&q(3), &q(2), &c).unwrap()).mul(&q(10)));
    assert!(matches!(
        SplitChain::new(chain(&[0], [1, 1, 1], Signature::GL21), chain(&[0], [1, 1, 1], Signature::GL21)),
        Err(Error::InvalidChain(_))
    ));
    assert!(matches!(
        SplitChain::new(chain(&[0], [1, 1, 1], Signature::GL21), chain(&[1], [1, 1, 1], Signature::GL12)),
        Err(Error::InvalidChain(_))
    ));
    for i in [1, 3] {
        assert_eq!(s.r(i, &q(7)).unwrap(), s.part(1).r(i, &q(7)).unwrap().mul(&s.part(2).r(i, &q(7)).unwrap()));
    }
}

#[test]
fn bethe_coproduct_one_zero_by_hand() {
    let s = split22();
    let u = qq(1, 3);
    let b = |ch: &ChainSpec, u: &[EpsScalar]| build_bethe(ch, &BetheSpec::new(u.to_vec(), vec![])).unwrap().value;
    let (p1, p2) = (s.part(1), s.part(2));
    let first = b(p1, std::slice::from_ref(&u)).tensor(&p2.vacuum()).unwrap().scale(&p2.r(1, &u).unwrap());
    let second = p1.vacuum().tensor(&b(p2, std::slice::from_ref(&u))).unwrap();
    let total = build_bethe(&s, &BetheSpec::new(vec![u.clone()], vec![])).unwrap().value;
    assert_eq!(total, first.add(&second).unwrap());
    assert!(coproduct_bethe_check(&s, &[u], &[]).unwrap().is_zero());
}

#[test]
fn dual_coproduct_zero_one_by_hand() {
    let s = split22();
    let v = qq(17, 4);
    let c = |ch: &ChainSpec| build_dual_bethe(ch, &BetheSpec::new(vec![], vec![v.clone()])).unwrap().value;
    let (p1, p2) = (s.part(1), s.part(2));
    let first = c(p1).tensor(&p2.dual_vacuum()).unwrap().scale(&p2.r(3, &v).unwrap());
    let second = p1.dual_vacuum().tensor(&c(p2)).unwrap();
    let total = build_dual_bethe(&s, &BetheSpec::new(vec![], vec![v.clone()])).unwrap().value;
    assert_eq!(total, first.add(&second).unwrap());
}

#[test]
fn coproducts_on_grid() {
    let s = split22();
    let (u, v) = (e(&[(1, 3), (-5, 2)]), e(&[(17, 4), (-1, 7)]));
    for (a, b) in GRID {
        let r1 = coproduct_bethe_check(&s, &u[..a], &v[..b]).unwrap();
        assert!(r1.is_zero(), "({a},{b}): {}", r1.sample(4));
        let r2 = coproduct_dual_check(&s, &u[..a], &v[..b]).unwrap();
        assert!(r2.is_zero(), "({a},{b}): {}", r2.sample(4));
    }
    let t = SplitChain::new(chain(&[0, 5], [1, 1, 1], Signature::GL12), chain(&[9], [1, 1, 1], Signature::GL12)).unwrap();
    assert_eq!(coproduct_bethe_check(&t, &[], &[]), Err(Error::SignatureMismatch));
}

#[test]
fn empty_first_part() {
    let s = SplitChain::new(chain(&[], [2, 1, 3], Signature::GL21), chain(&[0, 5], [1, 3, -1], Signature::GL21)).unwrap();
    let (u, v) = (e(&[(1, 3), (-5, 2)]), e(&[(17, 4)]));
    assert!(coproduct_bethe_check(&s, &u, &v).unwrap().is_zero());
    assert!(coproduct_dual_check(&s, &u, &v).unwrap().is_zero());
    let (r23, r13) = intermediate_identities_check(&s, &u[..1], &v, &qq(9, 7)).unwrap();
    assert!(r23.is_zero() && r13.is_zero());
}

#[test]
fn factor_exchange() {
    let s = split22();
    for b1 in 0..=2 {
        for b2 in 0..=2 {
            let u1 = e(&[(1, 3), (2, 9)][..b1]);
            let u2 = e(&[(-5, 2), (7, 5)][..b2]);
            let v1 = e(&[(17, 4), (-1, 7)][..b1]);
            let v2 = e(&[(13, 5), (8, 3)][..b2]);
            let r = factor_exchange_check(&s, (&u1, &v1), (&u2, &v2)).unwrap();
            assert!(r.is_zero(), "({b1},{b2})");
        }
    }
}

#[test]
fn product_signs() {
    let s = split22();
    let odd1 = build_bethe(s.part(1), &BetheSpec::new(e(&[(1, 3)]), e(&[(17, 4)]))).unwrap().value;
    let odd2 = build_bethe(s.part(2), &BetheSpec::new(e(&[(-5, 2)]), e(&[(13, 5)]))).unwrap().value;
    assert!(!odd1.is_zero() && !odd2.is_zero());
    assert_eq!(product(1, &odd1, &odd2).unwrap(), odd1.tensor(&odd2).unwrap());
    assert_eq!(product(2, &odd1, &odd2).unwrap(), odd1.tensor(&odd2).unwrap().neg());
    let even2 = s.part(2).vacuum();
    assert_eq!(product(2, &odd1, &even2).unwrap(), odd1.tensor(&even2).unwrap());
    let d1: DualGradedVector = build_dual_bethe(s.part(1), &BetheSpec::new(e(&[(1, 3)]), e(&[(17, 4)]))).unwrap().value;
    let d2: DualGradedVector = build_dual_bethe(s.part(2), &BetheSpec::new(e(&[(-5, 2)]), e(&[(13, 5)]))).unwrap().value;
    assert_eq!(product(1, &d1, &d2).unwrap(), d1.tensor(&d2).unwrap().neg());
    assert_eq!(product(2, &d1, &d2).unwrap(), d1.tensor(&d2).unwrap());
}

#[test]
fn recursion() {
    let z = qq(9, 7);
    for ch in [chain(&[0, 5], [2, 1, 3], Signature::GL21), chain(&[0, 5, -3], [2, -1, 3], Signature::GL21)] {
        for (a, b) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (2, 1)] {
            // b counts the parameters of 𝔹_{a,b−1}, so 𝔹_{a,b+1} is reached
            let u = e(&[(1, 3), (-5, 2)][..a]);
            let v = e(&[(17, 4)][..b]);
            assert!(recursion_check(&ch, &u, &v, &z).unwrap().is_zero(), "({a},{b}) L={}", ch.sites());
        }
    }
    let ch = chain(&[0], [1, 1, 1], Signature::GL21);
    assert!(recursion_check(&ch, &[], &[], &q(0)).is_err());
}

#[test]
fn intermediate_identities() {
    let s = SplitChain::new(chain(&[0], [2, 1, 3], Signature::GL21), chain(&[11], [1, 3, -1], Signature::GL21)).unwrap();
    let z = qq(9, 7);
    for (a, b) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
        let u = e(&[(1, 3), (-5, 2)][..a]);
        let v = e(&[(17, 4)][..b]);
        let (r23, r13) = intermediate_identities_check(&s, &u, &v, &z).unwrap();
        assert!(r13.is_zero(), "T13 ({a},{b})");
        assert!(r23.is_zero(), "T23 ({a},{b})");
    }
    // a − 1 = b − 1 = 0: 𝓑_{1,1}({z};{z}) is T13(z)Ω/λ2(z)
    let b: GradedVector = composite_vector::<Ket>(&s, std::slice::from_ref(&z), std::slice::from_ref(&z)).unwrap();
    let lam = s.lambda(2, &z).unwrap().recip().unwrap();
    assert_eq!(b, s.monodromy(&z).unwrap().t(1, 3).apply(&s.vacuum()).unwrap().scale(&lam));
}

#[test]
fn replay() {
    let s = split22();
    let z = qq(9, 7);
    for (a, b) in [(0, 0), (1, 1), (2, 1), (1, 2)] {
        let u = e(&[(1, 3), (-5, 2)][..a]);
        let v = e(&[(17, 4), (-1, 7)][..b]);
        let rep = proof_replay(&s, &u, &v, &z).unwrap();
        assert_eq!(rep.residuals.len(), 11);
        for (name, r) in &rep.residuals {
            assert!(r.is_zero(), "({a},{b}) {name}");
        }
        assert!(rep.all_zero());
    }
    assert!(g_identity(&q(1), &q(2), &q(3), &Rational::one()).unwrap().is_zero());
}

#[test]
fn checks_are_not_vacuous() {
    let s = split22();
    let (u, v) = (e(&[(1, 3), (-5, 2)]), e(&[(17, 4), (-1, 7)]));
    assert!(!build_bethe(&s, &BetheSpec::new(u.clone(), v.clone())).unwrap().value.is_zero());
    // dropping r_3^{(1)} breaks the expansion
    let bad = bilinear_residual_with::<Ket>(&s, &u, &v, "r1^(2)(uI)*f(uII,uI)*g(vI,vII)/f(vII,uI)").unwrap();
    assert!(!bad.is_zero());
    let x: GradedVector = composite_vector(&s, &e(&[(9, 7), (1, 3)]), &e(&[(9, 7)])).unwrap();
    assert!(!x.is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn bethe_coproduct_random(vals in prop::collection::vec(small_rational(), 4), twist in prop::collection::vec(nonzero_rational(), 6)) {
        let c = Rational::one();
        let mut all = vals.clone();
        all.extend([0, 5, 11, -7].map(Rational::from_int));
        prop_assume!(generic(&all, &c));
        let xi = |xs: &[i64]| xs.iter().map(|&x| Rational::from_int(x)).collect::<Vec<_>>();
        let d1 = [twist[0].clone(), twist[1].clone(), twist[2].clone()];
        let d2 = [twist[3].clone(), twist[4].clone(), twist[5].clone()];
        let s = SplitChain::new(
            ChainSpec::new(xi(&[0, 5]), d1, Signature::GL21, c.clone()).unwrap(),
            ChainSpec::new(xi(&[11, -7]), d2, Signature::GL21, c.clone()).unwrap(),
        ).unwrap();
        let u: Vec<EpsScalar> = vals[..2].iter().cloned().map(EpsScalar::from).collect();
        let v: Vec<EpsScalar> = vals[2..].iter().cloned().map(EpsScalar::from).collect();
        prop_assert!(coproduct_bethe_check(&s, &u, &v).unwrap().is_zero());
        prop_assert!(coproduct_dual_check(&s, &u[..1], &v).unwrap().is_zero());
    }
}
