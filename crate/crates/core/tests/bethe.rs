mod common;

use common::*;
use proptest::prelude::*;
use superbethe_core::bethe::*;
use superbethe_core::graded::{GradedVector, Parity, Signature};
use superbethe_core::monodromy::{ChainSpec, Model};
use superbethe_core::scalar::{f, g};
use superbethe_core::{EpsScalar, Error, Rational};

const SIGS: [Signature; 2] = [Signature::GL21, Signature::GL12];

fn chain(xi: &[i64], d: [i64; 3], sig: Signature) -> ChainSpec {
    ChainSpec::new(xi.iter().map(|&x| Rational::from_int(x)).collect(), d.map(Rational::from_int), sig, Rational::one())
        .unwrap()
}

fn spec(u: &[EpsScalar], v: &[EpsScalar]) -> BetheSpec {
    BetheSpec::new(u.to_vec(), v.to_vec())
}

#[test]
fn empty_vectors_are_vacua() {
    for sig in SIGS {
        let ch = chain(&[0, 5], [2, 3, 7], sig);
        assert_eq!(build_bethe(&ch, &spec(&[], &[])).unwrap().value, ch.vacuum());
        assert_eq!(build_dual_bethe(&ch, &spec(&[], &[])).unwrap().value, ch.dual_vacuum());
    }
}

#[test]
fn single_u_vectors() {
    let ch = chain(&[0, 5], [2, 3, 7], Signature::GL21);
    let u = qq(7, 3);
    let lam = ch.lambda(2, &u).unwrap().recip().unwrap();
    let t = ch.monodromy(&u).unwrap();
    let b = build_bethe(&ch, &spec(std::slice::from_ref(&u), &[])).unwrap();
    assert_eq!(b.value, t.t(1, 2).apply(&ch.vacuum()).unwrap().scale(&lam));
    let c = build_dual_bethe(&ch, &spec(std::slice::from_ref(&u), &[])).unwrap();
    assert_eq!(c.value, t.t(2, 1).dual_apply(&ch.dual_vacuum()).unwrap().scale(&lam));
}

#[test]
fn one_one_worked_example() {
    let ch = chain(&[0], [1, 1, 1], Signature::GL21);
    let (u, v) = (q(3), q(1));
    let c = Rational::one();
    // g(v,u)/f(v,u)·T13(v)Ω + 1/f(v,u)·T23(v)T12(u)Ω, all over λ2 = 1
    let tv = ch.monodromy(&v).unwrap();
    let tu = ch.monodromy(&u).unwrap();
    let om = ch.vacuum();
    let fvu = f(&v, &u, &c).unwrap();
    let first = tv.t(1, 3).apply(&om).unwrap().scale(&g(&v, &u, &c).unwrap().div(&fvu).unwrap());
    let second = tv.t(2, 3).apply(&tu.t(1, 2).apply(&om).unwrap()).unwrap().scale(&fvu.recip().unwrap());
    let oracle = first.add(&second).unwrap();
    let b = build_bethe(&ch, &spec(&[u], &[v])).unwrap();
    assert_eq!(b.value, oracle);
    assert_eq!(b.value, GradedVector::basis(Signature::GL21, &[3]).scale(&qq(1, 3)));
}

#[test]
fn gradings() {
    let ch = chain(&[0, 5], [2, 3, 7], Signature::GL21);
    let b20 = build_bethe(&ch, &spec(&[q(2), q(3)], &[])).unwrap();
    assert_eq!(grading_of(&b20.value, 0), Parity::Even);
    let b11 = build_bethe(&ch, &spec(&[q(2)], &[q(9)])).unwrap();
    assert_eq!(grading_of(&b11.value, 1), Parity::Odd);
    let c11 = build_dual_bethe(&ch, &spec(&[q(2)], &[q(9)])).unwrap();
    assert_eq!(grading_of(&c11.value, 1), Parity::Odd);
    assert_eq!(grading_of(&GradedVector::zero(Signature::GL21, 2), 1), Parity::Odd);
}

#[test]
fn sym_products() {
    let ch = chain(&[0, 5], [2, 3, 7], Signature::GL21);
    let single = sym_odd_product(OddProduct::T13, &[q(4)], &ch).unwrap();
    assert_eq!(&single, ch.monodromy(&q(4)).unwrap().t(1, 3));
    for which in [OddProduct::T13, OddProduct::T23, OddProduct::T31, OddProduct::T32] {
        let a = sym_odd_product(which, &[q(4), qq(1, 2)], &ch).unwrap();
        let b = sym_odd_product(which, &[qq(1, 2), q(4)], &ch).unwrap();
        assert_eq!(a, b, "{which:?}");
    }
    let t = chain(&[0, 5], [2, 3, 7], Signature::GL12);
    for which in [OddProduct::Tt12, OddProduct::Tt13, OddProduct::Tt21, OddProduct::Tt31] {
        let a = sym_odd_product(which, &[q(4), qq(1, 2)], &t).unwrap();
        let b = sym_odd_product(which, &[qq(1, 2), q(4)], &t).unwrap();
        assert_eq!(a, b, "{which:?}");
    }
    // raising product divides by h(u2,u1) = (u2 − u1 + c)/c, zero for u2 = u1 − c
    assert_eq!(sym_odd_product(OddProduct::T13, &[q(4), q(3)], &ch), Err(Error::DivisionByZero));
    assert_eq!(sym_odd_product(OddProduct::Tt12, &[q(4)], &ch), Err(Error::SignatureMismatch));
}

#[test]
fn t12_factors_commute() {
    let ch = chain(&[0, 5], [2, 3, 7], Signature::GL21);
    let (a, b) = (ch.monodromy(&q(2)).unwrap(), ch.monodromy(&qq(-1, 3)).unwrap());
    let ab = a.t(1, 2).compose(b.t(1, 2)).unwrap();
    let ba = b.t(1, 2).compose(a.t(1, 2)).unwrap();
    assert_eq!(ab, ba);
}

#[test]
fn parameter_errors() {
    let ch = chain(&[0, 5], [1, 1, 1], Signature::GL21);
    assert!(matches!(build_bethe(&ch, &spec(&[q(2), q(2)], &[])), Err(Error::InvalidParameters(_))));
    assert!(matches!(build_bethe(&ch, &spec(&[q(5)], &[])), Err(Error::InvalidParameters(_))));
    assert_eq!(
        build_bethe(&ch, &spec(&[q(2), q(3)], &[q(2), q(3)])),
        Err(Error::MultipleCollisions)
    );
}

#[test]
fn coincidence_limit_examples() {
    for (z, sig) in [(q(3), Signature::GL21), (qq(-7, 2), Signature::GL21), (q(3), Signature::GL12)] {
        let ch = chain(&[0, 1], [2, -1, 3], sig);
        let b = build_bethe(&ch, &spec(std::slice::from_ref(&z), std::slice::from_ref(&z))).unwrap();
        let lam = ch.lambda(2, &z).unwrap().recip().unwrap();
        let mut expected = ch.monodromy(&z).unwrap().t(1, 3).apply(&ch.vacuum()).unwrap().scale(&lam);
        if sig == Signature::GL12 {
            // (−1)^a in front of the gl(1|2) sum
            expected = expected.neg();
        }
        assert_eq!(b.value, expected, "{sig}");
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    match n {
        0 => vec![vec![]],
        1 => vec![vec![0]],
        _ => vec![vec![0, 1], vec![1, 0]],
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn symmetric_in_each_set(
        vals in prop::collection::vec(small_rational(), 4),
        a in 0usize..=2, b in 0usize..=2,
        gl12 in any::<bool>(),
    ) {
        let c = Rational::one();
        let mut all = vals.clone();
        all.extend([Rational::from_int(0), Rational::from_int(5)]);
        prop_assume!(generic(&all, &c));
        let sig = if gl12 { Signature::GL12 } else { Signature::GL21 };
        let ch = chain(&[0, 5], [2, 3, -1], sig);
        let u: Vec<EpsScalar> = vals[..a].iter().cloned().map(EpsScalar::from).collect();
        let v: Vec<EpsScalar> = vals[2..2 + b].iter().cloned().map(EpsScalar::from).collect();
        let base = build_bethe(&ch, &spec(&u, &v)).unwrap();
        let dual = build_dual_bethe(&ch, &spec(&u, &v)).unwrap();
        // T12 is odd in gl(1|2), T23 in gl(2|1)
        let want = Parity::of((if gl12 { a % 2 } else { b % 2 }) as u8);
        prop_assert!(base.value.parity().is_none_or(|p| p == want));
        prop_assert!(dual.value.parity().is_none_or(|p| p == want));
        for pu in permutations(a) {
            for pv in permutations(b) {
                let u2: Vec<_> = pu.iter().map(|&k| u[k].clone()).collect();
                let v2: Vec<_> = pv.iter().map(|&k| v[k].clone()).collect();
                prop_assert_eq!(&build_bethe(&ch, &spec(&u2, &v2)).unwrap().value, &base.value);
                prop_assert_eq!(&build_dual_bethe(&ch, &spec(&u2, &v2)).unwrap().value, &dual.value);
            }
        }
    }

    #[test]
    fn coincidence_limit(z in small_rational(), gl12 in any::<bool>()) {
        let c = Rational::one();
        let mut all = vec![z.clone()];
        all.extend([Rational::from_int(0), Rational::from_int(5)]);
        prop_assume!(generic(&all, &c));
        let sig = if gl12 { Signature::GL12 } else { Signature::GL21 };
        let ch = chain(&[0, 5], [2, -1, 3], sig);
        let z = EpsScalar::from(z);
        let b = build_bethe(&ch, &spec(std::slice::from_ref(&z), std::slice::from_ref(&z))).unwrap();
        let lam = ch.lambda(2, &z).unwrap().recip().unwrap();
        let mut expected = ch.monodromy(&z).unwrap().t(1, 3).apply(&ch.vacuum()).unwrap().scale(&lam);
        if gl12 {
            expected = expected.neg();
        }
        prop_assert_eq!(b.value, expected);
    }
}
