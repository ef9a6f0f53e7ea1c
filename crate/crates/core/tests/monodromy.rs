mod common;

use common::*;
use proptest::prelude::*;
use superbethe_core::graded::{GradedOperator, Parity, Signature};
use superbethe_core::monodromy::*;
use superbethe_core::scalar::{f, g};
use superbethe_core::{EpsScalar, Error, Rational};

const SIGS: [Signature; 2] = [Signature::GL21, Signature::GL12];

fn chain(xi: &[Rational], d: [i64; 3], sig: Signature, c: Rational) -> ChainSpec {
    ChainSpec::new(xi.to_vec(), d.map(Rational::from_int), sig, c).unwrap()
}

#[test]
fn single_site_entries_match_hand_formula() {
    // T_ij(u) = d_i (δ_ij + g(u,ξ)(−1)^{[j]} E_ji) on one site
    for sig in SIGS {
        let c = rat(3, 2);
        let ch = chain(&[rat(1, 3)], [2, -1, 5], sig, c.clone());
        let u = qq(7, 4);
        let t = ch.monodromy(&u).unwrap();
        let gg = g(&u, &qq(1, 3), &c).unwrap();
        for i in 1..=3 {
            for j in 1..=3 {
                let mut e = GradedOperator::matrix_unit(sig, j, i).scale(&gg);
                if sig.parity(j) == 1 {
                    e = e.neg();
                }
                if i == j {
                    e = e.add(&GradedOperator::identity(sig, 1)).unwrap();
                }
                let expected = e.scale(&EpsScalar::from(ch.twist()[i - 1].clone()));
                assert!(t.t(i, j).sub(&expected).unwrap().is_zero(), "{sig} T{i}{j}");
            }
        }
    }
}

#[test]
fn worked_entries() {
    let ch = chain(&[rat(0, 1)], [1, 1, 1], Signature::GL21, Rational::one());
    let t = ch.monodromy(&q(1)).unwrap();
    assert_eq!(*t.t(1, 3), GradedOperator::matrix_unit(Signature::GL21, 3, 1).neg());
    let t2 = ch.monodromy(&q(2)).unwrap();
    let omega = ch.vacuum();
    assert_eq!(t2.t(1, 1).apply(&omega).unwrap(), omega.scale(&qq(3, 2)));
    assert_eq!(ch.monodromy(&q(0)), Err(Error::DivisionByZero));
}

#[test]
fn empty_chain_is_the_twist() {
    let ch = chain(&[], [2, 3, -4], Signature::GL12, Rational::one());
    let t = ch.monodromy(&q(5)).unwrap();
    for i in 1..=3 {
        for j in 1..=3 {
            let expected = if i == j {
                GradedOperator::identity(Signature::GL12, 0).scale(&EpsScalar::from(ch.twist()[i - 1].clone()))
            } else {
                GradedOperator::zero(Signature::GL12, 0)
            };
            assert_eq!(t.t(i, j).sub(&expected).unwrap(), GradedOperator::zero(Signature::GL12, 0));
        }
    }
}

#[test]
fn lambda_examples() {
    let ch = chain(&[rat(0, 1), rat(1, 2)], [1, 1, 1], Signature::GL21, Rational::one());
    assert_eq!(ch.lambda(1, &q(2)).unwrap(), qq(5, 2));
    assert_eq!(ch.lambda(2, &q(2)).unwrap(), q(1));
    let ch = chain(&[rat(0, 1)], [1, 1, -2], Signature::GL21, Rational::one());
    assert_eq!(ch.r(3, &q(9)).unwrap(), q(-2));
}

#[test]
fn invalid_chains() {
    let one = Rational::one();
    assert!(ChainSpec::untwisted(vec![one.clone(), one.clone()], Signature::GL21, one.clone()).is_err());
    assert!(ChainSpec::untwisted(vec![], Signature::GL21, Rational::zero()).is_err());
    assert!(ChainSpec::new(vec![], [one.clone(), Rational::zero(), one.clone()], Signature::GL21, one).is_err());
}

#[test]
fn rtt_examples() {
    let ch = chain(&[rat(1, 2)], [1, 1, 1], Signature::GL21, rat(2, 3));
    assert!(check_rtt(&ch, &qq(5, 3), &qq(-1, 4)).unwrap().is_zero());
    let ch = chain(&[rat(0, 1), rat(3, 1), rat(-5, 2)], [2, 1, 3], Signature::GL12, Rational::one());
    assert!(check_rtt(&ch, &qq(7, 2), &qq(1, 3)).unwrap().is_zero());
    assert_eq!(check_rtt(&ch, &q(2), &q(2)), Err(Error::DivisionByZero));
}

#[test]
fn supercommutator_all_tuples_two_sites() {
    for sig in SIGS {
        let ch = chain(&[rat(1, 2), rat(-3, 1)], [3, -2, 5], sig, rat(4, 3));
        let (u, v) = (qq(11, 5), qq(-2, 7));
        for n in 0..81 {
            let idx = (n / 27 + 1, n / 9 % 3 + 1, n / 3 % 3 + 1, n % 3 + 1);
            let (a, b) = check_supercommutator(&ch, idx, &u, &v).unwrap();
            assert!(a.is_zero() && b.is_zero(), "{sig} {idx:?}");
        }
    }
}

#[test]
fn entry_parities_are_declared() {
    for sig in SIGS {
        let ch = chain(&[rat(1, 2), rat(2, 1)], [1, 2, 3], sig, Rational::one());
        let t = ch.monodromy(&q(7)).unwrap();
        for i in 1..=3 {
            for j in 1..=3 {
                let p = Parity::of(sig.parity(i) + sig.parity(j));
                assert_eq!(t.t(i, j).parity(), p);
                assert!(t.t(i, j).respects(p));
            }
        }
    }
}

fn chain_strategy() -> impl Strategy<Value = (ChainSpec, Rational)> {
    (
        proptest::collection::vec(small_rational(), 0..=3),
        proptest::array::uniform3(nonzero_rational()),
        nonzero_rational(),
        any::<bool>(),
        small_rational(),
    )
        .prop_filter_map("generic", |(xi, d, c, gl12, u)| {
            let mut all = xi.clone();
            all.push(u.clone());
            if !generic(&all, &c) {
                return None;
            }
            let sig = SIGS[gl12 as usize];
            Some((ChainSpec::new(xi, d, sig, c).unwrap(), u))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn vacuum_axioms((ch, u) in chain_strategy()) {
        let u = EpsScalar::from(u);
        let t = ch.monodromy(&u).unwrap();
        let omega = ch.vacuum();
        let dual = ch.dual_vacuum();
        prop_assert_eq!(omega.parity(), Some(Parity::Even));
        for i in 1..=3 {
            // closed forms against direct action
            let mut lam = EpsScalar::from(ch.twist()[i - 1].clone());
            if i == 1 {
                for x in ch.xi() {
                    lam = lam.mul(&f(&u, &EpsScalar::from(x.clone()), ch.c()).unwrap());
                }
            }
            prop_assert_eq!(t.t(i, i).apply(&omega).unwrap(), omega.scale(&lam));
            prop_assert_eq!(&ch.lambda(i, &u).unwrap(), &lam);
            for j in 1..=3 {
                if i > j {
                    prop_assert!(t.t(i, j).apply(&omega).unwrap().is_zero());
                }
                if i < j {
                    prop_assert!(t.t(i, j).dual_apply(&dual).unwrap().is_zero());
                }
            }
        }
    }
}
