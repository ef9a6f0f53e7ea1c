mod common;

use common::*;
use proptest::prelude::*;
use superbethe_core::scalar::{f, g, h, izergin_k};
use superbethe_core::{EpsScalar, Error, Rational};

/// Determinant by permutation expansion.
fn leibniz(m: &[Vec<EpsScalar>]) -> EpsScalar {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = EpsScalar::zero();
    permute(&mut perm, 0, &mut |p| {
        let mut inv = 0;
        for i in 0..n {
            for j in i + 1..n {
                if p[i] > p[j] {
                    inv += 1;
                }
            }
        }
        let mut term = if inv % 2 == 0 { EpsScalar::one() } else { q(-1) };
        for (i, &j) in p.iter().enumerate() {
            term = term.mul(&m[i][j]);
        }
        total = total.add(&term);
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, visit);
        p.swap(k, i);
    }
}

/// Independent route: prefactors written out from the definition, entries
/// `g²/f` built directly, determinant by permutation expansion.
fn izergin_oracle(v: &[EpsScalar], u: &[EpsScalar], c: &Rational) -> EpsScalar {
    let n = v.len();
    let mut pre = EpsScalar::one();
    for i in 0..n {
        for j in 0..n {
            if i < j {
                pre = pre.mul(&g(&v[i], &v[j], c).unwrap()).mul(&g(&u[j], &u[i], c).unwrap());
            }
            pre = pre.mul(&h(&v[i], &u[j], c).unwrap());
        }
    }
    let m: Vec<Vec<EpsScalar>> = v
        .iter()
        .map(|vk| {
            u.iter()
                .map(|ul| {
                    let gg = g(vk, ul, c).unwrap();
                    gg.mul(&gg).div(&f(vk, ul, c).unwrap()).unwrap()
                })
                .collect()
        })
        .collect();
    pre.mul(&leibniz(&m))
}

#[test]
fn small_cases() {
    let c = Rational::one();
    assert!(izergin_k(&[], &[], &c).unwrap().is_one());
    assert_eq!(izergin_k(&[q(2)], &[q(1)], &c).unwrap(), q(1));
    assert_eq!(izergin_k(&[q(5), q(6)], &[q(1), q(2)], &c).unwrap(), qq(1, 6));
    assert_eq!(
        izergin_k(&[q(1)], &[], &c),
        Err(Error::CardinalityMismatch { left: 1, right: 0 })
    );
    assert_eq!(izergin_k(&[q(1)], &[q(1)], &c), Err(Error::DivisionByZero));
}

#[test]
fn hand_expanded_two_by_two() {
    // K_2 written out with c = 1:
    // g(v1,v2)g(u2,u1) h(v,u) [g²/f(v1,u1) g²/f(v2,u2) − g²/f(v1,u2) g²/f(v2,u1)]
    // At v = {5,6}, u = {1,2}: g(5,6) = -1, g(2,1) = 1, h(v,u) = 5·6·4·5 = 600,
    // g²/f = 1/(d(d+1)) for d = v-u: d = 4,5,3,4 → 1/20, 1/30, 1/12, 1/20.
    let bracket = qq(1, 20).mul(&qq(1, 20)).sub(&qq(1, 12).mul(&qq(1, 30)));
    let expected = q(-1).mul(&q(1)).mul(&q(600)).mul(&bracket);
    assert_eq!(expected, qq(1, 6));
    assert_eq!(
        izergin_oracle(&[q(5), q(6)], &[q(1), q(2)], &Rational::one()),
        expected
    );
}

fn points(n: usize) -> impl Strategy<Value = (Vec<Rational>, Vec<Rational>, Rational)> {
    (
        proptest::collection::vec(small_rational(), n),
        proptest::collection::vec(small_rational(), n),
        nonzero_rational(),
    )
        .prop_filter("generic", |(v, u, c)| {
            let mut all = v.clone();
            all.extend(u.iter().cloned());
            generic(&all, c)
        })
}

fn lift(x: &[Rational]) -> Vec<EpsScalar> {
    x.iter().cloned().map(EpsScalar::from).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn k1_is_g((v, u, c) in points(1)) {
        let (v, u) = (lift(&v), lift(&u));
        prop_assert_eq!(izergin_k(&v, &u, &c).unwrap(), g(&v[0], &u[0], &c).unwrap());
    }

    #[test]
    fn bareiss_matches_leibniz((v, u, c) in (1usize..=3).prop_flat_map(points)) {
        let (v, u) = (lift(&v), lift(&u));
        prop_assert_eq!(izergin_k(&v, &u, &c).unwrap(), izergin_oracle(&v, &u, &c));
    }

    #[test]
    fn symmetric_in_each_set((v, u, c) in (2usize..=3).prop_flat_map(points)) {
        let (v, u) = (lift(&v), lift(&u));
        let base = izergin_k(&v, &u, &c).unwrap();
        let n = v.len();
        let mut idx: Vec<usize> = (0..n).collect();
        let mut perms = Vec::new();
        permute(&mut idx, 0, &mut |p| perms.push(p.to_vec()));
        for p in &perms {
            let vp: Vec<_> = p.iter().map(|&i| v[i].clone()).collect();
            let up: Vec<_> = p.iter().map(|&i| u[i].clone()).collect();
            prop_assert_eq!(&izergin_k(&vp, &u, &c).unwrap(), &base);
            prop_assert_eq!(&izergin_k(&v, &up, &c).unwrap(), &base);
        }
    }
}

#[test]
fn determinant_with_pivoting() {
    use superbethe_core::scalar::determinant;
    let m = vec![vec![q(0), q(2), q(1)], vec![q(3), q(0), q(4)], vec![q(1), q(5), q(0)]];
    assert_eq!(determinant(m.clone()).unwrap(), leibniz(&m));
    let singular = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
    assert!(determinant(singular).unwrap().is_zero());
}
