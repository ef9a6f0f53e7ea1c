mod common;

use common::*;
use superbethe_core::actions::*;
use superbethe_core::graded::Signature;
use superbethe_core::monodromy::{ChainSpec, Model};
use superbethe_core::{EpsScalar, Rational};

fn chain(xi: &[i64], d: [i64; 3]) -> ChainSpec {
    ChainSpec::new(xi.iter().map(|&x| Rational::from_int(x)).collect(), d.map(Rational::from_int), Signature::GL21, Rational::one())
        .unwrap()
}

fn e(xs: &[(i64, i64)]) -> Vec<EpsScalar> {
    xs.iter().map(|&(p, d)| qq(p, d)).collect()
}

#[test]
fn all_formulas_on_small_grid() {
    let table = action_formulas().unwrap();
    assert_eq!(table.len(), 7);
    let z = qq(9, 7);
    for ch in [chain(&[0], [1, 1, 1]), chain(&[0, 5], [2, -1, 3])] {
        for (a, b) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2)] {
            let u = e(&[(1, 3), (-5, 2)][..a]);
            let v = e(&[(17, 4), (-1, 7)][..b]);
            for el in Element::ALL {
                let r = action_check(&ch, &table[&el], &u, &v, &z).unwrap();
                assert!(r.is_zero(), "{} L={} ({a},{b}): {}", el.name(), ch.sites(), r.sample(4));
            }
        }
    }
}

#[test]
fn worked_cases() {
    let table = action_formulas().unwrap();
    let ch = chain(&[0], [2, -1, 3]);
    let z = qq(9, 7);
    assert_eq!(action_rhs(&ch, &table[&Element::T22], &[], &[], &z).unwrap(), ch.vacuum());
    let lam = ch.lambda(2, &z).unwrap().recip().unwrap();
    let t13 = ch.monodromy(&z).unwrap().t(1, 3).apply(&ch.vacuum()).unwrap().scale(&lam);
    assert_eq!(action_rhs(&ch, &table[&Element::T13], &[], &[], &z).unwrap(), t13);
    // T21 on 𝔹_{1,0}({u}) = T12(u)Ω/λ2(u), by direct matrix products
    let u = qq(1, 3);
    let direct = ch
        .monodromy(&z)
        .unwrap()
        .t(2, 1)
        .apply(&ch.monodromy(&u).unwrap().t(1, 2).apply(&ch.vacuum()).unwrap())
        .unwrap()
        .scale(&lam.mul(&ch.lambda(2, &u).unwrap().recip().unwrap()));
    assert!(!direct.is_zero());
    assert_eq!(action_rhs(&ch, &table[&Element::T21], &[u], &[], &z).unwrap(), direct);
}

#[test]
fn lhs_is_not_vacuous_and_corruption_is_caught() {
    let mut table = action_formulas().unwrap();
    let ch = chain(&[0, 5, -3], [2, -1, 3]);
    let (u, v, z) = (e(&[(1, 3), (-5, 2)]), e(&[(17, 4)]), qq(9, 7));
    for el in Element::ALL {
        assert!(!action_lhs(&ch, el, &u, &v, &z).unwrap().is_zero(), "{}", el.name());
    }
    let f = table.get_mut(&Element::T21).unwrap();
    f.terms[2].coefficient = format!("2*({})", f.terms[2].coefficient);
    assert!(!action_check(&ch, &table[&Element::T21], &u, &v, &z).unwrap().is_zero());
}

#[test]
fn malformed_tables() {
    assert!(parse_formulas("[{\"element\":\"T31\",\"terms\":[]}]").is_err());
    let bad = r#"[{"element":"T11","terms":[{"partition_spec":[],"coefficient_expr":"f(u,","target_vector_args":{"u":["u"],"v":["v"]}}]}]"#;
    assert!(parse_formulas(bad).is_err());
    assert!(parse_formulas("{").is_err());
}
