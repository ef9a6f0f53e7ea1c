use alloc::vec::Vec;

use super::functions::{f, g};
use super::{EpsScalar, Rational};
use crate::error::{Error, Result};

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
pub fn determinant(mut m: Vec<Vec<EpsScalar>>) -> Result<EpsScalar> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidParameters("determinant of a non-square matrix".into()));
    }
    let mut sign_flip = false;
    let mut prev = EpsScalar::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign_flip = !sign_flip;
                }
                None => return Ok(EpsScalar::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let det = if n == 0 { EpsScalar::one() } else { m[n - 1][n - 1].clone() };
    Ok(if sign_flip { det.neg() } else { det })
}

/// Izergin determinant `K_n(v̄|ū)`:
/// `∏_{i<j} g(v_i,v_j) g(u_j,u_i) · h(v̄,ū) · det[g(v_k,u_l)²/f(v_k,u_l)]`.
pub fn izergin_k(v: &[EpsScalar], u: &[EpsScalar], c: &Rational) -> Result<EpsScalar> {
    if v.len() != u.len() {
        return Err(Error::CardinalityMismatch { left: v.len(), right: u.len() });
    }
    let n = v.len();
    let mut pre = EpsScalar::one();
    for i in 0..n {
        for j in i + 1..n {
            pre = pre.mul(&g(&v[i], &v[j], c)?).mul(&g(&u[j], &u[i], c)?);
        }
    }
    let mut rows = Vec::with_capacity(n);
    for vk in v {
        let mut row = Vec::with_capacity(n);
        for ul in u {
            let gg = g(vk, ul, c)?;
            let ff = f(vk, ul, c)?;
            // g²/f = g·g/(1+g) and h = f/g.
            row.push(gg.mul(&gg).div(&ff)?);
            pre = pre.mul(&ff.div(&gg)?);
        }
        rows.push(row);
    }
    Ok(pre.mul(&determinant(rows)?))
}
