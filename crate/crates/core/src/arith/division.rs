//! Exact division of integer polynomials.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::poly::{GrlexKey, IntPoly, Monomial};

/// Evaluation point used to reject non-divisible pairs cheaply.
const PROBE: [i64; 8] = [3, -5, 7, 11, -13, 17, 19, -23];

fn probe_rejects(a: &IntPoly, b: &IntPoly) -> bool {
    let point: Vec<BigInt> = (0..a.nvars()).map(|v| BigInt::from(PROBE[v % PROBE.len()] + v as i64 / 8)).collect();
    let bv = b.eval(&point);
    if bv.is_zero() {
        return false;
    }
    let av = a.eval(&point);
    !av.is_multiple_of(&bv)
}

pub(crate) fn div_exact(a: &IntPoly, b: &IntPoly) -> Option<IntPoly> {
    assert!(!b.is_zero(), "division by the zero polynomial");
    let nvars = a.nvars();
    if a.is_zero() {
        return Some(IntPoly::zero(nvars));
    }
    if b.is_one() {
        return Some(a.clone());
    }
    if b.is_constant() {
        let d = b.constant_value().unwrap();
        if a.terms().iter().all(|(_, c)| c.is_multiple_of(&d)) {
            return Some(a.div_int_exact(&d));
        }
        return None;
    }
    // Degree bounds per variable.
    for v in 0..nvars {
        let (da, db) = (a.degree_in(v).unwrap(), b.degree_in(v).unwrap());
        if db > da {
            return None;
        }
        let (la, lb) = (a.min_degree_in(v).unwrap(), b.min_degree_in(v).unwrap());
        if lb > la {
            return None;
        }
    }
    if a.total_degree() < b.total_degree() {
        return None;
    }
    if b.len() == 1 {
        let (bm, bc) = &b.terms()[0];
        let mut out = Vec::with_capacity(a.len());
        for (m, c) in a.terms() {
            if !c.is_multiple_of(bc) {
                return None;
            }
            let q: Monomial = m.iter().zip(bm.iter()).map(|(&x, &y)| x - y).collect();
            out.push((q, c / bc));
        }
        return Some(IntPoly::from_sorted_unchecked(nvars, out));
    }
    if probe_rejects(a, b) {
        return None;
    }

    let (lm, lc) = {
        let (m, c) = &b.terms()[0];
        (m.clone(), c.clone())
    };
    let rest: Vec<(Monomial, BigInt)> = b.terms()[1..].to_vec();
    let mut rem: BTreeMap<GrlexKey, BigInt> = a.terms().iter().map(|(m, c)| (GrlexKey(m.clone()), c.clone())).collect();
    let mut quotient: Vec<(Monomial, BigInt)> = Vec::new();
    while let Some((key, coeff)) = rem.pop_last() {
        let m = key.0;
        if m.iter().zip(lm.iter()).any(|(&x, &y)| x < y) {
            return None;
        }
        let (qc, r) = coeff.div_rem(&lc);
        if !r.is_zero() {
            return None;
        }
        let qm: Monomial = m.iter().zip(lm.iter()).map(|(&x, &y)| x - y).collect();
        for (bm, bc) in &rest {
            let tm: Monomial = qm.iter().zip(bm.iter()).map(|(&x, &y)| x + y).collect();
            let prod = &qc * bc;
            let k = GrlexKey(tm);
            match rem.get_mut(&k) {
                Some(v) => {
                    *v -= &prod;
                    if v.is_zero() {
                        rem.remove(&k);
                    }
                }
                None => {
                    rem.insert(k, -prod);
                }
            }
        }
        quotient.push((qm, qc));
    }
    Some(IntPoly::from_sorted_unchecked(nvars, quotient))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(&[u16], i64)]) -> IntPoly {
        let n = terms[0].0.len();
        IntPoly::from_terms(n, terms.iter().map(|(m, c)| (Monomial::from_slice(m), BigInt::from(*c))))
    }

    #[test]
    fn exact_and_inexact() {
        // (z1 - z2)(z1 + 2 z2)
        let a = p(&[(&[1, 0], 1), (&[0, 1], -1)]);
        let b = p(&[(&[1, 0], 1), (&[0, 1], 2)]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        let c = p(&[(&[1, 0], 1), (&[0, 0], 1)]);
        assert_eq!(prod.div_exact(&c), None);
        // Non-integral quotient.
        let two_a = a.scale(&BigInt::from(2));
        assert_eq!(a.div_exact(&two_a), None);
    }
}
