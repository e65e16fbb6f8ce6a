//! Greatest common divisors of integer polynomials.
//!
//! The main route is the heuristic gcd (evaluate one variable at a large
//! integer, recurse, then reconstruct by balanced base-`x` digits and confirm
//! by trial division). A recursive primitive-PRS gcd is the fallback whenever
//! the heuristic gives up; both return exact results.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{IntPoly, Monomial};

const HEU_ATTEMPTS: usize = 6;

/// Result of a gcd computation: `gcd` together with the cofactors
/// `a / gcd` and `b / gcd`.
#[derive(Clone, Debug)]
pub struct GcdCofactors {
    pub gcd: IntPoly,
    pub cofactor_a: IntPoly,
    pub cofactor_b: IntPoly,
}

/// Gcd with positive leading coefficient (the integer content is included).
pub fn gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    gcd_cofactors(a, b).gcd
}

pub fn gcd_cofactors(a: &IntPoly, b: &IntPoly) -> GcdCofactors {
    let nvars = a.nvars();
    if a.is_zero() {
        let (c, p) = b.primitive_part();
        let mut g = p.scale(&c.abs());
        let mut cb = IntPoly::constant(nvars, if c.is_negative() { -BigInt::one() } else { BigInt::one() });
        if b.is_zero() {
            g = IntPoly::zero(nvars);
            cb = IntPoly::zero(nvars);
        }
        return GcdCofactors { gcd: g, cofactor_a: IntPoly::zero(nvars), cofactor_b: cb };
    }
    if b.is_zero() {
        let swapped = gcd_cofactors(b, a);
        return GcdCofactors { gcd: swapped.gcd, cofactor_a: swapped.cofactor_b, cofactor_b: swapped.cofactor_a };
    }
    if a == b {
        let (c, _) = a.primitive_part();
        let g = if c.is_negative() { -a } else { a.clone() };
        let unit = IntPoly::constant(nvars, if c.is_negative() { -BigInt::one() } else { BigInt::one() });
        return GcdCofactors { gcd: g, cofactor_a: unit.clone(), cofactor_b: unit };
    }

    let (ca, pa) = a.primitive_part();
    let (cb, pb) = b.primitive_part();
    let cont = ca.abs().gcd(&cb.abs());

    let ma = pa.monomial_content();
    let mb = pb.monomial_content();
    let mg: Monomial = ma.iter().zip(mb.iter()).map(|(&x, &y)| x.min(y)).collect();
    let pa = pa.div_monomial(&ma);
    let pb = pb.div_monomial(&mb);

    let core = primitive_gcd(&pa, &pb);
    let g = core.mul_monomial(&mg, &cont);
    let cofactor_a = a.div_exact(&g).expect("gcd divides its first argument");
    let cofactor_b = b.div_exact(&g).expect("gcd divides its second argument");
    GcdCofactors { gcd: g, cofactor_a, cofactor_b }
}

/// Gcd of two primitive polynomials with no monomial content; the result is
/// primitive with positive leading coefficient.
fn primitive_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let nvars = a.nvars();
    if a.is_constant() || b.is_constant() {
        return IntPoly::one(nvars);
    }
    if a == b {
        return a.clone();
    }
    // A variable present in only one argument cannot occur in the gcd: reduce
    // to gcds with the coefficients of that variable.
    for v in 0..nvars {
        let (ia, ib) = (a.contains_var(v), b.contains_var(v));
        if ia != ib {
            let (with, without) = if ia { (a, b) } else { (b, a) };
            let mut g = without.clone();
            let mut coeffs = with.as_univariate(v);
            coeffs.sort_by_key(|c| c.len());
            for c in coeffs.iter().filter(|c| !c.is_zero()) {
                g = gcd(&g, c);
                if g.is_constant() {
                    return IntPoly::one(nvars);
                }
            }
            return g.primitive_part().1;
        }
    }
    // If one divides the other we are done.
    if a.len() <= b.len() {
        if b.div_exact(a).is_some() {
            return a.clone();
        }
    } else if a.div_exact(b).is_some() {
        return b.clone();
    }
    match heu_gcd(a, b) {
        Some((h, _, _)) => h.primitive_part().1,
        None => prs_gcd(a, b),
    }
}

fn first_var(a: &IntPoly, b: &IntPoly) -> Option<usize> {
    (0..a.nvars()).find(|&v| a.contains_var(v) || b.contains_var(v))
}

/// Coefficient of the lexicographically largest term.
fn lex_leading_coeff(p: &IntPoly) -> BigInt {
    p.terms().iter().max_by(|x, y| x.0.cmp(&y.0)).map(|(_, c)| c.clone()).unwrap_or_else(BigInt::zero)
}

fn heu_gcd(f: &IntPoly, g: &IntPoly) -> Option<(IntPoly, IntPoly, IntPoly)> {
    let nvars = f.nvars();
    let Some(main) = first_var(f, g) else {
        let (a, b) = (f.constant_value().unwrap(), g.constant_value().unwrap());
        let h = a.gcd(&b);
        if h.is_zero() {
            return None;
        }
        return Some((
            IntPoly::constant(nvars, h.clone()),
            IntPoly::constant(nvars, &a / &h),
            IntPoly::constant(nvars, &b / &h),
        ));
    };
    if f.is_zero() || g.is_zero() {
        return None;
    }
    let gc = f.content().gcd(&g.content());
    let f = f.div_int_exact(&gc);
    let g = g.div_int_exact(&gc);

    let f_norm = f.max_abs_coeff();
    let g_norm = g.max_abs_coeff();
    let b = BigInt::from(2) * (&f_norm).min(&g_norm) + BigInt::from(29);
    let lf = lex_leading_coeff(&f).abs();
    let lg = lex_leading_coeff(&g).abs();
    let lower = BigInt::from(2) * (&f_norm / &lf).min(&g_norm / &lg) + BigInt::from(2);
    let mut x = (&b).min(&(BigInt::from(99) * b.sqrt())).clone().max(lower);

    for _ in 0..HEU_ATTEMPTS {
        let ff = f.eval_var(main, &x);
        let gg = g.eval_var(main, &x);
        if !ff.is_zero() && !gg.is_zero() {
            if let Some((h, cff, cfg)) = heu_gcd(&ff, &gg) {
                let h = interpolate(&h, &x, main).primitive_part().1;
                if let Some(cf) = f.div_exact(&h) {
                    if let Some(cg) = g.div_exact(&h) {
                        return Some((h.scale(&gc), cf, cg));
                    }
                }
                let cff = interpolate(&cff, &x, main);
                if let Some(h) = f.div_exact(&cff) {
                    if let Some(cg) = g.div_exact(&h) {
                        return Some((h.scale(&gc), cff, cg));
                    }
                }
                let cfg = interpolate(&cfg, &x, main);
                if let Some(h) = g.div_exact(&cfg) {
                    if let Some(cf) = f.div_exact(&h) {
                        return Some((h.scale(&gc), cf, cfg));
                    }
                }
            }
        }
        x = BigInt::from(73794) * &x * x.sqrt().sqrt() / BigInt::from(27011);
    }
    None
}

/// Reconstructs a polynomial in `var` from its image at `var = x` by
/// balanced base-`x` digit expansion of every coefficient.
fn interpolate(h: &IntPoly, x: &BigInt, var: usize) -> IntPoly {
    let half = x / BigInt::from(2);
    let mut terms: Vec<(Monomial, BigInt)> = Vec::new();
    for (m, c) in h.terms() {
        let mut c = c.clone();
        let mut e: u16 = 0;
        while !c.is_zero() {
            let mut r = c.mod_floor(x);
            if r > half {
                r -= x;
            }
            if !r.is_zero() {
                let mut mm = m.clone();
                mm[var] = e;
                terms.push((mm, r.clone()));
            }
            c = (c - r) / x;
            e += 1;
        }
    }
    let p = IntPoly::from_terms(h.nvars(), terms);
    if lex_leading_coeff(&p).is_negative() {
        -p
    } else {
        p
    }
}

/// Recursive gcd via primitive polynomial remainder sequences.
fn prs_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let nvars = a.nvars();
    let Some(v) = (0..nvars).find(|&v| a.contains_var(v) && b.contains_var(v)) else {
        return IntPoly::one(nvars);
    };
    let ua = a.as_univariate(v);
    let ub = b.as_univariate(v);
    let cont_a = univariate_content(&ua);
    let cont_b = univariate_content(&ub);
    let cont = gcd(&cont_a, &cont_b);
    let mut p = divide_all(&ua, &cont_a);
    let mut q = divide_all(&ub, &cont_b);
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    while q.len() > 1 {
        let r = pseudo_rem(&p, &q);
        p = q;
        if r.is_empty() {
            q = Vec::new();
            break;
        }
        let c = univariate_content(&r);
        q = divide_all(&r, &c);
    }
    let last = if q.is_empty() { p } else { vec![IntPoly::one(nvars)] };
    let poly = IntPoly::from_univariate(nvars, v, &last);
    (&poly * &cont).primitive_part().1
}

fn univariate_content(coeffs: &[IntPoly]) -> IntPoly {
    let mut g = IntPoly::zero(coeffs.first().map(|c| c.nvars()).unwrap_or(0));
    for c in coeffs {
        if !c.is_zero() {
            g = gcd(&g, c);
            if g.is_one() {
                break;
            }
        }
    }
    g.primitive_part().1
}

fn divide_all(coeffs: &[IntPoly], d: &IntPoly) -> Vec<IntPoly> {
    coeffs.iter().map(|c| c.div_exact(d).expect("content divides every coefficient")).collect()
}

/// Pseudo-remainder of univariate polynomials with polynomial coefficients;
/// trailing zeros are trimmed so the result's length is degree + 1.
fn pseudo_rem(p: &[IntPoly], q: &[IntPoly]) -> Vec<IntPoly> {
    let mut r: Vec<IntPoly> = p.to_vec();
    let dq = q.len() - 1;
    let lq = q[dq].clone();
    while r.len() > dq {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - dq;
        for c in r.iter_mut() {
            *c = &*c * &lq;
        }
        for (i, qc) in q.iter().enumerate() {
            let t = &lr * qc;
            r[i + shift] = &r[i + shift] - &t;
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::Monomial;

    fn lin(n: usize, a: usize, b: usize) -> IntPoly {
        &IntPoly::var(n, a) - &IntPoly::var(n, b)
    }

    #[test]
    fn gcd_of_products_of_linear_forms() {
        let n = 4;
        let f = &(&lin(n, 0, 1) * &lin(n, 0, 2)) * &lin(n, 2, 3).pow(2);
        let g = &(&lin(n, 0, 1) * &lin(n, 1, 3)) * &lin(n, 2, 3);
        let h = gcd(&f, &g);
        let expect = (&lin(n, 0, 1) * &lin(n, 2, 3)).primitive_part().1;
        assert_eq!(h, expect);
    }

    #[test]
    fn prs_matches_heuristic() {
        let n = 3;
        let x = IntPoly::var(n, 0);
        let y = IntPoly::var(n, 1);
        let z = IntPoly::var(n, 2);
        let common = &(&(&x * &y) + &z.scale(&BigInt::from(3))) + &IntPoly::one(n);
        let f = &common * &(&x.pow(2) - &y);
        let g = &common * &(&(&y * &z) + &x);
        let h1 = primitive_gcd(&f.primitive_part().1, &g.primitive_part().1);
        let h2 = prs_gcd(&f, &g);
        assert_eq!(h1, common.primitive_part().1);
        assert_eq!(h2, common.primitive_part().1);
    }

    #[test]
    fn integer_content_and_monomials() {
        let f = IntPoly::monomial(Monomial::from_slice(&[2, 1]), BigInt::from(6));
        let g = IntPoly::monomial(Monomial::from_slice(&[1, 3]), BigInt::from(4));
        let h = gcd(&f, &g);
        assert_eq!(h, IntPoly::monomial(Monomial::from_slice(&[1, 1]), BigInt::from(2)));
    }
}
