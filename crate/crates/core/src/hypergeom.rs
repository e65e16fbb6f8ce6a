//! The three-point case: splitting off `u_1`, reducing the `u_2` equation to
//! the Gauss hypergeometric equation, and reading rational solutions of that
//! equation off the rational solution of the full system.

use num_traits::{One, Zero};

use crate::arith::{MultiPoly, QMatrix, RFMatrix, RatFunc, Rational};
use crate::assembly::{assemble_product, BasePointConfig};
use crate::coords::{h_matrix, omega_matrix, to_u_coordinates};
use crate::error::{KzError, Result};
use crate::report::Report;
use crate::symmetric::transposition;

fn ri(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

fn y() -> RatFunc {
    RatFunc::var(1, 0)
}

fn c1(x: i64) -> RatFunc {
    RatFunc::from_int(1, x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussParams {
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
}

pub fn gauss_params(rho: i64) -> GaussParams {
    GaussParams { alpha: ri(-rho), beta: ri(-3 * rho), gamma: ri(1 - 2 * rho) }
}

/// `y(1-y) psi'' + [gamma - (alpha + beta + 1) y] psi' - alpha beta psi`.
pub fn hypergeom_ode_residual(psi: &RatFunc, p: &GaussParams) -> RatFunc {
    let d1 = psi.derivative(0);
    let d2 = d1.derivative(0);
    let yy = y();
    let a = &yy * &(&c1(1) - &yy);
    let b = &RatFunc::constant(1, p.gamma.clone()) - &yy.scale(&(&p.alpha + &p.beta + Rational::one()));
    &(&(&a * &d2) + &(&b * &d1)) - &psi.scale(&(&p.alpha * &p.beta))
}

/// `f(-y)`.
pub fn reflect(f: &RatFunc) -> RatFunc {
    f.compose(&[MultiPoly::var(1, 0).scale(&ri(-1))]).expect("reflection keeps denominators nonzero")
}

pub fn wronskian(a: &RatFunc, b: &RatFunc) -> RatFunc {
    &(a * &b.derivative(0)) - &(&a.derivative(0) * b)
}

/// Coefficients of `F = phi1 w1 + phi2 w2`, `w1 = (0, 1, -1)`, `w2 = (1, -2, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiPair {
    pub phi1: RatFunc,
    pub phi2: RatFunc,
}

pub fn w1() -> Vec<Rational> {
    vec![ri(0), ri(1), ri(-1)]
}

pub fn w2() -> Vec<Rational> {
    vec![ri(1), ri(-2), ri(1)]
}

/// Residuals of `phi1' = (3 rho / y) phi2` and
/// `phi2' = rho (2 phi2 / y + 2 phi2 / (1 + y) - phi1 / (1 + y))`.
pub fn phi_system_residual(pair: &PhiPair, rho: &Rational) -> (RatFunc, RatFunc) {
    let yy = y();
    let inv_y = yy.inverse().unwrap();
    let inv_1y = (&c1(1) + &yy).inverse().unwrap();
    let r1 = &pair.phi1.derivative(0) - &(&inv_y * &pair.phi2).scale(&(rho * ri(3)));
    let rhs =
        &(&(&(&inv_y * &pair.phi2).scale(&ri(2)) + &(&inv_1y * &pair.phi2).scale(&ri(2))) - &(&inv_1y * &pair.phi1));
    let r2 = &pair.phi2.derivative(0) - &rhs.scale(rho);
    (r1, r2)
}

/// `y(1+y) phi'' + [1 + y - 2 rho (1 + 2y)] phi' + 3 rho^2 phi`.
pub fn phi1_second_order_residual(phi1: &RatFunc, rho: &Rational) -> RatFunc {
    let yy = y();
    let d1 = phi1.derivative(0);
    let d2 = d1.derivative(0);
    let a = &yy * &(&c1(1) + &yy);
    let b = &(&c1(1) + &yy) - &(&c1(1) + &yy.scale(&ri(2))).scale(&(rho * ri(2)));
    &(&(&a * &d2) + &(&b * &d1)) + &phi1.scale(&(rho * rho * ri(3)))
}

/// `x^{rho Omega_1}` for the all-ones `Omega_1` of size 3, in variable `var`.
pub fn omega1_power(rho: i64, nvars: usize, var: usize) -> RFMatrix {
    let proj = QMatrix::from_ints(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]).scale(&Rational::new(1.into(), 3.into()));
    let rest = &QMatrix::identity(3) - &proj;
    let power = RatFunc::var(nvars, var).pow(3 * rho as i32).expect("nonzero variable");
    RFMatrix::from_qmatrix(&proj, nvars).scale(&power).try_add(&RFMatrix::from_qmatrix(&rest, nvars)).unwrap()
}

fn weight(rho: i64) -> RatFunc {
    (&y() * &(&c1(1) + &y())).pow(rho as i32).expect("nonzero")
}

fn vector_times(v: &[Rational], f: &RatFunc) -> Vec<RatFunc> {
    v.iter().map(|x| f.scale(x)).collect()
}

fn add_vec(a: &[RatFunc], b: &[RatFunc]) -> Vec<RatFunc> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Column `[psi(-y) w1 + (y / (3 rho)) d/dy[psi(-y)] w2] (y (1 + y))^{-rho}`.
pub fn column_from_psi(psi: &RatFunc, rho: i64) -> Vec<RatFunc> {
    let phi1 = reflect(psi);
    let phi2 = (&y() * &phi1.derivative(0)).scale(&Rational::new(1.into(), (3 * rho).into()));
    let inv_w = weight(-rho);
    add_vec(&vector_times(&w1(), &(&phi1 * &inv_w)), &vector_times(&w2(), &(&phi2 * &inv_w)))
}

/// The column as printed, with coefficient `-(3 rho / y) psi'(-y)` on `w2`.
pub fn printed_column_from_psi(psi: &RatFunc, rho: i64) -> Vec<RatFunc> {
    let phi1 = reflect(psi);
    let dpsi = reflect(&psi.derivative(0));
    let coef = (&dpsi * &y().inverse().unwrap()).scale(&ri(-3 * rho));
    let inv_w = weight(-rho);
    add_vec(&vector_times(&w1(), &(&phi1 * &inv_w)), &vector_times(&w2(), &(&coef * &inv_w)))
}

/// `H_2` of the three-point system in the single variable `y = u_2`.
pub fn h2_in_y() -> RFMatrix {
    h_matrix(3, 2).expect("n = 3").remap_vars(1, &[0, 0, 0])
}

/// Residual of `dY/dy = rho H_2 Y` for a column.
pub fn column_residual(col: &[RatFunc], rho: i64) -> Vec<RatFunc> {
    let h = h2_in_y().scale_q(&ri(rho));
    let hy = h.mul_vec(col);
    col.iter().zip(&hy).map(|(c, r)| &c.derivative(0) - r).collect()
}

#[derive(Clone, Debug)]
pub struct N3Solution {
    pub rho: i64,
    /// `u_1^{rho Omega_1}` in one variable.
    pub w1: RFMatrix,
    /// `[Y_1, Y_2, Y_3]` in `y = u_2`.
    pub w2: RFMatrix,
    /// The pairs behind `Y_1` and `Y_2`.
    pub pairs: Vec<PhiPair>,
    /// Two independent solutions of the Gauss equation.
    pub psi: Vec<RatFunc>,
}

/// Projects the solution of the full system, in `u` coordinates with `u_1`
/// split off, onto the sum-zero plane and returns `(phi1, phi2)` per column.
fn extract_pairs(rho: i64) -> Result<Vec<PhiPair>> {
    let sol = assemble_product(3, rho, &BasePointConfig::default_for(3))?;
    let wu = to_u_coordinates(&sol.product)?;
    let split = omega1_power(-rho, 3, 0).try_mul(&wu)?;
    if split.entries().iter().any(|e| e.contains_var(0) || e.contains_var(2)) {
        return Err(KzError::VerificationFailed("u_1 factor does not split off".into()));
    }
    let m = split.remap_vars(1, &[0, 0, 0]);
    let wt = weight(rho);
    Ok((0..3)
        .map(|j| {
            let col: Vec<RatFunc> = m.column(j).iter().map(|e| e * &wt).collect();
            let mean = (&(&col[0] + &col[1]) + &col[2]).scale(&Rational::new(1.into(), 3.into()));
            let f: Vec<RatFunc> = col.iter().map(|e| e - &mean).collect();
            PhiPair { phi2: f[0].clone(), phi1: &f[1] + &f[0].scale(&ri(2)) }
        })
        .collect())
}

pub fn build_n3_solution(rho: i64) -> Result<N3Solution> {
    if rho == 0 {
        return Ok(N3Solution {
            rho,
            w1: RFMatrix::identity(3, 1),
            w2: RFMatrix::identity(3, 1),
            pairs: Vec::new(),
            psi: Vec::new(),
        });
    }
    let rq = ri(rho);
    let fail = |what: String| KzError::VerificationFailed(what);
    let pairs = extract_pairs(rho)?;
    for (j, p) in pairs.iter().enumerate() {
        let (r1, r2) = phi_system_residual(p, &rq);
        if !r1.is_zero() || !r2.is_zero() {
            return Err(fail(format!("first-order system fails for column {}", j + 1)));
        }
        if !phi1_second_order_residual(&p.phi1, &rq).is_zero() {
            return Err(fail(format!("second-order equation fails for column {}", j + 1)));
        }
    }
    let psis: Vec<RatFunc> = pairs.iter().map(|p| reflect(&p.phi1)).collect();
    let (a, b) = (0..3)
        .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
        .find(|&(i, j)| !wronskian(&psis[i], &psis[j]).is_zero())
        .ok_or_else(|| fail("no independent pair of solutions".into()))?;
    let params = gauss_params(rho);
    for &k in &[a, b] {
        if !hypergeom_ode_residual(&psis[k], &params).is_zero() {
            return Err(fail(format!("Gauss equation fails for column {}", k + 1)));
        }
    }
    let y3 = vector_times(&[ri(1), ri(1), ri(1)], &weight(rho));
    let cols = vec![column_from_psi(&psis[a], rho), column_from_psi(&psis[b], rho), y3];
    for (k, c) in cols.iter().enumerate() {
        if column_residual(c, rho).iter().any(|e| !e.is_zero()) {
            return Err(fail(format!("Y_{} does not solve the u_2 equation", k + 1)));
        }
    }
    let w2 = RFMatrix::from_columns(&cols, 1);
    if w2.determinant()?.is_zero() {
        return Err(fail("W_2 is singular".into()));
    }
    let w1 = omega1_power(rho, 1, 0);
    let full = factorized_solution(&w1, &w2)?;
    let (e1, e2) = factorized_residuals(&full, rho)?;
    if !e1.is_zero() || !e2.is_zero() {
        return Err(fail("W_1(u_1) W_2(u_2) does not solve the system".into()));
    }
    Ok(N3Solution {
        rho,
        w1,
        w2,
        pairs: vec![pairs[a].clone(), pairs[b].clone()],
        psi: vec![psis[a].clone(), psis[b].clone()],
    })
}

/// `W_1(u_1) W_2(u_2)` in the two variables `u_1, u_2`.
pub fn factorized_solution(w1: &RFMatrix, w2: &RFMatrix) -> Result<RFMatrix> {
    Ok(w1.remap_vars(2, &[0]).try_mul(&w2.remap_vars(2, &[1]))?)
}

/// Residuals of `dW/du_1 = rho Omega_1 / u_1 W` and `dW/du_2 = rho H_2 W`.
pub fn factorized_residuals(w: &RFMatrix, rho: i64) -> Result<(RFMatrix, RFMatrix)> {
    let omega = RFMatrix::from_qmatrix(&omega_matrix(3, 1)?.matrix, 2).scale(&RatFunc::var(2, 0).inverse()?);
    let h2 = h_matrix(3, 2)?.remap_vars(2, &[0, 1, 1]);
    let r = ri(rho);
    let e1 = w.derivative(0).try_sub(&omega.try_mul(w)?.scale_q(&r))?;
    let e2 = w.derivative(1).try_sub(&h2.try_mul(w)?.scale_q(&r))?;
    Ok((e1, e2))
}

/// The terminating series `sum_k (alpha)_k (beta)_k / ((gamma)_k k!) y^k` when
/// `alpha` is a non-positive integer and no `(gamma)_k` vanishes before it stops.
pub fn terminating_series(p: &GaussParams) -> Option<RatFunc> {
    if !p.alpha.is_integer() || p.alpha > Rational::zero() {
        return None;
    }
    let last: i64 = (-&p.alpha).to_integer().try_into().ok()?;
    let mut term = Rational::one();
    let mut acc = vec![(smallvec::smallvec![0u16], term.clone())];
    for k in 0..last {
        let kq = ri(k);
        let g = &p.gamma + &kq;
        if g.is_zero() {
            return None;
        }
        term = term * (&p.alpha + &kq) * (&p.beta + &kq) / (g * ri(k + 1));
        acc.push((smallvec::smallvec![(k + 1) as u16], term.clone()));
    }
    Some(RatFunc::from_poly(&MultiPoly::from_terms(1, acc)))
}

/// The four vector identities satisfied by `w1`, `w2`.
pub fn vector_identities() -> Report {
    let mut rep = Report::new("w1, w2 identities");
    let id = QMatrix::identity(3);
    let a = &transposition(3, 3, 2) + &id;
    let b = &transposition(3, 3, 1) + &id;
    let lin = |x: i64, u: &[Rational], z: i64, v: &[Rational]| -> Vec<Rational> {
        u.iter().zip(v).map(|(p, q)| p * ri(x) + q * ri(z)).collect()
    };
    let (v1, v2) = (w1(), w2());
    rep.record("(P32 + I) w1 = 0", a.mul_vec(&v1) == lin(0, &v1, 0, &v2), None);
    rep.record("(P31 + I) w1 = -w2", b.mul_vec(&v1) == lin(0, &v1, -1, &v2), None);
    rep.record("(P32 + I) w2 = 3 w1 + 2 w2", a.mul_vec(&v2) == lin(3, &v1, 2, &v2), None);
    rep.record("(P31 + I) w2 = 2 w2", b.mul_vec(&v2) == lin(0, &v1, 2, &v2), None);
    rep
}

/// Certifies rational solutions of the Gauss equation with parameters
/// `(-rho, -3 rho, 1 - 2 rho)`.
pub fn rationality_certificate(rho: i64) -> Report {
    let mut rep = Report::new(format!("rational Gauss solutions, rho = {rho}"));
    let params = gauss_params(rho);
    rep.timed("construction route", || {
        let sol = build_n3_solution(rho).map_err(|e| e.to_string())?;
        if rho == 0 {
            return Ok(());
        }
        for (k, psi) in sol.psi.iter().enumerate() {
            if !hypergeom_ode_residual(psi, &params).is_zero() {
                return Err(format!("psi_{} residual nonzero", k + 1));
            }
        }
        let w = wronskian(&sol.psi[0], &sol.psi[1]);
        if w.is_zero() {
            return Err("Wronskian vanishes".into());
        }
        Ok(())
    });
    if let Ok(sol) = build_n3_solution(rho) {
        for (k, psi) in sol.psi.iter().enumerate() {
            rep.pass(format!("psi_{} = {}", k + 1, psi));
        }
        if sol.psi.len() == 2 {
            rep.pass(format!("Wronskian = {}", wronskian(&sol.psi[0], &sol.psi[1])));
        }
    }
    if rho == -1 {
        let psi = (&c1(1) - &y()).inverse().unwrap();
        rep.record(
            "psi = 1/(1-y) solves y(1-y)psi'' + (3-5y)psi' - 3psi = 0",
            hypergeom_ode_residual(&psi, &params).is_zero(),
            None,
        );
    }
    let gamma_bad = params.gamma.is_integer() && params.gamma <= Rational::zero();
    if gamma_bad {
        rep.skip("full series F(alpha, beta; gamma; y)", format!("gamma = {} is a non-positive integer", params.gamma));
    }
    if rho >= 1 {
        match terminating_series(&params) {
            Some(f) => {
                let ok = hypergeom_ode_residual(&f, &params).is_zero();
                rep.record(format!("terminating series {f}"), ok, Some("residual nonzero".into()));
            }
            None => rep.skip("terminating series", "a Pochhammer factor of gamma vanishes first"),
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn params() {
        assert_eq!(gauss_params(-1), GaussParams { alpha: int(1), beta: int(3), gamma: int(3) });
        assert_eq!(gauss_params(1), GaussParams { alpha: int(-1), beta: int(-3), gamma: int(-1) });
        assert_eq!(gauss_params(0), GaussParams { alpha: int(0), beta: int(0), gamma: int(1) });
    }

    #[test]
    fn ode_residual_examples() {
        let psi = (&c1(1) - &y()).inverse().unwrap();
        assert!(hypergeom_ode_residual(&psi, &gauss_params(-1)).is_zero());
        let lin = &c1(1) - &y().scale(&int(3));
        assert!(hypergeom_ode_residual(&lin, &gauss_params(1)).is_zero());
        let c = c1(2);
        assert_eq!(hypergeom_ode_residual(&c, &gauss_params(-1)), c1(-6));
    }

    #[test]
    fn terminating_examples() {
        assert_eq!(terminating_series(&gauss_params(1)).unwrap(), &c1(1) - &y().scale(&int(3)));
        for rho in 1..=4 {
            let p = gauss_params(rho);
            let f = terminating_series(&p).unwrap();
            assert!(hypergeom_ode_residual(&f, &p).is_zero(), "rho = {rho}");
        }
        assert!(terminating_series(&gauss_params(-1)).is_none());
    }

    #[test]
    fn phi_residuals() {
        let zero = PhiPair { phi1: RatFunc::zero(1), phi2: RatFunc::zero(1) };
        let (a, b) = phi_system_residual(&zero, &int(-1));
        assert!(a.is_zero() && b.is_zero());
        let printed = PhiPair {
            phi1: (&c1(1) - &y()).inverse().unwrap(),
            phi2: &(&y() * &y()).inverse().unwrap() - &y().inverse().unwrap(),
        };
        let (a, b) = phi_system_residual(&printed, &int(-1));
        assert!(!a.is_zero() || !b.is_zero());
        assert!(!phi1_second_order_residual(&printed.phi1, &int(-1)).is_zero());
    }

    #[test]
    fn identities() {
        assert!(vector_identities().all_passed());
    }

    #[test]
    fn n3_solutions() {
        for rho in [-2i64, -1, 1, 2] {
            let sol = build_n3_solution(rho).unwrap();
            assert_eq!(sol.psi.len(), 2);
            let rep = rationality_certificate(rho);
            assert!(rep.all_passed(), "{rep}");
        }
        let zero = build_n3_solution(0).unwrap();
        assert!(zero.w1.is_identity() && zero.w2.is_identity());
    }

    #[test]
    fn printed_column_is_not_a_solution() {
        let psi = (&c1(1) - &y()).inverse().unwrap();
        assert!(column_residual(&column_from_psi(&psi, -1), -1).iter().all(|e| e.is_zero()));
        assert!(column_residual(&printed_column_from_psi(&psi, -1), -1).iter().any(|e| !e.is_zero()));
        let y3 = vector_times(&[int(1), int(1), int(1)], &weight(-1));
        assert!(column_residual(&y3, -1).iter().all(|e| e.is_zero()));
    }
}
