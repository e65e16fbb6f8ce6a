//! The coordinates `u_1 = z_1 - z_2`, `u_k = (z_k - z_{k+1}) / (z_{k-1} - z_k)`,
//! `u_n = z_1 + ... + z_n`, the coefficient matrices `H_j` of the system in
//! these coordinates, the matrices `Omega_s` and their common eigenbasis, and
//! the leading behaviour of solutions as `u -> 0`.

use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::matrix::sum_ratfuncs;
use crate::arith::{IntPoly, Monomial, MultiPoly, QMatrix, RFMatrix, RatFunc, Rational};
use crate::error::{KzError, Result};
use crate::report::Report;
use crate::symmetric::{kz_coefficient, transposition};

fn ri(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateMaps {
    pub n: usize,
    /// `S Z = U` with `U = (u_1, u_1 u_2, ..., u_1 ... u_{n-1}, u_n)`.
    pub s_matrix: QMatrix,
    pub s_inverse: QMatrix,
    /// Upper-triangular all-ones matrix.
    pub t_matrix: QMatrix,
    /// Every row is `(1, 2, ..., n - 1, n - 1)`.
    pub c_matrix: QMatrix,
}

pub fn coordinate_maps(n: usize) -> Result<CoordinateMaps> {
    if n < 2 {
        return Err(KzError::InvalidIndices(format!("n must be at least 2, got {n}")));
    }
    let mut s = QMatrix::zeros(n, n);
    for k in 0..n - 1 {
        s.set(k, k, ri(1));
        s.set(k, k + 1, ri(-1));
    }
    for k in 0..n {
        s.set(n - 1, k, ri(1));
    }
    let s_inverse = s.inverse()?;
    let mut t = QMatrix::zeros(n, n);
    let mut c = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if j >= i {
                t.set(i, j, ri(1));
            }
            c.set(i, j, ri((j as i64 + 1).min(n as i64 - 1)));
        }
    }
    if &s * &s_inverse != QMatrix::identity(n) {
        return Err(KzError::VerificationFailed("S S^-1 != I".into()));
    }
    if s_inverse != &t - &c.scale(&Rational::new(1.into(), (n as i64).into())) {
        return Err(KzError::VerificationFailed("S^-1 != T - C / n".into()));
    }
    Ok(CoordinateMaps { n, s_matrix: s, s_inverse, t_matrix: t, c_matrix: c })
}

pub fn u_from_z(z: &[Rational]) -> Result<Vec<Rational>> {
    let n = z.len();
    if n < 2 {
        return Err(KzError::DegeneratePoint("need at least two coordinates".into()));
    }
    let diffs: Vec<Rational> = (0..n - 1).map(|k| &z[k] - &z[k + 1]).collect();
    if let Some(k) = diffs.iter().position(|d| d.is_zero()) {
        return Err(KzError::DegeneratePoint(format!("z_{} = z_{}", k + 1, k + 2)));
    }
    let mut u = vec![diffs[0].clone()];
    for k in 1..n - 1 {
        u.push(&diffs[k] / &diffs[k - 1]);
    }
    u.push(z.iter().fold(Rational::zero(), |a, x| a + x));
    Ok(u)
}

pub fn z_from_u(u: &[Rational]) -> Result<Vec<Rational>> {
    let n = u.len();
    if n < 2 {
        return Err(KzError::DegeneratePoint("need at least two coordinates".into()));
    }
    if let Some(k) = u[..n - 1].iter().position(|x| x.is_zero()) {
        return Err(KzError::DegeneratePoint(format!("u_{} = 0", k + 1)));
    }
    let maps = coordinate_maps(n)?;
    let mut big_u = Vec::with_capacity(n);
    let mut prod = Rational::one();
    for x in &u[..n - 1] {
        prod *= x;
        big_u.push(prod.clone());
    }
    big_u.push(u[n - 1].clone());
    Ok(maps.s_inverse.mul_vec(&big_u))
}

/// `z_k` as polynomials in `u_1..u_n`.
pub fn z_of_u_polys(n: usize) -> Result<Vec<MultiPoly>> {
    let maps = coordinate_maps(n)?;
    let mut big_u = Vec::with_capacity(n);
    let mut prod = MultiPoly::one(n);
    for k in 0..n - 1 {
        prod = &prod * &MultiPoly::var(n, k);
        big_u.push(prod.clone());
    }
    big_u.push(MultiPoly::var(n, n - 1));
    Ok((0..n)
        .map(|i| (0..n).fold(MultiPoly::zero(n), |acc, j| &acc + &big_u[j].scale(maps.s_inverse.get(i, j))))
        .collect())
}

/// Rewrites a matrix of rational functions of `z` in the coordinates `u`.
pub fn to_u_coordinates(w: &RFMatrix) -> Result<RFMatrix> {
    let subs = z_of_u_polys(w.nvars())?;
    Ok(w.try_map(|e| e.compose(&subs))?)
}

/// `P_r = sum_{j > r} P_{j,r}`; zero for `r = n`.
pub fn p_sum(n: usize, r: usize) -> QMatrix {
    (r + 1..=n).fold(QMatrix::zeros(n, n), |acc, j| &acc + &transposition(n, j, r))
}

/// `v_1 = 1`, `v_p = u_2 ... u_p`.
fn v_product(n: usize, p: usize) -> RatFunc {
    (2..=p).fold(RatFunc::one(n), |acc, q| &acc * &RatFunc::var(n, q - 1))
}

/// `H_k` from the closed formula for the coefficients of `P_{s,j}`.
pub fn h_matrix(n: usize, k: usize) -> Result<RFMatrix> {
    if k == 0 || k > n || n < 2 {
        return Err(KzError::InvalidIndices(format!("H_{k} for n = {n}")));
    }
    if k == n {
        return Ok(RFMatrix::zeros(n, n, n));
    }
    let v: Vec<RatFunc> = (0..=n).map(|p| if p == 0 { RatFunc::zero(n) } else { v_product(n, p) }).collect();
    let uk = RatFunc::var(n, k - 1);
    let mut entries: Vec<Vec<RatFunc>> = vec![Vec::new(); n * n];
    for s in 2..=n {
        for j in 1..s {
            let lo = j.max(k);
            if lo > s - 1 {
                continue;
            }
            let num = sum_ratfuncs(n, (lo..s).map(|p| v[p].clone()).collect());
            let den = &uk * &sum_ratfuncs(n, (j..s).map(|p| v[p].clone()).collect());
            let alpha = &num * &den.inverse()?;
            let p = transposition(n, s, j);
            for r in 0..n {
                for c in 0..n {
                    if !p.get(r, c).is_zero() {
                        entries[r * n + c].push(alpha.clone());
                    }
                }
            }
        }
    }
    Ok(RFMatrix::new(n, n, n, entries.into_iter().map(|e| sum_ratfuncs(n, e)).collect()))
}

/// `H_j = sum_k (d z_k / d u_j) A_k(z(u))`.
pub fn h_matrix_chain_rule(n: usize, j: usize) -> Result<RFMatrix> {
    if j == 0 || j > n || n < 2 {
        return Err(KzError::InvalidIndices(format!("H_{j} for n = {n}")));
    }
    let z = z_of_u_polys(n)?;
    let mut acc = RFMatrix::zeros(n, n, n);
    for (k, zk) in z.iter().enumerate() {
        let dz = zk.derivative(j - 1);
        if dz.is_zero() {
            continue;
        }
        let a = to_u_coordinates(&kz_coefficient(n, k + 1)?)?;
        acc = acc.try_add(&a.scale(&RatFunc::from_poly(&dz)))?;
    }
    Ok(acc)
}

/// True if `f` is regular at the origin and vanishes there.
fn vanishes_at_origin(f: &RatFunc) -> bool {
    if f.is_zero() {
        return true;
    }
    let zero = vec![Rational::zero(); f.nvars()];
    !f.denom().eval(&zero).is_zero() && f.numer().eval(&zero).is_zero()
}

/// `H_s - Omega_s / u_s - sum_{j > s} P_{j,s-1}`, which should vanish at `u = 0`.
pub fn h_remainder(n: usize, s: usize, constant: &QMatrix) -> Result<RFMatrix> {
    let h = h_matrix(n, s)?;
    let inv_us = RatFunc::var(n, s - 1).inverse()?;
    let main = RFMatrix::from_qmatrix(&omega_matrix(n, s)?.matrix, n).scale(&inv_us);
    Ok(h.try_sub(&main)?.try_sub(&RFMatrix::from_qmatrix(constant, n))?)
}

/// Constant term of `H_s` at `u = 0`: the transpositions `P_{j,s-1}`, `j > s`.
pub fn h_constant_term(n: usize, s: usize) -> QMatrix {
    (s + 1..=n).fold(QMatrix::zeros(n, n), |acc, j| &acc + &transposition(n, j, s - 1))
}

pub fn h_asymptotic_check(n: usize, s: usize) -> Report {
    let mut rep = Report::new(format!("H asymptotics, n = {n}, s = {s}"));
    let h1 = (|| -> Result<bool> {
        let omega = RFMatrix::from_qmatrix(&omega_matrix(n, 1)?.matrix, n).scale(&RatFunc::var(n, 0).inverse()?);
        Ok(h_matrix(n, 1)? == omega && h_matrix_chain_rule(n, 1)? == omega)
    })();
    rep.record("H_1 = Omega_1 / u_1", matches!(h1, Ok(true)), Some(format!("{h1:?}")));
    let hn = h_matrix(n, n).map(|h| h.is_zero()).unwrap_or(false)
        && h_matrix_chain_rule(n, n).map(|h| h.is_zero()).unwrap_or(false);
    rep.record("H_n = 0", hn, Some("nonzero".into()));
    if s < 2 || s + 1 > n {
        rep.skip(format!("remainder for s = {s}"), "needs 2 <= s <= n - 1");
        return rep;
    }
    match h_remainder(n, s, &h_constant_term(n, s)) {
        Ok(r) => {
            let bad = r.entries().iter().find(|e| !vanishes_at_origin(e));
            rep.record(
                "H_s - Omega_s/u_s - sum_{j>s} P_{j,s-1} vanishes at u = 0",
                bad.is_none(),
                bad.map(|e| e.to_string()),
            );
        }
        Err(e) => rep.fail("remainder", e.to_string()),
    }
    rep
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaMatrix {
    pub n: usize,
    pub s: usize,
    pub matrix: QMatrix,
    /// Scalar of the upper-left `(s-1) x (s-1)` block, `N_{s-1}`.
    pub upper_scalar: i64,
    /// Diagonal of the lower block, `N_s`.
    pub lower_diagonal: i64,
}

/// `N_s = (n - s)(n - s - 1) / 2`.
pub fn n_count(n: usize, s: usize) -> i64 {
    let (a, b) = (n as i64 - s as i64, n as i64 - s as i64 - 1);
    a * b / 2
}

/// `Omega_s = sum_{r >= s} P_r`, checked against its block form.
pub fn omega_matrix(n: usize, s: usize) -> Result<OmegaMatrix> {
    if s == 0 || s >= n {
        return Err(KzError::InvalidIndices(format!("Omega_{s} for n = {n}")));
    }
    let matrix = (s..=n).fold(QMatrix::zeros(n, n), |acc, r| &acc + &p_sum(n, r));
    let (upper, lower) = (n_count(n, s - 1), n_count(n, s));
    for i in 0..n {
        for j in 0..n {
            let expect = match (i < s - 1, j < s - 1) {
                (true, true) => {
                    if i == j {
                        upper
                    } else {
                        0
                    }
                }
                (false, false) => {
                    if i == j {
                        lower
                    } else {
                        1
                    }
                }
                _ => 0,
            };
            if matrix.get(i, j) != &ri(expect) {
                return Err(KzError::BlockFormMismatch(format!(
                    "n = {n}, s = {s}, entry ({}, {}) is {} not {expect}",
                    i + 1,
                    j + 1,
                    matrix.get(i, j)
                )));
            }
        }
    }
    Ok(OmegaMatrix { n, s, matrix, upper_scalar: upper, lower_diagonal: lower })
}

/// `v_k = (0, ..., 0, -k, 1, ..., 1)` with `k` trailing ones, `v_n = (1, ..., 1)`.
pub fn omega_eigenvectors(n: usize) -> Vec<Vec<Rational>> {
    (1..=n)
        .map(|k| {
            if k == n {
                vec![ri(1); n]
            } else {
                let mut v = vec![ri(0); n];
                v[n - k - 1] = ri(-(k as i64));
                for x in v.iter_mut().skip(n - k) {
                    *x = ri(1);
                }
                v
            }
        })
        .collect()
}

/// Columns `v_1..v_n`.
pub fn eigenbasis_matrix(n: usize) -> QMatrix {
    QMatrix::from_rows(&omega_eigenvectors(n)).transpose()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaEigensystem {
    pub vectors: Vec<Vec<Rational>>,
    pub eigenvalues: Vec<i64>,
}

/// Eigenvalues of `Omega_s` on each `v_k`, by multiplication.
pub fn omega_eigensystem(n: usize, s: usize) -> Result<OmegaEigensystem> {
    let omega = omega_matrix(n, s)?;
    let vectors = omega_eigenvectors(n);
    let mut eigenvalues = Vec::with_capacity(n);
    for (k, v) in vectors.iter().enumerate() {
        let w = omega.matrix.mul_vec(v);
        let i = v.iter().position(|x| !x.is_zero()).unwrap();
        let lam = &w[i] / &v[i];
        if w.iter().zip(v).any(|(a, b)| a != &(&lam * b)) {
            return Err(KzError::NotEigenvector(format!("v_{} for Omega_{s}, n = {n}", k + 1)));
        }
        if !lam.is_integer() {
            return Err(KzError::NotEigenvector(format!("non-integer eigenvalue {lam} for v_{}", k + 1)));
        }
        eigenvalues.push(lam.to_integer().to_i64().unwrap());
    }
    Ok(OmegaEigensystem { vectors, eigenvalues })
}

/// Eigenvalue of `Omega_s` on `v_k` by the index rule that agrees with direct
/// multiplication: `N_{s-1}` for `k >= n - s + 1`, `N_s - 1` otherwise.
pub fn eigenvalue_by_rule(n: usize, s: usize, k: usize) -> i64 {
    if k + s > n {
        n_count(n, s - 1)
    } else {
        n_count(n, s) - 1
    }
}

/// `table[k - 1][s - 1] = rho * lambda_{k,s}`.
pub fn asymptotic_exponents(n: usize, rho: i64) -> Result<Vec<Vec<i64>>> {
    let per_s: Vec<Vec<i64>> = (1..n).map(|s| omega_eigensystem(n, s).map(|e| e.eigenvalues)).collect::<Result<_>>()?;
    Ok((0..n).map(|k| per_s.iter().map(|ev| rho * ev[k]).collect()).collect())
}

/// Outcome of aligning a solution with the eigenbasis at `u = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingAsymptotics {
    /// Column `k` holds the constants combining the solution columns into `psi_k`.
    pub basis_change: QMatrix,
    /// `orders[k][s]`: order of vanishing in `u_{s+1}` of the `k`-th coordinate
    /// of `V^{-1} psi_k`.
    pub orders: Vec<Vec<i64>>,
    pub expected: Vec<Vec<i64>>,
}

/// Splits a polynomial's denominator into a monomial and a remainder that must
/// not vanish at the origin.
fn monomial_split(den: &IntPoly) -> Option<(Monomial, IntPoly)> {
    let mono = den.monomial_content();
    let rest = den.div_monomial(&mono);
    let zero = vec![num_bigint::BigInt::zero(); den.nvars()];
    (!rest.eval(&zero).is_zero()).then_some((mono, rest))
}

/// Finds `psi_k = W c_k` with `prod_s u_s^{-rho lambda_{k,s}} V^{-1} psi_k = e_k + o(u)`,
/// for a solution `W` given in the coordinates `z`.
pub fn check_leading_asymptotics(w: &RFMatrix, n: usize, rho: i64) -> Result<LeadingAsymptotics> {
    let expected = asymptotic_exponents(n, rho)?;
    if rho == 0 || w.is_identity() {
        return Ok(LeadingAsymptotics { basis_change: eigenbasis_matrix(n), orders: expected.clone(), expected });
    }
    let wu = to_u_coordinates(w)?;
    if wu.entries().iter().any(|e| e.contains_var(n - 1)) {
        return Err(KzError::VerificationFailed("solution depends on the sum of coordinates".into()));
    }
    let vinv = RFMatrix::from_qmatrix(&eigenbasis_matrix(n).inverse()?, n);
    let m = vinv.try_mul(&wu)?;
    let columns: Vec<(Vec<Rational>, Vec<i64>)> =
        (0..n).into_par_iter().map(|k| align_column(&m, n, k, &expected[k])).collect::<Result<_>>()?;
    let mut basis_change = QMatrix::zeros(n, n);
    let mut orders = Vec::with_capacity(n);
    for (k, (c, ord)) in columns.into_iter().enumerate() {
        for (i, x) in c.into_iter().enumerate() {
            basis_change.set(i, k, x);
        }
        orders.push(ord);
    }
    if basis_change.determinant().is_zero() {
        return Err(KzError::AsymptoticMismatch { k: 0, s: 0, detail: "aligned columns are dependent".into() });
    }
    for k in 0..n {
        for s in 0..n - 1 {
            if orders[k][s] != expected[k][s] {
                return Err(KzError::AsymptoticMismatch {
                    k: k + 1,
                    s: s + 1,
                    detail: format!("order {} but expected {}", orders[k][s], expected[k][s]),
                });
            }
        }
    }
    Ok(LeadingAsymptotics { basis_change, orders, expected })
}

fn align_column(m: &RFMatrix, n: usize, k: usize, exps: &[i64]) -> Result<(Vec<Rational>, Vec<i64>)> {
    let mut shift = vec![0i32; n];
    for (s, &e) in exps.iter().enumerate() {
        shift[s] = -(e as i32);
    }
    let mismatch = |detail: String| KzError::AsymptoticMismatch { k: k + 1, s: 0, detail };
    // Linear conditions on c: rows of `conds`, unknowns c_1..c_n plus the
    // leading coefficient t of coordinate k (last column), all equal to zero.
    let mut conds: Vec<Vec<Rational>> = Vec::new();
    for i in 0..n {
        let row: Vec<RatFunc> = (0..n).map(|j| m.get(i, j).mul_monomial(&shift)).collect();
        // Common denominator of the row.
        let mut den = IntPoly::one(n);
        for f in row.iter().filter(|f| !f.is_zero()) {
            den = crate::arith::ratfunc::lcm(&den, f.int_den());
        }
        let (mono, rest) = monomial_split(&den).ok_or_else(|| mismatch("denominator vanishes at u = 0".into()))?;
        let rest_at_zero = Rational::from_integer(rest.eval(&vec![num_bigint::BigInt::zero(); n]));
        let nums: Vec<MultiPoly> = row
            .iter()
            .map(|f| {
                if f.is_zero() {
                    return MultiPoly::zero(n);
                }
                let cof = den.div_exact(f.int_den()).expect("lcm is a multiple");
                (f.int_num() * &cof).to_rational().scale(f.scale_factor())
            })
            .collect();
        let mut monos: Vec<Monomial> = nums.iter().flat_map(|p| p.terms().iter().map(|(e, _)| e.clone())).collect();
        monos.sort();
        monos.dedup();
        for e in monos {
            let divisible = e.iter().zip(mono.iter()).all(|(a, b)| a >= b);
            if divisible && e != mono {
                continue;
            }
            let mut cond: Vec<Rational> = nums.iter().map(|p| p.coeff_of(&e)).collect();
            if e == mono {
                // Value at the origin, times D'(0): must equal t D'(0) for i = k and 0 otherwise.
                cond.push(if i == k { -rest_at_zero.clone() } else { Rational::zero() });
            } else {
                cond.push(Rational::zero());
            }
            conds.push(cond);
        }
        if i == k && !nums.iter().any(|p| !p.coeff_of(&mono).is_zero()) {
            // t is then forced to zero by an explicit condition.
            let mut cond = vec![Rational::zero(); n];
            cond.push(rest_at_zero.clone());
            conds.push(cond);
        }
    }
    let sys = if conds.is_empty() { QMatrix::zeros(1, n + 1) } else { QMatrix::from_rows(&conds) };
    let null = sys.nullspace();
    let v = null
        .into_iter()
        .find(|v| !v[n].is_zero())
        .ok_or_else(|| mismatch("no combination has the predicted leading term".into()))?;
    let t = v[n].clone();
    let c: Vec<Rational> = v[..n].iter().map(|x| x / &t).collect();
    // Exponents of coordinate k of V^{-1} psi_k in each u_s.
    let coord = sum_ratfuncs(n, (0..n).map(|j| m.get(k, j).scale(&c[j])).collect());
    let orders = (0..n - 1)
        .map(|s| coord.order_at_zero(s).map(|o| o as i64).ok_or_else(|| mismatch("zero coordinate".into())))
        .collect::<Result<_>>()?;
    Ok((c, orders))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn q(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_ints(rows)
    }

    fn rf(nv: usize, f: RatFunc) -> RatFunc {
        assert_eq!(f.nvars(), nv);
        f
    }

    #[test]
    fn coordinate_examples() {
        let m = coordinate_maps(3).unwrap();
        assert_eq!(m.s_matrix, q(&[&[1, -1, 0], &[0, 1, -1], &[1, 1, 1]]));
        let expected = q(&[&[2, 1, 1], &[-1, 1, 1], &[-1, -2, 1]]).scale(&rat(1, 3));
        assert_eq!(m.s_inverse, expected);
        for n in 2..=6 {
            assert!(coordinate_maps(n).is_ok());
        }
        assert_eq!(u_from_z(&[int(2), int(1), int(0)]).unwrap(), vec![int(1), int(1), int(3)]);
        assert!(matches!(u_from_z(&[int(1), int(1), int(0)]), Err(KzError::DegeneratePoint(_))));
        let z = vec![rat(5, 2), int(-1), rat(1, 3), int(7)];
        assert_eq!(z_from_u(&u_from_z(&z).unwrap()).unwrap(), z);
    }

    #[test]
    fn printed_h_matrices() {
        let n = 3;
        let u = |i| RatFunc::var(n, i);
        let one = RatFunc::one(n);
        let p = |i, j| RFMatrix::from_qmatrix(&transposition(n, i, j), n);
        let h2 = p(3, 2)
            .scale(&u(1).inverse().unwrap())
            .try_add(&p(3, 1).scale(&(&one + &u(1)).inverse().unwrap()))
            .unwrap();
        assert_eq!(h_matrix(3, 2).unwrap(), h2);

        let n = 4;
        let u = |i| RatFunc::var(n, i);
        let one = RatFunc::one(n);
        let p = |i, j| RFMatrix::from_qmatrix(&transposition(n, i, j), n);
        let d = &(&one + &u(1)) + &(&u(1) * &u(2));
        let omega2 = RFMatrix::from_qmatrix(&omega_matrix(4, 2).unwrap().matrix, n);
        let h2 = omega2
            .scale(&u(1).inverse().unwrap())
            .try_add(&p(1, 3).scale(&(&one + &u(1)).inverse().unwrap()))
            .unwrap()
            .try_add(&p(1, 4).scale(&rf(n, &(&one + &u(2)) * &d.inverse().unwrap())))
            .unwrap();
        assert_eq!(h_matrix(4, 2).unwrap(), h2);
        let h3 = p(4, 3)
            .scale(&u(2).inverse().unwrap())
            .try_add(&p(4, 2).scale(&(&one + &u(2)).inverse().unwrap()))
            .unwrap()
            .try_add(&p(4, 1).scale(&(&u(1) * &d.inverse().unwrap())))
            .unwrap();
        assert_eq!(h_matrix(4, 3).unwrap(), h3);
    }

    #[test]
    fn chain_rule_agrees() {
        for n in 2..=4 {
            for j in 1..=n {
                assert_eq!(h_matrix(n, j).unwrap(), h_matrix_chain_rule(n, j).unwrap(), "n = {n}, j = {j}");
            }
        }
    }

    #[test]
    fn asymptotic_constant_term() {
        for n in 3..=5 {
            for s in 2..n {
                assert!(h_asymptotic_check(n, s).all_passed(), "n = {n}, s = {s}");
                // The full P_{s-1} differs by P_{s,s-1}, which is not part of H_s.
                let r = h_remainder(n, s, &p_sum(n, s - 1)).unwrap();
                let at0 = r.eval(&vec![Rational::zero(); n]).unwrap();
                assert_eq!(at0, transposition(n, s, s - 1).scale(&int(-1)));
            }
        }
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega_matrix(3, 1).unwrap().matrix, q(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]));
        assert_eq!(
            omega_matrix(4, 1).unwrap().matrix,
            q(&[&[3, 1, 1, 1], &[1, 3, 1, 1], &[1, 1, 3, 1], &[1, 1, 1, 3]])
        );
        assert_eq!(
            omega_matrix(4, 2).unwrap().matrix,
            q(&[&[3, 0, 0, 0], &[0, 1, 1, 1], &[0, 1, 1, 1], &[0, 1, 1, 1]])
        );
        let e = omega_eigensystem(3, 1).unwrap();
        assert_eq!(e.eigenvalues, vec![0, 0, 3]);
        assert_eq!(e.vectors[0], vec![int(0), int(-1), int(1)]);
        assert_eq!(omega_eigensystem(4, 2).unwrap().eigenvalues, vec![0, 0, 3, 3]);
        let e43 = omega_eigensystem(4, 3).unwrap();
        assert_eq!(e43.eigenvalues[0], -1);
        for n in 2..=8 {
            for s in 1..n {
                let ev = omega_eigensystem(n, s).unwrap().eigenvalues;
                for k in 1..=n {
                    assert_eq!(ev[k - 1], eigenvalue_by_rule(n, s, k));
                }
            }
        }
    }

    #[test]
    fn exponent_tables() {
        let t = asymptotic_exponents(3, 1).unwrap();
        assert_eq!(t.iter().map(|r| r[0]).collect::<Vec<_>>(), vec![0, 0, 3]);
        let tm = asymptotic_exponents(3, -1).unwrap();
        assert_eq!(tm.iter().map(|r| r[1]).collect::<Vec<_>>(), vec![1, -1, -1]);
        assert!(asymptotic_exponents(4, 0).unwrap().iter().flatten().all(|&x| x == 0));
    }

    #[test]
    fn leading_asymptotics_n3() {
        use crate::assembly::{assemble_product, BasePointConfig};
        for rho in [-1i64, 1] {
            let sol = assemble_product(3, rho, &BasePointConfig::default_for(3)).unwrap();
            let la = check_leading_asymptotics(&sol.product, 3, rho).unwrap();
            assert_eq!(la.orders, la.expected);
        }
        let id = RFMatrix::identity(3, 3);
        assert!(check_leading_asymptotics(&id, 3, 0).is_ok());
    }
}
