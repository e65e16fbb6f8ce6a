//! Rational fundamental solutions of the single equation
//! `dY/dz_1 = rho A_1(z_1; xi) Y`, with pole locations `xi = (z_2, ..., z_n)`
//! taken as parameters. Variable 0 is always the main variable `z_1`; the
//! parameters are rational functions free of it, symbolic or constant.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::expansion::expand_at_infinity;
use crate::arith::matrix::sum_ratfuncs;
use crate::arith::{MultiPoly, RFMatrix, RatFunc, Rational};
use crate::error::{KzError, Result};
use crate::series::{const_vector, t_minus1_eigensystem, SeriesEngine, SeriesState};
use crate::symmetric::transposition;

/// `Y = sum_{k,p} L_{k,p} / (z_1 - xi_k)^p + sum_d Q_d z_1^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFractionSolution {
    pub n: usize,
    pub m: usize,
    pub xi: Vec<RatFunc>,
    /// `poles[k][p - 1]` is the vector `L_{k+2,p}`.
    pub poles: Vec<Vec<Vec<RatFunc>>>,
    /// `poly[d]` is the vector coefficient of `z_1^d`.
    pub poly: Vec<Vec<RatFunc>>,
}

impl PartialFractionSolution {
    fn zero(n: usize, m: usize, xi: &[RatFunc]) -> Self {
        let nv = xi[0].nvars();
        PartialFractionSolution {
            n,
            m,
            xi: xi.to_vec(),
            poles: vec![vec![vec![RatFunc::zero(nv); n]; m]; xi.len()],
            poly: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.xi[0].nvars()
    }

    /// Highest `p` with `L_{k,p} != 0` for the pole at `xi[k]`.
    pub fn pole_order(&self, k: usize) -> usize {
        self.poles[k].iter().rposition(|v| v.iter().any(|x| !x.is_zero())).map(|p| p + 1).unwrap_or(0)
    }

    pub fn poly_degree(&self) -> Option<usize> {
        self.poly.iter().rposition(|v| v.iter().any(|x| !x.is_zero()))
    }

    /// `self - c * other`.
    fn sub_scaled(&self, c: &RatFunc, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, block) in other.poles.iter().enumerate() {
            for (p, v) in block.iter().enumerate() {
                for (i, x) in v.iter().enumerate() {
                    out.poles[k][p][i] = &out.poles[k][p][i] - &(c * x);
                }
            }
        }
        let nv = self.nvars();
        while out.poly.len() < other.poly.len() {
            out.poly.push(vec![RatFunc::zero(nv); self.n]);
        }
        for (d, v) in other.poly.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                out.poly[d][i] = &out.poly[d][i] - &(c * x);
            }
        }
        out
    }

    fn scale(&self, c: &RatFunc) -> Self {
        let mut out = self.clone();
        out.poles.iter_mut().flatten().flatten().for_each(|x| *x = &*x * c);
        out.poly.iter_mut().flatten().for_each(|x| *x = &*x * c);
        out
    }

    /// Sums the representation into a vector of rational functions.
    pub fn to_column(&self) -> Vec<RatFunc> {
        let nv = self.nvars();
        let z1 = RatFunc::var(nv, 0);
        let mut terms: Vec<Vec<RatFunc>> = vec![Vec::new(); self.n];
        for (k, block) in self.poles.iter().enumerate() {
            let base = (&z1 - &self.xi[k]).inverse().expect("z_1 is not a parameter");
            let mut w = RatFunc::one(nv);
            for v in block {
                w = &w * &base;
                for (i, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        terms[i].push(x * &w);
                    }
                }
            }
        }
        let mut w = RatFunc::one(nv);
        for v in &self.poly {
            for (i, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    terms[i].push(x * &w);
                }
            }
            w = &w * &z1;
        }
        terms.into_iter().map(|t| sum_ratfuncs(nv, t)).collect()
    }
}

/// Linear map from pole coefficients to the coefficients of `u^1..u^{m r}` in
/// the expansion at `z_1 = infinity`, for `r` pole locations of multiplicity `m`.
#[derive(Clone, Debug)]
pub struct ConfluentVandermonde {
    pub xi: Vec<RatFunc>,
    pub m: usize,
    /// Row `p - 1`, column `k m + s - 1` holds `binom(p-1, s-1) xi_k^{p-s}`.
    pub matrix: RFMatrix,
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

fn check_distinct(xi: &[RatFunc]) -> Result<()> {
    for a in 0..xi.len() {
        for b in a + 1..xi.len() {
            if xi[a] == xi[b] {
                return Err(KzError::DegeneratePoles);
            }
        }
    }
    Ok(())
}

pub fn confluent_vandermonde(xi: &[RatFunc], m: usize) -> Result<ConfluentVandermonde> {
    check_distinct(xi)?;
    let nv = xi[0].nvars();
    let size = m * xi.len();
    let mut mat = RFMatrix::zeros(size, size, nv);
    for (k, x) in xi.iter().enumerate() {
        let mut pw = vec![RatFunc::one(nv)];
        for _ in 1..size {
            let next = pw.last().unwrap() * x;
            pw.push(next);
        }
        for p in 1..=size {
            for s in 1..=m.min(p) {
                let c = Rational::from_integer(binomial(p - 1, s - 1).into());
                mat.set(p - 1, k * m + s - 1, pw[p - s].scale(&c));
            }
        }
    }
    Ok(ConfluentVandermonde { xi: xi.to_vec(), m, matrix: mat })
}

impl ConfluentVandermonde {
    /// Solves for the pole vectors given the series coefficients `G_1..G_N`.
    pub fn recover_poles(&self, state: &SeriesState, n: usize) -> Result<Vec<Vec<Vec<RatFunc>>>> {
        let size = self.matrix.rows();
        let nv = self.matrix.nvars();
        let mut rhs = RFMatrix::zeros(size, n, nv);
        for p in 1..=size {
            if let Some(g) = state.coeff(p as i64) {
                for (i, x) in g.iter().enumerate() {
                    rhs.set(p - 1, i, x.clone());
                }
            }
        }
        let x = self.matrix.solve(&rhs)?;
        Ok((0..self.xi.len())
            .map(|k| (0..self.m).map(|s| (0..n).map(|i| x.get(k * self.m + s, i).clone()).collect()).collect())
            .collect())
    }

    /// Series coefficients `G_1..G_N` produced by given pole vectors.
    pub fn forward(&self, poles: &[Vec<Vec<RatFunc>>], n: usize) -> Vec<Vec<RatFunc>> {
        let size = self.matrix.rows();
        let nv = self.matrix.nvars();
        let mut l = RFMatrix::zeros(size, n, nv);
        for (k, block) in poles.iter().enumerate() {
            for (s, v) in block.iter().enumerate() {
                for (i, x) in v.iter().enumerate() {
                    l.set(k * self.m + s, i, x.clone());
                }
            }
        }
        let g = self.matrix.try_mul(&l).expect("shapes agree");
        (0..size).map(|p| (0..n).map(|i| g.get(p, i).clone()).collect()).collect()
    }
}

fn check_params(n: usize, m: usize, xi: &[RatFunc]) -> Result<()> {
    if n < 2 {
        return Err(KzError::InvalidIndices(format!("n must be at least 2, got {n}")));
    }
    if xi.len() != n - 1 {
        return Err(KzError::InvalidIndices(format!("expected {} pole locations, got {}", n - 1, xi.len())));
    }
    if m == 0 {
        return Err(KzError::InvalidIndices("pole order must be positive".into()));
    }
    if xi.iter().any(|x| x.contains_var(0)) {
        return Err(KzError::InvalidIndices("pole locations must not involve z_1".into()));
    }
    check_distinct(xi)
}

fn has_nonzero(v: &[RatFunc]) -> bool {
    v.iter().any(|x| !x.is_zero())
}

/// Pure partial-fraction columns seeded by the middle eigenvectors of `T_{-1}`
/// at index `m (n - 2)`; there are `n - 2` of them.
pub fn build_type1_columns(n: usize, m: usize, xi: &[RatFunc]) -> Result<Vec<PartialFractionSolution>> {
    check_params(n, m, xi)?;
    if n == 2 {
        return Ok(Vec::new());
    }
    let eig = t_minus1_eigensystem(n)?;
    let cv = confluent_vandermonde(xi, m)?;
    let nv = xi[0].nvars();
    let rho = -(m as i64);
    eig.u2basis
        .par_iter()
        .map(|u2| {
            let seed = const_vector(u2, nv);
            build_from_seed(n, m, xi, &cv, rho, (m * (n - 2)) as i64, seed)
        })
        .collect()
}

fn build_from_seed(
    n: usize,
    m: usize,
    xi: &[RatFunc],
    cv: &ConfluentVandermonde,
    rho: i64,
    lowest: i64,
    seed: Vec<RatFunc>,
) -> Result<PartialFractionSolution> {
    if !has_nonzero(&seed) {
        return Err(KzError::VerificationFailed("seed coefficient must be nonzero".into()));
    }
    let mut eng = SeriesEngine::new(n, rho, xi)?;
    let top = (m * (n - 1)) as i64;
    let state = eng.run(SeriesState::seed(lowest, seed), top)?;
    let mut pf = PartialFractionSolution::zero(n, m, xi);
    pf.poles = cv.recover_poles(&state, n)?;
    if lowest <= 0 {
        pf.poly = (0..=(-lowest)).map(|d| state.coeff(-d).cloned().unwrap_or_default()).collect();
    }
    Ok(pf)
}

/// `prod_k (z_1 - xi_k)^{-m}` times the all-ones vector.
pub fn build_symmetric_column(n: usize, m: usize, xi: &[RatFunc]) -> Result<PartialFractionSolution> {
    check_params(n, m, xi)?;
    let cv = confluent_vandermonde(xi, m)?;
    let nv = xi[0].nvars();
    let top = (m * (n - 1)) as i64;
    let state = SeriesState::seed(top, vec![RatFunc::one(nv); n]);
    let mut pf = PartialFractionSolution::zero(n, m, xi);
    pf.poles = cv.recover_poles(&state, n)?;
    Ok(pf)
}

/// Column with polynomial part of degree `m` and no pole at `xi_{n}`.
///
/// Seeds `[n-1, -1, ..., -1]` at index `-m`, matches all poles, then removes
/// the pole at the last location with a combination of the other columns.
pub fn build_polynomial_column(
    n: usize,
    m: usize,
    xi: &[RatFunc],
    others: &[PartialFractionSolution],
) -> Result<PartialFractionSolution> {
    check_params(n, m, xi)?;
    let cv = confluent_vandermonde(xi, m)?;
    let nv = xi[0].nvars();
    let u3: Vec<Rational> = if n == 2 { vec![Rational::one(), -Rational::one()] } else { t_minus1_eigensystem(n)?.u3 };
    let full = build_from_seed(n, m, xi, &cv, -(m as i64), -(m as i64), const_vector(&u3, nv))?;

    let last = n - 2;
    let rows = n * m;
    let mut a = RFMatrix::zeros(rows, others.len(), nv);
    let mut b = RFMatrix::zeros(rows, 1, nv);
    for p in 0..m {
        for i in 0..n {
            for (j, col) in others.iter().enumerate() {
                a.set(p * n + i, j, col.poles[last][p][i].clone());
            }
            b.set(p * n + i, 0, full.poles[last][p][i].clone());
        }
    }
    let c = a
        .solve_consistent(&b)?
        .ok_or_else(|| KzError::VerificationFailed("pole at the last location cannot be removed".into()))?;
    let mut out = full;
    for (j, col) in others.iter().enumerate() {
        let cj = c.get(j, 0);
        if !cj.is_zero() {
            out = out.sub_scaled(cj, col);
        }
    }
    Ok(out)
}

/// `A_1(z_1; xi) = sum_k P_{1,k} / (z_1 - xi_k)`.
pub fn first_coefficient(n: usize, xi: &[RatFunc]) -> RFMatrix {
    let nv = xi[0].nvars();
    let z1 = RatFunc::var(nv, 0);
    let mut out = RFMatrix::zeros(n, n, nv);
    for (k, x) in xi.iter().enumerate() {
        let w = (&z1 - x).inverse().expect("z_1 is not a parameter");
        let p = RFMatrix::from_qmatrix(&transposition(n, 1, k + 2), nv).scale(&w);
        out = out.try_add(&p).expect("same shape");
    }
    out
}

/// `dW/dz_1 - rho A_1 W`.
pub fn single_equation_residual(w: &RFMatrix, rho: &Rational, xi: &[RatFunc]) -> Result<RFMatrix> {
    let a = first_coefficient(w.rows(), xi);
    Ok(w.derivative(0).try_sub(&a.try_mul(w)?.scale_q(rho))?)
}

/// Reciprocal of the lowest-order coefficient at `z_1 = infinity`, taken
/// from the first coordinate attaining that order.
pub fn leading_factor(col: &[RatFunc]) -> Result<RatFunc> {
    let mut best: Option<(i32, RatFunc)> = None;
    for f in col.iter().filter(|f| !f.is_zero()) {
        let l = expand_at_infinity(f, 0, 1)?;
        if best.as_ref().map(|(low, _)| l.lowest < *low).unwrap_or(true) {
            best = Some((l.lowest, l.coeffs[0].clone()));
        }
    }
    let (_, c) = best.ok_or_else(|| KzError::VerificationFailed("zero column".into()))?;
    Ok(c.inverse()?)
}

/// Rescales so that coefficient becomes 1.
pub fn normalize_leading(col: &[RatFunc]) -> Result<Vec<RatFunc>> {
    let f = leading_factor(col)?;
    Ok(col.iter().map(|x| x * &f).collect())
}

#[derive(Clone, Debug)]
pub struct FundamentalSolution {
    pub n: usize,
    pub rho: i64,
    pub xi: Vec<RatFunc>,
    pub matrix: RFMatrix,
    /// Partial-fraction form of each column, available for negative `rho`.
    pub columns: Option<Vec<PartialFractionSolution>>,
    pub normalization: Option<Rational>,
}

/// Random point for rational-function variables, avoiding small collisions.
pub(crate) fn random_point(rng: &mut ChaCha8Rng, nvars: usize) -> Vec<Rational> {
    (0..nvars).map(|_| Rational::new(rng.gen_range(-97i64..=97).into(), rng.gen_range(1i64..=13).into())).collect()
}

/// Establishes `det W != 0` by a nonzero evaluation, falling back to the
/// symbolic determinant.
pub fn determinant_nonzero(w: &RFMatrix) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..8 {
        let pt = random_point(&mut rng, w.nvars());
        if let Some(q) = w.eval(&pt) {
            if !q.determinant().is_zero() {
                return Ok(true);
            }
        }
    }
    Ok(!w.determinant()?.is_zero())
}

fn negative_coupling_columns(n: usize, m: usize, xi: &[RatFunc]) -> Result<Vec<PartialFractionSolution>> {
    let mut cols = build_type1_columns(n, m, xi)?;
    cols.push(build_symmetric_column(n, m, xi)?);
    let poly = build_polynomial_column(n, m, xi, &cols)?;
    cols.push(poly);
    Ok(cols)
}

/// Fundamental solution of the single equation; verified before returning.
pub fn fundamental_solution(n: usize, rho: i64, xi: &[RatFunc]) -> Result<FundamentalSolution> {
    let nv = xi.first().map(|x| x.nvars()).unwrap_or(1);
    if rho == 0 {
        if xi.len() + 1 != n {
            return Err(KzError::InvalidIndices(format!("expected {} pole locations", n - 1)));
        }
        return Ok(FundamentalSolution {
            n,
            rho,
            xi: xi.to_vec(),
            matrix: RFMatrix::identity(n, nv),
            columns: None,
            normalization: None,
        });
    }
    let m = rho.unsigned_abs() as usize;
    let cols = negative_coupling_columns(n, m, xi)?;
    let raw: Vec<Vec<RatFunc>> = cols.par_iter().map(|c| c.to_column()).collect();
    let neg = RFMatrix::from_columns(&raw, nv);
    let (matrix, columns) = if rho < 0 {
        let factors: Vec<RatFunc> = raw.iter().map(|c| leading_factor(c)).collect::<Result<_>>()?;
        let scaled: Vec<Vec<RatFunc>> =
            raw.iter().zip(&factors).map(|(c, f)| c.iter().map(|x| x * f).collect()).collect();
        let pfs = cols.iter().zip(&factors).map(|(c, f)| c.scale(f)).collect();
        (RFMatrix::from_columns(&scaled, nv), Some(pfs))
    } else {
        let dual = neg.inverse()?.transpose();
        let scaled: Vec<Vec<RatFunc>> =
            (0..n).into_par_iter().map(|j| normalize_leading(&dual.column(j))).collect::<Result<_>>()?;
        (RFMatrix::from_columns(&scaled, nv), None)
    };
    let sol = FundamentalSolution { n, rho, xi: xi.to_vec(), matrix, columns, normalization: None };
    verify_single(&sol)?;
    Ok(sol)
}

/// Residual and determinant check for a single-equation solution.
pub fn verify_single(sol: &FundamentalSolution) -> Result<()> {
    let r = Rational::from_integer(sol.rho.into());
    let res = single_equation_residual(&sol.matrix, &r, &sol.xi)?;
    for j in 0..sol.n {
        if res.column(j).iter().any(|x| !x.is_zero()) {
            return Err(KzError::VerificationFailed(format!("column {} has a nonzero residual", j + 1)));
        }
    }
    if !determinant_nonzero(&sol.matrix)? {
        return Err(KzError::VerificationFailed("determinant vanishes identically".into()));
    }
    Ok(())
}

/// `W(z) W(z10, xi)^{-1}`, equal to the identity at `z_1 = z10`.
pub fn normalize_at(sol: &FundamentalSolution, z10: &Rational) -> Result<FundamentalSolution> {
    let at = sol.matrix.substitute(0, z10).map_err(|_| KzError::SingularAtPoint)?;
    let inv = at.inverse().map_err(|e| match e {
        crate::arith::ArithError::SingularMatrix => KzError::SingularAtPoint,
        e => e.into(),
    })?;
    let matrix = sol.matrix.try_mul(&inv)?;
    Ok(FundamentalSolution { matrix, columns: None, normalization: Some(z10.clone()), ..sol.clone() })
}

/// Order of the pole of `f` along `z_1 = x`, where `x` is free of `z_1`.
pub fn pole_order_at(f: &RatFunc, x: &RatFunc) -> Result<usize> {
    if f.is_zero() {
        return Ok(0);
    }
    let nv = f.nvars();
    let lin = &RatFunc::var(nv, 0) - x;
    // Clear the denominator of x so the factor is polynomial.
    let factor: MultiPoly = lin.numer();
    let (_, fac) = factor.to_primitive_int();
    let (_, mut den) = f.denom().to_primitive_int();
    let mut k = 0;
    while let Some(q) = den.div_exact(&fac) {
        den = q;
        k += 1;
    }
    Ok(k)
}

/// Degree in `z_1` of the polynomial part: `deg num - deg den` when positive.
pub fn polynomial_part_degree(f: &RatFunc) -> Option<usize> {
    if f.is_zero() {
        return None;
    }
    let (dn, dd) = f.degree_in(0);
    (dn >= dd).then(|| (dn - dd) as usize)
}

/// Maximal pole order per location and maximal polynomial-part degree over
/// all entries of a single-equation solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleDegreeProfile {
    pub pole_orders: Vec<usize>,
    pub poly_degree: Option<usize>,
}

pub fn pole_degree_profile(sol: &FundamentalSolution) -> Result<PoleDegreeProfile> {
    let entries = sol.matrix.entries();
    let pole_orders = sol
        .xi
        .iter()
        .map(|x| entries.iter().map(|f| pole_order_at(f, x)).try_fold(0, |acc, r| r.map(|v| acc.max(v))))
        .collect::<Result<Vec<_>>>()?;
    let poly_degree = entries.iter().filter_map(polynomial_part_degree).max();
    Ok(PoleDegreeProfile { pole_orders, poly_degree })
}

/// Pole locations `z_2..z_n` as variables 1..n-1 of an `n`-variable ring.
pub fn symbolic_params(n: usize) -> Vec<RatFunc> {
    (1..n).map(|k| RatFunc::var(n, k)).collect()
}

/// Constant pole locations in a one-variable ring.
pub fn numeric_params(values: &[Rational]) -> Vec<RatFunc> {
    values.iter().map(|v| RatFunc::constant(1, v.clone())).collect()
}

/// Default constant pole locations `0, 1, ..., n - 2`.
pub fn default_numeric_params(n: usize) -> Vec<RatFunc> {
    numeric_params(&(0..n as i64 - 1).map(|k| Rational::from_integer(k.into())).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::QMatrix;
    use crate::arith::{int, rat};

    #[test]
    fn vandermonde_examples() {
        let cv = confluent_vandermonde(&numeric_params(&[int(0), int(1)]), 1).unwrap();
        assert_eq!(cv.matrix.eval(&[int(0)]).unwrap(), QMatrix::from_ints(&[&[1, 1], &[0, 1]]));
        let xi = symbolic_params(2);
        let cv2 = confluent_vandermonde(&xi, 2).unwrap();
        let z2 = RatFunc::var(2, 1);
        assert_eq!(cv2.matrix, RFMatrix::new(2, 2, 2, vec![RatFunc::one(2), RatFunc::zero(2), z2, RatFunc::one(2)]));
        let dup = numeric_params(&[int(1), int(1)]);
        assert!(matches!(confluent_vandermonde(&dup, 1), Err(KzError::DegeneratePoles)));
    }

    #[test]
    fn vandermonde_matches_expansion() {
        let n = 4;
        let xi = symbolic_params(n);
        let m = 2;
        let cv = confluent_vandermonde(&xi, m).unwrap();
        for (k, x) in xi.iter().enumerate() {
            for s in 1..=m {
                let f = (&RatFunc::var(n, 0) - x).pow(-(s as i32)).unwrap();
                let l = expand_at_infinity(&f, 0, 6).unwrap();
                for p in 1..=6usize {
                    let c = l.coeff(p as i32).cloned().unwrap_or_else(|| RatFunc::zero(n));
                    assert_eq!(cv.matrix.get(p - 1, k * m + s - 1), &c);
                }
            }
        }
    }

    #[test]
    fn n3_negative_columns() {
        let n = 3;
        let xi = symbolic_params(n);
        let r = int(-1);
        let t1 = build_type1_columns(n, 1, &xi).unwrap();
        assert_eq!(t1.len(), 1);
        assert_eq!((t1[0].pole_order(0), t1[0].pole_order(1)), (1, 1));
        assert_eq!(t1[0].poly_degree(), None);
        let sym = build_symmetric_column(n, 1, &xi).unwrap();
        let closed = (&(&RatFunc::var(n, 0) - &xi[0]) * &(&RatFunc::var(n, 0) - &xi[1])).inverse().unwrap();
        assert!(sym.to_column().iter().all(|x| x == &closed));
        let poly = build_polynomial_column(n, 1, &xi, &[t1[0].clone(), sym.clone()]).unwrap();
        assert_eq!(poly.poly_degree(), Some(1));
        assert_eq!(poly.pole_order(1), 0);
        let top: Vec<Rational> = poly.poly[1].iter().map(|x| x.constant_value().unwrap()).collect();
        assert_eq!(top, vec![int(2), int(-1), int(-1)]);
        for col in [&t1[0], &sym, &poly] {
            let w = RFMatrix::from_columns(&[col.to_column()], n);
            assert!(single_equation_residual(&w, &r, &xi).unwrap().is_zero());
        }
    }

    #[test]
    fn forward_map_reproduces_series() {
        let n = 4;
        let m = 2;
        let xi = symbolic_params(n);
        let cv = confluent_vandermonde(&xi, m).unwrap();
        let eig = t_minus1_eigensystem(n).unwrap();
        let mut eng = SeriesEngine::new(n, -2, &xi).unwrap();
        let st = eng.run(SeriesState::seed(4, const_vector(&eig.u2basis[1], n)), 6).unwrap();
        let poles = cv.recover_poles(&st, n).unwrap();
        let g = cv.forward(&poles, n);
        for p in 1..=6i64 {
            let expect = st.coeff(p).cloned().unwrap_or_else(|| vec![RatFunc::zero(n); n]);
            assert_eq!(g[(p - 1) as usize], expect);
        }
    }

    #[test]
    fn two_dimensional_case() {
        let xi = numeric_params(&[int(1)]);
        let sol = fundamental_solution(2, -1, &xi).unwrap();
        let z = RatFunc::var(1, 0);
        let d = &z - &RatFunc::from_int(1, 1);
        let c0 = sol.matrix.column(0);
        assert_eq!(c0, vec![d.inverse().unwrap(), d.inverse().unwrap()]);
        let c1 = sol.matrix.column(1);
        assert_eq!(c1, vec![d.clone(), -d.clone()]);
        let id = fundamental_solution(2, 0, &xi).unwrap();
        assert!(id.matrix.is_identity());
    }

    #[test]
    fn n3_solutions_both_signs() {
        let xi = symbolic_params(3);
        for rho in [-1i64, 1] {
            let sol = fundamental_solution(3, rho, &xi).unwrap();
            let prof = pole_degree_profile(&sol).unwrap();
            assert!(prof.pole_orders.iter().all(|&p| p <= 1));
            let expected = if rho > 0 { 2 } else { 1 };
            assert_eq!(prof.poly_degree, Some(expected));
        }
    }

    #[test]
    fn normalization_gives_identity() {
        let xi = numeric_params(&[int(0), int(1)]);
        let sol = fundamental_solution(3, -1, &xi).unwrap();
        let z10 = int(5);
        let norm = normalize_at(&sol, &z10).unwrap();
        assert!(norm.matrix.substitute(0, &z10).unwrap().is_identity());
        let twice = normalize_at(&norm, &z10).unwrap();
        assert_eq!(twice.matrix, norm.matrix);
        let ident = FundamentalSolution { matrix: RFMatrix::identity(3, 1), ..sol.clone() };
        assert!(normalize_at(&ident, &rat(7, 2)).unwrap().matrix.is_identity());
        assert!(matches!(normalize_at(&sol, &int(0)), Err(KzError::SingularAtPoint)));
    }
}
