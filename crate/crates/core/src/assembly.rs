//! Solutions of the full system `dW/dz_j = rho A_j W`, `j = 1..n`, as ordered
//! products of normalized single-equation solutions.

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::expansion::laurent_at_zero;
use crate::arith::{MultiPoly, QMatrix, RFMatrix, Rational};
use crate::builder::{determinant_nonzero, fundamental_solution, random_point, symbolic_params};
use crate::error::{KzError, Result};
use crate::report::Report;
use crate::symmetric::{kz_coefficient, permutation_matrix, transposition};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasePointConfig {
    pub points: Vec<Rational>,
}

impl BasePointConfig {
    pub fn new(points: Vec<Rational>) -> Result<Self> {
        for a in 0..points.len() {
            for b in a + 1..points.len() {
                if points[a] == points[b] {
                    return Err(KzError::DegenerateBasePoints);
                }
            }
        }
        Ok(BasePointConfig { points })
    }

    /// `0, 1, ..., n - 1`.
    pub fn default_for(n: usize) -> Self {
        BasePointConfig { points: (0..n as i64).map(|k| Rational::from_integer(k.into())).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssembledSolution {
    pub n: usize,
    pub rho: i64,
    pub base: Vec<Rational>,
    /// Stage `i` solves equation `i + 1` with earlier variables frozen.
    pub factors: Vec<RFMatrix>,
    pub product: RFMatrix,
}

/// `dW/dz_j - rho A_j W` (1-based `j`).
pub fn equation_residual(w: &RFMatrix, j: usize, rho: &Rational) -> Result<RFMatrix> {
    let a = kz_coefficient(w.rows(), j)?;
    Ok(w.derivative(j - 1).try_sub(&a.try_mul(w)?.scale_q(rho))?)
}

/// Substitutes the main variable and parameters of a single-equation solution
/// for stage `i`: the main variable becomes `z_i`, parameter slots `1..i-1`
/// the base values and the remaining slots `z_{i+1}..z_n`. The rows are then
/// permuted so that the result solves equation `i`.
fn stage_matrix(generic: &RFMatrix, n: usize, i: usize, base: &[Rational]) -> Result<RFMatrix> {
    let subs: Vec<MultiPoly> = (0..n)
        .map(|slot| {
            if slot == 0 {
                MultiPoly::var(n, i - 1)
            } else if slot < i {
                MultiPoly::constant(n, base[slot - 1].clone())
            } else {
                MultiPoly::var(n, slot)
            }
        })
        .collect();
    let w = generic.try_map(|e| e.compose(&subs))?;
    // e_1 -> e_i, e_k -> e_{k-1} for 2 <= k <= i.
    let perm: Vec<usize> = (0..n)
        .map(|k| {
            if k == 0 {
                i - 1
            } else if k < i {
                k - 1
            } else {
                k
            }
        })
        .collect();
    Ok(w.lmul_q(&permutation_matrix(&perm)))
}

/// Normalized stage solutions and their product.
pub fn assemble_product(n: usize, rho: i64, base: &BasePointConfig) -> Result<AssembledSolution> {
    if base.points.len() != n {
        return Err(KzError::InvalidIndices(format!("need {n} base points, got {}", base.points.len())));
    }
    let base = BasePointConfig::new(base.points.clone())?;
    if n == 1 || rho == 0 {
        let id = RFMatrix::identity(n, n);
        return Ok(AssembledSolution { n, rho, base: base.points, factors: vec![id.clone(); n], product: id });
    }
    let generic = fundamental_solution(n, rho, &symbolic_params(n))?;
    let r = Rational::from_integer(rho.into());
    let factors: Vec<RFMatrix> = (1..=n)
        .into_par_iter()
        .map(|i| -> Result<RFMatrix> {
            let s = stage_matrix(&generic.matrix, n, i, &base.points)?;
            let at = s.substitute(i - 1, &base.points[i - 1]).map_err(|_| KzError::SingularAtPoint)?;
            let inv = at.inverse().map_err(|_| KzError::SingularAtPoint)?;
            let f = s.try_mul(&inv)?;
            // Earlier variables are frozen at their base values in stage i.
            let frozen: Vec<(usize, Rational)> = (0..i - 1).map(|v| (v, base.points[v].clone())).collect();
            if !precheck_equation(&f, i, &r, &frozen, 2, 1000 + i as u64) {
                return Err(KzError::VerificationFailed(format!("stage {i} fails equation {i}")));
            }
            Ok(f)
        })
        .collect::<Result<_>>()?;
    let mut product = factors[0].clone();
    for f in &factors[1..] {
        product = product.try_mul(f)?;
    }
    Ok(AssembledSolution { n, rho, base: base.points, factors, product })
}

/// Evaluates the residual of equation `j` at random rational points, with the
/// `frozen` coordinates held fixed.
fn precheck_equation(
    w: &RFMatrix,
    j: usize,
    rho: &Rational,
    frozen: &[(usize, Rational)],
    trials: usize,
    seed: u64,
) -> bool {
    let n = w.rows();
    let a = kz_coefficient(n, j).expect("valid equation index");
    let dw = w.derivative(j - 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    for _ in 0..trials * 10 {
        if done == trials {
            break;
        }
        let mut pt = random_point(&mut rng, w.nvars());
        for (v, x) in frozen {
            pt[*v] = x.clone();
        }
        let (Some(wv), Some(dv), Some(av)) = (w.eval(&pt), dw.eval(&pt), a.eval(&pt)) else { continue };
        if !(&dv - &(&av * &wv).scale(rho)).is_zero() {
            return false;
        }
        done += 1;
    }
    true
}

/// `P_{j,j+1} W` with `z_j` and `z_{j+1}` exchanged. An involution.
pub fn exchange_variables(w: &RFMatrix, j: usize) -> Result<RFMatrix> {
    let n = w.rows();
    if j == 0 || j >= n || w.nvars() < j + 1 {
        return Err(KzError::InvalidIndices(format!("swap index {j} for n = {n}")));
    }
    let nv = w.nvars();
    let map: Vec<usize> = (0..nv)
        .map(|v| {
            if v == j - 1 {
                j
            } else if v == j {
                j - 1
            } else {
                v
            }
        })
        .collect();
    Ok(w.remap_vars(nv, &map).lmul_q(&transposition(n, j, j + 1)))
}

/// Turns a solution of equation `j` into one of equation `j + 1`; the result
/// is verified symbolically.
pub fn swap_solution(w: &RFMatrix, j: usize, rho: &Rational) -> Result<RFMatrix> {
    let swapped = exchange_variables(w, j)?;
    if !equation_residual(&swapped, j + 1, rho)?.is_zero() {
        return Err(KzError::VerificationFailed(format!("swapped matrix does not solve equation {}", j + 1)));
    }
    Ok(swapped)
}

/// Symbolic residual of every equation plus `det W != 0`. A numeric
/// evaluation runs first so failures are reported quickly.
pub fn verify_full_system(w: &RFMatrix, n: usize, rho: &Rational) -> Report {
    let mut rep = Report::new(format!("full system, n = {n}, rho = {}", crate::arith::format_rational(rho)));
    if w.rows() != n || w.cols() != n || w.nvars() != n {
        rep.fail("shape", format!("expected {n}x{n} in {n} variables"));
        return rep;
    }
    let results: Vec<(usize, std::time::Duration, std::result::Result<(), String>)> = (1..=n)
        .into_par_iter()
        .map(|j| {
            let t = std::time::Instant::now();
            let r = if !precheck_equation(w, j, rho, &[], 3, 17 + j as u64) {
                Err("nonzero residual at a random point".to_string())
            } else {
                match equation_residual(w, j, rho) {
                    Ok(m) if m.is_zero() => Ok(()),
                    Ok(m) => Err(format!(
                        "residual entry {}",
                        m.entries().iter().find(|e| !e.is_zero()).map(|e| e.to_string()).unwrap_or_default()
                    )),
                    Err(e) => Err(e.to_string()),
                }
            };
            (j, t.elapsed(), r)
        })
        .collect();
    for (j, elapsed, r) in results {
        rep.timed(format!("equation {j}"), || r);
        rep.entries.last_mut().unwrap().elapsed = elapsed;
    }
    rep.timed("det W is not identically zero", || match determinant_nonzero(w) {
        Ok(true) => Ok(()),
        Ok(false) => Err("determinant vanishes".into()),
        Err(e) => Err(e.to_string()),
    });
    rep
}

/// Power-series solution `X(t) = sum_r X_r t^r` of
/// `dX/dt = rho A_j(center + t e_j) X`, `X(0) = I`.
pub fn taylor_oracle(n: usize, rho: &Rational, j: usize, center: &[Rational], order: usize) -> Result<Vec<QMatrix>> {
    if j == 0 || j > n || center.len() != n {
        return Err(KzError::InvalidIndices(format!("equation {j}, center of length {}", center.len())));
    }
    let others: Vec<usize> = (1..=n).filter(|&k| k != j).collect();
    let mut diffs = Vec::new();
    for &k in &others {
        let d = &center[j - 1] - &center[k - 1];
        if d.is_zero() {
            return Err(KzError::SingularCenter);
        }
        diffs.push(d);
    }
    // Taylor coefficients of A_j along the line.
    let a_coeffs: Vec<QMatrix> = (0..order)
        .map(|a| {
            let mut m = QMatrix::zeros(n, n);
            for (idx, &k) in others.iter().enumerate() {
                let mut c = diffs[idx].pow(-(a as i32 + 1));
                if a % 2 == 1 {
                    c = -c;
                }
                m = &m + &transposition(n, j, k).scale(&c);
            }
            m
        })
        .collect();
    let mut x = vec![QMatrix::identity(n)];
    for r in 0..order {
        let mut acc = QMatrix::zeros(n, n);
        for (a, ac) in a_coeffs.iter().enumerate().take(r + 1) {
            acc = &acc + &(ac * &x[r - a]);
        }
        let f = rho / Rational::from_integer((r as i64 + 1).into());
        x.push(acc.scale(&f));
    }
    Ok(x)
}

/// Taylor coefficients of `W(center + t e_j)` up to `t^order`.
pub fn taylor_of_solution(w: &RFMatrix, j: usize, center: &[Rational], order: usize) -> Result<Vec<QMatrix>> {
    let n = w.nvars();
    let fixed: Vec<(usize, Rational)> = (0..n).filter(|&v| v != j - 1).map(|v| (v, center[v].clone())).collect();
    let line = w.substitute_many(&fixed)?;
    let subs: Vec<MultiPoly> = (0..n)
        .map(|v| {
            if v == j - 1 {
                &MultiPoly::var(n, v) + &MultiPoly::constant(n, center[v].clone())
            } else {
                MultiPoly::var(n, v)
            }
        })
        .collect();
    let shifted = line.try_map(|e| e.compose(&subs))?;
    let expansions = shifted
        .entries()
        .par_iter()
        .map(|e| laurent_at_zero(e, j - 1, order + 1))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let mut out = vec![QMatrix::zeros(w.rows(), w.cols()); order + 1];
    for (idx, l) in expansions.iter().enumerate() {
        let (r, c) = (idx / w.cols(), idx % w.cols());
        if l.coeffs.iter().all(|x| x.is_zero()) {
            continue;
        }
        if l.lowest < 0 {
            return Err(KzError::SingularCenter);
        }
        for (k, coef) in l.coeffs.iter().enumerate() {
            let power = l.lowest as usize + k;
            if power > order {
                break;
            }
            let v =
                coef.constant_value().ok_or_else(|| KzError::VerificationFailed("non-constant coefficient".into()))?;
            out[power].set(r, c, v);
        }
    }
    Ok(out)
}

/// Checks `W(center + t e_j) = X(t) W(center)` coefficientwise.
pub fn oracle_agrees(w: &RFMatrix, rho: &Rational, j: usize, center: &[Rational], order: usize) -> Result<bool> {
    let series = taylor_of_solution(w, j, center, order)?;
    let x = taylor_oracle(w.rows(), rho, j, center, order)?;
    Ok(series.iter().zip(&x).all(|(s, xr)| s == &(xr * &series[0])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, RatFunc};

    #[test]
    fn two_by_two_assembly() {
        let base = BasePointConfig::new(vec![int(0), int(1)]).unwrap();
        let sol = assemble_product(2, -1, &base).unwrap();
        let at = sol.product.eval(&[int(0), int(1)]).unwrap();
        assert_eq!(at, QMatrix::identity(2));
        assert!(verify_full_system(&sol.product, 2, &int(-1)).all_passed());
        assert!(matches!(BasePointConfig::new(vec![int(0), int(0)]), Err(KzError::DegenerateBasePoints)));
    }

    #[test]
    fn n3_assembly_and_oracle() {
        let n = 3;
        let base = BasePointConfig::default_for(n);
        let sol = assemble_product(n, -1, &base).unwrap();
        let r = int(-1);
        assert!(verify_full_system(&sol.product, n, &r).all_passed());
        assert_eq!(sol.product.eval(&base.points).unwrap(), QMatrix::identity(n));
        for (i, f) in sol.factors.iter().enumerate() {
            for v in 0..i {
                assert!(f.entries().iter().all(|e| !e.contains_var(v)));
            }
        }
        let center = vec![crate::arith::rat(7, 3), int(-4), crate::arith::rat(1, 5)];
        for j in 1..=n {
            assert!(oracle_agrees(&sol.product, &r, j, &center, 8).unwrap());
        }
    }

    #[test]
    fn identity_is_a_negative_control() {
        let rep = verify_full_system(&RFMatrix::identity(3, 3), 3, &int(1));
        assert_eq!(rep.failures().len(), 3);
        let zero = assemble_product(3, 0, &BasePointConfig::default_for(3)).unwrap();
        assert!(zero.product.is_identity());
    }

    #[test]
    fn oracle_basics() {
        let c = vec![int(0), int(1), int(3)];
        let x = taylor_oracle(3, &int(2), 1, &c, 1).unwrap();
        assert_eq!(x[0], QMatrix::identity(3));
        let a = kz_coefficient(3, 1).unwrap().eval(&c).unwrap();
        assert_eq!(x[1], a.scale(&int(2)));
        assert!(matches!(taylor_oracle(3, &int(1), 1, &[int(0), int(0), int(1)], 3), Err(KzError::SingularCenter)));
    }

    #[test]
    fn swapping_symmetric_column() {
        let n = 3;
        let z = |i| RatFunc::var(n, i);
        let f = (&(&z(0) - &z(1)) * &(&z(0) - &z(2))).inverse().unwrap();
        let w = RFMatrix::from_columns(&[vec![f; 3]], n);
        let r = int(-1);
        assert!(equation_residual(&w, 1, &r).unwrap().is_zero());
        let s = swap_solution(&w, 1, &r).unwrap();
        let g = (&(&z(1) - &z(0)) * &(&z(1) - &z(2))).inverse().unwrap();
        assert_eq!(s, RFMatrix::from_columns(&[vec![g; 3]], n));
        let back = exchange_variables(&s, 1).unwrap();
        assert_eq!(back, w);
        assert!(equation_residual(&back, 1, &r).unwrap().is_zero());
        // A solution of equation 1 swapped to 2 does not generally solve 1.
        let sol = assemble_product(n, -1, &BasePointConfig::default_for(n)).unwrap();
        let st = swap_solution(&sol.factors[0], 1, &r).unwrap();
        assert!(!equation_residual(&st, 1, &r).unwrap().is_zero());
        let id = RFMatrix::identity(3, 3);
        assert!(swap_solution(&id, 2, &int(0)).is_ok());
    }
}
