//! Transposition matrices of the permutation representation and the KZ
//! coefficient matrices built from them. Indices are 1-based.

use rayon::prelude::*;

use crate::arith::matrix::sum_ratfuncs;
use crate::arith::{QMatrix, RFMatrix, RatFunc, Rational};
use crate::error::{KzError, Result};
use crate::report::Report;

/// Matrix of the transposition swapping coordinates `i` and `j`.
pub fn perm_matrix(n: usize, i: usize, j: usize) -> Result<QMatrix> {
    if i == j || i == 0 || j == 0 || i > n || j > n {
        return Err(KzError::InvalidIndices(format!("({i}, {j}) for n = {n}")));
    }
    Ok(transposition(n, i, j))
}

/// Unchecked variant for internal use.
pub(crate) fn transposition(n: usize, i: usize, j: usize) -> QMatrix {
    let mut m = QMatrix::identity(n);
    let (a, b) = (i - 1, j - 1);
    m.set(a, a, Rational::from_integer(0.into()));
    m.set(b, b, Rational::from_integer(0.into()));
    m.set(a, b, Rational::from_integer(1.into()));
    m.set(b, a, Rational::from_integer(1.into()));
    m
}

/// Matrix sending `e_k` to `e_{perm[k]}` (0-based `perm`).
pub fn permutation_matrix(perm: &[usize]) -> QMatrix {
    let n = perm.len();
    let mut m = QMatrix::zeros(n, n);
    for (k, &p) in perm.iter().enumerate() {
        m.set(p, k, Rational::from_integer(1.into()));
    }
    m
}

/// `1 / (z_a - z_b)` in `nvars` variables (0-based indices).
pub(crate) fn inverse_difference(nvars: usize, a: usize, b: usize) -> RatFunc {
    (RatFunc::var(nvars, a) - RatFunc::var(nvars, b)).inverse().expect("distinct variables")
}

/// `A_j = sum_{k != j} P_{j,k} / (z_j - z_k)` over the variables `z_1..z_n`.
pub fn kz_coefficient(n: usize, j: usize) -> Result<RFMatrix> {
    if j == 0 || j > n || n < 2 {
        return Err(KzError::InvalidIndices(format!("equation {j} for n = {n}")));
    }
    let mut entries = vec![Vec::new(); n * n];
    for k in (1..=n).filter(|&k| k != j) {
        let w = inverse_difference(n, j - 1, k - 1);
        let p = transposition(n, j, k);
        for r in 0..n {
            for c in 0..n {
                if !num_traits::Zero::is_zero(p.get(r, c)) {
                    entries[r * n + c].push(w.clone());
                }
            }
        }
    }
    let data = entries.into_iter().map(|e| sum_ratfuncs(n, e)).collect();
    Ok(RFMatrix::new(n, n, n, data))
}

fn first_nonzero_entry(m: &QMatrix) -> String {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !num_traits::Zero::is_zero(m.get(i, j)) {
                return format!("entry ({}, {}) = {}", i + 1, j + 1, m.get(i, j));
            }
        }
    }
    String::from("zero")
}

/// Checks the algebraic identities among transpositions used by the
/// consistency argument and by the equation-swapping step.
pub fn check_transposition_relations(n: usize) -> Report {
    let mut rep = Report::new(format!("transposition relations, n = {n}"));
    let p = |i: usize, j: usize| transposition(n, i, j);
    let id = QMatrix::identity(n);

    let mut witness = None;
    'outer: for i in 1..=n {
        for j in (1..=n).filter(|&j| j != i) {
            if p(i, j) != p(j, i) {
                witness = Some(format!("P({i},{j}) != P({j},{i})"));
                break 'outer;
            }
            if &p(i, j) * &p(i, j) != id {
                witness = Some(format!("P({i},{j})^2 != I"));
                break 'outer;
            }
        }
    }
    rep.record("symmetry and involution", witness.is_none(), witness);

    if n >= 3 {
        let mut witness = None;
        'outer3: for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    if i == j || j == k || i == k {
                        continue;
                    }
                    let c = (&p(i, j) + &p(j, k)).commutator(&p(i, k));
                    if !c.is_zero() {
                        witness = Some(format!("[P({i},{j})+P({j},{k}), P({i},{k})]: {}", first_nonzero_entry(&c)));
                        break 'outer3;
                    }
                }
            }
        }
        rep.record("[P_ij + P_jk, P_ik] = 0", witness.is_none(), witness);

        let mut witness = None;
        'braid: for j in 1..n {
            let s = p(j, j + 1);
            for i in (1..=n).filter(|&i| i != j && i != j + 1) {
                if &(&s * &p(j, i)) * &s != p(j + 1, i) {
                    witness = Some(format!("P({j},{})P({j},{i})P({j},{}) != P({},{i})", j + 1, j + 1, j + 1));
                    break 'braid;
                }
                if &(&s * &p(j + 1, i)) * &s != p(j, i) {
                    witness = Some(format!("P({j},{})P({},{i})P({j},{}) != P({j},{i})", j + 1, j + 1, j + 1));
                    break 'braid;
                }
            }
        }
        rep.record("conjugation by P_(j,j+1)", witness.is_none(), witness);
    }

    if n >= 4 {
        let mut witness = None;
        'outer4: for i in 1..=n {
            for j in i + 1..=n {
                for k in 1..=n {
                    for l in k + 1..=n {
                        if [k, l].iter().any(|x| *x == i || *x == j) {
                            continue;
                        }
                        if !p(i, j).commutator(&p(k, l)).is_zero() {
                            witness = Some(format!("[P({i},{j}), P({k},{l})] != 0"));
                            break 'outer4;
                        }
                    }
                }
            }
        }
        rep.record("[P_ij, P_kl] = 0 for disjoint pairs", witness.is_none(), witness);
    }
    rep
}

/// Zero-curvature residual `rho (dA_i/dz_j - dA_j/dz_i) + rho^2 [A_i, A_j]`.
pub fn curvature(n: usize, i: usize, j: usize, rho: &Rational) -> Result<RFMatrix> {
    let ai = kz_coefficient(n, i)?;
    let aj = kz_coefficient(n, j)?;
    let d = ai.derivative(j - 1).try_sub(&aj.derivative(i - 1))?;
    let c = ai.try_mul(&aj)?.try_sub(&aj.try_mul(&ai)?)?;
    Ok(d.scale_q(rho).try_add(&c.scale_q(&(rho * rho)))?)
}

/// Symbolic zero-curvature check for every pair `i < j`.
pub fn check_consistency(n: usize, rho: &Rational) -> Report {
    let mut rep = Report::new(format!("consistency, n = {n}, rho = {}", crate::arith::format_rational(rho)));
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    let results: Vec<((usize, usize), std::result::Result<(), String>)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let r = match curvature(n, i, j, rho) {
                Ok(m) if m.is_zero() => Ok(()),
                Ok(m) => Err(m.entries().iter().find(|e| !e.is_zero()).map(|e| e.to_string()).unwrap_or_default()),
                Err(e) => Err(e.to_string()),
            };
            ((i, j), r)
        })
        .collect();
    for ((i, j), r) in results {
        let name = format!("pair ({i}, {j})");
        match r {
            Ok(()) => rep.pass(name),
            Err(w) => rep.fail(name, w),
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn transposition_examples() {
        assert_eq!(perm_matrix(3, 1, 2).unwrap(), QMatrix::from_ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]));
        assert_eq!(perm_matrix(3, 1, 3).unwrap(), QMatrix::from_ints(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]));
        assert!(matches!(perm_matrix(3, 2, 2), Err(KzError::InvalidIndices(_))));
        assert!(perm_matrix(3, 1, 4).is_err());
    }

    #[test]
    fn coefficient_examples() {
        let a = kz_coefficient(2, 1).unwrap();
        let w = inverse_difference(2, 0, 1);
        assert_eq!(a, RFMatrix::from_qmatrix(&transposition(2, 1, 2), 2).scale(&w));
        let sum = (1..=3).fold(RFMatrix::zeros(3, 3, 3), |acc, j| acc.try_add(&kz_coefficient(3, j).unwrap()).unwrap());
        assert!(sum.is_zero());
    }

    #[test]
    fn relations_and_consistency() {
        for n in 2..=4 {
            assert!(check_transposition_relations(n).all_passed());
        }
        assert_eq!(check_transposition_relations(2).entries.len(), 1);
        assert!(check_consistency(3, &int(1)).all_passed());
        assert!(check_consistency(3, &rat(1, 2)).all_passed());
        assert!(check_consistency(2, &int(-2)).all_passed());
    }

    #[test]
    fn permutation_matrix_maps_basis() {
        let m = permutation_matrix(&[1, 2, 0]);
        let e0 = vec![int(1), int(0), int(0)];
        assert_eq!(m.mul_vec(&e0), vec![int(0), int(1), int(0)]);
    }
}
