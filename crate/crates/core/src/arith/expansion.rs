//! Laurent expansions of rational functions in one variable.

use super::poly::MultiPoly;
use super::univariate::series_div;
use super::{ArithError, RatFunc};

/// `sum_k coeffs[k] * t^(lowest + k)`, where `t` is the expansion parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    pub lowest: i32,
    pub coeffs: Vec<RatFunc>,
}

impl Laurent {
    /// Coefficient of `t^power`, zero outside the stored window.
    pub fn coeff(&self, power: i32) -> Option<&RatFunc> {
        let k = power - self.lowest;
        if k < 0 {
            return None;
        }
        self.coeffs.get(k as usize)
    }
}

fn check_var(f: &RatFunc, var: usize) -> Result<(), ArithError> {
    if var >= f.nvars() {
        return Err(ArithError::VariableOutOfRange { index: var, nvars: f.nvars() });
    }
    Ok(())
}

fn coeff_list(p: &MultiPoly, var: usize) -> Vec<RatFunc> {
    p.as_univariate(var).iter().map(RatFunc::from_poly).collect()
}

fn expand_parts(num: Vec<RatFunc>, den: Vec<RatFunc>, terms: usize, nvars: usize) -> Result<Laurent, ArithError> {
    let ln = num.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let ld = den.iter().position(|c| !c.is_zero()).ok_or(ArithError::ZeroDenominator)?;
    let coeffs = series_div(&num[ln..], &den[ld..], terms, nvars)?;
    Ok(Laurent { lowest: ln as i32 - ld as i32, coeffs })
}

/// Expansion of `f` around `var = 0`, with coefficients free of `var`.
/// Returns `terms` coefficients starting at the order of vanishing.
pub fn laurent_at_zero(f: &RatFunc, var: usize, terms: usize) -> Result<Laurent, ArithError> {
    check_var(f, var)?;
    if f.is_zero() {
        return Ok(Laurent { lowest: 0, coeffs: vec![RatFunc::zero(f.nvars()); terms] });
    }
    expand_parts(coeff_list(&f.numer(), var), coeff_list(&f.denom(), var), terms, f.nvars())
}

/// Expansion of `f` in `t = 1 / var` around `var = infinity`.
pub fn expand_at_infinity(f: &RatFunc, var: usize, terms: usize) -> Result<Laurent, ArithError> {
    check_var(f, var)?;
    if f.is_zero() {
        return Ok(Laurent { lowest: 0, coeffs: vec![RatFunc::zero(f.nvars()); terms] });
    }
    // var^d * p(1/t) reverses the coefficient list.
    let mut num = coeff_list(&f.numer(), var);
    let mut den = coeff_list(&f.denom(), var);
    let shift = den.len() as i32 - num.len() as i32;
    num.reverse();
    den.reverse();
    let mut l = expand_parts(num, den, terms, f.nvars())?;
    l.lowest += shift;
    Ok(l)
}

/// Sums a Laurent expansion back into a rational function of `var`, reading
/// `t` as `var` (or `1 / var` when `at_infinity`).
pub fn resum(l: &Laurent, var: usize, nvars: usize, at_infinity: bool) -> RatFunc {
    let mut acc = RatFunc::zero(nvars);
    for (k, c) in l.coeffs.iter().enumerate() {
        let mut e = l.lowest + k as i32;
        if at_infinity {
            e = -e;
        }
        let mut exps = vec![0i32; nvars];
        exps[var] = e;
        acc = &acc + &c.mul_monomial(&exps);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_pole_at_infinity() {
        // 1 / (z1 - z2) = sum z2^p u^(p+1)
        let nv = 2;
        let f = (RatFunc::var(nv, 0) - RatFunc::var(nv, 1)).inverse().unwrap();
        let l = expand_at_infinity(&f, 0, 5).unwrap();
        assert_eq!(l.lowest, 1);
        for p in 0..5 {
            assert_eq!(l.coeffs[p], RatFunc::var(nv, 1).pow(p as i32).unwrap());
        }
    }

    #[test]
    fn polynomial_at_infinity_and_zero() {
        let nv = 1;
        let z = RatFunc::var(nv, 0);
        let f = &(&z * &z) + &RatFunc::from_int(nv, 3);
        let l = expand_at_infinity(&f, 0, 4).unwrap();
        assert_eq!(l.lowest, -2);
        assert!(l.coeffs[0].is_one());
        assert_eq!(l.coeffs[2], RatFunc::from_int(nv, 3));
        let g = f.inverse().unwrap().mul_monomial(&[-1]);
        let l0 = laurent_at_zero(&g, 0, 3).unwrap();
        assert_eq!(l0.lowest, -1);
        assert_eq!(l0.coeffs[0], RatFunc::constant(nv, super::super::rat(1, 3)));
    }
}
