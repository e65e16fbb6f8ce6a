//! Truncated power series with rational-function coefficients.

use super::matrix::sum_ratfuncs;
use super::{ArithError, RatFunc};

/// Product truncated to `order` terms.
pub fn series_mul(a: &[RatFunc], b: &[RatFunc], order: usize, nvars: usize) -> Vec<RatFunc> {
    (0..order)
        .map(|k| {
            let terms = (0..=k)
                .filter(|&i| i < a.len() && k - i < b.len())
                .filter(|&i| !a[i].is_zero() && !b[k - i].is_zero())
                .map(|i| &a[i] * &b[k - i])
                .collect();
            sum_ratfuncs(nvars, terms)
        })
        .collect()
}

/// Quotient `a / b` truncated to `order` terms; `b[0]` must be nonzero.
pub fn series_div(a: &[RatFunc], b: &[RatFunc], order: usize, nvars: usize) -> Result<Vec<RatFunc>, ArithError> {
    let b0 = b.first().filter(|x| !x.is_zero()).ok_or(ArithError::DivisionByZero)?;
    let inv0 = b0.inverse()?;
    let mut out: Vec<RatFunc> = Vec::with_capacity(order);
    for k in 0..order {
        let mut terms: Vec<RatFunc> = Vec::new();
        if k < a.len() {
            terms.push(a[k].clone());
        }
        for j in 1..=k {
            if j < b.len() && !b[j].is_zero() && !out[k - j].is_zero() {
                terms.push(-(&b[j] * &out[k - j]));
            }
        }
        out.push(&sum_ratfuncs(nvars, terms) * &inv0);
    }
    Ok(out)
}

/// Evaluates a truncated series at a rational-function argument.
pub fn series_eval(a: &[RatFunc], x: &RatFunc, nvars: usize) -> RatFunc {
    a.iter().rev().fold(RatFunc::zero(nvars), |acc, c| &(&acc * x) + c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series() {
        let nv = 1;
        let one = RatFunc::one(nv);
        let y = RatFunc::var(nv, 0);
        // 1 / (1 - y z) = sum y^k z^k
        let b = vec![one.clone(), -y.clone()];
        let s = series_div(std::slice::from_ref(&one), &b, 5, nv).unwrap();
        for (k, c) in s.iter().enumerate() {
            assert_eq!(c, &y.pow(k as i32).unwrap());
        }
        let back = series_mul(&s, &b, 5, nv);
        assert!(back[0].is_one());
        assert!(back[1..].iter().all(|c| c.is_zero()));
    }
}
