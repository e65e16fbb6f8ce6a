//! Rational functions over the rationals in canonical reduced form.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::gcd::{gcd, gcd_cofactors};
use super::poly::{IntPoly, Monomial, MultiPoly};
use super::{ArithError, Rational};

/// A reduced quotient of multivariate polynomials.
///
/// Internally `scale * num / den` with `num` and `den` primitive integer
/// polynomials with positive leading coefficients and `gcd(num, den) = 1`.
/// This is in bijection with the canonical `(numer, denom)` pair over the
/// rationals whose denominator has leading coefficient `+1`, which is what
/// [`RatFunc::numer`] and [`RatFunc::denom`] return.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    scale: Rational,
    num: IntPoly,
    den: IntPoly,
}

impl RatFunc {
    pub fn zero(nvars: usize) -> Self {
        RatFunc { scale: Rational::zero(), num: IntPoly::one(nvars), den: IntPoly::one(nvars) }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        RatFunc { scale: c, num: IntPoly::one(nvars), den: IntPoly::one(nvars) }
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        RatFunc { scale: Rational::one(), num: IntPoly::var(nvars, index), den: IntPoly::one(nvars) }
    }

    pub fn from_poly(p: &MultiPoly) -> Self {
        let (c, prim) = p.to_primitive_int();
        if c.is_zero() {
            return Self::zero(p.nvars());
        }
        RatFunc { scale: c, num: prim, den: IntPoly::one(p.nvars()) }
    }

    /// Canonical reduced form of `num / den`.
    pub fn normalize(num: &MultiPoly, den: &MultiPoly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        let (cn, pn) = num.to_primitive_int();
        let (cd, pd) = den.to_primitive_int();
        Ok(Self::from_int_parts(cn / cd, pn, pd))
    }

    /// Builds from `scale * num / den` with arbitrary integer polynomials.
    pub(crate) fn from_int_parts(scale: Rational, num: IntPoly, den: IntPoly) -> Self {
        let nvars = num.nvars();
        if scale.is_zero() || num.is_zero() {
            return Self::zero(nvars);
        }
        let (cn, pn) = num.primitive_part();
        let (cd, pd) = den.primitive_part();
        let scale = scale * Rational::new(cn, cd);
        if pd.is_one() || pn.is_one() {
            return RatFunc { scale, num: pn, den: pd };
        }
        let g = gcd_cofactors(&pn, &pd);
        // Cofactors of primitive inputs by a primitive gcd stay primitive.
        let (sn, n) = g.cofactor_a.primitive_part();
        let (sd, d) = g.cofactor_b.primitive_part();
        RatFunc { scale: scale * Rational::new(sn, sd), num: n, den: d }
    }

    /// Assumes the parts are already coprime; only fixes signs and contents.
    fn from_coprime_parts(scale: Rational, num: IntPoly, den: IntPoly) -> Self {
        if scale.is_zero() || num.is_zero() {
            return Self::zero(num.nvars());
        }
        let (cn, pn) = num.primitive_part();
        let (cd, pd) = den.primitive_part();
        RatFunc { scale: scale * Rational::new(cn, cd), num: pn, den: pd }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.scale.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.scale.is_one() && self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.num.is_one() && self.den.is_one())
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        self.is_constant().then(|| self.scale.clone())
    }

    /// Numerator of the canonical form (denominator leading coefficient 1).
    pub fn numer(&self) -> MultiPoly {
        if self.is_zero() {
            return MultiPoly::zero(self.nvars());
        }
        let lc = Rational::from_integer(self.den.leading_coeff().unwrap().clone());
        let s = &self.scale / &lc;
        self.num.to_rational().scale(&s)
    }

    /// Denominator of the canonical form; its grlex-leading coefficient is 1.
    pub fn denom(&self) -> MultiPoly {
        if self.is_zero() {
            return MultiPoly::one(self.nvars());
        }
        let lc = Rational::from_integer(self.den.leading_coeff().unwrap().clone());
        self.den.to_rational().scale(&lc.recip())
    }

    pub(crate) fn int_num(&self) -> &IntPoly {
        &self.num
    }

    pub(crate) fn int_den(&self) -> &IntPoly {
        &self.den
    }

    pub(crate) fn scale_factor(&self) -> &Rational {
        &self.scale
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() || self.is_zero() {
            return Self::zero(self.nvars());
        }
        RatFunc { scale: &self.scale * c, num: self.num.clone(), den: self.den.clone() }
    }

    pub fn inverse(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(RatFunc { scale: self.scale.recip(), num: self.den.clone(), den: self.num.clone() })
    }

    pub fn pow(&self, e: i32) -> Result<Self, ArithError> {
        if e < 0 {
            return self.inverse()?.pow(-e);
        }
        let e = e as u32;
        if self.is_zero() {
            return Ok(if e == 0 { Self::one(self.nvars()) } else { self.clone() });
        }
        Ok(RatFunc {
            scale: num_traits::pow(self.scale.clone(), e as usize),
            num: self.num.pow(e),
            den: self.den.pow(e),
        })
    }

    pub fn derivative(&self, var: usize) -> Self {
        if self.is_constant() {
            return Self::zero(self.nvars());
        }
        if self.den.is_one() {
            return Self::from_int_parts(self.scale.clone(), self.num.derivative(var), self.den.clone());
        }
        // (N/D)' = (N' D1 - N D1') / (D1 D) with D = g D1, D' = g D1'.
        let dd = self.den.derivative(var);
        let dn = self.num.derivative(var);
        if dd.is_zero() {
            return Self::from_int_parts(self.scale.clone(), dn, self.den.clone());
        }
        let g = gcd_cofactors(&self.den, &dd);
        let d1 = g.cofactor_a;
        let dd1 = g.cofactor_b;
        let num = &(&dn * &d1) - &(&self.num * &dd1);
        let den = &d1 * &self.den;
        Self::from_int_parts(self.scale.clone(), num, den)
    }

    /// Evaluates at a full point; `None` if the denominator vanishes there.
    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        let num = self.num.to_rational().eval(point);
        let den = self.den.to_rational().eval(point);
        if den.is_zero() {
            None
        } else {
            Some(&self.scale * num / den)
        }
    }

    /// Substitutes a constant for one variable (the variable count stays).
    pub fn substitute(&self, var: usize, value: &Rational) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let num = self.num.to_rational().eval_var(var, value);
        let den = self.den.to_rational().eval_var(var, value);
        if den.is_zero() {
            return Err(ArithError::PoleAtSubstitution);
        }
        let (cn, pn) = num.to_primitive_int();
        let (cd, pd) = den.to_primitive_int();
        Ok(Self::from_int_parts(&self.scale * cn / cd, pn, pd))
    }

    /// Substitutes several constants at once.
    pub fn substitute_many(&self, values: &[(usize, Rational)]) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let mut num = self.num.to_rational();
        let mut den = self.den.to_rational();
        for (v, x) in values {
            num = num.eval_var(*v, x);
            den = den.eval_var(*v, x);
        }
        if den.is_zero() {
            return Err(ArithError::PoleAtSubstitution);
        }
        let (cn, pn) = num.to_primitive_int();
        let (cd, pd) = den.to_primitive_int();
        Ok(Self::from_int_parts(&self.scale * cn / cd, pn, pd))
    }

    /// Renames variables (see [`crate::arith::Poly::remap_vars`]).
    pub fn remap_vars(&self, nvars: usize, map: &[usize]) -> Self {
        if self.is_zero() {
            return Self::zero(nvars);
        }
        Self::from_coprime_parts(self.scale.clone(), self.num.remap_vars(nvars, map), self.den.remap_vars(nvars, map))
    }

    /// Substitutes a polynomial for every variable.
    pub fn compose(&self, subs: &[MultiPoly]) -> Result<Self, ArithError> {
        let target = subs.first().map(|p| p.nvars()).unwrap_or(0);
        if self.is_zero() {
            return Ok(Self::zero(target));
        }
        let num = self.num.to_rational().compose(subs);
        let den = self.den.to_rational().compose(subs);
        if den.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        let (cn, pn) = num.to_primitive_int();
        let (cd, pd) = den.to_primitive_int();
        Ok(Self::from_int_parts(&self.scale * cn / cd, pn, pd))
    }

    pub fn mul_monomial(&self, exps: &[i32]) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let n = self.nvars();
        let up: Monomial = exps.iter().map(|&e| e.max(0) as u16).collect();
        let down: Monomial = exps.iter().map(|&e| (-e).max(0) as u16).collect();
        let num = self.num.mul_monomial(&up, &BigInt::one());
        let den = self.den.mul_monomial(&down, &BigInt::one());
        debug_assert_eq!(num.nvars(), n);
        Self::from_int_parts(self.scale.clone(), num, den)
    }

    /// Lowest power of `var` dividing the numerator minus the same for the
    /// denominator: the order of vanishing along `var = 0`.
    pub fn order_at_zero(&self, var: usize) -> Option<i32> {
        if self.is_zero() {
            return None;
        }
        Some(self.num.min_degree_in(var).unwrap() as i32 - self.den.min_degree_in(var).unwrap() as i32)
    }

    pub fn degree_in(&self, var: usize) -> (u16, u16) {
        (self.num.degree_in(var).unwrap_or(0), self.den.degree_in(var).unwrap_or(0))
    }

    pub fn contains_var(&self, var: usize) -> bool {
        !self.is_zero() && (self.num.contains_var(var) || self.den.contains_var(var))
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        let os = if negate { -other.scale.clone() } else { other.scale.clone() };
        // Integerize the scales: a/qa and b/qb.
        let (pa, qa) = (self.scale.numer().clone(), self.scale.denom().clone());
        let (pb, qb) = (os.numer().clone(), os.denom().clone());
        let ka = &pa * &qb;
        let kb = &pb * &qa;
        let common = Rational::new(BigInt::one(), &qa * &qb);
        if self.den == other.den {
            let num = &self.num.scale(&ka) + &other.num.scale(&kb);
            if num.is_zero() {
                return Self::zero(self.nvars());
            }
            if self.den.is_one() {
                return Self::from_coprime_parts(common, num, self.den.clone());
            }
            return Self::from_int_parts(common, num, self.den.clone());
        }
        let g = gcd_cofactors(&self.den, &other.den);
        let da1 = g.cofactor_a;
        let db1 = g.cofactor_b;
        let num = &(&self.num * &db1).scale(&ka) + &(&other.num * &da1).scale(&kb);
        if num.is_zero() {
            return Self::zero(self.nvars());
        }
        let den1 = &da1 * &db1;
        if g.gcd.is_constant() {
            return Self::from_coprime_parts(common, num, &den1 * &g.gcd);
        }
        let h = gcd_cofactors(&num, &g.gcd);
        Self::from_coprime_parts(common, h.cofactor_a, &den1 * &h.cofactor_b)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars());
        }
        let scale = &self.scale * &other.scale;
        let (n1, d2) = cancel(&self.num, &other.den);
        let (n2, d1) = cancel(&other.num, &self.den);
        Self::from_coprime_parts(scale, &n1 * &n2, &d1 * &d2)
    }
}

fn cancel(a: &IntPoly, b: &IntPoly) -> (IntPoly, IntPoly) {
    if a.is_one() || b.is_one() {
        return (a.clone(), b.clone());
    }
    let g = gcd_cofactors(a, b);
    (g.cofactor_a, g.cofactor_b)
}

/// Least common multiple of integer polynomials (positive leading coefficient).
pub(crate) fn lcm(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_one() {
        return b.clone();
    }
    if b.is_one() || a == b {
        return a.clone();
    }
    let g = gcd(a, b);
    let l = &a.div_exact(&g).expect("gcd divides") * b;
    l.primitive_part().1
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        self.add_impl(rhs, false)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self.add_impl(rhs, true)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        self.mul_impl(rhs)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.mul_impl(&rhs.inverse().expect("division by the zero rational function"))
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { scale: -self.scale.clone(), num: self.num.clone(), den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $f(self, rhs: RatFunc) -> RatFunc {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den = self.denom();
        if den.is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "({}) / ({})", self.numer(), den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc[{self}]")
    }
}

impl RatFunc {
    /// Sign of the canonical leading numerator coefficient.
    pub fn is_negative_leading(&self) -> bool {
        self.scale.is_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn canonical_parts_reproduce_the_value() {
        let x = MultiPoly::var(1, 0);
        let num = &x.scale(&int(3)) + &MultiPoly::constant(1, int(5));
        let den = &x.scale(&int(4)) + &MultiPoly::constant(1, int(-6));
        let f = RatFunc::normalize(&num, &den).unwrap().scale(&rat(7, 2));
        assert!(f.denom().leading_coeff().unwrap().is_one());
        let g = RatFunc::normalize(&f.numer(), &f.denom()).unwrap();
        assert_eq!(g, f);
        let pt = [rat(1, 3)];
        assert_eq!(f.numer().eval(&pt) / f.denom().eval(&pt), f.eval(&pt).unwrap());
    }
}
