//! Sparse multivariate polynomials.
//!
//! Terms are kept sorted in descending graded-lexicographic order with
//! `z_1 > z_2 > ... > z_n`. Zero coefficients are never stored, so the zero
//! polynomial is the empty term list.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::Rational;

/// Exponent vector of a single term.
pub type Monomial = SmallVec<[u16; 8]>;

/// Coefficient rings used by [`Poly`].
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + Send
    + Sync
{
    fn from_u64(v: u64) -> Self;
}

impl Coeff for BigInt {
    fn from_u64(v: u64) -> Self {
        BigInt::from(v)
    }
}

impl Coeff for Rational {
    fn from_u64(v: u64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
}

/// Graded-lexicographic comparison of exponent vectors.
pub fn grlex_cmp(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// Wrapper giving monomials the grlex order, for ordered maps.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub(crate) struct GrlexKey(pub Monomial);

impl PartialOrd for GrlexKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GrlexKey {
    fn cmp(&self, other: &Self) -> Ordering {
        grlex_cmp(&self.0, &other.0)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    nvars: usize,
    terms: Vec<(Monomial, C)>,
}

/// Polynomial over the rationals.
pub type MultiPoly = Poly<Rational>;
/// Polynomial over the integers; used internally for gcd and exact division.
pub type IntPoly = Poly<BigInt>;

impl<C: Coeff> Poly<C> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly { nvars, terms: vec![(smallvec::smallvec![0; nvars], c)] }
    }

    /// The variable `z_{index+1}`.
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index {index} out of range for {nvars} variables");
        let mut m: Monomial = smallvec::smallvec![0; nvars];
        m[index] = 1;
        Poly { nvars, terms: vec![(m, C::one())] }
    }

    pub fn monomial(exps: Monomial, c: C) -> Self {
        let nvars = exps.len();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly { nvars, terms: vec![(exps, c)] }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut map: HashMap<Monomial, C> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.len(), nvars, "exponent vector length mismatch");
            match map.get_mut(&m) {
                Some(acc) => *acc += &c,
                None => {
                    map.insert(m, c);
                }
            }
        }
        Self::from_map(nvars, map)
    }

    fn from_map(nvars: usize, map: HashMap<Monomial, C>) -> Self {
        let mut terms: Vec<(Monomial, C)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| grlex_cmp(&b.0, &a.0));
        Poly { nvars, terms }
    }

    /// Terms already sorted descending and free of zeros.
    pub(crate) fn from_sorted_unchecked(nvars: usize, terms: Vec<(Monomial, C)>) -> Self {
        Poly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, C)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.iter().all(|&e| e == 0))
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.terms.first().is_some_and(|(_, c)| c.is_one())
    }

    pub fn constant_value(&self) -> Option<C> {
        if self.is_zero() {
            Some(C::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    /// Coefficient of the grlex-leading term.
    pub fn leading_coeff(&self) -> Option<&C> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.iter().map(|&e| e as u32).sum())
    }

    pub fn degree_in(&self, var: usize) -> Option<u16> {
        self.terms.iter().map(|(m, _)| m[var]).max()
    }

    pub fn min_degree_in(&self, var: usize) -> Option<u16> {
        self.terms.iter().map(|(m, _)| m[var]).min()
    }

    pub fn contains_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m[var] > 0)
    }

    pub fn coeff_of(&self, m: &[u16]) -> C {
        self.terms
            .binary_search_by(|(t, _)| grlex_cmp(m, t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| C::zero())
    }

    /// Component-wise minimum of all exponent vectors.
    pub fn monomial_content(&self) -> Monomial {
        let mut out: Monomial = smallvec::smallvec![0; self.nvars];
        if let Some((first, _)) = self.terms.first() {
            out.clone_from(first);
            for (m, _) in &self.terms[1..] {
                for (o, &e) in out.iter_mut().zip(m.iter()) {
                    *o = (*o).min(e);
                }
            }
        }
        out
    }

    pub fn div_monomial(&self, d: &[u16]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let q: Monomial = m.iter().zip(d).map(|(&a, &b)| a - b).collect();
                (q, c.clone())
            })
            .collect();
        Poly { nvars: self.nvars, terms }
    }

    pub fn mul_monomial(&self, d: &[u16], c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, k)| {
                let e: Monomial = m.iter().zip(d).map(|(&a, &b)| a + b).collect();
                let mut k = k.clone();
                k *= c;
                (e, k)
            })
            .collect();
        Poly { nvars: self.nvars, terms }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, k)| {
                let mut k = k.clone();
                k *= c;
                (m.clone(), k)
            })
            .collect();
        Poly { nvars: self.nvars, terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self, var: usize) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m[var] > 0).map(|(m, c)| {
            let mut m = m.clone();
            let e = m[var];
            m[var] -= 1;
            let mut c = c.clone();
            c *= &C::from_u64(e as u64);
            (m, c)
        });
        // Lowering one exponent can reorder terms, so re-sort.
        Self::from_terms(self.nvars, terms)
    }

    fn pow_cache(value: &C, max: u16) -> Vec<C> {
        let mut out = Vec::with_capacity(max as usize + 1);
        out.push(C::one());
        for i in 1..=max as usize {
            let mut next = out[i - 1].clone();
            next *= value;
            out.push(next);
        }
        out
    }

    /// Full evaluation at a point.
    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.nvars);
        let caches: Vec<Vec<C>> =
            (0..self.nvars).map(|v| Self::pow_cache(&point[v], self.degree_in(v).unwrap_or(0))).collect();
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.iter().enumerate() {
                if e > 0 {
                    t *= &caches[v][e as usize];
                }
            }
            acc += &t;
        }
        acc
    }

    /// Substitutes `value` for one variable; the variable count is unchanged.
    pub fn eval_var(&self, var: usize, value: &C) -> Self {
        let cache = Self::pow_cache(value, self.degree_in(var).unwrap_or(0));
        let terms = self.terms.iter().map(|(m, c)| {
            let mut m = m.clone();
            let e = m[var];
            m[var] = 0;
            let mut c = c.clone();
            c *= &cache[e as usize];
            (m, c)
        });
        Self::from_terms(self.nvars, terms)
    }

    /// Coefficients with respect to `var`: entry `d` multiplies `var^d`.
    pub fn as_univariate(&self, var: usize) -> Vec<Self> {
        let deg = match self.degree_in(var) {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut buckets: Vec<Vec<(Monomial, C)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let e = m2[var] as usize;
            m2[var] = 0;
            buckets[e].push((m2, c.clone()));
        }
        buckets
            .into_iter()
            .map(|ts| {
                // Removing one variable preserves relative grlex order only up to
                // ties in degree, so sort again.
                let mut ts = ts;
                ts.sort_unstable_by(|a, b| grlex_cmp(&b.0, &a.0));
                Poly { nvars: self.nvars, terms: ts }
            })
            .collect()
    }

    /// Inverse of [`Poly::as_univariate`].
    pub fn from_univariate(nvars: usize, var: usize, coeffs: &[Self]) -> Self {
        let terms = coeffs.iter().enumerate().flat_map(|(d, p)| {
            p.terms.iter().map(move |(m, c)| {
                let mut m = m.clone();
                m[var] += d as u16;
                (m, c.clone())
            })
        });
        Self::from_terms(nvars, terms)
    }

    /// Renames variables: variable `v` of `self` becomes variable `map[v]`
    /// in a ring with `nvars` variables.
    pub fn remap_vars(&self, nvars: usize, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut out: Monomial = smallvec::smallvec![0; nvars];
            for (v, &e) in m.iter().enumerate() {
                out[map[v]] += e;
            }
            (out, c.clone())
        });
        Self::from_terms(nvars, terms)
    }

    /// Substitutes a polynomial for every variable.
    pub fn compose(&self, subs: &[Self]) -> Self {
        assert_eq!(subs.len(), self.nvars);
        let target = subs.first().map(|p| p.nvars).unwrap_or(0);
        let mut caches: Vec<Vec<Self>> = Vec::with_capacity(self.nvars);
        for (v, s) in subs.iter().enumerate() {
            let d = self.degree_in(v).unwrap_or(0) as usize;
            let mut c = vec![Self::one(target)];
            for i in 1..=d {
                let next = &c[i - 1] * s;
                c.push(next);
            }
            caches.push(c);
        }
        let mut acc: HashMap<Monomial, C> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (v, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = &t * &caches[v][e as usize];
                }
            }
            for (tm, tc) in t.terms {
                match acc.get_mut(&tm) {
                    Some(a) => *a += &tc,
                    None => {
                        acc.insert(tm, tc);
                    }
                }
            }
        }
        Self::from_map(target, acc)
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let d = f(c);
                (!d.is_zero()).then(|| (m.clone(), d))
            })
            .collect();
        Poly { nvars: self.nvars, terms }
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match grlex_cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_other { -b[j].1.clone() } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let mut c = a[i].1.clone();
                    if negate_other {
                        c -= &b[j].1;
                    } else {
                        c += &b[j].1;
                    }
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate_other { -t.1.clone() } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Poly { nvars: self.nvars, terms: out }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_monomial(m, c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_monomial(m, c);
        }
        let mut acc: HashMap<Monomial, C> = HashMap::with_capacity(self.terms.len() * 2);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Monomial = ma.iter().zip(mb.iter()).map(|(&x, &y)| x + y).collect();
                let mut c = ca.clone();
                c *= cb;
                match acc.get_mut(&m) {
                    Some(a) => *a += &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(self.nvars, acc)
    }
}

impl<C: Coeff> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: Self) -> Poly<C> {
        self.merge(rhs, false)
    }
}

impl<C: Coeff> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: Self) -> Poly<C> {
        self.merge(rhs, true)
    }
}

impl<C: Coeff> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: Self) -> Poly<C> {
        self.mul_impl(rhs)
    }
}

impl<C: Coeff> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl<C: Coeff> Add for Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: Self) -> Poly<C> {
        &self + &rhs
    }
}

impl<C: Coeff> Sub for Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: Self) -> Poly<C> {
        &self - &rhs
    }
}

impl<C: Coeff> Mul for Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: Self) -> Poly<C> {
        &self * &rhs
    }
}

impl<C: Coeff> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -&self
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let is_const = m.iter().all(|&e| e == 0);
            if is_const || !c.is_one() {
                write!(f, "({c})")?;
            }
            let mut first = is_const || !c.is_one();
            for (v, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if first {
                    write!(f, "*")?;
                }
                first = true;
                if e == 1 {
                    write!(f, "z{}", v + 1)?;
                } else {
                    write!(f, "z{}^{}", v + 1, e)?;
                }
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poly").field("nvars", &self.nvars).field("terms", &self.terms).finish()
    }
}

impl IntPoly {
    /// Gcd of the coefficients (non-negative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = num_integer::Integer::gcd(&g, c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides every coefficient by `d`, which must divide each exactly.
    pub fn div_int_exact(&self, d: &BigInt) -> IntPoly {
        if d.is_one() {
            return self.clone();
        }
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c / d)).collect();
        Poly { nvars: self.nvars, terms }
    }

    /// Primitive part with positive leading coefficient, and the signed content.
    pub fn primitive_part(&self) -> (BigInt, IntPoly) {
        if self.is_zero() {
            return (BigInt::zero(), self.clone());
        }
        let mut c = self.content();
        if self.terms[0].1.is_negative() {
            c = -c;
        }
        (c.clone(), self.div_int_exact(&c))
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c.abs()).max().unwrap_or_else(BigInt::zero)
    }

    /// Exact quotient `self / divisor`, or `None` if the division is not exact
    /// over the integers.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        super::division::div_exact(self, divisor)
    }
}

impl MultiPoly {
    /// Writes `self = content * primitive`, where `primitive` has integer
    /// coefficients with gcd 1 and a positive leading coefficient.
    pub fn to_primitive_int(&self) -> (Rational, IntPoly) {
        if self.is_zero() {
            return (Rational::zero(), IntPoly::zero(self.nvars));
        }
        let mut lcm = BigInt::one();
        for (_, c) in &self.terms {
            lcm = num_integer::Integer::lcm(&lcm, c.denom());
        }
        let ints = self.map_coeffs(|c| (c * Rational::from_integer(lcm.clone())).to_integer());
        let (cont, prim) = ints.primitive_part();
        (Rational::new(cont, lcm), prim)
    }
}

impl IntPoly {
    pub fn to_rational(&self) -> MultiPoly {
        self.map_coeffs(|c| Rational::from_integer(c.clone()))
    }
}
