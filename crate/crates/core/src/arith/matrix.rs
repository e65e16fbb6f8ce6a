//! Dense matrices over the rationals and over rational functions.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::poly::IntPoly;
use super::ratfunc::{lcm, RatFunc};
use super::{ArithError, Rational};

/// Dense matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        QMatrix { rows: r, cols: c, data: rows.iter().flatten().cloned().collect() }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let v: Vec<Vec<Rational>> =
            rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect()).collect();
        Self::from_rows(&v)
    }

    pub fn column(v: &[Rational]) -> Self {
        QMatrix { rows: v.len(), cols: 1, data: v.to_vec() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column_vec(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| (0..self.cols).fold(Rational::zero(), |acc, j| acc + self.get(i, j) * &v[j])).collect()
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).fold(Rational::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self, ArithError> {
        if !self.is_square() {
            return Err(ArithError::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for k in 0..n {
            let p = (k..n).find(|&r| !a.get(r, k).is_zero()).ok_or(ArithError::SingularMatrix)?;
            if p != k {
                for j in 0..n {
                    a.data.swap(p * n + j, k * n + j);
                    inv.data.swap(p * n + j, k * n + j);
                }
            }
            let piv = a.get(k, k).recip();
            for j in 0..n {
                let x = a.get(k, j) * &piv;
                a.set(k, j, x);
                let y = inv.get(k, j) * &piv;
                inv.set(k, j, y);
            }
            for i in 0..n {
                if i == k || a.get(i, k).is_zero() {
                    continue;
                }
                let f = a.get(i, k).clone();
                for j in 0..n {
                    let x = a.get(i, j) - &f * a.get(k, j);
                    a.set(i, j, x);
                    let y = inv.get(i, j) - &f * inv.get(k, j);
                    inv.set(i, j, y);
                }
            }
        }
        Ok(inv)
    }

    pub fn determinant(&self) -> Rational {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a.get(r, k).is_zero()) else {
                return Rational::zero();
            };
            if p != k {
                for j in 0..n {
                    a.data.swap(p * n + j, k * n + j);
                }
                det = -det;
            }
            let piv = a.get(k, k).clone();
            det *= &piv;
            for i in k + 1..n {
                if a.get(i, k).is_zero() {
                    continue;
                }
                let f = a.get(i, k) / &piv;
                for j in k..n {
                    let x = a.get(i, j) - &f * a.get(k, j);
                    a.set(i, j, x);
                }
            }
        }
        det
    }

    /// Basis of the right null space.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (rows, cols) = (self.rows, self.cols);
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else { continue };
            if p != r {
                for j in 0..cols {
                    a.data.swap(p * cols + j, r * cols + j);
                }
            }
            let piv = a.get(r, c).recip();
            for j in 0..cols {
                let x = a.get(r, j) * &piv;
                a.set(r, j, x);
            }
            for i in 0..rows {
                if i != r && !a.get(i, c).is_zero() {
                    let f = a.get(i, c).clone();
                    for j in 0..cols {
                        let x = a.get(i, j) - &f * a.get(r, j);
                        a.set(i, j, x);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); cols];
                v[f] = Rational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -a.get(row, f).clone();
                }
                v
            })
            .collect()
    }
}

impl std::ops::Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl std::ops::Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl std::ops::Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| super::format_rational(self.get(i, j))).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QMatrix{}x{}\n{}", self.rows, self.cols, self)
    }
}

/// Dense row-major matrix of rational functions sharing one variable count.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RFMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    data: Vec<RatFunc>,
}

impl RFMatrix {
    pub fn new(rows: usize, cols: usize, nvars: usize, data: Vec<RatFunc>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count");
        assert!(data.iter().all(|e| e.nvars() == nvars), "mixed variable counts");
        RFMatrix { rows, cols, nvars, data }
    }

    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        RFMatrix { rows, cols, nvars, data: vec![RatFunc::zero(nvars); rows * cols] }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut m = Self::zeros(n, n, nvars);
        for i in 0..n {
            m.data[i * n + i] = RatFunc::one(nvars);
        }
        m
    }

    pub fn from_qmatrix(q: &QMatrix, nvars: usize) -> Self {
        let data = (0..q.rows() * q.cols())
            .map(|k| RatFunc::constant(nvars, q.get(k / q.cols(), k % q.cols()).clone()))
            .collect();
        RFMatrix { rows: q.rows(), cols: q.cols(), nvars, data }
    }

    pub fn from_columns(cols: &[Vec<RatFunc>], nvars: usize) -> Self {
        let c = cols.len();
        let r = cols.first().map(|x| x.len()).unwrap_or(0);
        let mut m = Self::zeros(r, c, nvars);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r);
            for (i, e) in col.iter().enumerate() {
                m.set(i, j, e.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn entries(&self) -> &[RatFunc] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFunc) {
        assert_eq!(v.nvars(), self.nvars);
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<RatFunc> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() })
            })
    }

    pub fn map(&self, f: impl Fn(&RatFunc) -> RatFunc + Sync) -> Self {
        let data: Vec<RatFunc> = self.data.par_iter().map(&f).collect();
        let nvars = data.first().map(|e| e.nvars()).unwrap_or(self.nvars);
        RFMatrix { rows: self.rows, cols: self.cols, nvars, data }
    }

    pub fn try_map(&self, f: impl Fn(&RatFunc) -> Result<RatFunc, ArithError> + Sync) -> Result<Self, ArithError> {
        let data: Vec<RatFunc> = self.data.par_iter().map(&f).collect::<Result<_, _>>()?;
        let nvars = data.first().map(|e| e.nvars()).unwrap_or(self.nvars);
        Ok(RFMatrix { rows: self.rows, cols: self.cols, nvars, data })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.nvars);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn derivative(&self, var: usize) -> Self {
        self.map(|e| e.derivative(var))
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        self.map(|e| e * c)
    }

    pub fn scale_q(&self, c: &Rational) -> Self {
        self.map(|e| e.scale(c))
    }

    /// `Q * self` for a constant matrix `Q`.
    pub fn lmul_q(&self, q: &QMatrix) -> Self {
        assert_eq!(q.cols(), self.rows);
        let nv = self.nvars;
        let data: Vec<RatFunc> = (0..q.rows() * self.cols)
            .into_par_iter()
            .map(|idx| {
                let (i, j) = (idx / self.cols, idx % self.cols);
                let mut acc = RatFunc::zero(nv);
                for k in 0..self.rows {
                    let c = q.get(i, k);
                    if c.is_zero() {
                        continue;
                    }
                    let term = if c.is_one() { self.get(k, j).clone() } else { self.get(k, j).scale(c) };
                    acc = &acc + &term;
                }
                acc
            })
            .collect();
        RFMatrix { rows: q.rows(), cols: self.cols, nvars: nv, data }
    }

    /// `self * Q` for a constant matrix `Q`.
    pub fn rmul_q(&self, q: &QMatrix) -> Self {
        self.transpose().lmul_q(&q.transpose()).transpose()
    }

    /// Evaluates at a full point; `None` if some entry has a pole there.
    pub fn eval(&self, point: &[Rational]) -> Option<QMatrix> {
        let vals: Option<Vec<Rational>> = self.data.iter().map(|e| e.eval(point)).collect();
        vals.map(|data| QMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn substitute(&self, var: usize, value: &Rational) -> Result<Self, ArithError> {
        self.try_map(|e| e.substitute(var, value))
    }

    pub fn substitute_many(&self, values: &[(usize, Rational)]) -> Result<Self, ArithError> {
        self.try_map(|e| e.substitute_many(values))
    }

    pub fn remap_vars(&self, nvars: usize, map: &[usize]) -> Self {
        let mut out = self.map(|e| e.remap_vars(nvars, map));
        out.nvars = nvars;
        out
    }

    /// Applies a row permutation: row `i` of the result is row `perm[i]`.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.rows);
        let mut out = Self::zeros(self.rows, self.cols, self.nvars);
        for (i, &p) in perm.iter().enumerate() {
            for j in 0..self.cols {
                out.set(i, j, self.get(p, j).clone());
            }
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_same_shape(other)?;
        let data = self.data.par_iter().zip(other.data.par_iter()).map(|(a, b)| a + b).collect();
        Ok(RFMatrix { rows: self.rows, cols: self.cols, nvars: self.nvars, data })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_same_shape(other)?;
        let data = self.data.par_iter().zip(other.data.par_iter()).map(|(a, b)| a - b).collect();
        Ok(RFMatrix { rows: self.rows, cols: self.cols, nvars: self.nvars, data })
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), ArithError> {
        if (self.rows, self.cols) != (other.rows, other.cols) || self.nvars != other.nvars {
            return Err(ArithError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ArithError> {
        if self.cols != other.rows || self.nvars != other.nvars {
            return Err(ArithError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let nv = self.nvars;
        let data: Vec<RatFunc> = (0..self.rows * other.cols)
            .into_par_iter()
            .map(|idx| {
                let (i, j) = (idx / other.cols, idx % other.cols);
                let products: Vec<RatFunc> = (0..self.cols)
                    .filter(|&k| !self.get(i, k).is_zero() && !other.get(k, j).is_zero())
                    .map(|k| self.get(i, k) * other.get(k, j))
                    .collect();
                sum_ratfuncs(nv, products)
            })
            .collect();
        Ok(RFMatrix { rows: self.rows, cols: other.cols, nvars: nv, data })
    }

    pub fn mul_vec(&self, v: &[RatFunc]) -> Vec<RatFunc> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let prods = (0..self.cols)
                    .filter(|&k| !self.get(i, k).is_zero() && !v[k].is_zero())
                    .map(|k| self.get(i, k) * &v[k])
                    .collect();
                sum_ratfuncs(self.nvars, prods)
            })
            .collect()
    }

    /// Determinant by fraction-free elimination.
    pub fn determinant(&self) -> Result<RatFunc, ArithError> {
        if !self.is_square() {
            return Err(ArithError::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let (rows, multipliers) = self.integer_rows(None);
        match bareiss(rows, self.rows) {
            Ok(out) => {
                let mut scale = Rational::from_integer(BigInt::from(out.sign));
                let mut den = IntPoly::one(self.nvars);
                for (q, l) in multipliers {
                    scale /= q;
                    den = &den * &l;
                }
                Ok(RatFunc::from_int_parts(scale, out.pivot, den))
            }
            Err(ArithError::SingularMatrix) => Ok(RatFunc::zero(self.nvars)),
            Err(e) => Err(e),
        }
    }

    /// Solves `self * X = rhs` by fraction-free Gauss-Jordan elimination.
    pub fn solve(&self, rhs: &RFMatrix) -> Result<RFMatrix, ArithError> {
        if !self.is_square() || rhs.rows != self.rows || rhs.nvars != self.nvars {
            return Err(ArithError::DimensionMismatch("solve".into()));
        }
        let (rows, _) = self.integer_rows(Some(rhs));
        let n = self.rows;
        let out = bareiss(rows, n)?;
        let nv = self.nvars;
        let width = rhs.cols;
        let data: Vec<RatFunc> = (0..n * width)
            .into_par_iter()
            .map(|idx| {
                let (i, j) = (idx / width, idx % width);
                RatFunc::from_int_parts(Rational::one(), out.rows[i][n + j].clone(), out.pivot.clone())
            })
            .collect();
        Ok(RFMatrix { rows: n, cols: width, nvars: nv, data })
    }

    pub fn inverse(&self) -> Result<RFMatrix, ArithError> {
        if !self.is_square() {
            return Err(ArithError::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        self.solve(&RFMatrix::identity(self.rows, self.nvars))
    }

    /// Solves a possibly rectangular system `self * X = rhs` by elimination
    /// over the rational-function field. Free unknowns are set to zero.
    /// Returns `None` when the system is inconsistent.
    pub fn solve_consistent(&self, rhs: &RFMatrix) -> Result<Option<RFMatrix>, ArithError> {
        if rhs.rows != self.rows || rhs.nvars != self.nvars {
            return Err(ArithError::DimensionMismatch("solve_consistent".into()));
        }
        let (rows, cols, width) = (self.rows, self.cols, rhs.cols);
        let mut aug: Vec<Vec<RatFunc>> = (0..rows)
            .map(|i| {
                (0..cols).map(|j| self.get(i, j).clone()).chain((0..width).map(|j| rhs.get(i, j).clone())).collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !aug[i][c].is_zero()) else { continue };
            aug.swap(p, r);
            let inv = aug[r][c].inverse()?;
            aug[r] = aug[r].iter().map(|x| x * &inv).collect();
            let pivot_row = aug[r].clone();
            aug.par_iter_mut().enumerate().filter(|(i, row)| *i != r && !row[c].is_zero()).for_each(|(_, row)| {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
            });
            pivots.push(c);
            r += 1;
        }
        if aug[r..].iter().any(|row| row[cols..].iter().any(|x| !x.is_zero())) {
            return Ok(None);
        }
        let mut out = RFMatrix::zeros(cols, width, self.nvars);
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..width {
                out.set(pc, j, aug[row][cols + j].clone());
            }
        }
        Ok(Some(out))
    }

    /// Clears denominators row by row. Returns the integer rows (with the
    /// optional right-hand side appended) and, per row, the rational and
    /// polynomial multipliers used.
    #[allow(clippy::type_complexity)]
    fn integer_rows(&self, rhs: Option<&RFMatrix>) -> (Vec<Vec<IntPoly>>, Vec<(Rational, IntPoly)>) {
        let width = self.cols + rhs.map(|r| r.cols).unwrap_or(0);
        let results: Vec<(Vec<IntPoly>, (Rational, IntPoly))> = (0..self.rows)
            .into_par_iter()
            .map(|i| {
                let entries: Vec<&RatFunc> = (0..width)
                    .map(|j| if j < self.cols { self.get(i, j) } else { rhs.unwrap().get(i, j - self.cols) })
                    .collect();
                let mut l = IntPoly::one(self.nvars);
                let mut qd = BigInt::one();
                for e in entries.iter().filter(|e| !e.is_zero()) {
                    l = lcm(&l, e.int_den());
                    qd = qd.lcm(e.scale_factor().denom());
                }
                let row = entries
                    .iter()
                    .map(|e| {
                        if e.is_zero() {
                            return IntPoly::zero(self.nvars);
                        }
                        let s = e.scale_factor();
                        let k = s.numer() * (&qd / s.denom());
                        let cof = l.div_exact(e.int_den()).expect("lcm is a multiple");
                        (e.int_num() * &cof).scale(&k)
                    })
                    .collect();
                (row, (Rational::from_integer(qd), l))
            })
            .collect();
        results.into_iter().unzip()
    }
}

/// Sums rational functions, grouping equal denominators first.
pub fn sum_ratfuncs(nvars: usize, items: Vec<RatFunc>) -> RatFunc {
    let mut items: Vec<RatFunc> = items.into_iter().filter(|x| !x.is_zero()).collect();
    if items.is_empty() {
        return RatFunc::zero(nvars);
    }
    while items.len() > 1 {
        let mut next = Vec::with_capacity(items.len().div_ceil(2));
        let mut it = items.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(&a + &b),
                None => next.push(a),
            }
        }
        items = next;
    }
    items.pop().unwrap()
}

struct BareissOut {
    rows: Vec<Vec<IntPoly>>,
    pivot: IntPoly,
    sign: i64,
}

/// Fraction-free Gauss-Jordan on the first `n` columns; every diagonal entry
/// of the result equals the final pivot, which is `sign * det`.
fn bareiss(mut rows: Vec<Vec<IntPoly>>, n: usize) -> Result<BareissOut, ArithError> {
    let nvars = rows.first().and_then(|r| r.first()).map(|p| p.nvars()).unwrap_or(0);
    let width = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut prev = IntPoly::one(nvars);
    let mut sign = 1i64;
    for k in 0..n {
        let p = (k..n)
            .filter(|&r| !rows[r][k].is_zero())
            .min_by_key(|&r| rows[r][k].len())
            .ok_or(ArithError::SingularMatrix)?;
        // First nonzero pivot row is allowed; choosing the sparsest nonzero
        // entry keeps intermediate sizes down.
        if p != k {
            rows.swap(p, k);
            sign = -sign;
        }
        let pivot_row = rows[k].clone();
        let piv = pivot_row[k].clone();
        let prev_ref = &prev;
        rows.par_iter_mut().enumerate().filter(|(i, _)| *i != k).for_each(|(i, row)| {
            let f = row[k].clone();
            for j in 0..width {
                if j == k {
                    continue;
                }
                if j < k && j != i {
                    continue;
                }
                let mut v = &piv * &row[j];
                if !f.is_zero() && !pivot_row[j].is_zero() {
                    v = &v - &(&f * &pivot_row[j]);
                }
                row[j] = v.div_exact(prev_ref).expect("fraction-free elimination divides exactly");
            }
            row[k] = IntPoly::zero(nvars);
        });
        prev = piv;
    }
    Ok(BareissOut { rows, pivot: prev, sign })
}

impl fmt::Display for RFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for RFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RFMatrix{}x{}\n{}", self.rows, self.cols, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn z(nv: usize, i: usize) -> RatFunc {
        RatFunc::var(nv, i)
    }

    #[test]
    fn inverse_example() {
        let nv = 1;
        let m = RFMatrix::new(2, 2, nv, vec![z(nv, 0), RatFunc::one(nv), RatFunc::zero(nv), RatFunc::one(nv)]);
        let inv = m.inverse().unwrap();
        let zi = z(nv, 0).inverse().unwrap();
        let expected = RFMatrix::new(2, 2, nv, vec![zi.clone(), -zi, RatFunc::zero(nv), RatFunc::one(nv)]);
        assert_eq!(inv, expected);
        assert!(m.try_mul(&inv).unwrap().is_identity());
        assert!(RFMatrix::identity(3, 2).inverse().unwrap().is_identity());
        let ones = RFMatrix::new(2, 2, nv, vec![RatFunc::one(nv); 4]);
        assert_eq!(ones.inverse(), Err(ArithError::SingularMatrix));
    }

    #[test]
    fn determinant_and_solve() {
        let nv = 2;
        let (a, b) = (z(nv, 0), z(nv, 1));
        let m = RFMatrix::new(2, 2, nv, vec![a.clone(), b.clone(), b.clone(), a.clone()]);
        let det = m.determinant().unwrap();
        assert_eq!(det, &(&a * &a) - &(&b * &b));
        let rhs = RFMatrix::new(2, 1, nv, vec![a.clone(), b.clone()]);
        let x = m.solve(&rhs).unwrap();
        assert_eq!(m.try_mul(&x).unwrap(), rhs);
        // Overdetermined but consistent.
        let tall = RFMatrix::new(3, 1, nv, vec![a.clone(), b.clone(), &a + &b]);
        let t_rhs = RFMatrix::new(3, 1, nv, vec![&a * &b, &b * &b, &(&a + &b) * &b]);
        let sol = tall.solve_consistent(&t_rhs).unwrap().unwrap();
        assert_eq!(sol.get(0, 0), &b);
        let bad = RFMatrix::new(3, 1, nv, vec![a.clone(), b.clone(), a.clone()]);
        assert!(bad.solve_consistent(&t_rhs).unwrap().is_none());
    }

    #[test]
    fn rational_matrix_basics() {
        let q = QMatrix::from_ints(&[&[2, 1], &[1, 1]]);
        assert!((&q * &q.inverse().unwrap()) == QMatrix::identity(2));
        assert_eq!(q.determinant(), int(1));
        let sing = QMatrix::from_ints(&[&[1, 2], &[2, 4]]);
        let ns = sing.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(sing.mul_vec(&ns[0]).iter().all(|x| x.is_zero()));
    }
}
