//! Formal expansion of solutions of the first equation around `z_1 = infinity`
//! in the parameter `u = 1 / z_1`, with `z_2..z_n` as parameters.

use num_traits::Zero;

use crate::arith::matrix::sum_ratfuncs;
use crate::arith::{QMatrix, RFMatrix, RatFunc, Rational};
use crate::error::{KzError, Result};
use crate::symmetric::transposition;

/// `T_p = sum_{k=2}^{n} P_{1,k} xi_k^{p+1}`; `xi[0]` is `z_2`.
pub fn t_matrix(n: usize, xi: &[RatFunc], p: i64) -> RFMatrix {
    assert_eq!(xi.len(), n - 1, "need n - 1 parameters");
    assert!(p >= -1);
    let nvars = xi[0].nvars();
    let mut out = RFMatrix::zeros(n, n, nvars);
    for (k, x) in xi.iter().enumerate() {
        let w = x.pow((p + 1) as i32).expect("nonnegative power");
        let t = RFMatrix::from_qmatrix(&transposition(n, 1, k + 2), nvars).scale(&w);
        out = out.try_add(&t).expect("same shape");
    }
    out
}

/// `T_{-1} = (n - 2) I + S`, with `S` having ones in the first row and column
/// off the corner and `2 - n` in the corner.
pub fn t_minus1(n: usize) -> QMatrix {
    let mut m = QMatrix::zeros(n, n);
    for k in 2..=n {
        m = &m + &transposition(n, 1, k);
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigensystem {
    /// All-ones vector, eigenvalue `n - 1`.
    pub u1: Vec<Rational>,
    /// Differences `e_k - e_{k+1}` for `k = 2..n-1`, eigenvalue `n - 2`.
    pub u2basis: Vec<Vec<Rational>>,
    /// `[n - 1, -1, ..., -1]`, eigenvalue `-1`.
    pub u3: Vec<Rational>,
    /// `(n - 1, n - 2, ..., n - 2, -1)`, in the order u1, u2basis, u3.
    pub eigenvalues: Vec<i64>,
}

fn ri(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

pub fn t_minus1_eigensystem(n: usize) -> Result<Eigensystem> {
    if n < 3 {
        return Err(KzError::InvalidIndices(format!("eigensystem needs n >= 3, got {n}")));
    }
    let ni = n as i64;
    let u1 = vec![ri(1); n];
    let u2basis: Vec<Vec<Rational>> = (1..n - 1)
        .map(|k| {
            let mut v = vec![ri(0); n];
            v[k] = ri(1);
            v[k + 1] = ri(-1);
            v
        })
        .collect();
    let mut u3 = vec![ri(-1); n];
    u3[0] = ri(ni - 1);
    let mut eigenvalues = vec![ni - 1];
    eigenvalues.extend(std::iter::repeat_n(ni - 2, n - 2));
    eigenvalues.push(-1);

    let t = t_minus1(n);
    let vectors: Vec<&Vec<Rational>> = std::iter::once(&u1).chain(u2basis.iter()).chain(std::iter::once(&u3)).collect();
    for (v, &lam) in vectors.iter().zip(&eigenvalues) {
        let tv = t.mul_vec(v);
        let expected: Vec<Rational> = v.iter().map(|x| x * ri(lam)).collect();
        if tv != expected {
            return Err(KzError::EigencheckFailed(format!("eigenvalue {lam}")));
        }
    }
    for v in &u2basis {
        if dot(v, &u1) != ri(0) || dot(v, &u3) != ri(0) {
            return Err(KzError::EigencheckFailed("u2 vector not orthogonal to u1, u3".into()));
        }
    }
    let basis = QMatrix::from_rows(&vectors.iter().map(|v| (*v).clone()).collect::<Vec<_>>());
    if basis.determinant().is_zero() {
        return Err(KzError::EigencheckFailed("eigenvectors are dependent".into()));
    }
    Ok(Eigensystem { u1, u2basis, u3, eigenvalues })
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Coefficients `G_s, G_{s+1}, ...` of `sum_q G_q u^q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesState {
    pub lowest: i64,
    pub coeffs: Vec<Vec<RatFunc>>,
    /// Indices at which the recursion matrix was singular.
    pub resonant: Vec<i64>,
}

impl SeriesState {
    pub fn seed(lowest: i64, g: Vec<RatFunc>) -> Self {
        SeriesState { lowest, coeffs: vec![g], resonant: Vec::new() }
    }

    pub fn highest(&self) -> i64 {
        self.lowest + self.coeffs.len() as i64 - 1
    }

    /// `G_index`, zero outside the stored range.
    pub fn coeff(&self, index: i64) -> Option<&Vec<RatFunc>> {
        if index < self.lowest {
            return None;
        }
        self.coeffs.get((index - self.lowest) as usize)
    }
}

/// Recursion driver with cached parameter powers.
pub struct SeriesEngine {
    n: usize,
    rho: i64,
    nvars: usize,
    /// `powers[k][p] = xi_k^p`.
    powers: Vec<Vec<RatFunc>>,
}

impl SeriesEngine {
    pub fn new(n: usize, rho: i64, xi: &[RatFunc]) -> Result<Self> {
        if n < 2 {
            return Err(KzError::InvalidIndices(format!("series engine needs n >= 2, got {n}")));
        }
        if xi.len() != n - 1 {
            return Err(KzError::InvalidIndices(format!("expected {} parameters, got {}", n - 1, xi.len())));
        }
        let nvars = xi[0].nvars();
        let powers = xi.iter().map(|x| vec![RatFunc::one(nvars), x.clone()]).collect();
        Ok(SeriesEngine { n, rho, nvars, powers })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    fn ensure_powers(&mut self, p: usize) {
        for row in &mut self.powers {
            while row.len() <= p {
                let next = &row[row.len() - 1] * &row[1];
                row.push(next);
            }
        }
    }

    /// Indices `q + 1` at which `(q + 1) + rho * lambda` vanishes.
    pub fn predicted_resonances(&self) -> Vec<i64> {
        let n = self.n as i64;
        let lams: &[i64] = if n == 2 { &[1, -1] } else { &[n - 1, n - 2, -1] };
        let mut v: Vec<i64> = lams.iter().map(|&lam| -self.rho * lam).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Appends `G_{q+1}` solving
    /// `[(q+1) + rho T_{-1}] G_{q+1} = -rho sum_{j >= 0, j + l = q} T_j G_l`.
    pub fn advance(&mut self, state: &SeriesState) -> Result<SeriesState> {
        let n = self.n;
        let q = state.highest();
        let q1 = q + 1;
        let s = state.lowest;
        self.ensure_powers((q - s + 1) as usize);
        let mut sums: Vec<Vec<RatFunc>> = vec![Vec::new(); n];
        for l in s..=q {
            let j = (q - l) as usize;
            let g = state.coeff(l).unwrap();
            if g.iter().all(|x| x.is_zero()) {
                continue;
            }
            // T_j g = sum_k xi_k^{j+1} * (g with coordinates 1 and k swapped)
            for k in 0..n - 1 {
                let w = &self.powers[k][j + 1];
                for (r, acc) in sums.iter_mut().enumerate() {
                    let src = if r == 0 {
                        k + 1
                    } else if r == k + 1 {
                        0
                    } else {
                        r
                    };
                    if !g[src].is_zero() {
                        acc.push(w * &g[src]);
                    }
                }
            }
        }
        let minus_rho = Rational::from_integer((-self.rho).into());
        let rhs: Vec<RatFunc> = sums.into_iter().map(|t| sum_ratfuncs(self.nvars, t).scale(&minus_rho)).collect();
        let (g, resonant) = self.solve_shifted(q1, &rhs)?;
        let mut out = state.clone();
        out.coeffs.push(g);
        if resonant {
            out.resonant.push(q1);
        }
        Ok(out)
    }

    /// Runs `advance` until `G_upto` is stored.
    pub fn run(&mut self, mut state: SeriesState, upto: i64) -> Result<SeriesState> {
        while state.highest() < upto {
            state = self.advance(&state)?;
        }
        Ok(state)
    }

    /// Solves `[(q1) + rho T_{-1}] x = rhs` through the orthogonal eigen
    /// decomposition, keeping kernel components at zero.
    fn solve_shifted(&self, q1: i64, rhs: &[RatFunc]) -> Result<(Vec<RatFunc>, bool)> {
        let n = self.n;
        let nv = self.nvars;
        let ni = n as i64;
        // Component along u1 and along u3.
        let total = sum_ratfuncs(nv, rhs.to_vec());
        let a = total.scale(&Rational::new(1.into(), ni.into()));
        let u3dot = sum_ratfuncs(
            nv,
            std::iter::once(rhs[0].scale(&ri(ni - 1))).chain(rhs[1..].iter().map(|x| -x.clone())).collect(),
        );
        let b = u3dot.scale(&Rational::new(1.into(), (ni * (ni - 1)).into()));
        // Remainder lies in the u2 space.
        let w: Vec<RatFunc> = (0..n)
            .map(|i| {
                let u3i = if i == 0 { ri(ni - 1) } else { ri(-1) };
                &(&rhs[i] - &a) - &b.scale(&u3i)
            })
            .collect();

        let mut resonant = false;
        let mut factor = |lam: i64, comp_zero: bool| -> Result<Option<Rational>> {
            let d = q1 + self.rho * lam;
            if d == 0 {
                resonant = true;
                if !comp_zero {
                    return Err(KzError::ResonanceObstruction { index: q1 });
                }
                Ok(None)
            } else {
                Ok(Some(Rational::new(1.into(), d.into())))
            }
        };
        let f1 = factor(ni - 1, a.is_zero())?;
        // For n = 2 the middle eigenspace is empty.
        let f2 = if n == 2 { Some(ri(0)) } else { factor(ni - 2, w.iter().all(|x| x.is_zero()))? };
        let f3 = factor(-1, b.is_zero())?;

        let a = f1.map(|f| a.scale(&f)).unwrap_or_else(|| RatFunc::zero(nv));
        let b = f3.map(|f| b.scale(&f)).unwrap_or_else(|| RatFunc::zero(nv));
        let x = (0..n)
            .map(|i| {
                let wi = f2.as_ref().map(|f| w[i].scale(f)).unwrap_or_else(|| RatFunc::zero(nv));
                let u3i = if i == 0 { ri(ni - 1) } else { ri(-1) };
                &(&a + &wi) + &b.scale(&u3i)
            })
            .collect();
        Ok((x, resonant))
    }
}

/// One recursion step, without caching.
pub fn advance_recursion(state: &SeriesState, n: usize, rho: i64, xi: &[RatFunc]) -> Result<SeriesState> {
    SeriesEngine::new(n, rho, xi)?.advance(state)
}

/// Converts a constant vector to rational functions in `nvars` variables.
pub fn const_vector(v: &[Rational], nvars: usize) -> Vec<RatFunc> {
    v.iter().map(|x| RatFunc::constant(nvars, x.clone())).collect()
}

/// `(q1 + rho T_{-1}) x` for checking solutions of the recursion.
pub fn apply_shifted(n: usize, rho: i64, q1: i64, x: &[RatFunc]) -> Vec<RatFunc> {
    let nv = x[0].nvars();
    let m = &QMatrix::identity(n).scale(&ri(q1)) + &t_minus1(n).scale(&ri(rho));
    let rf = RFMatrix::from_qmatrix(&m, nv);
    rf.mul_vec(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::expansion::expand_at_infinity;
    use crate::arith::int;

    fn symbolic_xi(n: usize) -> Vec<RatFunc> {
        (1..n).map(|k| RatFunc::var(n, k)).collect()
    }

    #[test]
    fn t_minus1_structure() {
        let xi = symbolic_xi(3);
        let t = t_matrix(3, &xi, -1);
        assert_eq!(t, RFMatrix::from_qmatrix(&QMatrix::from_ints(&[&[0, 1, 1], &[1, 1, 0], &[1, 0, 1]]), 3));
        let t2 = t_minus1(2);
        assert_eq!(t2, transposition(2, 1, 2));
        for n in 3..=8 {
            let t = t_minus1(n);
            // (n - 2) I + S: S has ones in first row/col off the corner, corner 2 - n.
            let mut s = QMatrix::zeros(n, n);
            s.set(0, 0, ri(2 - n as i64));
            for k in 1..n {
                s.set(0, k, ri(1));
                s.set(k, 0, ri(1));
            }
            assert_eq!(t, &QMatrix::identity(n).scale(&ri(n as i64 - 2)) + &s);
            assert!(t_minus1_eigensystem(n).is_ok());
        }
    }

    #[test]
    fn eigensystem_examples() {
        let e = t_minus1_eigensystem(3).unwrap();
        assert_eq!(e.u3, vec![int(2), int(-1), int(-1)]);
        assert_eq!(e.u2basis, vec![vec![int(0), int(1), int(-1)]]);
        assert_eq!(e.eigenvalues, vec![2, 1, -1]);
        assert_eq!(t_minus1_eigensystem(4).unwrap().eigenvalues, vec![3, 2, 2, -1]);
        let tr: i64 = e.eigenvalues.iter().sum();
        assert_eq!(ri(tr), t_minus1(3).trace());
    }

    #[test]
    fn symmetric_seed_reproduces_closed_form() {
        let n = 3;
        let xi = symbolic_xi(n);
        let mut eng = SeriesEngine::new(n, -1, &xi).unwrap();
        let seed = const_vector(&t_minus1_eigensystem(n).unwrap().u1, n);
        let st = eng.run(SeriesState::seed(2, seed), 6).unwrap();
        let f = (&(RatFunc::var(n, 0) - RatFunc::var(n, 1)) * &(RatFunc::var(n, 0) - RatFunc::var(n, 2)))
            .inverse()
            .unwrap();
        let l = expand_at_infinity(&f, 0, 5).unwrap();
        assert_eq!(l.lowest, 2);
        for q in 2..=6 {
            for x in st.coeff(q).unwrap() {
                assert_eq!(x, &l.coeffs[(q - 2) as usize]);
            }
        }
        assert_eq!(st.coeff(3).unwrap()[0], &RatFunc::var(n, 1) + &RatFunc::var(n, 2));
    }

    #[test]
    fn type1_seed_passes_resonance() {
        let n = 3;
        let xi = symbolic_xi(n);
        let mut eng = SeriesEngine::new(n, -1, &xi).unwrap();
        assert_eq!(eng.predicted_resonances(), vec![-1, 1, 2]);
        let seed = const_vector(&t_minus1_eigensystem(n).unwrap().u2basis[0], n);
        let st = eng.run(SeriesState::seed(1, seed), 4).unwrap();
        assert_eq!(st.resonant, vec![2]);
        let zero = SeriesState::seed(0, vec![RatFunc::zero(n); n]);
        let st0 = eng.run(zero, 5).unwrap();
        assert!(st0.coeffs.iter().flatten().all(|x| x.is_zero()));
    }

    #[test]
    fn non_resonant_step_solves_recursion() {
        let n = 4;
        let xi = symbolic_xi(n);
        let rho = -2;
        let mut eng = SeriesEngine::new(n, rho, &xi).unwrap();
        let seed = const_vector(&t_minus1_eigensystem(n).unwrap().u3, n);
        let st = eng.run(SeriesState::seed(-2, seed), 1).unwrap();
        // Substitute G_{-1} back into the equation.
        let g = st.coeff(-1).unwrap();
        let lhs = apply_shifted(n, rho, -1, g);
        let t0 = t_matrix(n, &xi, 0);
        let rhs: Vec<RatFunc> = t0.mul_vec(st.coeff(-2).unwrap()).iter().map(|x| x.scale(&ri(-rho))).collect();
        assert_eq!(lhs, rhs);
    }
}
