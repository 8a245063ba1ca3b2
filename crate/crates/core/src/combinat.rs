//! Factorials, harmonic numbers, shifted Pochhammer expansions and the
//! coefficient tables they induce.
//!
//! The `α` table holds the coefficients of `(−ℓ−t)_k = Σ α(k,n) tⁿ` for
//! `0 ≤ k ≤ 2ℓ`; the `γ` table holds the coefficients of the products
//! `∏_{j≠m} (λ + a²/(4j²)) = Σ γ(m,n) λⁿ`. Both are built by multiplying in
//! one linear factor at a time.

use std::ops::{Add, Mul};

use crate::exactnum::Rational;
use crate::laurent::{LambdaPoly, LaurentPoly};

pub fn factorial(n: u32) -> Rational {
    (1..=n as i64).map(Rational::from).product()
}

/// `H_n = Σ_{j=1}^{n} 1/j`, with `H_0 = 0`.
pub fn harmonic(n: u32) -> Rational {
    (1..=n as i64).map(|j| Rational::frac(1, j)).sum()
}

/// Dense univariate polynomial in `t`, coefficients ascending.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn one() -> Self {
        UniPoly { coeffs: vec![Rational::one()] }
    }

    /// `c + t`
    pub fn monic_linear(c: Rational) -> Self {
        UniPoly::new(vec![c, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `tⁿ`; zero past the degree.
    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
    }

    /// Multiplies in the linear factor `(c0 + c1·t)`.
    pub fn mul_linear(&self, c0: &Rational, c1: &Rational) -> UniPoly {
        let mut out = vec![Rational::zero(); self.coeffs.len() + 1];
        for (n, c) in self.coeffs.iter().enumerate() {
            out[n] += c * c0;
            out[n + 1] += c * c1;
        }
        UniPoly::new(out)
    }

    /// Substitutes a Laurent polynomial for `t` (Horner).
    pub fn compose(&self, x: &LaurentPoly) -> LaurentPoly {
        self.coeffs.iter().rev().fold(LaurentPoly::zero(), |acc, c| {
            let mut next = &acc * x;
            next.add_term(crate::laurent::Monomial::ONE, c.clone().into());
            next
        })
    }
}

impl Add<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Mul<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return UniPoly::default();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in rhs.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        UniPoly::new(out)
    }
}

/// `g_k(t) = (−ℓ−t)_k = ∏_{j=0}^{k−1} (−ℓ+j−t)`, expanded. Any `k` is
/// accepted; the tables only use `k ≤ 2ℓ`.
pub fn pochhammer_shifted(ell: u32, k: u32) -> UniPoly {
    let minus_one = -Rational::one();
    (0..k as i64).fold(UniPoly::one(), |acc, j| {
        acc.mul_linear(&Rational::from(j - ell as i64), &minus_one)
    })
}

/// `∏_{m} (m − t)` over `m ∈ −ℓ..=ℓ` with `m ≠ skip`. With `skip = None`
/// this is `(−ℓ−t)_{2ℓ+1}`.
pub fn product_omitting(ell: u32, skip: Option<i64>) -> UniPoly {
    let minus_one = -Rational::one();
    let ell = ell as i64;
    (-ell..=ell)
        .filter(|m| Some(*m) != skip)
        .fold(UniPoly::one(), |acc, m| acc.mul_linear(&Rational::from(m), &minus_one))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaTable {
    ell: u32,
    rows: Vec<UniPoly>,
}

impl AlphaTable {
    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// `α(k, n)`; zero for `n > k`.
    pub fn get(&self, k: u32, n: u32) -> Rational {
        self.rows[k as usize].coeff(n as usize)
    }

    /// Row `k` as `[α(k,0), …, α(k,k)]`.
    pub fn row(&self, k: u32) -> Vec<Rational> {
        (0..=k).map(|n| self.get(k, n)).collect()
    }

    pub fn max_k(&self) -> u32 {
        2 * self.ell
    }
}

/// Rows `k = 0..=2ℓ`, each built from the previous by one more factor.
pub fn alpha_table(ell: u32) -> AlphaTable {
    let minus_one = -Rational::one();
    let mut rows = Vec::with_capacity(2 * ell as usize + 1);
    let mut g = UniPoly::one();
    for k in 0..=2 * ell {
        if k > 0 {
            g = g.mul_linear(&Rational::from(k as i64 - 1 - ell as i64), &minus_one);
        }
        rows.push(g.clone());
    }
    AlphaTable { ell, rows }
}

/// Elementary symmetric polynomials `e_0..=e_k` of `roots`, by the Vieta
/// recurrence (multiply out `∏ (x − r)` one root at a time).
pub fn elementary_symmetric(roots: &[Rational]) -> Vec<Rational> {
    let mut e = vec![Rational::one()];
    for r in roots {
        e.push(Rational::zero());
        for m in (1..e.len()).rev() {
            let add = r * &e[m - 1];
            e[m] += add;
        }
    }
    e
}

/// Coefficients of `g_k(t)` (ascending in `t`) via
/// `g_k(t) = (−1)^k (t^k + Σ_m a_m t^{k−m})`, `a_m = (−1)^m e_m(t_1..t_k)`,
/// `t_j = j − 1 − ℓ`.
pub fn alpha_via_elem_sym(ell: u32, k: u32) -> Vec<Rational> {
    let roots: Vec<Rational> = (1..=k as i64).map(|j| Rational::from(j - 1 - ell as i64)).collect();
    let e = elementary_symmetric(&roots);
    let sign = |p: u32| if p.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
    // coefficient of t^{k−m} inside the bracket is a_m (a_0 = 1)
    (0..=k)
        .map(|n| {
            let m = (k - n) as usize;
            let a_m = sign(m as u32) * &e[m];
            sign(k) * a_m
        })
        .collect()
}

/// `γ(m, n)` for `m = 1..=ℓ`, `n = 0..ℓ−1`; every entry is a polynomial in
/// `a` alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaTable {
    ell: u32,
    rows: Vec<LambdaPoly>,
}

impl GammaTable {
    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn get(&self, m: u32, n: u32) -> LambdaPoly {
        self.rows[m as usize - 1].lambda_coeff(n)
    }

    /// The whole factor-omitted product for `m`, as a polynomial in `λ`.
    pub fn product(&self, m: u32) -> &LambdaPoly {
        &self.rows[m as usize - 1]
    }
}

/// `λ + a²/(4j²)`
pub fn shifted_lambda_factor(j: u32) -> LambdaPoly {
    LambdaPoly::from_terms([
        (1, 0, Rational::one()),
        (0, 2, Rational::frac(1, 4 * (j as i64) * (j as i64))),
    ])
}

pub fn gamma_table(ell: u32) -> GammaTable {
    let rows = (1..=ell)
        .map(|m| {
            (1..=ell)
                .filter(|&j| j != m)
                .fold(LambdaPoly::one(), |acc, j| &acc * &shifted_lambda_factor(j))
        })
        .collect();
    GammaTable { ell, rows }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn ints(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn factorials_and_harmonics() {
        assert_eq!(factorial(0), q(1, 1));
        assert_eq!(factorial(5), q(120, 1));
        assert_eq!(harmonic(0), Rational::zero());
        assert_eq!(harmonic(2), q(3, 2));
        assert_eq!(harmonic(4), q(25, 12));
    }

    #[test]
    fn shifted_pochhammer_small_cases() {
        assert_eq!(pochhammer_shifted(1, 2).coeffs(), ints(&[0, 1, 1]).as_slice());
        assert_eq!(pochhammer_shifted(2, 1).coeffs(), ints(&[-2, -1]).as_slice());
        assert_eq!(pochhammer_shifted(7, 0), UniPoly::one());
    }

    #[test]
    fn alpha_rows() {
        let t = alpha_table(1);
        assert_eq!(t.row(2), ints(&[0, 1, 1]));
        assert_eq!(t.get(0, 0), q(1, 1));
        assert_eq!(t.get(1, 3), Rational::zero());
        assert_eq!(alpha_table(2).get(4, 0), Rational::zero());
    }

    #[test]
    fn alpha_constant_term_is_pochhammer_of_minus_ell() {
        for ell in 0..8u32 {
            let t = alpha_table(ell);
            for k in 0..=2 * ell {
                let direct: Rational = (0..k as i64).map(|j| Rational::from(j - ell as i64)).product();
                assert_eq!(t.get(k, 0), direct, "ell={ell} k={k}");
            }
        }
    }

    #[test]
    fn row_sum_is_value_at_one() {
        // Σ_n α(k,n) = g_k(1) = (−ℓ−1)_k
        for ell in 0..6u32 {
            let t = alpha_table(ell);
            for k in 0..=2 * ell {
                let sum: Rational = t.row(k).into_iter().sum();
                let direct: Rational = (0..k as i64).map(|j| Rational::from(j - ell as i64 - 1)).product();
                assert_eq!(sum, direct);
            }
        }
    }

    #[test]
    fn elementary_symmetric_route() {
        assert_eq!(alpha_via_elem_sym(1, 2), ints(&[0, 1, 1]));
        assert_eq!(alpha_via_elem_sym(5, 0), ints(&[1]));
        let e = elementary_symmetric(&ints(&[-1, 0]));
        assert_eq!(e, ints(&[1, -1, 0]));
        for ell in 0..=12u32 {
            let t = alpha_table(ell);
            for k in 0..=2 * ell {
                assert_eq!(alpha_via_elem_sym(ell, k), t.row(k), "ell={ell} k={k}");
            }
        }
    }

    #[test]
    fn gamma_small_cases() {
        let g1 = gamma_table(1);
        assert_eq!(g1.get(1, 0), LambdaPoly::one());
        let g2 = gamma_table(2);
        assert_eq!(g2.get(1, 0), LambdaPoly::monomial(0, 2, q(1, 16)));
        assert_eq!(g2.get(1, 1), LambdaPoly::one());
        assert_eq!(g2.get(2, 0), LambdaPoly::monomial(0, 2, q(1, 4)));
        assert_eq!(g2.get(2, 1), LambdaPoly::one());
    }

    #[test]
    fn gamma_structure() {
        for ell in 1..8u32 {
            let g = gamma_table(ell);
            for m in 1..=ell {
                assert_eq!(g.get(m, ell - 1), LambdaPoly::one());
                let c: Rational = (1..=ell)
                    .filter(|&j| j != m)
                    .map(|j| q(1, 4 * (j * j) as i64))
                    .product();
                assert_eq!(g.get(m, 0), LambdaPoly::monomial(0, 2 * (ell - 1), c));
            }
        }
    }

    #[test]
    fn omitted_product_relates_to_pochhammer() {
        // (−ℓ−t)_{2ℓ+1} = ∏_{m=−ℓ}^{ℓ} (m − t)
        for ell in 0..6u32 {
            assert_eq!(product_omitting(ell, None), pochhammer_shifted(ell, 2 * ell + 1));
            for j in 1..=ell as i64 {
                let back = product_omitting(ell, Some(j))
                    .mul_linear(&Rational::from(j), &-Rational::one());
                assert_eq!(back, product_omitting(ell, None));
            }
        }
    }
}
