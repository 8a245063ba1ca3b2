//! `r_ℓ/(2ℓ+1)` from purely real coefficient formulas.
//!
//! Putting `t = β` in `(−ℓ−t)_k = Σ α(k,n) tⁿ` and multiplying by
//! `(i·s)^{2ℓ+1}` separates every weighted Pochhammer term into a real part
//! `A_k` (odd `n`) and an imaginary part `B_k` (even `n`). Together with the
//! factor-omitted products behind `Σ 1/(m−β)` this gives
//!
//! ```text
//! r_ℓ/(2ℓ+1) = Σ_{j=1}^{ℓ} (c_j + d_j) λ^j
//! ```
//!
//! where `d_j` collects the `A_k` contributions and `c_j` comes from the
//! `γ(m,n)` table. The imaginary half yields an identity that must hold
//! exactly; [`imag_identity_residual`] computes its residual.

use std::collections::BTreeMap;

use crate::combinat::{alpha_table, factorial, gamma_table, AlphaTable, GammaTable};
use crate::direct::k_poly;
use crate::exactnum::{Gaussian, Rational};
use crate::laurent::{LambdaPoly, LaurentPoly, Monomial};

#[derive(Debug, Clone, PartialEq)]
pub struct RealFormResult {
    pub ell: u32,
    /// `c_j` for `j = 1..=ℓ`, each a polynomial in `a`.
    pub c: BTreeMap<u32, LambdaPoly>,
    /// `d_j` for `j = 1..=ℓ`, each a polynomial in `a`.
    pub d: BTreeMap<u32, LambdaPoly>,
    pub r_over: LambdaPoly,
}

fn sign(p: u32) -> Rational {
    if p.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn half_pow(n: u32) -> Rational {
    Rational::frac(1, 2).pow(n)
}

/// `2^k / ((2ℓ+1)!·k!·(2ℓ+1−k))`
fn pochhammer_weight(ell: u32, k: u32) -> Rational {
    let n = 2 * ell + 1;
    let denom = factorial(n) * factorial(k) * Rational::from((n - k) as i64);
    Rational::from(2).pow(k) * denom.recip().expect("nonzero weight")
}

/// `A_k = (−1)^{ℓ+1} Σ_{j=0}^{⌊(k−1)/2⌋} (−1)^j α(k,2j+1) (a/2)^{2j+1} λ^{ℓ−j}`
pub fn a_k(ell: u32, k: u32, alpha: &AlphaTable) -> LaurentPoly {
    if k == 0 {
        return LaurentPoly::zero();
    }
    let k2 = (k - 1) / 2;
    let terms = (0..=k2).map(|j| {
        let c = sign(ell + 1 + j) * alpha.get(k, 2 * j + 1) * half_pow(2 * j + 1);
        (Monomial::new(2 * j + 1, 2 * (ell - j) as i32), Gaussian::real(c))
    });
    LaurentPoly::from_terms(terms)
}

/// `B_k = (−1)^ℓ Σ_{j=0}^{⌊k/2⌋} (−1)^j α(k,2j) (a/2)^{2j} λ^{ℓ−j} √λ`
pub fn b_k(ell: u32, k: u32, alpha: &AlphaTable) -> LaurentPoly {
    let k1 = k / 2;
    let terms = (0..=k1).map(|j| {
        let c = sign(ell + j) * alpha.get(k, 2 * j) * half_pow(2 * j);
        (Monomial::new(2 * j, 2 * (ell as i32 - j as i32) + 1), Gaussian::real(c))
    });
    LaurentPoly::from_terms(terms)
}

/// `d_j = (a/2) Σ_{k=2(ℓ−j)+1}^{2ℓ} 2^k (−1)^{j+1} (a/2)^{2(ℓ−j)} α(k, 2(ℓ−j)+1) / ((2ℓ+1)!k!(2ℓ+1−k))`
pub fn d_coeffs(ell: u32, alpha: &AlphaTable) -> BTreeMap<u32, LambdaPoly> {
    (1..=ell)
        .map(|j| {
            let odd = 2 * (ell - j) + 1;
            let sum: Rational = (odd..=2 * ell)
                .map(|k| pochhammer_weight(ell, k) * alpha.get(k, odd))
                .sum();
            let coeff = sum * sign(j + 1) * half_pow(odd);
            (j, LambdaPoly::monomial(0, odd, coeff))
        })
        .collect()
}

/// `−a·4^ℓ(ℓ!)²/[(2ℓ+1)!]²`
fn c_prefactor(ell: u32) -> Rational {
    let top = Rational::from(4).pow(ell) * factorial(ell).pow(2);
    -(top * factorial(2 * ell + 1).pow(2).recip().expect("factorial is nonzero"))
}

/// `c_j = −a·4^ℓ(ℓ!)²/[(2ℓ+1)!]² · Σ_{m=1}^{ℓ} γ(m, j−1)/m`
pub fn c_coeffs(ell: u32, gamma: &GammaTable) -> BTreeMap<u32, LambdaPoly> {
    let pre = c_prefactor(ell);
    (1..=ell)
        .map(|j| {
            let sum: LambdaPoly = (1..=ell)
                .map(|m| gamma.get(m, j - 1).scale(&Rational::frac(1, m as i64)))
                .sum();
            (j, sum.shift(0, 1).scale(&pre))
        })
        .collect()
}

pub fn r_real(ell: u32) -> RealFormResult {
    let alpha = alpha_table(ell);
    let gamma = gamma_table(ell);
    let c = c_coeffs(ell, &gamma);
    let d = d_coeffs(ell, &alpha);
    let r_over = (1..=ell).map(|j| (&c[&j] + &d[&j]).shift(j, 0)).sum();
    RealFormResult { ell, c, d, r_over }
}

/// `∏_{j≠m} (4s²j² + a²)` over `j = 1..=ℓ`, in `a` and `s`.
fn omitted_4j2_product(ell: u32, m: u32) -> LaurentPoly {
    (1..=ell)
        .filter(|&j| j != m)
        .map(|j| {
            LambdaPoly::from_terms([
                (1, 0, Rational::from(4 * (j as i64) * (j as i64))),
                (0, 2, Rational::one()),
            ])
        })
        .fold(LambdaPoly::one(), |acc, f| &acc * &f)
        .to_laurent()
}

/// Closed real and imaginary parts of `−a·k_ℓ·Σ_{m=1}^{ℓ} 1/(m−β)`:
///
/// ```text
/// real = −a/[(2ℓ+1)!]² · Σ_m 4s²m · ∏_{j≠m}(4s²j²+a²)
/// imag = −2a²s/[(2ℓ+1)!]² · Σ_m ∏_{j≠m}(4s²j²+a²)
/// ```
pub fn factor_sum_parts(ell: u32) -> (LaurentPoly, LaurentPoly) {
    let inv = factorial(2 * ell + 1).pow(2).recip().expect("factorial is nonzero");
    let mut real = LaurentPoly::zero();
    let mut imag = LaurentPoly::zero();
    for m in 1..=ell {
        let prod = omitted_4j2_product(ell, m);
        real = &real + &prod.shift(1, 2).scale_rat(&(Rational::from(-4 * m as i64) * &inv));
        imag = &imag + &prod.shift(2, 1).scale_rat(&(Rational::from(-2) * &inv));
    }
    (real, imag)
}

/// Residual of the imaginary-part identity
///
/// ```text
/// s·k_ℓ = −2a²s/[(2ℓ+1)!]² Σ_m ∏_{j≠m}(4s²j²+a²) + Σ_k 2^k B_k/((2ℓ+1)!k!(2ℓ+1−k))
/// ```
///
/// as left side minus right side; identically zero when the identity holds.
pub fn imag_identity_residual(ell: u32) -> LaurentPoly {
    let alpha = alpha_table(ell);
    let lhs = k_poly(ell).to_laurent().shift(0, 1);
    let (_, factor_imag) = factor_sum_parts(ell);
    let b_sum: LaurentPoly = (0..=2 * ell)
        .map(|k| b_k(ell, k, &alpha).scale_rat(&pochhammer_weight(ell, k)))
        .sum();
    &(&lhs - &factor_imag) - &b_sum
}

/// Real part of the Pochhammer sum, `Σ_k 2^k A_k/((2ℓ+1)!k!(2ℓ+1−k))`.
pub fn a_sum(ell: u32) -> LaurentPoly {
    let alpha = alpha_table(ell);
    (1..=2 * ell)
        .map(|k| a_k(ell, k, &alpha).scale_rat(&pochhammer_weight(ell, k)))
        .sum()
}
