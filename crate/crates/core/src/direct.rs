//! `r_ℓ/(2ℓ+1)` straight from its defining identity, in exact Laurent
//! arithmetic over `Q(i)`.
//!
//! With `β = i·a/(2s)` and `b = −a·k_ℓ = K_ℓ/(2ℓ+1)`:
//!
//! ```text
//! r_ℓ/(2ℓ+1) = b·Σ_{j=1}^{ℓ} 1/(j−β) + c − i·s·k_ℓ
//! ```
//!
//! Since `(−ℓ−β)_{2ℓ+1} = ∏_{m=−ℓ}^{ℓ} (m−β)` contains every `(j−β)`, each
//! quotient `b/(j−β)` is the product with that factor left out, so no
//! rational functions are ever formed.

use thiserror::Error;

use crate::combinat::{factorial, harmonic, pochhammer_shifted, product_omitting};
use crate::exactnum::{Gaussian, Rational};
use crate::laurent::{LambdaPoly, LaurentPoly, Monomial, PolyError};

#[derive(Debug, Clone, PartialEq, Error)]
#[error("ℓ = {ell}: the real/imaginary decomposition failed: {source}")]
pub struct DirectError {
    pub ell: u32,
    pub source: PolyError,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirectResult {
    pub ell: u32,
    pub k_poly: LambdaPoly,
    /// `r_ℓ/(2ℓ+1)`
    pub r_over: LambdaPoly,
    pub p_poly: LambdaPoly,
    /// Imaginary part of the assembled right-hand side; zero on success.
    pub imag_residual: LaurentPoly,
}

fn factor_4j2_lambda_plus_a2(j: u32) -> LambdaPoly {
    LambdaPoly::from_terms([
        (1, 0, Rational::from(4 * (j as i64) * (j as i64))),
        (0, 2, Rational::one()),
    ])
}

/// `∏_{j=1}^{ℓ} (4λj² + a²)`
pub fn product_4j2(ell: u32) -> LambdaPoly {
    (1..=ell).fold(LambdaPoly::one(), |acc, j| &acc * &factor_4j2_lambda_plus_a2(j))
}

fn odd_factorial_sq(ell: u32) -> Rational {
    factorial(2 * ell + 1).pow(2)
}

/// `k_ℓ(λ) = ∏_{j=1}^{ℓ}(4λj² + a²) / [(2ℓ+1)!]²`, so `k_0 = 1`.
pub fn k_poly(ell: u32) -> LambdaPoly {
    product_4j2(ell).scale(&odd_factorial_sq(ell).recip().expect("factorial is nonzero"))
}

/// `K_ℓ = −a/((2ℓ+1)!(2ℓ)!) · ∏(4λj² + a²)`
pub fn big_k_product(ell: u32) -> LambdaPoly {
    let denom = factorial(2 * ell + 1) * factorial(2 * ell);
    product_4j2(ell).shift(0, 1).scale(&-denom.recip().expect("factorial is nonzero"))
}

/// `(−2i·s)^{2ℓ+1}`
fn minus_2is_pow(ell: u32) -> LaurentPoly {
    LaurentPoly::term(Monomial::new(0, 1), Gaussian::imag(Rational::from(-2))).pow(2 * ell + 1)
}

/// `K_ℓ = (−2i·s)^{2ℓ+1} (−ℓ−β)_{2ℓ+1} / ((2ℓ)!(2ℓ+1)!)`
pub fn big_k_pochhammer(ell: u32) -> LaurentPoly {
    let g = pochhammer_shifted(ell, 2 * ell + 1).compose(&LaurentPoly::beta());
    let denom = factorial(2 * ell) * factorial(2 * ell + 1);
    (&minus_2is_pow(ell) * &g).scale_rat(&denom.recip().expect("factorial is nonzero"))
}

/// `b = −a·k_ℓ`, embedded with `λ ↦ s²`.
pub fn term_b(ell: u32) -> LaurentPoly {
    k_poly(ell).shift(0, 1).to_laurent().scale_rat(&-Rational::one())
}

/// `b·Σ_{j=1}^{ℓ} 1/(j−β)`, each summand formed by factor omission.
pub fn sum_b_over_factors(ell: u32) -> LaurentPoly {
    let prefactor = minus_2is_pow(ell)
        .scale_rat(&odd_factorial_sq(ell).recip().expect("factorial is nonzero"));
    let beta = LaurentPoly::beta();
    let sum: LaurentPoly = (1..=ell as i64)
        .map(|j| product_omitting(ell, Some(j)).compose(&beta))
        .sum();
    &prefactor * &sum
}

/// `c = (i·s)^{2ℓ+1}/(2ℓ+1)! · Σ_{k=0}^{2ℓ} 2^k (−ℓ−β)_k / (k!(2ℓ+1−k))`
pub fn term_c(ell: u32) -> LaurentPoly {
    let n = 2 * ell + 1;
    let beta = LaurentPoly::beta();
    let bracket: LaurentPoly = (0..=2 * ell)
        .map(|k| {
            let w = Rational::from(2).pow(k)
                * (factorial(k) * Rational::from((n - k) as i64))
                    .recip()
                    .expect("nonzero weight denominator");
            pochhammer_shifted(ell, k).compose(&beta).scale_rat(&w)
        })
        .sum();
    let is_pow = LaurentPoly::term(Monomial::new(0, n as i32), Gaussian::i_pow(n as i64));
    (&is_pow * &bracket).scale_rat(&factorial(n).recip().expect("factorial is nonzero"))
}

/// `p_ℓ = r_ℓ/(2ℓ+1) + a·k_ℓ·H_{2ℓ}`
pub fn p_from_r(ell: u32, r_over: &LambdaPoly) -> LambdaPoly {
    r_over + &k_poly(ell).shift(0, 1).scale(&harmonic(2 * ell))
}

/// Right-hand side before splitting: `b·Σ 1/(j−β) + c − i·s·k_ℓ`.
pub fn assembled_rhs(ell: u32) -> LaurentPoly {
    let isk = k_poly(ell).to_laurent().shift(0, 1).scale(&Gaussian::i());
    &(&sum_b_over_factors(ell) + &term_c(ell)) - &isk
}

pub fn r_direct(ell: u32) -> Result<DirectResult, DirectError> {
    let (real, imag) = assembled_rhs(ell).split();
    if let Some((m, _)) = imag.terms().next() {
        return Err(DirectError {
            ell,
            source: PolyError::NotRealValued { a_power: m.exp_a, s_power: m.exp_s },
        });
    }
    let r_over = real.to_lambda().map_err(|source| DirectError { ell, source })?;
    let p_poly = p_from_r(ell, &r_over);
    Ok(DirectResult { ell, k_poly: k_poly(ell), r_over, p_poly, imag_residual: imag })
}

pub fn p_poly(ell: u32) -> Result<LambdaPoly, DirectError> {
    r_direct(ell).map(|r| r.p_poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn lp(terms: &[(u32, u32, i64, i64)]) -> LambdaPoly {
        LambdaPoly::from_terms(terms.iter().map(|&(l, a, n, d)| (l, a, q(n, d))))
    }

    #[test]
    fn k_small_cases() {
        assert_eq!(k_poly(0), LambdaPoly::one());
        assert_eq!(k_poly(1), lp(&[(1, 0, 4, 36), (0, 2, 1, 36)]));
        // (4λ+a²)(16λ+a²)/14400
        assert_eq!(k_poly(2), lp(&[(2, 0, 64, 14400), (1, 2, 20, 14400), (0, 4, 1, 14400)]));
    }

    #[test]
    fn big_k_both_forms_small() {
        assert_eq!(big_k_product(0), lp(&[(0, 1, -1, 1)]));
        assert_eq!(big_k_pochhammer(0).to_lambda().unwrap(), lp(&[(0, 1, -1, 1)]));
        let k1 = lp(&[(1, 1, -4, 12), (0, 3, -1, 12)]);
        assert_eq!(big_k_product(1), k1);
        assert_eq!(big_k_pochhammer(1).to_lambda().unwrap(), k1);
    }

    #[test]
    fn b_terms() {
        assert_eq!(term_b(0), lp(&[(0, 1, -1, 1)]).to_laurent());
        assert_eq!(term_b(1), lp(&[(1, 1, -4, 36), (0, 3, -1, 36)]).to_laurent());
        for ell in 0..6 {
            let scaled = big_k_pochhammer(ell).scale_rat(&q(1, 2 * ell as i64 + 1));
            assert_eq!(term_b(ell), scaled);
        }
    }

    #[test]
    fn factor_sum_ell_one() {
        assert!(sum_b_over_factors(0).is_zero());
        // (−2is)³/36 · (−1−β)(−β), expanded by hand:
        // (−1−β)(−β) = β + β² = (i/2)a s⁻¹ − (1/4)a² s⁻²; (−2is)³ = 8i s³
        // → 8i s³ (i a/(2s) − a²/(4s²)) / 36 = (−4a s² − 2i a² s)/36
        let want = LaurentPoly::from_terms([
            (Monomial::new(1, 2), Gaussian::real(q(-4, 36))),
            (Monomial::new(2, 1), Gaussian::imag(q(-2, 36))),
        ]);
        assert_eq!(sum_b_over_factors(1), want);
    }

    #[test]
    fn c_ell_zero_and_full_cancellation() {
        assert_eq!(term_c(0), LaurentPoly::term(Monomial::new(0, 1), Gaussian::i()));
        let r0 = r_direct(0).unwrap();
        assert!(r0.r_over.is_zero());
        assert!(r0.p_poly.is_zero());
    }

    #[test]
    fn r_and_p_small_ell() {
        let r1 = r_direct(1).unwrap();
        assert_eq!(r1.r_over, lp(&[(1, 1, -1, 36)]));
        assert_eq!(r1.p_poly, lp(&[(0, 3, 1, 24), (1, 1, 5, 36)]));
        assert!(r1.imag_residual.is_zero());
        let r2 = r_direct(2).unwrap();
        assert_eq!(r2.r_over, lp(&[(1, 3, -1, 7200), (2, 1, -13, 7200)]));
        assert_eq!(p_poly(2).unwrap(), lp(&[(0, 5, 1, 6912), (1, 3, 119, 43200), (2, 1, 161, 21600)]));
    }

    #[test]
    fn structural_invariants() {
        for ell in 1..=8 {
            let r = r_direct(ell).unwrap();
            assert_eq!(r.r_over.degree_lambda(), Some(ell));
            assert_eq!(r.p_poly.degree_lambda(), Some(ell));
            assert_eq!(r.k_poly.degree_lambda(), Some(ell));
            assert!(r.r_over.all_odd_in_a() && r.p_poly.all_odd_in_a());
            assert!(r.r_over.lambda_coeff(0).is_zero());
            assert!(r.r_over.substitute_a(&Rational::zero()).is_zero());
        }
    }
}
