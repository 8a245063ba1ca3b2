//! Floating-point evaluation of `m_ℓ(λ)` in its original and simplified
//! forms.
//!
//! Both share one branch convention: `√λ` is taken with `Im √λ ≥ 0`, i.e. the
//! cut runs along the positive real `λ`-axis, and `log` is the principal
//! logarithm. With that branch `m_ℓ(λ̄) = conj(m_ℓ(λ))` for real `a`.

use num_complex::Complex64;
use thiserror::Error;

use crate::combinat::harmonic;
use crate::direct::{k_poly, p_poly, DirectError};
use crate::exactnum::Rational;
use crate::laurent::LambdaPoly;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_431_04;

/// `B_{2n}/(2n)` for `n = 1..=7`.
const DIGAMMA_ASYMPTOTIC: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
];

const POLE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Exact(#[from] DirectError),
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `√λ` on the branch `Im √λ ≥ 0`.
pub fn sqrt_lambda(lambda: Complex64) -> Result<Complex64, EvalError> {
    if lambda == c(0.0, 0.0) {
        return Err(EvalError::Domain("sqrt_lambda at λ = 0".into()));
    }
    if !lambda.is_finite() {
        return Err(EvalError::Domain(format!("non-finite λ = {lambda}")));
    }
    let r = lambda.sqrt();
    Ok(if r.im < 0.0 { -r } else { r })
}

/// Complex digamma: upward recurrence to `Re z ≥ 10`, then the asymptotic
/// series with seven Bernoulli terms.
pub fn digamma(z: Complex64) -> Result<Complex64, EvalError> {
    if !z.is_finite() {
        return Err(EvalError::Domain(format!("digamma of non-finite {z}")));
    }
    let nearest = z.re.round();
    if nearest <= 0.0 && (z - c(nearest, 0.0)).norm() < POLE_TOLERANCE {
        return Err(EvalError::Domain(format!("digamma pole at {z}")));
    }
    let mut z = z;
    let mut acc = c(0.0, 0.0);
    while z.re < 10.0 {
        acc -= z.inv();
        z += 1.0;
    }
    let inv2 = (z * z).inv();
    let mut pow = inv2;
    let mut series = c(0.0, 0.0);
    for coeff in DIGAMMA_ASYMPTOTIC {
        series += pow * coeff;
        pow *= inv2;
    }
    Ok(acc + z.ln() - z.inv() * 0.5 - series)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MFunctionParams {
    pub ell: u32,
    pub a: f64,
}

impl MFunctionParams {
    pub fn new(ell: u32, a: f64) -> Self {
        MFunctionParams { ell, a }
    }
}

/// λ-coefficients of a polynomial at a fixed `a`, rounded once to `f64`.
#[derive(Debug, Clone)]
struct FloatPoly(Vec<f64>);

impl FloatPoly {
    fn at_a(p: &LambdaPoly, a: &Rational) -> Self {
        let fixed = p.substitute_a(a);
        let top = fixed.degree_lambda().unwrap_or(0);
        FloatPoly((0..=top).map(|j| fixed.coeff(j, 0).to_f64()).collect())
    }

    fn eval(&self, x: Complex64) -> Complex64 {
        self.0.iter().rev().fold(c(0.0, 0.0), |acc, &k| acc * x + k)
    }
}

/// `m_ℓ` at fixed `ℓ` and `a`, with `k_ℓ` and `p_ℓ` taken from the exact
/// pipeline.
#[derive(Debug, Clone)]
pub struct MFunction {
    params: MFunctionParams,
    k: FloatPoly,
    p: FloatPoly,
    harmonic: f64,
}

impl MFunction {
    pub fn new(params: MFunctionParams) -> Result<Self, EvalError> {
        let a = Rational::from_f64(params.a)
            .ok_or_else(|| EvalError::Domain(format!("non-finite a = {}", params.a)))?;
        let p = p_poly(params.ell)?;
        Ok(MFunction {
            params,
            k: FloatPoly::at_a(&k_poly(params.ell), &a),
            p: FloatPoly::at_a(&p, &a),
            harmonic: harmonic(2 * params.ell).to_f64(),
        })
    }

    pub fn params(&self) -> MFunctionParams {
        self.params
    }

    pub fn k_value(&self, lambda: Complex64) -> Complex64 {
        self.k.eval(lambda)
    }

    pub fn p_value(&self, lambda: Complex64) -> Complex64 {
        self.p.eval(lambda)
    }

    /// `log(−2i√λ) + Ψ(1 − ia/(2√λ))`, shared by both forms.
    fn transcendental(&self, s: Complex64) -> Result<(Complex64, Complex64), EvalError> {
        let beta = c(0.0, self.params.a) / (s * 2.0);
        let log = (c(0.0, -2.0) * s).ln();
        Ok((log + digamma(c(1.0, 0.0) - beta)?, beta))
    }

    /// Term-by-term transcription of the defining formula for `m_ℓ`.
    pub fn m_original(&self, lambda: Complex64) -> Result<Complex64, EvalError> {
        let ell = self.params.ell;
        let a = self.params.a;
        let s = sqrt_lambda(lambda)?;
        let (log_psi, beta) = self.transcendental(s)?;
        let k = self.k_value(lambda);

        let first = -a * k * (log_psi - self.harmonic + 2.0 * EULER_GAMMA);

        let mut recip_sum = c(0.0, 0.0);
        for j in 1..=ell {
            let d = c(j as f64, 0.0) - beta;
            if d.norm() < POLE_TOLERANCE {
                return Err(EvalError::Domain(format!("1/(j−β) pole at j = {j}")));
            }
            recip_sum += d.inv();
        }
        let second = -a * k * recip_sum;

        let n = 2 * ell + 1;
        let mut poch = c(1.0, 0.0);
        let mut k_fact = 1.0;
        let mut two_k = 1.0;
        let mut bracket = c(0.0, 0.0);
        for kk in 0..=2 * ell {
            if kk > 0 {
                poch *= c(-(ell as f64) + (kk - 1) as f64, 0.0) - beta;
                k_fact *= kk as f64;
                two_k *= 2.0;
            }
            bracket += poch * (two_k / (k_fact * (n - kk) as f64));
        }
        let n_fact: f64 = (1..=n).map(f64::from).product();
        let third = (c(0.0, 1.0) * s).powu(n) / n_fact * bracket;

        Ok(first + second + third)
    }

    /// `k_ℓ{−a·log(−2i√λ) − a·Ψ(1 − ia/(2√λ)) − 2γa + i√λ} + p_ℓ`
    pub fn m_simplified(&self, lambda: Complex64) -> Result<Complex64, EvalError> {
        let a = self.params.a;
        let s = sqrt_lambda(lambda)?;
        let (log_psi, _) = self.transcendental(s)?;
        let k = self.k_value(lambda);
        let bracket = -a * log_psi - 2.0 * EULER_GAMMA * a + c(0.0, 1.0) * s;
        Ok(k * bracket + self.p_value(lambda))
    }
}

pub fn m_original(params: MFunctionParams, lambda: Complex64) -> Result<Complex64, EvalError> {
    MFunction::new(params)?.m_original(lambda)
}

pub fn m_simplified(params: MFunctionParams, lambda: Complex64) -> Result<Complex64, EvalError> {
    MFunction::new(params)?.m_simplified(lambda)
}

/// `|x − y| / |y|`
pub fn relative_difference(x: Complex64, y: Complex64) -> f64 {
    (x - y).norm() / y.norm()
}

#[derive(Debug, Clone, PartialEq)]
pub struct PoleProbe {
    pub n: u32,
    /// Candidate eigenvalue `−a²/(4n²)`.
    pub eigenvalue: f64,
    /// Probe point `−a²/(4n²)·(1+ε)`.
    pub probe: Complex64,
    pub magnitude: f64,
    /// `n > ℓ`: a genuine pole is expected; `n ≤ ℓ`: cancelled by a zero of `k_ℓ`.
    pub expect_pole: bool,
}

pub const POLE_PROBE_EPSILON: f64 = 1e-6;

/// Probes `|m_ℓ|` next to each candidate eigenvalue `λ_n = −a²/(4n²)`,
/// `n = 1..=n_max`. Reports only; the caller judges the magnitudes.
pub fn pole_scan(params: MFunctionParams, n_max: u32) -> Result<Vec<PoleProbe>, EvalError> {
    if params.a <= 0.0 {
        return Err(EvalError::Domain("pole_scan needs a > 0".into()));
    }
    let m = MFunction::new(params)?;
    (1..=n_max)
        .map(|n| {
            let eigenvalue = -params.a * params.a / (4.0 * f64::from(n * n));
            let probe = c(eigenvalue * (1.0 + POLE_PROBE_EPSILON), 0.0);
            Ok(PoleProbe {
                n,
                eigenvalue,
                probe,
                magnitude: m.m_simplified(probe)?.norm(),
                expect_pole: n > params.ell,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, LN_2, PI};

    fn close(x: Complex64, y: Complex64, tol: f64) -> bool {
        (x - y).norm() <= tol * y.norm().max(1.0)
    }

    #[test]
    fn branch_of_sqrt() {
        assert!(close(sqrt_lambda(c(-1.0, 0.0)).unwrap(), c(0.0, 1.0), 1e-15));
        assert!(close(sqrt_lambda(c(4.0, 0.0)).unwrap(), c(2.0, 0.0), 1e-15));
        let w = sqrt_lambda(c(0.0, 1.0)).unwrap();
        assert!(close(w, Complex64::from_polar(1.0, FRAC_PI_4), 1e-15));
        // lower half-plane stays in the upper half of the s-plane
        let v = sqrt_lambda(c(0.0, -1.0)).unwrap();
        assert!(v.im > 0.0 && close(v, Complex64::from_polar(1.0, 3.0 * FRAC_PI_4), 1e-15));
        assert!(sqrt_lambda(c(0.0, 0.0)).is_err());
    }

    #[test]
    fn digamma_classical_values() {
        let g = EULER_GAMMA;
        assert!(close(digamma(c(1.0, 0.0)).unwrap(), c(-g, 0.0), 1e-14));
        assert!(close(digamma(c(2.0, 0.0)).unwrap(), c(1.0 - g, 0.0), 1e-14));
        assert!(close(digamma(c(0.5, 0.0)).unwrap(), c(-g - 2.0 * LN_2, 0.0), 1e-14));
        // Im Ψ(i y) = 1/(2y) + (π/2) coth(π y)
        let y = 1.5;
        let want_im = 1.0 / (2.0 * y) + PI / 2.0 / (PI * y).tanh();
        assert!((digamma(c(0.0, y)).unwrap().im - want_im).abs() < 1e-12);
    }

    #[test]
    fn digamma_poles_rejected() {
        assert!(digamma(c(0.0, 0.0)).is_err());
        assert!(digamma(c(-3.0, 1e-13)).is_err());
        assert!(digamma(c(-3.0, 1e-6)).is_ok());
        assert!(digamma(c(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn ell_zero_simplified_is_specialised_formula() {
        let m = MFunction::new(MFunctionParams::new(0, 1.0)).unwrap();
        let lam = c(-1.0, 0.5);
        let s = sqrt_lambda(lam).unwrap();
        let beta = c(0.0, 1.0) / (2.0 * s);
        let want = -(c(0.0, -2.0) * s).ln() - digamma(1.0 - beta).unwrap() - 2.0 * EULER_GAMMA
            + c(0.0, 1.0) * s;
        assert!(close(m.m_simplified(lam).unwrap(), want, 1e-14));
    }

    #[test]
    fn a_zero_leaves_only_sqrt_term() {
        let m = MFunction::new(MFunctionParams::new(1, 0.0)).unwrap();
        let lam = c(-2.0, 1.0);
        let s = sqrt_lambda(lam).unwrap();
        let want = lam * (4.0 / 36.0) * c(0.0, 1.0) * s;
        assert!(close(m.m_simplified(lam).unwrap(), want, 1e-14));
    }

    #[test]
    fn forms_agree_at_sample_point() {
        for ell in 0..=4 {
            let m = MFunction::new(MFunctionParams::new(ell, 1.3)).unwrap();
            let lam = c(-0.7, 0.4);
            let d = relative_difference(m.m_simplified(lam).unwrap(), m.m_original(lam).unwrap());
            assert!(d < 1e-12, "ell={ell} d={d}");
        }
    }

    #[test]
    fn pole_scan_needs_positive_a() {
        assert!(pole_scan(MFunctionParams::new(0, 0.0), 3).is_err());
        let probes = pole_scan(MFunctionParams::new(1, 1.0), 3).unwrap();
        assert_eq!(probes.len(), 3);
        assert!(!probes[0].expect_pole && probes[1].expect_pole);
    }
}
