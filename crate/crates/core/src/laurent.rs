//! Sparse Laurent polynomials in `a` and `s` over `Q(i)`, and real
//! polynomials in `a` and `λ`.
//!
//! `s` stands for `√λ`, so a Laurent polynomial is a polynomial in `λ`
//! exactly when every stored `s`-exponent is even and non-negative. The
//! imaginary unit lives only in the coefficients, which makes the split into
//! real and imaginary parts a per-coefficient projection (valid for `λ > 0`,
//! where `s` is a real positive number).

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{ArithError, Gaussian, Rational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("term with s^{s_power} is not a polynomial in lambda")]
    NotPolynomialInLambda { s_power: i32 },
    #[error("coefficient of a^{a_power}*s^{s_power} has nonzero imaginary part")]
    NotRealValued { a_power: u32, s_power: i32 },
    #[error("negative power of s evaluated at s = 0")]
    PoleAtZero,
    #[error("malformed polynomial JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Output formats shared by every polynomial type.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Latex,
    Json,
}

/// `a^exp_a · s^exp_s`. Ordered by `(exp_s, exp_a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub exp_s: i32,
    pub exp_a: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exp_s: 0, exp_a: 0 };

    pub fn new(exp_a: u32, exp_s: i32) -> Self {
        Monomial { exp_s, exp_a }
    }

    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial { exp_s: self.exp_s + rhs.exp_s, exp_a: self.exp_a + rhs.exp_a }
    }
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, Gaussian>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Gaussian::one())
    }

    pub fn constant(c: Gaussian) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: Gaussian) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Gaussian)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// The symbol `a`.
    pub fn a() -> Self {
        Self::term(Monomial::new(1, 0), Gaussian::one())
    }

    /// `s^n` for any integer `n`.
    pub fn s_pow(n: i32) -> Self {
        Self::term(Monomial::new(0, n), Gaussian::one())
    }

    /// `β = i·a/(2s)`.
    pub fn beta() -> Self {
        Self::term(Monomial::new(1, -1), Gaussian::imag(Rational::frac(1, 2)))
    }

    pub fn add_term(&mut self, m: Monomial, c: Gaussian) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Monomial) -> Gaussian {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    /// Terms in ascending `(exp_s, exp_a)` order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Gaussian)> {
        self.terms.iter()
    }

    pub fn scale(&self, k: &Gaussian) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect() }
    }

    pub fn scale_rat(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, c)| (*m, c.scale(k))).collect() }
    }

    /// Multiplies by `a^da · s^ds`.
    pub fn shift(&self, da: u32, ds: i32) -> Self {
        let by = Monomial::new(da, ds);
        Self { terms: self.terms.iter().map(|(m, c)| (m.mul(by), c.clone())).collect() }
    }

    /// Exact power by repeated squaring; `p⁰ = 1`.
    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Splits `p = real + i·imag`, both parts carrying real coefficients.
    pub fn split(&self) -> (LaurentPoly, LaurentPoly) {
        let mut re = Self::zero();
        let mut im = Self::zero();
        for (m, c) in &self.terms {
            re.add_term(*m, Gaussian::real(c.re.clone()));
            im.add_term(*m, Gaussian::real(c.im.clone()));
        }
        (re, im)
    }

    /// Reads the polynomial as one in `λ = s²`.
    pub fn to_lambda(&self) -> Result<LambdaPoly, PolyError> {
        let mut out = LambdaPoly::zero();
        for (m, c) in &self.terms {
            if m.exp_s < 0 || m.exp_s % 2 != 0 {
                return Err(PolyError::NotPolynomialInLambda { s_power: m.exp_s });
            }
            if !c.is_real() {
                return Err(PolyError::NotRealValued { a_power: m.exp_a, s_power: m.exp_s });
            }
            out.add_term((m.exp_s / 2) as u32, m.exp_a, c.re.clone());
        }
        Ok(out)
    }

    /// Numeric value at complex `a` and `s`, Horner in `a` per `s`-power and
    /// then Horner in `s`.
    pub fn eval(&self, a: Complex64, s: Complex64) -> Result<Complex64, PolyError> {
        let Some(min_s) = self.terms.keys().map(|m| m.exp_s).min() else {
            return Ok(Complex64::new(0.0, 0.0));
        };
        if min_s < 0 && s == Complex64::new(0.0, 0.0) {
            return Err(PolyError::PoleAtZero);
        }
        let max_s = self.terms.keys().map(|m| m.exp_s).max().unwrap_or(min_s);
        let mut by_s: BTreeMap<i32, BTreeMap<u32, Complex64>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let z = Complex64::new(c.re.to_f64(), c.im.to_f64());
            by_s.entry(m.exp_s).or_default().insert(m.exp_a, z);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for e in (min_s..=max_s).rev() {
            let inner = by_s.get(&e).map(|row| horner(row, a)).unwrap_or_default();
            acc = acc * s + inner;
        }
        Ok(acc * s.powi(min_s))
    }

    pub fn render(&self, fmt: Format) -> String {
        let entries: Vec<_> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| (vec![("a", m.exp_a as i64), ("s", m.exp_s as i64)], c.clone()))
            .collect();
        match fmt {
            Format::Text => render_text(&entries),
            Format::Latex => render_latex(&entries),
            Format::Json => {
                let terms = self
                    .terms
                    .iter()
                    .rev()
                    .map(|(m, c)| TermJson {
                        a: m.exp_a,
                        s: Some(m.exp_s),
                        lambda: None,
                        num: c.re.numer().to_string(),
                        den: c.re.denom().to_string(),
                        inum: (!c.im.is_zero()).then(|| c.im.numer().to_string()),
                        iden: (!c.im.is_zero()).then(|| c.im.denom().to_string()),
                    })
                    .collect();
                to_canonical_json(&PolyJson { vars: vec!["a".into(), "s".into()], terms })
            }
        }
    }

    pub fn from_json(src: &str) -> Result<Self, PolyError> {
        let doc: PolyJson = serde_json::from_str(src).map_err(|e| PolyError::Json(e.to_string()))?;
        if doc.vars != ["a", "s"] {
            return Err(PolyError::Json(format!("expected vars [\"a\",\"s\"], got {:?}", doc.vars)));
        }
        let mut p = Self::zero();
        for t in doc.terms {
            let s = t.s.ok_or_else(|| PolyError::Json("term without \"s\"".into()))?;
            p.add_term(Monomial::new(t.a, s), t.coefficient()?);
        }
        Ok(p)
    }
}

fn horner(row: &BTreeMap<u32, Complex64>, x: Complex64) -> Complex64 {
    let top = row.keys().next_back().copied().unwrap_or(0);
    let mut acc = Complex64::new(0.0, 0.0);
    for e in (0..=top).rev() {
        acc = acc * x + row.get(&e).copied().unwrap_or_default();
    }
    acc
}

impl std::fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render(Format::Text))
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(*m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

/// Key of a [`LambdaPoly`] term: `λ^lambda · a^a`. Ordered by `(lambda, a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LambdaMonomial {
    pub lambda: u32,
    pub a: u32,
}

/// `Σ c·a^m·λ^j` with rational coefficients. Terms free of `λ` double as
/// polynomials in `a` alone.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LambdaPoly {
    coeffs: BTreeMap<LambdaMonomial, Rational>,
}

impl LambdaPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(lambda: u32, a: u32, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(lambda, a, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u32, Rational)>) -> Self {
        let mut p = Self::zero();
        for (l, a, c) in terms {
            p.add_term(l, a, c);
        }
        p
    }

    pub fn add_term(&mut self, lambda: u32, a: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = LambdaMonomial { lambda, a };
        let slot = self.coeffs.entry(key).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, lambda: u32, a: u32) -> Rational {
        self.coeffs.get(&LambdaMonomial { lambda, a }).cloned().unwrap_or_default()
    }

    /// Terms in ascending `(lambda, a)` order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&LambdaMonomial, &Rational)> {
        self.coeffs.iter()
    }

    /// Highest power of `λ`, `None` for the zero polynomial.
    pub fn degree_lambda(&self) -> Option<u32> {
        self.coeffs.keys().map(|k| k.lambda).max()
    }

    /// The coefficient of `λ^j` as a polynomial in `a`.
    pub fn lambda_coeff(&self, j: u32) -> LambdaPoly {
        Self::from_terms(
            self.coeffs.iter().filter(|(k, _)| k.lambda == j).map(|(k, c)| (0, k.a, c.clone())),
        )
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self { coeffs: self.coeffs.iter().map(|(m, c)| (*m, c * k)).collect() }
    }

    /// Multiplies by `λ^dl · a^da`.
    pub fn shift(&self, dl: u32, da: u32) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(m, c)| (LambdaMonomial { lambda: m.lambda + dl, a: m.a + da }, c.clone()))
                .collect(),
        }
    }

    /// Substitutes an exact value for `a`.
    pub fn substitute_a(&self, a: &Rational) -> LambdaPoly {
        let mut out = Self::zero();
        for (m, c) in &self.coeffs {
            out.add_term(m.lambda, 0, c * &a.pow(m.a));
        }
        out
    }

    /// True when `a` divides every term.
    pub fn divisible_by_a(&self) -> bool {
        self.coeffs.keys().all(|m| m.a >= 1)
    }

    pub fn all_odd_in_a(&self) -> bool {
        self.coeffs.keys().all(|m| m.a % 2 == 1)
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.coeffs.values().map(Rational::bits).max().unwrap_or(0)
    }

    /// Embeds `λ^j ↦ s^{2j}`.
    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.coeffs.iter().map(|(m, c)| {
            (Monomial::new(m.a, 2 * m.lambda as i32), Gaussian::real(c.clone()))
        }))
    }

    /// Horner evaluation, descending in `λ`.
    pub fn eval(&self, a: Complex64, lambda: Complex64) -> Complex64 {
        let Some(top) = self.degree_lambda() else {
            return Complex64::new(0.0, 0.0);
        };
        let mut acc = Complex64::new(0.0, 0.0);
        for j in (0..=top).rev() {
            let row: BTreeMap<u32, Complex64> = self
                .coeffs
                .iter()
                .filter(|(m, _)| m.lambda == j)
                .map(|(m, c)| (m.a, Complex64::new(c.to_f64(), 0.0)))
                .collect();
            acc = acc * lambda + horner(&row, a);
        }
        acc
    }

    pub fn render(&self, fmt: Format) -> String {
        // descending λ, then descending a
        let mut ordered: Vec<_> = self.coeffs.iter().collect();
        ordered.sort_by_key(|(m, _)| std::cmp::Reverse((m.lambda, m.a)));
        let entries: Vec<_> = ordered
            .iter()
            .map(|(m, c)| {
                (vec![("a", m.a as i64), ("λ", m.lambda as i64)], Gaussian::real((*c).clone()))
            })
            .collect();
        match fmt {
            Format::Text => render_text(&entries),
            Format::Latex => render_latex(&entries),
            Format::Json => {
                let terms = ordered
                    .iter()
                    .map(|(m, c)| TermJson {
                        a: m.a,
                        s: None,
                        lambda: Some(m.lambda),
                        num: c.numer().to_string(),
                        den: c.denom().to_string(),
                        inum: None,
                        iden: None,
                    })
                    .collect();
                to_canonical_json(&PolyJson { vars: vec!["a".into(), "lambda".into()], terms })
            }
        }
    }

    pub fn from_json(src: &str) -> Result<Self, PolyError> {
        let doc: PolyJson = serde_json::from_str(src).map_err(|e| PolyError::Json(e.to_string()))?;
        Self::from_json_value(doc)
    }

    fn from_json_value(doc: PolyJson) -> Result<Self, PolyError> {
        if doc.vars != ["a", "lambda"] {
            return Err(PolyError::Json(format!(
                "expected vars [\"a\",\"lambda\"], got {:?}",
                doc.vars
            )));
        }
        let mut p = Self::zero();
        for t in doc.terms {
            let l = t.lambda.ok_or_else(|| PolyError::Json("term without \"lambda\"".into()))?;
            let c = t.coefficient()?;
            if !c.is_real() {
                return Err(PolyError::NotRealValued { a_power: t.a, s_power: 2 * l as i32 });
            }
            p.add_term(l, t.a, c.re);
        }
        Ok(p)
    }

    /// Parses a polynomial embedded as a JSON value (e.g. one field of a
    /// larger document).
    pub fn from_json_fragment(v: serde_json::Value) -> Result<Self, PolyError> {
        let doc: PolyJson = serde_json::from_value(v).map_err(|e| PolyError::Json(e.to_string()))?;
        Self::from_json_value(doc)
    }

    /// The JSON document as a value, for embedding in larger documents.
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::from_str(&self.render(Format::Json)).expect("rendered JSON is valid")
    }
}

impl std::fmt::Debug for LambdaPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render(Format::Text))
    }
}

impl Add<&LambdaPoly> for &LambdaPoly {
    type Output = LambdaPoly;
    fn add(self, rhs: &LambdaPoly) -> LambdaPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.coeffs {
            out.add_term(m.lambda, m.a, c.clone());
        }
        out
    }
}

impl Sub<&LambdaPoly> for &LambdaPoly {
    type Output = LambdaPoly;
    fn sub(self, rhs: &LambdaPoly) -> LambdaPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.coeffs {
            out.add_term(m.lambda, m.a, -c);
        }
        out
    }
}

impl Mul<&LambdaPoly> for &LambdaPoly {
    type Output = LambdaPoly;
    fn mul(self, rhs: &LambdaPoly) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (m1, c1) in &self.coeffs {
            for (m2, c2) in &rhs.coeffs {
                out.add_term(m1.lambda + m2.lambda, m1.a + m2.a, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LambdaPoly {
    type Output = LambdaPoly;
    fn neg(self) -> LambdaPoly {
        LambdaPoly { coeffs: self.coeffs.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

macro_rules! owned_ops {
    ($ty:ty) => {
        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }
        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }
        impl Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty {
                &self * &rhs
            }
        }
        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -&self
            }
        }
        impl std::iter::Sum for $ty {
            fn sum<I: Iterator<Item = $ty>>(iter: I) -> $ty {
                iter.fold(<$ty>::zero(), |acc, x| &acc + &x)
            }
        }
    };
}

owned_ops!(LaurentPoly);
owned_ops!(LambdaPoly);

// ---- rendering ----

#[derive(Debug, Serialize, Deserialize)]
struct PolyJson {
    vars: Vec<String>,
    terms: Vec<TermJson>,
}

#[derive(Debug, Serialize, Deserialize)]
struct TermJson {
    a: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    s: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lambda: Option<u32>,
    num: String,
    den: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    inum: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    iden: Option<String>,
}

impl TermJson {
    fn coefficient(&self) -> Result<Gaussian, PolyError> {
        let re: Rational = format!("{}/{}", self.num, self.den).parse()?;
        let im = match (&self.inum, &self.iden) {
            (None, None) => Rational::zero(),
            (Some(n), Some(d)) => format!("{n}/{d}").parse()?,
            _ => return Err(PolyError::Json("inum and iden must appear together".into())),
        };
        Ok(Gaussian::new(re, im))
    }
}

fn to_canonical_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("polynomial serializes");
    s.push('\n');
    s
}

type Entry<'a> = (Vec<(&'a str, i64)>, Gaussian);

fn text_vars(vars: &[(&str, i64)]) -> Vec<String> {
    vars.iter()
        .filter(|(_, e)| *e != 0)
        .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect()
}

fn rat_text(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("({}/{})", r.numer(), r.denom())
    }
}

fn render_text(entries: &[Entry<'_>]) -> String {
    if entries.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (vars, c)) in entries.iter().enumerate() {
        let mut factors = Vec::new();
        let negative;
        if c.is_real() || c.re.is_zero() {
            let (mag, neg, unit) = if c.is_real() {
                (c.re.abs(), c.re.is_negative(), None)
            } else {
                (c.im.abs(), c.im.is_negative(), Some("i"))
            };
            negative = neg;
            let vs = text_vars(vars);
            if !mag.is_one() || (vs.is_empty() && unit.is_none()) {
                factors.push(rat_text(&mag));
            }
            factors.extend(unit.map(String::from));
            factors.extend(vs);
        } else {
            negative = false;
            factors.push(format!("({}+{}i)", rat_text(&c.re), rat_text(&c.im)));
            factors.extend(text_vars(vars));
        }
        match (idx, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&factors.join("*"));
    }
    out
}

fn latex_vars(vars: &[(&str, i64)]) -> Vec<String> {
    vars.iter()
        .filter(|(_, e)| *e != 0)
        .map(|(v, e)| {
            let name = if *v == "λ" { "\\lambda" } else { v };
            if *e == 1 {
                name.to_string()
            } else {
                format!("{name}^{{{e}}}")
            }
        })
        .collect()
}

fn render_latex(entries: &[Entry<'_>]) -> String {
    if entries.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (vars, c)) in entries.iter().enumerate() {
        let vs = latex_vars(vars);
        let (body, negative) = if c.is_real() || c.re.is_zero() {
            let (mag, neg, unit) = if c.is_real() {
                (c.re.abs(), c.re.is_negative(), None)
            } else {
                (c.im.abs(), c.im.is_negative(), Some("i".to_string()))
            };
            let mut parts = Vec::new();
            if !mag.numer().is_one() || (unit.is_none() && vs.is_empty()) {
                parts.push(mag.numer().to_string());
            }
            parts.extend(unit);
            parts.extend(vs);
            let top = parts.join(" ");
            if mag.is_integer() {
                (top, neg)
            } else {
                (format!("\\frac{{{top}}}{{{}}}", mag.denom()), neg)
            }
        } else {
            let mut parts = vec![format!("\\left({} + {} i\\right)", latex_rat(&c.re), latex_rat(&c.im))];
            parts.extend(vs);
            (parts.join(" "), false)
        };
        match (idx, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

fn latex_rat(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        let sign = if r.is_negative() { "-" } else { "" };
        format!("{sign}\\frac{{{}}}{{{}}}", r.numer().magnitude(), r.denom())
    }
}
