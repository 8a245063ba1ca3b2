//! Exact scalars: reduced rationals and Gaussian rationals `Q(i)`.
//!
//! Every value is kept in canonical form at all times: the denominator is
//! positive, the fraction is fully reduced, and zero is `0/1`. A zero
//! denominator cannot be constructed.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {0:?} as an exact number")]
    Parse(String),
}

/// Arbitrary-precision rational number in lowest terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(num_rational::BigRational);

impl Rational {
    /// Builds `num/den`, reducing to lowest terms. Rejects `den == 0`.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, ArithError> {
        let den = den.into();
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(num_rational::BigRational::new(num.into(), den)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(num_rational::BigRational::from_integer(n.into()))
    }

    /// `num/den` for small machine integers; panics only on a zero
    /// denominator, so it is reserved for literal constants.
    pub fn frac(num: i64, den: i64) -> Self {
        Self::new(num, den).expect("literal fraction with zero denominator")
    }

    pub fn zero() -> Self {
        Rational(num_rational::BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(num_rational::BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational, ArithError> {
        if rhs.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Rational, ArithError> {
        Rational::one().checked_div(self)
    }

    /// Non-negative integer power.
    pub fn pow(&self, exp: u32) -> Rational {
        Rational(num_traits::Pow::pow(&self.0, exp))
    }

    /// Exact value of a finite `f64`.
    pub fn from_f64(x: f64) -> Option<Rational> {
        num_rational::BigRational::from_float(x).map(Rational)
    }

    /// Nearest `f64`; lossy by nature.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Larger of the numerator and denominator bit lengths.
    pub fn bits(&self) -> u64 {
        self.numer().bits().max(self.denom().bits())
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ArithError;

    /// Accepts `"n/d"` or a bare integer `"n"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ArithError::Parse(s.to_string());
        let t = s.trim();
        match t.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Rational::new(n, d)
            }
            None => Ok(Rational::from_integer(t.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

/// Complex number with rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gaussian { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Gaussian { re, im: Rational::zero() }
    }

    pub fn imag(im: Rational) -> Self {
        Gaussian { re: Rational::zero(), im }
    }

    pub fn zero() -> Self {
        Gaussian::default()
    }

    pub fn one() -> Self {
        Gaussian::real(Rational::one())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Gaussian::imag(Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Gaussian { re: self.re.clone(), im: -&self.im }
    }

    /// `re² + im²`
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn checked_div(&self, rhs: &Gaussian) -> Result<Gaussian, ArithError> {
        let n = rhs.norm_sqr();
        if n.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let top = self * &rhs.conj();
        Ok(Gaussian {
            re: top.re.checked_div(&n)?,
            im: top.im.checked_div(&n)?,
        })
    }

    /// `iⁿ` for any integer `n`.
    pub fn i_pow(n: i64) -> Self {
        match n.rem_euclid(4) {
            0 => Gaussian::one(),
            1 => Gaussian::i(),
            2 => Gaussian::real(-Rational::one()),
            _ => Gaussian::imag(-Rational::one()),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Gaussian {
        let mut base = self.clone();
        let mut acc = Gaussian::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    pub fn scale(&self, k: &Rational) -> Gaussian {
        Gaussian { re: &self.re * k, im: &self.im * k }
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})+({})i", self.re, self.im)
    }
}

impl fmt::Debug for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Gaussian {
    type Err = ArithError;

    /// Parses the rendered form `"(re)+(im)i"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ArithError::Parse(s.to_string());
        let t = s.trim();
        let body = t.strip_prefix('(').and_then(|r| r.strip_suffix(")i")).ok_or_else(bad)?;
        let (re, im) = body.split_once(")+(").ok_or_else(bad)?;
        Ok(Gaussian { re: re.parse()?, im: im.parse()? })
    }
}

impl From<Rational> for Gaussian {
    fn from(r: Rational) -> Self {
        Gaussian::real(r)
    }
}

// Operator plumbing: owned and borrowed operands for both scalar types.

macro_rules! forward_binop {
    ($ty:ty, $trait:ident, $method:ident, $assign_trait:ident, $assign_method:ident) => {
        impl $trait<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                (&self).$method(rhs)
            }
        }
        impl $trait<$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                self.$method(&rhs)
            }
        }
        impl $assign_trait<&$ty> for $ty {
            fn $assign_method(&mut self, rhs: &$ty) {
                *self = (&*self).$method(rhs);
            }
        }
        impl $assign_trait<$ty> for $ty {
            fn $assign_method(&mut self, rhs: $ty) {
                *self = (&*self).$method(&rhs);
            }
        }
    };
}

impl Add<&Rational> for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }
}

impl Sub<&Rational> for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        Rational(&self.0 - &rhs.0)
    }
}

impl Mul<&Rational> for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        Rational(&self.0 * &rhs.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

forward_binop!(Rational, Add, add, AddAssign, add_assign);
forward_binop!(Rational, Sub, sub, SubAssign, sub_assign);
forward_binop!(Rational, Mul, mul, MulAssign, mul_assign);

impl Add<&Gaussian> for &Gaussian {
    type Output = Gaussian;
    fn add(self, rhs: &Gaussian) -> Gaussian {
        Gaussian { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub<&Gaussian> for &Gaussian {
    type Output = Gaussian;
    fn sub(self, rhs: &Gaussian) -> Gaussian {
        Gaussian { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul<&Gaussian> for &Gaussian {
    type Output = Gaussian;
    fn mul(self, rhs: &Gaussian) -> Gaussian {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Gaussian::real(&self.re * &rhs.re);
        }
        Gaussian {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian { re: -&self.re, im: -&self.im }
    }
}

impl Neg for Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        -&self
    }
}

forward_binop!(Gaussian, Add, add, AddAssign, add_assign);
forward_binop!(Gaussian, Sub, sub, SubAssign, sub_assign);
forward_binop!(Gaussian, Mul, mul, MulAssign, mul_assign);

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn fraction_arithmetic() {
        assert_eq!(q(1, 2) + q(1, 3), q(5, 6));
        assert_eq!(q(2, 4).to_string(), "1/2");
        assert_eq!(q(-3, 7).checked_div(&q(-3, 7)).unwrap().to_string(), "1/1");
    }

    #[test]
    fn canonical_sign_and_zero() {
        let x = Rational::new(3, -6).unwrap();
        assert_eq!(x.numer(), &BigInt::from(-1));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(Rational::new(0, -5).unwrap().to_string(), "0/1");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(Rational::new(1, 0), Err(ArithError::DivisionByZero));
        assert_eq!(q(1, 2).checked_div(&Rational::zero()), Err(ArithError::DivisionByZero));
        assert_eq!("3/0".parse::<Rational>(), Err(ArithError::DivisionByZero));
        assert!(Gaussian::one().checked_div(&Gaussian::zero()).is_err());
    }

    #[test]
    fn gaussian_basics() {
        let i = Gaussian::i();
        assert_eq!(&i * &i, Gaussian::real(-Rational::one()));
        let z = Gaussian::new(q(1, 1), q(1, 1));
        assert_eq!(&z * &z.conj(), Gaussian::real(q(2, 1)));
        let w = Gaussian::new(q(3, 2), q(5, 7));
        assert_eq!(w.re, q(3, 2));
        assert_eq!(w.conj().im, q(-5, 7));
        assert_eq!(w.to_string(), "(3/2)+(5/7)i");
    }

    #[test]
    fn i_powers() {
        assert_eq!(Gaussian::i_pow(3), Gaussian::imag(q(-1, 1)));
        assert_eq!(Gaussian::i_pow(-1), Gaussian::imag(q(-1, 1)));
        assert_eq!(Gaussian::i().pow(7), Gaussian::i_pow(7));
    }

    #[test]
    fn parse_forms() {
        assert_eq!("7".parse::<Rational>().unwrap(), q(7, 1));
        assert_eq!(" -10/4 ".parse::<Rational>().unwrap(), q(-5, 2));
        assert!("1/2/3".parse::<Rational>().is_err());
        assert_eq!(
            "(1/2)+(-3/1)i".parse::<Gaussian>().unwrap(),
            Gaussian::new(q(1, 2), q(-3, 1))
        );
        assert!("1/2+3i".parse::<Gaussian>().is_err());
    }

    fn rat() -> impl Strategy<Value = Rational> {
        (-500i64..500, 1i64..60).prop_map(|(n, d)| q(n, d))
    }

    fn gauss() -> impl Strategy<Value = Gaussian> {
        (rat(), rat()).prop_map(|(re, im)| Gaussian::new(re, im))
    }

    proptest! {
        #[test]
        fn rational_field_axioms(x in rat(), y in rat(), z in rat()) {
            prop_assert_eq!((&x + &y) + &z, &x + (&y + &z));
            prop_assert_eq!((&x * &y) * &z, &x * (&y * &z));
            prop_assert_eq!(&x * (&y + &z), &x * &y + &x * &z);
            prop_assert_eq!(&x - &x, Rational::zero());
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.recip().unwrap(), Rational::one());
            }
        }

        #[test]
        fn rational_canonical(x in rat(), y in rat()) {
            let p = &x * &y + &x;
            prop_assert!(p.denom() > &BigInt::from(0));
            prop_assert_eq!(num_integer::Integer::gcd(p.numer(), p.denom()) == BigInt::from(1) || p.is_zero(), true);
        }

        #[test]
        fn gaussian_field_axioms(x in gauss(), y in gauss(), z in gauss()) {
            prop_assert_eq!((&x * &y) * &z, &x * (&y * &z));
            prop_assert_eq!(&x * (&y + &z), &x * &y + &x * &z);
            if !y.is_zero() {
                prop_assert_eq!(&x.checked_div(&y).unwrap() * &y, x.clone());
            }
            let n = &x.conj() * &x;
            prop_assert!(n.im.is_zero());
            prop_assert!(!n.re.is_negative());
        }

        #[test]
        fn render_parse_round_trip(x in rat(), z in gauss()) {
            prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
            prop_assert_eq!(z.to_string().parse::<Gaussian>().unwrap(), z);
        }
    }
}
