use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::roots;
use super::ExactError;

/// Exact rational scalar. `num-rational` keeps it normalized (coprime, positive denominator).
pub type Rational = BigRational;

/// Which exact field a structure lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldTag {
    /// The rationals, standing in for the reals.
    Q,
    /// The Gaussian rationals, standing in for the complex numbers.
    Qi,
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Q => write!(f, "Q"),
            FieldTag::Qi => write!(f, "Qi"),
        }
    }
}

/// An exact field with a conjugation and a squared modulus taking rational values.
///
/// Implemented by [`Rational`] (trivial conjugation) and [`GaussianRational`].
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    const TAG: FieldTag;

    fn inv(&self) -> Option<Self>;
    fn conj(&self) -> Self;
    fn from_rational(r: Rational) -> Self;
    /// `Some` when the value lies in the rational subfield.
    fn to_rational(&self) -> Option<Rational>;
    /// `|x|^2`, always rational.
    fn modulus_sq(&self) -> Rational;
    /// `re + im·i`, or `None` when the field has no such element.
    fn from_parts(re: Rational, im: Rational) -> Option<Self>;
    fn parts(&self) -> (Rational, Rational);
    /// The distinct roots of `f` lying in this field.
    fn field_roots(f: &Poly<Self>, norm_cap: u64) -> Result<Vec<Self>, ExactError>;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    fn div(&self, other: &Self) -> Result<Self, ExactError> {
        let inv = other.inv().ok_or(ExactError::DivisionByZero)?;
        Ok(self.clone() * inv)
    }
}

impl Scalar for Rational {
    const TAG: FieldTag = FieldTag::Q;

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn conj(&self) -> Self {
        self.clone()
    }

    fn from_rational(r: Rational) -> Self {
        r
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn modulus_sq(&self) -> Rational {
        self * self
    }

    fn from_parts(re: Rational, im: Rational) -> Option<Self> {
        im.is_zero().then_some(re)
    }

    fn parts(&self) -> (Rational, Rational) {
        (self.clone(), Rational::zero())
    }

    fn field_roots(f: &Poly<Self>, norm_cap: u64) -> Result<Vec<Self>, ExactError> {
        roots::rational_roots_capped(f, norm_cap)
    }
}

/// `re + im·i` with rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(
            Rational::from_integer(BigInt::from(re)),
            Rational::from_integer(BigInt::from(im)),
        )
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        Self::new(re, im)
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::new(Rational::one(), Rational::zero())
    }
}

impl Scalar for GaussianRational {
    const TAG: FieldTag = FieldTag::Qi;

    fn inv(&self) -> Option<Self> {
        let n = self.modulus_sq();
        if n.is_zero() {
            return None;
        }
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    fn from_rational(r: Rational) -> Self {
        Self::new(r, Rational::zero())
    }

    fn to_rational(&self) -> Option<Rational> {
        self.im.is_zero().then(|| self.re.clone())
    }

    fn modulus_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    fn from_parts(re: Rational, im: Rational) -> Option<Self> {
        Some(Self::new(re, im))
    }

    fn parts(&self) -> (Rational, Rational) {
        (self.re.clone(), self.im.clone())
    }

    fn field_roots(f: &Poly<Self>, norm_cap: u64) -> Result<Vec<Self>, ExactError> {
        roots::gaussian_rational_roots_capped(f, norm_cap)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// One exact field operation; `Div` by zero is the only failure.
pub fn field_arith<F: Scalar>(x: &F, y: &F, op: ArithOp) -> Result<F, ExactError> {
    match op {
        ArithOp::Add => Ok(x.clone() + y.clone()),
        ArithOp::Sub => Ok(x.clone() - y.clone()),
        ArithOp::Mul => Ok(x.clone() * y.clone()),
        ArithOp::Div => x.div(y),
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`; rejects zero denominators.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let s = s.trim();
    let bad = || ExactError::Parse(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(ExactError::DivisionByZero);
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Canonical `"p/q"` text; integers print without a denominator.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn lcm_of_denominators<'a>(it: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    it.into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fraction_addition() {
        assert_eq!(field_arith(&rat(1, 2), &rat(1, 3), ArithOp::Add).unwrap(), rat(5, 6));
    }

    #[test]
    fn gaussian_conjugate_product() {
        let a = GaussianRational::from_ints(1, 1);
        let b = GaussianRational::from_ints(1, -1);
        let p = field_arith(&a, &b, ArithOp::Mul).unwrap();
        assert_eq!(p, GaussianRational::from_ints(2, 0));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(
            field_arith(&int(1), &int(0), ArithOp::Div),
            Err(ExactError::DivisionByZero)
        );
        let z = GaussianRational::zero();
        assert!(field_arith(&GaussianRational::one(), &z, ArithOp::Div).is_err());
    }

    #[test]
    fn gaussian_inverse() {
        let a = GaussianRational::from_ints(3, -4);
        let inv = a.inv().unwrap();
        assert_eq!(a * inv, GaussianRational::one());
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(format_rational(&rat(-3, 2)), "-3/2");
        assert_eq!(format_rational(&int(7)), "7");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
