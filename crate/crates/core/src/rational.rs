//! Exact rational scalars.
//!
//! [`Rational`] is always held in lowest terms with a positive denominator,
//! so structural equality is value equality. The text form is `n` for
//! integers and `n/d` otherwise, with no whitespace.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational at position {position}")]
    Empty { position: usize },
    #[error("unexpected character {found:?} at position {position}")]
    Syntax { position: usize, found: char },
    #[error("missing digits at position {position}")]
    MissingDigits { position: usize },
    #[error("zero denominator at position {position}")]
    ZeroDenominator { position: usize },
}

impl ParseRationalError {
    pub fn position(&self) -> usize {
        match *self {
            ParseRationalError::Empty { position }
            | ParseRationalError::Syntax { position, .. }
            | ParseRationalError::MissingDigits { position }
            | ParseRationalError::ZeroDenominator { position } => position,
        }
    }

    /// Shifts the reported position, for errors found inside a larger input.
    pub fn offset(self, by: usize) -> Self {
        match self {
            ParseRationalError::Empty { position } => ParseRationalError::Empty { position: position + by },
            ParseRationalError::Syntax { position, found } => ParseRationalError::Syntax {
                position: position + by,
                found,
            },
            ParseRationalError::MissingDigits { position } => {
                ParseRationalError::MissingDigits { position: position + by }
            }
            ParseRationalError::ZeroDenominator { position } => {
                ParseRationalError::ZeroDenominator { position: position + by }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("division by zero")]
pub struct DivisionByZero;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Applies one field operation. Only `Div` by zero can fail.
pub fn rat_arith(op: ArithOp, a: &Rational, b: &Rational) -> Result<Rational, DivisionByZero> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

impl Rational {
    pub fn new(numerator: BigInt, denominator: BigInt) -> Result<Self, DivisionByZero> {
        if denominator.is_zero() {
            return Err(DivisionByZero);
        }
        // Ratio::new reduces and normalizes the sign onto the numerator.
        Ok(Rational(BigRational::new(numerator, denominator)))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(value.into()))
    }

    /// `numerator / denominator` for machine integers.
    ///
    /// Panics if `denominator` is zero.
    pub fn from_ratio(numerator: i64, denominator: i64) -> Self {
        Rational::new(numerator.into(), denominator.into()).expect("zero denominator")
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
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

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational, DivisionByZero> {
        if rhs.is_zero() {
            return Err(DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Rational, DivisionByZero> {
        Rational::one().checked_div(self)
    }

    pub fn pow(&self, exp: u32) -> Rational {
        let mut acc = Rational::one();
        for _ in 0..exp {
            acc *= self;
        }
        acc
    }

    /// Larger of the numerator and denominator bit lengths.
    pub fn bits(&self) -> u64 {
        self.numer().bits().max(self.denom().bits())
    }

    /// True when the stored value is in lowest terms with a positive denominator.
    pub fn is_canonical(&self) -> bool {
        use num_integer::Integer;
        self.denom().is_positive() && self.numer().gcd(self.denom()).is_one()
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

/// Parses `[+-]digits` or `[+-]digits/digits`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    if text.is_empty() {
        return Err(ParseRationalError::Empty { position: 0 });
    }
    let bytes = text.as_bytes();
    let mut pos = 0;
    let negative = match bytes[0] {
        b'-' => {
            pos = 1;
            true
        }
        b'+' => {
            pos = 1;
            false
        }
        _ => false,
    };
    let (numerator, next) = scan_digits(text, pos)?;
    pos = next;
    let denominator = if pos == text.len() {
        BigInt::one()
    } else if bytes[pos] == b'/' {
        let den_start = pos + 1;
        let (den, next) = scan_digits(text, den_start)?;
        if next != text.len() {
            return Err(syntax_at(text, next));
        }
        if den.is_zero() {
            return Err(ParseRationalError::ZeroDenominator { position: den_start });
        }
        den
    } else {
        return Err(syntax_at(text, pos));
    };
    let numerator = if negative { -numerator } else { numerator };
    Ok(Rational(BigRational::new(numerator, denominator)))
}

fn scan_digits(text: &str, start: usize) -> Result<(BigInt, usize), ParseRationalError> {
    let end = text[start..]
        .find(|c: char| !c.is_ascii_digit())
        .map_or(text.len(), |off| start + off);
    if end == start {
        return match text[start..].chars().next() {
            Some(found) => Err(ParseRationalError::Syntax { position: start, found }),
            None => Err(ParseRationalError::MissingDigits { position: start }),
        };
    }
    let value = text[start..end].parse::<BigInt>().expect("ascii digits");
    Ok((value, end))
}

fn syntax_at(text: &str, position: usize) -> ParseRationalError {
    let found = text[position..].chars().next().unwrap_or('\0');
    ParseRationalError::Syntax { position, found }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_rational(s)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_integer(value)
    }
}

impl From<BigInt> for Rational {
    fn from(value: BigInt) -> Self {
        Rational::from_integer(value)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(&self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

// Panics on a zero divisor, like the integer types; use `checked_div` otherwise.
forward_binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

impl<'a> Product<&'a Rational> for Rational {
    fn product<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}
