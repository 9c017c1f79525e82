//! Exact Gaussian-rational scalars.
//!
//! Every exact computation in the crate happens over `Q(i)`. A [`QiScalar`]
//! stores its real and imaginary parts as reduced [`BigRational`]s, so the
//! representation is canonical and `==` is structural equality.
//!
//! The textual form is `p/q+r/s*i` with omitted parts allowed (`3`,
//! `-1/2*i`, `1-i`); [`QiScalar`]'s `Display` output always parses back to
//! the same value.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QiScalar {
    re: BigRational,
    im: BigRational,
}

/// The four field operations accepted by [`qi_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Applies `op` to `x` and `y`; division by zero is an error.
pub fn qi_arith(x: &QiScalar, y: &QiScalar, op: ArithOp) -> Result<QiScalar> {
    Ok(match op {
        ArithOp::Add => x + y,
        ArithOp::Sub => x - y,
        ArithOp::Mul => x * y,
        ArithOp::Div => x.checked_div(y)?,
    })
}

/// Compares `|x|` with 1 exactly.
pub fn qi_modulus_cmp_one(x: &QiScalar) -> Ordering {
    x.norm_sqr().cmp(&BigRational::one())
}

impl QiScalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        // BigRational is normalized on construction, so nothing else to do.
        QiScalar { re, im }
    }

    pub fn from_rational(re: BigRational) -> Self {
        QiScalar {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `re_num/re_den + (im_num/im_den) i`. Panics on a zero denominator.
    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        QiScalar {
            re: BigRational::new(re_num.into(), re_den.into()),
            im: BigRational::new(im_num.into(), im_den.into()),
        }
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_parts(num, den, 0, 1)
    }

    pub fn i() -> Self {
        Self::from_parts(0, 1, 1, 1)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        QiScalar {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `re² + im²`, exact.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let n = self.norm_sqr();
        Ok(QiScalar {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    pub fn checked_div(&self, rhs: &QiScalar) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut acc = QiScalar::one();
        for _ in 0..exp.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// `(-1)^exp`.
    pub fn sign(exp: u64) -> Self {
        if exp.is_multiple_of(2) {
            QiScalar::one()
        } else {
            -QiScalar::one()
        }
    }

    /// Lossy conversion for the floating-point layer.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Zero for QiScalar {
    fn zero() -> Self {
        QiScalar::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for QiScalar {
    fn one() -> Self {
        QiScalar::from_rational(BigRational::one())
    }
}

impl From<i64> for QiScalar {
    fn from(n: i64) -> Self {
        QiScalar::from_int(n)
    }
}

impl From<BigRational> for QiScalar {
    fn from(r: BigRational) -> Self {
        QiScalar::from_rational(r)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl<'a, 'b> $trait<&'b QiScalar> for &'a QiScalar {
            type Output = QiScalar;
            fn $method(self, rhs: &'b QiScalar) -> QiScalar {
                let ($a, $b) = (self, rhs);
                $body
            }
        }
        impl $trait<QiScalar> for QiScalar {
            type Output = QiScalar;
            fn $method(self, rhs: QiScalar) -> QiScalar {
                (&self).$method(&rhs)
            }
        }
        impl<'b> $trait<&'b QiScalar> for QiScalar {
            type Output = QiScalar;
            fn $method(self, rhs: &'b QiScalar) -> QiScalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<QiScalar> for &'a QiScalar {
            type Output = QiScalar;
            fn $method(self, rhs: QiScalar) -> QiScalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| QiScalar {
    re: &a.re + &b.re,
    im: &a.im + &b.im,
});
forward_binop!(Sub, sub, |a, b| QiScalar {
    re: &a.re - &b.re,
    im: &a.im - &b.im,
});
forward_binop!(Mul, mul, |a, b| {
    if a.im.is_zero() && b.im.is_zero() {
        QiScalar::from_rational(&a.re * &b.re)
    } else {
        QiScalar {
            re: &a.re * &b.re - &a.im * &b.im,
            im: &a.re * &b.im + &a.im * &b.re,
        }
    }
});
// Panics on a zero divisor, like the integer types; use `checked_div` for a `Result`.
forward_binop!(Div, div, |a, b| a
    .checked_div(b)
    .expect("division of QiScalar by zero"));

impl Neg for QiScalar {
    type Output = QiScalar;
    fn neg(self) -> QiScalar {
        QiScalar {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &QiScalar {
    type Output = QiScalar;
    fn neg(self) -> QiScalar {
        QiScalar {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl AddAssign<&QiScalar> for QiScalar {
    fn add_assign(&mut self, rhs: &QiScalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&QiScalar> for QiScalar {
    fn sub_assign(&mut self, rhs: &QiScalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&QiScalar> for QiScalar {
    fn mul_assign(&mut self, rhs: &QiScalar) {
        *self = &*self * rhs;
    }
}

impl Sum for QiScalar {
    fn sum<I: Iterator<Item = QiScalar>>(iter: I) -> Self {
        iter.fold(QiScalar::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl Product for QiScalar {
    fn product<I: Iterator<Item = QiScalar>>(iter: I) -> Self {
        iter.fold(QiScalar::one(), |acc, x| acc * x)
    }
}

impl fmt::Display for QiScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}*i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{}*i", self.re, -&self.im)
                } else {
                    write!(f, "{}+{}*i", self.re, self.im)
                }
            }
        }
    }
}

impl fmt::Debug for QiScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QiScalar({self})")
    }
}

fn parse_error(input: &str, position: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        input: input.to_string(),
        position,
        reason: reason.into(),
    }
}

/// Parses `[+-]digits[/digits]` starting at byte `offset` of `full`.
fn parse_rational(full: &str, part: &str, offset: usize) -> Result<BigRational> {
    let (sign, body, body_at) = match part.as_bytes().first() {
        Some(b'-') => (-1, &part[1..], offset + 1),
        Some(b'+') => (1, &part[1..], offset + 1),
        _ => (1, part, offset),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |s: &str, at: usize| -> Result<BigInt> {
        if s.is_empty() {
            return Err(parse_error(full, at, "expected digits"));
        }
        if let Some(bad) = s.find(|c: char| !c.is_ascii_digit()) {
            return Err(parse_error(full, at + bad, "unexpected character"));
        }
        Ok(s.parse::<BigInt>().expect("ascii digits"))
    };
    let n = digits(num, body_at)?;
    let d = match den {
        Some(d) => {
            let at = body_at + num.len() + 1;
            let d = digits(d, at)?;
            if d.is_zero() {
                return Err(parse_error(full, at, "zero denominator"));
            }
            d
        }
        None => BigInt::one(),
    };
    Ok(BigRational::new(n * sign, d))
}

impl FromStr for QiScalar {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let lead = input.len() - input.trim_start().len();
        let s = input.trim();
        if s.is_empty() {
            return Err(parse_error(input, 0, "empty scalar"));
        }
        let Some(head) = s.strip_suffix('i') else {
            return Ok(QiScalar::from_rational(parse_rational(input, s, lead)?));
        };
        // Split real and imaginary parts at the last sign that is not leading.
        let split = head
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .next_back();
        let (re_part, im_part, im_at) = match split {
            Some(k) => (&head[..k], &head[k..], lead + k),
            None => ("", head, lead),
        };
        let re = if re_part.is_empty() {
            BigRational::zero()
        } else {
            parse_rational(input, re_part, lead)?
        };
        let coeff = im_part.strip_suffix('*').unwrap_or(im_part);
        let im = match coeff {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            c => parse_rational(input, c, im_at)?,
        };
        Ok(QiScalar { re, im })
    }
}

impl Serialize for QiScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QiScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
