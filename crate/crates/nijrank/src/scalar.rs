//! Exact complex scalars with rational real and imaginary parts.
//!
//! Every coefficient in the library is a [`GaussianRational`]. There is no
//! floating point anywhere: ranks over the complex numbers are discontinuous,
//! so near-degenerate structures would be misclassified by approximate
//! arithmetic.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision rational number, always stored in reduced form with a
/// positive denominator.
pub type Rational = BigRational;

/// A complex number `re + im*i` with exact rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: Rational,
    im: Rational,
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_rational(re: Rational) -> Self {
        GaussianRational {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n, 1))
    }

    /// `n/d`, as a real scalar.
    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    /// `(a/b) + (c/d) i`.
    pub fn complex(a: i64, b: i64, c: i64, d: i64) -> Self {
        GaussianRational::new(rat(a, b), rat(c, d))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        GaussianRational::new(Rational::zero(), Rational::one())
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `re^2 + im^2`, the squared modulus (a rational).
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(GaussianRational {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        GaussianRational {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        GaussianRational {
            re: &self.re + &other.re,
            im: &self.im + &other.im,
        }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        GaussianRational {
            re: &self.re - &other.re,
            im: &self.im - &other.im,
        }
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl AddAssign for GaussianRational {
    fn add_assign(&mut self, rhs: Self) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> Self {
        self.sub_ref(&rhs)
    }
}

impl SubAssign for GaussianRational {
    fn sub_assign(&mut self, rhs: Self) {
        self.re -= rhs.re;
        self.im -= rhs.im;
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> Self {
        GaussianRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Div for GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: Self) -> Self {
        let inv = rhs.inv().expect("division by zero");
        self.mul_ref(&inv)
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical text form: `"a/b"`, `"c/d i"` (written `c/di`), or `"a/b+c/di"`.
/// The unit imaginary coefficient is suppressed (`"i"`, `"-i"`, `"1/2+i"`).
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        if !self.re.is_zero() {
            out.push_str(&fmt_rational(&self.re));
        }
        if !self.im.is_zero() {
            let abs = self.im.abs();
            if self.im.is_negative() {
                out.push('-');
            } else if !self.re.is_zero() {
                out.push('+');
            }
            if !abs.is_one() {
                out.push_str(&fmt_rational(&abs));
            }
            out.push('i');
        }
        write!(f, "{}", out)
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_unsigned_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(num).ok()?;
    let d = BigInt::from_str(den).ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

impl FromStr for GaussianRational {
    type Err = Error;

    /// Accepts e.g. `"3"`, `"-1/2"`, `"i"`, `"-2/3i"`, `"1/2+1/3i"`,
    /// `"1-i"`. Whitespace and the unicode minus sign are tolerated.
    fn from_str(input: &str) -> Result<Self, Error> {
        let cleaned: String = input
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .collect();
        if cleaned.is_empty() {
            return Err(Error::ScalarSyntax(input.to_string()));
        }
        // Split into at most two signed pieces.
        let bytes = cleaned.as_bytes();
        let mut pieces: Vec<(bool, &str)> = Vec::new();
        let mut start = 0usize;
        let mut neg = false;
        let mut idx = 0usize;
        if bytes[0] == b'+' || bytes[0] == b'-' {
            neg = bytes[0] == b'-';
            start = 1;
            idx = 1;
        }
        while idx < bytes.len() {
            if bytes[idx] == b'+' || bytes[idx] == b'-' {
                pieces.push((neg, &cleaned[start..idx]));
                neg = bytes[idx] == b'-';
                start = idx + 1;
            }
            idx += 1;
        }
        pieces.push((neg, &cleaned[start..]));
        if pieces.len() > 2 || pieces.iter().any(|(_, p)| p.is_empty()) {
            return Err(Error::ScalarSyntax(input.to_string()));
        }

        let mut re = Rational::zero();
        let mut im = Rational::zero();
        let mut seen_re = false;
        let mut seen_im = false;
        for (is_neg, piece) in pieces {
            let (target_im, body) = match piece.strip_suffix('i') {
                Some(rest) => (true, rest),
                None => (false, piece),
            };
            let value = if target_im && body.is_empty() {
                Rational::one()
            } else {
                parse_unsigned_rational(body).ok_or_else(|| Error::ScalarSyntax(input.to_string()))?
            };
            let value = if is_neg { -value } else { value };
            if target_im {
                if seen_im {
                    return Err(Error::ScalarSyntax(input.to_string()));
                }
                im = value;
                seen_im = true;
            } else {
                if seen_re {
                    return Err(Error::ScalarSyntax(input.to_string()));
                }
                re = value;
                seen_re = true;
            }
        }
        Ok(GaussianRational { re, im })
    }
}
