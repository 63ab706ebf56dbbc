//! Exact nonnegative rationals, the carrier of the max-times semiring.

use std::fmt;
use std::ops::{Div, Mul};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A nonnegative rational number.
///
/// `⊕` is [`Scalar::oplus`] and `⊗` is ordinary multiplication. The value is
/// always kept in lowest terms, so structural equality is numeric equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_integer(v: u64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(v)))
    }

    /// `num / den`; fails on a zero denominator.
    pub fn ratio(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    /// Shorthand for tests and literals. Panics on a zero denominator.
    pub fn frac(num: u64, den: u64) -> Self {
        Self::ratio(num, den).expect("nonzero denominator")
    }

    pub fn from_rational(r: BigRational) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::NegativeScalar(r.to_string()));
        }
        Ok(Scalar(r))
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// `a ⊕ b = max(a, b)`.
    pub fn oplus(&self, other: &Scalar) -> Scalar {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// `a ∧ b = min(a, b)`.
    pub fn meet(&self, other: &Scalar) -> Scalar {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(&self.0 / &other.0))
    }

    pub fn recip(&self) -> Result<Scalar> {
        Scalar::one().checked_div(self)
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        Scalar(Pow::pow(&self.0, exp))
    }

    /// Exact `k`-th root, if the value is the `k`-th power of a rational.
    pub fn exact_root(&self, k: u32) -> Option<Scalar> {
        assert!(k >= 1, "root index must be positive");
        if k == 1 || self.is_zero() || self.is_one() {
            return Some(self.clone());
        }
        let num = self.0.numer().magnitude();
        let den = self.0.denom().magnitude();
        let rn = num.nth_root(k);
        let rd = den.nth_root(k);
        if Pow::pow(&rn, k) == *num && Pow::pow(&rd, k) == *den {
            Some(Scalar(BigRational::new(
                BigInt::from_biguint(Sign::Plus, rn),
                BigInt::from_biguint(Sign::Plus, rd),
            )))
        } else {
            None
        }
    }

    /// Midpoint of two scalars.
    pub fn midpoint(&self, other: &Scalar) -> Scalar {
        Scalar((&self.0 + &other.0) / BigInt::from(2))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal rendering for display only; never parsed back.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let num = self.0.numer().magnitude().clone();
        let den = self.0.denom().magnitude().clone();
        let (int_part, mut rem) = num.div_rem(&den);
        if rem.is_zero() || digits == 0 {
            return int_part.to_string();
        }
        let ten = BigUint::from(10u32);
        let mut frac = String::with_capacity(digits);
        for _ in 0..digits {
            rem *= &ten;
            let (d, r) = rem.div_rem(&den);
            frac.push_str(&d.to_string());
            rem = r;
            if rem.is_zero() {
                break;
            }
        }
        format!("{int_part}.{frac}")
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar(&self.0 * &rhs.0)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 * rhs.0)
    }
}

/// Panics when dividing by zero; use [`Scalar::checked_div`] otherwise.
impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

impl From<u64> for Scalar {
    fn from(v: u64) -> Self {
        Scalar::from_integer(v)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `"p/q"`, integers and finite decimals such as `"0.25"`.
impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::Parse(s.to_string());
        if t.is_empty() {
            return Err(bad());
        }
        if t.starts_with('-') {
            return Err(Error::NegativeScalar(t.to_string()));
        }
        let parse_int = |p: &str| -> Result<BigInt> {
            if p.is_empty() || !p.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            p.parse::<BigInt>().map_err(|_| bad())
        };
        if let Some((n, d)) = t.split_once('/') {
            let n = parse_int(n.trim())?;
            let d = parse_int(d.trim())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(Scalar(BigRational::new(n, d)));
        }
        if let Some((ip, fp)) = t.split_once('.') {
            let ip = if ip.is_empty() { "0" } else { ip };
            let int = parse_int(ip)?;
            let frac = parse_int(fp)?;
            let scale = Pow::pow(BigInt::from(10), fp.len() as u32);
            return Ok(Scalar(BigRational::new(int * &scale + frac, scale)));
        }
        Ok(Scalar(BigRational::from_integer(parse_int(t)?)))
    }
}

/// Greatest common divisor over a list, with `gcd([]) = 0`.
pub fn gcd_all<I: IntoIterator<Item = usize>>(values: I) -> usize {
    values.into_iter().fold(0, |acc, v| acc.gcd(&v))
}

pub fn lcm_all<I: IntoIterator<Item = usize>>(values: I) -> usize {
    values.into_iter().fold(1, |acc, v| acc.lcm(&v))
}
