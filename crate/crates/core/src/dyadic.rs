//! Exact dyadic rationals `m * 2^e`.
//!
//! Every interval endpoint used during root isolation is dyadic, so bisection
//! never leaves the representation and every comparison is exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The value `mantissa * 2^exponent`, kept canonical: the mantissa is odd,
/// or it is zero and the exponent is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DyadicRational {
    mantissa: BigInt,
    exponent: i64,
}

impl DyadicRational {
    pub fn new(mantissa: BigInt, exponent: i64) -> Self {
        if mantissa.is_zero() {
            return Self::zero();
        }
        let tz = mantissa.trailing_zeros().unwrap_or(0);
        Self {
            mantissa: mantissa >> tz,
            exponent: exponent + tz as i64,
        }
    }

    pub fn zero() -> Self {
        Self {
            mantissa: BigInt::zero(),
            exponent: 0,
        }
    }

    pub fn from_int<T: Into<BigInt>>(v: T) -> Self {
        Self::new(v.into(), 0)
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Self {
        Self::new(BigInt::one(), e)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    pub fn signum(&self) -> i32 {
        match self.mantissa.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Exact product with `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            mantissa: self.mantissa.clone(),
            exponent: self.exponent + k,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(
            &self.mantissa * &other.mantissa,
            self.exponent + other.exponent,
        )
    }

    pub fn midpoint(&self, other: &Self) -> Self {
        (self.clone() + other.clone()).mul_pow2(-1)
    }

    pub fn abs(&self) -> Self {
        Self {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
        }
    }

    /// Numerator and positive denominator of the value.
    pub fn to_fraction(&self) -> (BigInt, BigInt) {
        if self.exponent >= 0 {
            (&self.mantissa << self.exponent as usize, BigInt::one())
        } else {
            (
                self.mantissa.clone(),
                BigInt::one() << (-self.exponent) as usize,
            )
        }
    }

    pub fn to_rational(&self) -> BigRational {
        let (n, d) = self.to_fraction();
        BigRational::new(n, d)
    }

    /// Largest `k` with `2^k <= |self|`, for nonzero values.
    pub fn floor_log2(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(self.exponent + self.mantissa.bits() as i64 - 1)
    }

    /// Largest dyadic `m * 2^-bits` not above `r`.
    pub fn floor_of(r: &BigRational, bits: u64) -> Self {
        let scaled = r.numer() << bits as usize;
        Self::new(scaled.div_floor(r.denom()), -(bits as i64))
    }

    /// Smallest dyadic `m * 2^-bits` not below `r`.
    pub fn ceil_of(r: &BigRational, bits: u64) -> Self {
        let scaled = r.numer() << bits as usize;
        Self::new(scaled.div_ceil(r.denom()), -(bits as i64))
    }

    /// Approximate value as `f64`, for display only.
    pub fn to_f64_lossy(&self) -> f64 {
        let bits = self.mantissa.bits() as i64;
        let shift = (bits - 60).max(0);
        let m: f64 = (&self.mantissa >> shift as usize)
            .to_string()
            .parse()
            .unwrap_or(f64::NAN);
        m * 2f64.powi((self.exponent + shift).clamp(i32::MIN as i64, i32::MAX as i64) as i32)
    }
}

impl Default for DyadicRational {
    fn default() -> Self {
        Self::zero()
    }
}

fn aligned(a: &DyadicRational, b: &DyadicRational) -> (BigInt, BigInt, i64) {
    let e = a.exponent.min(b.exponent);
    (
        &a.mantissa << (a.exponent - e) as usize,
        &b.mantissa << (b.exponent - e) as usize,
        e,
    )
}

impl Add for DyadicRational {
    type Output = DyadicRational;
    fn add(self, rhs: Self) -> Self {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (a, b, e) = aligned(&self, &rhs);
        DyadicRational::new(a + b, e)
    }
}

impl Sub for DyadicRational {
    type Output = DyadicRational;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<'a> Sub<&'a DyadicRational> for &'a DyadicRational {
    type Output = DyadicRational;
    fn sub(self, rhs: &DyadicRational) -> DyadicRational {
        self.clone() - rhs.clone()
    }
}

impl Neg for DyadicRational {
    type Output = DyadicRational;
    fn neg(self) -> Self {
        Self {
            mantissa: -self.mantissa,
            exponent: self.exponent,
        }
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = aligned(self, other);
        a.cmp(&b)
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Renders as `m*2^e`.
impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mantissa, self.exponent)
    }
}

impl FromStr for DyadicRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("expected `m*2^e`, got `{s}`"));
        let (m, e) = match s.split_once("*2^") {
            Some((m, e)) => (m, e),
            None => (s, "0"),
        };
        let m: BigInt = m.trim().parse().map_err(|_| bad())?;
        let e: i64 = e.trim().parse().map_err(|_| bad())?;
        Ok(Self::new(m, e))
    }
}

impl serde::Serialize for DyadicRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for DyadicRational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
