//! Closed-form gap and height bounds, kept exact as rationals with directed
//! dyadic roundings for use as certification thresholds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::dyadic::DyadicRational;
use crate::error::{Error, Result};

/// Extra bits beyond the denominator size used for directed rounding; gives
/// relative error at most `2^-64`.
const ROUNDING_BITS: u64 = 64;

/// An exact rational bound with dyadic enclosures `lower <= value <= upper`.
/// Both roundings coincide with `value` when it is dyadic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactBound {
    pub value: BigRational,
    pub lower: DyadicRational,
    pub upper: DyadicRational,
}

impl ExactBound {
    pub fn new(value: BigRational) -> Self {
        let bits = value.denom().bits() + ROUNDING_BITS;
        Self {
            lower: DyadicRational::floor_of(&value, bits),
            upper: DyadicRational::ceil_of(&value, bits),
            value,
        }
    }

    /// `1 / den`.
    pub fn reciprocal(den: BigInt) -> Self {
        Self::new(BigRational::new(BigInt::one(), den))
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    /// `p/q` rendering of the exact value.
    pub fn value_string(&self) -> String {
        format!("{}/{}", self.value.numer(), self.value.denom())
    }
}

impl Serialize for ExactBound {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ExactBound", 3)?;
        st.serialize_field("value", &self.value_string())?;
        st.serialize_field("lower", &self.lower)?;
        st.serialize_field("upper", &self.upper)?;
        st.end()
    }
}

fn big_pow(base: u64, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(base), e)
}

/// Mignotte's separation bound `a^(-(d+2)/2)` for even `d`.
pub fn mignotte_gap_bound(d: usize, a: u64) -> Result<ExactBound> {
    if d.is_odd() {
        return Err(Error::InvalidParameter(format!("d must be even, got {d}")));
    }
    if a == 0 {
        return Err(Error::InvalidParameter("a must be positive".into()));
    }
    Ok(ExactBound::reciprocal(big_pow(a, (d + 2) / 2)))
}

/// Which construction the explicit bound refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExplicitBoundVariant {
    /// `h^(-(n+3)(n-3)/4)` for the `h > 2` matrix and its statement for every `h >= 2`.
    General,
    /// `2^(-(n+5)(n-3)/4)` for the `h = 2` Mignotte matrix.
    H2,
}

/// Gap bound claimed for the explicit `(2n+1) x (2n+1)` constructions.
pub fn explicit_gap_bound(n: usize, h: u64, variant: ExplicitBoundVariant) -> Result<ExactBound> {
    if n < 5 || n.is_even() {
        return Err(Error::InvalidParameter(format!(
            "n must be odd and at least 5, got {n}"
        )));
    }
    match variant {
        ExplicitBoundVariant::General => {
            if h < 2 {
                return Err(Error::InvalidParameter(format!(
                    "h must be at least 2, got {h}"
                )));
            }
            Ok(ExactBound::reciprocal(big_pow(h, (n + 3) * (n - 3) / 4)))
        }
        ExplicitBoundVariant::H2 => Ok(ExactBound::reciprocal(big_pow(2, (n + 5) * (n - 3) / 4))),
    }
}

/// Tridiagonal baseline `2 h^(-(n-2))`.
pub fn parlett_lu_bound(n: usize, h: u64) -> Result<ExactBound> {
    if n < 2 || h == 0 {
        return Err(Error::InvalidParameter(format!(
            "need n >= 2 and h >= 1, got n={n}, h={h}"
        )));
    }
    Ok(ExactBound::new(BigRational::new(
        BigInt::from(2),
        big_pow(h, n - 2),
    )))
}

/// `(2 sqrt(n) h)^(-n(n-1))`. Since `n(n-1)` is even this equals
/// `(4 n h^2)^(-n(n-1)/2)`, a rational; `lower` is the certified lower bound.
pub fn mahler_lower_bound(n: usize, h: u64) -> Result<ExactBound> {
    if n < 2 || h == 0 {
        return Err(Error::InvalidParameter(format!(
            "need n >= 2 and h >= 1, got n={n}, h={h}"
        )));
    }
    let base = BigInt::from(4u64) * n * BigInt::from(h) * h;
    Ok(ExactBound::reciprocal(num_traits::pow(
        base,
        n * (n - 1) / 2,
    )))
}

/// `ceil(2^n (sqrt(n) h)^n) = ceil(sqrt((4 n h^2)^n))`, computed exactly.
pub fn hadamard_height_bound(n: usize, h: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let square = num_traits::pow(BigInt::from(4u64) * n * BigInt::from(h) * h, n);
    if square.is_zero() {
        return Ok(BigInt::zero());
    }
    let r = square.sqrt();
    Ok(if &r * &r == square { r } else { r + 1 })
}
