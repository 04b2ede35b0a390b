//! The correspondence between Bohemian matrices and their characteristic
//! polynomials.
//!
//! Writing `P(t) = t^(2n+1) - a_{2n-2} t^(2n-2) - ... - a_0`, the coefficient
//! `a_i` is the base-`h` number whose digits are the `i`-th diagonal of the
//! padded block `D = [0 | A]` (`n x (2n-1)`), row `j` carrying weight `h^(j-1)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::matrix::BohemianSpec;
use crate::poly::IntPolynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoefficientError {
    #[error("degree {found}, expected {expected}")]
    Degree { found: isize, expected: usize },
    #[error("leading coefficient is not 1")]
    NotMonic,
    #[error("coefficient of t^{0} must vanish")]
    NonzeroTop(usize),
    #[error("a_{index} = {value} is outside [0, {bound})")]
    Range {
        index: usize,
        value: String,
        bound: String,
    },
    #[error("a_{index} = {value} is not divisible by {divisor}")]
    Divisibility {
        index: usize,
        value: String,
        divisor: String,
    },
}

/// The negated non-leading coefficients `a_0 ..= a_{2n-2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PCoefficients {
    pub n: usize,
    pub h: u64,
    pub a: Vec<BigInt>,
}

/// Admissible values of `a_i` are `scale * m` for `m ∈ [0, count)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientRange {
    pub scale: BigInt,
    pub count: BigInt,
}

/// The range of `a_i` inside the coefficient set for parameters `(n, h)`.
///
/// For `i = 2n - k`, `k ∈ [2, n+1]`: `a_i ∈ [0, h^(k-1))`.
/// For `i = n - k`, `k ∈ [2, n]`: `a_i = h^(k-1) m` with `m ∈ [0, h^(n-k+1))`.
pub fn coefficient_range(n: usize, h: u64, i: usize) -> CoefficientRange {
    assert!(
        n >= 1 && i + 2 <= 2 * n,
        "index {i} out of range for n = {n}"
    );
    let h = BigInt::from(h);
    if i + 1 >= n {
        CoefficientRange {
            scale: BigInt::one(),
            count: num_traits::pow(h, 2 * n - 1 - i),
        }
    } else {
        let k = n - i;
        CoefficientRange {
            scale: num_traits::pow(h.clone(), k - 1),
            count: num_traits::pow(h, i + 1),
        }
    }
}

impl PCoefficients {
    pub fn validate(&self) -> std::result::Result<(), CoefficientError> {
        for (i, v) in self.a.iter().enumerate() {
            let r = coefficient_range(self.n, self.h, i);
            let (m, rem) = v.div_rem(&r.scale);
            if !rem.is_zero() {
                return Err(CoefficientError::Divisibility {
                    index: i,
                    value: v.to_string(),
                    divisor: r.scale.to_string(),
                });
            }
            if m.is_negative() || m >= r.count {
                return Err(CoefficientError::Range {
                    index: i,
                    value: v.to_string(),
                    bound: (&r.count * &r.scale).to_string(),
                });
            }
        }
        Ok(())
    }

    pub fn to_polynomial(&self) -> IntPolynomial {
        let mut c: Vec<BigInt> = self.a.iter().map(|x| -x).collect();
        c.push(BigInt::zero());
        c.push(BigInt::zero());
        c.push(BigInt::one());
        IntPolynomial::new(c)
    }
}

/// Reads `a_i = -[t^i] P` and checks every constraint of the coefficient set.
pub fn poly_to_coeffs(
    p: &IntPolynomial,
    n: usize,
    h: u64,
) -> std::result::Result<PCoefficients, CoefficientError> {
    let deg = 2 * n + 1;
    if p.degree() != Some(deg) {
        return Err(CoefficientError::Degree {
            found: p.degree_signed(),
            expected: deg,
        });
    }
    if !p.is_monic() {
        return Err(CoefficientError::NotMonic);
    }
    for k in [2 * n, 2 * n - 1] {
        if !p.coeff(k).is_zero() {
            return Err(CoefficientError::NonzeroTop(k));
        }
    }
    let c = PCoefficients {
        n,
        h,
        a: (0..=2 * n - 2).map(|i| -p.coeff(i)).collect(),
    };
    c.validate()?;
    Ok(c)
}

/// Writes each `a_i` in base `h` down the `i`-th diagonal of `D = [0 | A]`.
pub fn coeffs_to_spec(c: &PCoefficients) -> Result<BohemianSpec> {
    c.validate()?;
    let n = c.n;
    let h = BigInt::from(c.h);
    let mut a = vec![vec![0u64; n]; n];
    for (i, v) in c.a.iter().enumerate() {
        let mut rest = v.clone();
        // row j (1-based) holds the digit of weight h^(j-1); D column j + i
        for j in 1..=n {
            let (q, digit) = rest.div_rem(&h);
            rest = q;
            if digit.is_zero() {
                continue;
            }
            let col = j + i; // 1-based column of D
            if col < n || col > 2 * n - 1 {
                return Err(Error::Internal(format!(
                    "nonzero digit of a_{i} lands in the padding of D"
                )));
            }
            a[j - 1][col - n] = digit
                .to_u64()
                .ok_or_else(|| Error::Internal("digit does not fit".into()))?;
        }
        if !rest.is_zero() {
            return Err(Error::Internal(format!(
                "a_{i} has more than {n} base-h digits"
            )));
        }
    }
    BohemianSpec::new(n, c.h, a)
}

/// Size of the coefficient set, `h^(n^2)`.
pub fn coefficient_set_size(n: usize, h: u64) -> BigInt {
    (0..=2 * n - 2)
        .map(|i| coefficient_range(n, h, i).count)
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::charpoly_structural;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn reads_coefficients() {
        let c = poly_to_coeffs(&p(&[-2, 0, -1, 0, 0, 1]), 2, 2).unwrap();
        assert_eq!(c.a, big(&[2, 0, 1]));
        let z = poly_to_coeffs(&p(&[0, 0, 0, 0, 0, 1]), 2, 2).unwrap();
        assert_eq!(z.a, big(&[0, 0, 0]));
    }

    #[test]
    fn rejects_out_of_set() {
        assert!(matches!(
            poly_to_coeffs(&p(&[0, 0, -2, 0, 0, 1]), 2, 2),
            Err(CoefficientError::Range { index: 2, .. })
        ));
        assert!(matches!(
            poly_to_coeffs(&p(&[-1, 0, 0, 0, 0, 1]), 2, 2),
            Err(CoefficientError::Divisibility { index: 0, .. })
        ));
        assert!(matches!(
            poly_to_coeffs(&p(&[0, 0, 0, 0, 1, 1]), 2, 2),
            Err(CoefficientError::NonzeroTop(4))
        ));
        assert!(matches!(
            poly_to_coeffs(&p(&[0, 0, 0, 0, 0, 2]), 2, 2),
            Err(CoefficientError::NotMonic)
        ));
        assert!(matches!(
            poly_to_coeffs(&p(&[0, 0, 0, 1]), 2, 2),
            Err(CoefficientError::Degree { .. })
        ));
        assert!(matches!(
            poly_to_coeffs(&p(&[0, 0, 1, 0, 0, 1]), 2, 2),
            Err(CoefficientError::Range { index: 2, .. })
        ));
    }

    #[test]
    fn diagonal_reading() {
        let c = PCoefficients {
            n: 2,
            h: 2,
            a: big(&[2, 0, 1]),
        };
        let s = coeffs_to_spec(&c).unwrap();
        assert_eq!(s.a, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(charpoly_structural(&s).unwrap(), c.to_polynomial());
        let z = PCoefficients {
            n: 3,
            h: 3,
            a: big(&[0; 5]),
        };
        assert_eq!(coeffs_to_spec(&z).unwrap().a, vec![vec![0; 3]; 3]);
    }

    #[test]
    fn set_size() {
        assert_eq!(coefficient_set_size(2, 2), BigInt::from(16));
        assert_eq!(coefficient_set_size(3, 2), BigInt::from(512));
        assert_eq!(coefficient_set_size(2, 3), BigInt::from(81));
        assert_eq!(
            coefficient_set_size(4, 3),
            num_traits::pow(BigInt::from(3), 16)
        );
    }
}
