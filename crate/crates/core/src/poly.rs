//! Dense integer polynomials.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::dyadic::DyadicRational;
use crate::error::{Error, Result};

/// Exact integer polynomial, coefficients stored low-to-high.
///
/// The coefficient vector never carries trailing zeros, so the zero polynomial
/// is the empty vector and `degree()` is `len - 1` otherwise.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// The polynomial `t`.
    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `t^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to -1.
    pub fn degree_signed(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Maximum absolute coefficient.
    pub fn height(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Nonnegative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content, keeping the sign of the leading coefficient.
    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Primitive part with a positive leading coefficient.
    pub fn normalized(&self) -> Self {
        let p = self.primitive_part();
        if p.leading().is_some_and(Signed::is_negative) {
            -p
        } else {
            p
        }
    }

    /// `p(-t)`.
    pub fn compose_neg(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `t^k * p`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self { coeffs: v }
    }

    /// Splits `p = t^k * q` with `q(0) != 0`, returning `(k, q)`.
    pub fn strip_t_power(&self) -> (usize, Self) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (
            k,
            Self {
                coeffs: self.coeffs[k..].to_vec(),
            },
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `den^deg * p(num/den)`, an exact integer for `den > 0`.
    pub fn eval_homogeneous(&self, num: &BigInt, den: &BigInt) -> BigInt {
        // Horner on the homogenized form: acc <- acc * num + c_i * den^(deg - i)
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        for (k, c) in self.coeffs.iter().rev().enumerate() {
            if k == 0 {
                acc = c.clone();
                continue;
            }
            den_pow *= den;
            acc = acc * num + c * &den_pow;
        }
        acc
    }

    /// Sign of `p(num/den)`, evaluated exactly.
    pub fn eval_sign_at_rational(&self, num: &BigInt, den: &BigInt) -> i32 {
        assert!(den.is_positive(), "denominator must be positive");
        sign_of(&self.eval_homogeneous(num, den))
    }

    /// Sign of `p(x)` at a dyadic point.
    pub fn eval_sign_at_dyadic(&self, x: &DyadicRational) -> i32 {
        let e = x.exponent();
        if e >= 0 {
            sign_of(&self.eval(&(x.mantissa() << e as usize)))
        } else {
            // den = 2^k: Horner with shifts instead of multiplications by den^i.
            let k = (-e) as usize;
            let m = x.mantissa();
            let mut acc = BigInt::zero();
            for (j, c) in self.coeffs.iter().rev().enumerate() {
                if j == 0 {
                    acc = c.clone();
                } else {
                    acc = acc * m + (c << (k * j));
                }
            }
            sign_of(&acc)
        }
    }

    /// Pseudo-division: returns `(q, r)` with `lc(d)^(deg p - deg d + 1) * p = q*d + r`.
    pub fn pseudo_div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let Some(pd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if pd < dd {
            return (Self::zero(), self.clone());
        }
        let lc = d.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); pd - dd + 1];
        for i in (0..=pd - dd).rev() {
            let top = r[i + dd].clone();
            for c in q.iter_mut() {
                *c *= &lc;
            }
            for c in r.iter_mut() {
                *c *= &lc;
            }
            q[i] += &top;
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] -= &top * dc;
            }
        }
        (Self::new(q), Self::new(r))
    }

    /// Pseudo-remainder.
    pub fn prem(&self, d: &Self) -> Self {
        self.pseudo_div_rem(d).1
    }

    /// Division over ℤ; `None` when some step needs a non-integral quotient.
    pub fn checked_div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let lc = d.leading()?;
        let mut r = self.coeffs.clone();
        let Some(pd) = self.degree() else {
            return Some((Self::zero(), Self::zero()));
        };
        if pd < dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut q = vec![BigInt::zero(); pd - dd + 1];
        for i in (0..=pd - dd).rev() {
            let (quo, rem) = r[i + dd].div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] -= &quo * dc;
            }
            q[i] = quo;
        }
        Some((Self::new(q), Self::new(r)))
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self` over ℤ.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        match self.checked_div_rem(d) {
            Some((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Product of the distinct irreducible factors, primitive, positive leading coefficient.
    pub fn square_free_part(&self) -> Self {
        if self.is_constant() {
            return self.normalized();
        }
        let g = rational_gcd(self, &self.derivative());
        if g.is_constant() {
            return self.normalized();
        }
        let (q, r) = self.pseudo_div_rem(&g);
        debug_assert!(r.is_zero());
        q.normalized()
    }

    /// Text format `deg c0 c1 ... cdeg`; the zero polynomial is `-1`.
    pub fn to_text(&self) -> String {
        let mut s = self.degree_signed().to_string();
        for c in &self.coeffs {
            s.push(' ');
            s.push_str(&c.to_string());
        }
        s
    }

    /// Human-oriented rendering, highest degree first: `t^3 - 2*t - 5`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{i}"),
            };
            if i == 0 {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        out
    }
}

fn sign_of(v: &BigInt) -> i32 {
    match v.cmp(&BigInt::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut it = s.split_whitespace();
        let deg: isize = it
            .next()
            .ok_or_else(|| Error::Parse("empty polynomial line".into()))?
            .parse()
            .map_err(|_| Error::Parse(format!("bad degree in `{s}`")))?;
        let coeffs = it
            .map(|t| {
                t.parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad coefficient `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        if deg < -1 || coeffs.len() as isize != deg + 1 {
            return Err(Error::Parse(format!(
                "degree {deg} does not match {} coefficients",
                coeffs.len()
            )));
        }
        let p = Self::new(coeffs);
        if p.degree_signed() != deg {
            return Err(Error::Parse("leading coefficient is zero".into()));
        }
        Ok(p)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        -self.clone()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Gcd over ℚ, returned primitive with a positive leading coefficient.
///
/// Uses the primitive pseudo-remainder sequence, so every intermediate stays
/// integral and no coefficient growth beyond one pseudo-division step occurs.
pub fn rational_gcd(p: &IntPolynomial, q: &IntPolynomial) -> IntPolynomial {
    let (mut a, mut b) = (p.primitive_part(), q.primitive_part());
    if a.degree_signed() < b.degree_signed() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = a.prem(&b);
        a = b;
        b = r.primitive_part();
    }
    a.normalized()
}

/// Mignotte's polynomial `X^d - 2(aX - 1)^2 = X^d - 2a^2 X^2 + 4a X - 2`.
pub fn mignotte_poly(d: usize, a: &BigInt) -> Result<IntPolynomial> {
    if d < 3 {
        return Err(Error::InvalidParameter(format!(
            "Mignotte degree must be at least 3, got {d}"
        )));
    }
    if !a.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "Mignotte parameter must be positive, got {a}"
        )));
    }
    let mut c = vec![BigInt::zero(); d + 1];
    c[0] = BigInt::from(-2);
    c[1] = a * 4;
    c[2] = -(a * a * 2u32);
    c[d] = BigInt::one();
    Ok(IntPolynomial::new(c))
}

/// Eisenstein's criterion for a monic polynomial at `prime`.
///
/// `false` means the criterion is silent, not that `p` is reducible.
pub fn eisenstein_irreducible(p: &IntPolynomial, prime: &BigInt) -> bool {
    let Some(d) = p.degree() else {
        return false;
    };
    if d == 0 || !p.is_monic() {
        return false;
    }
    let sq = prime * prime;
    p.coeffs()[..d].iter().all(|c| c.is_multiple_of(prime)) && !p.coeff(0).is_multiple_of(&sq)
}
