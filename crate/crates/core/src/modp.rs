//! Polynomials over a small prime field and a deterministic irreducibility test.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// Polynomial over `F_q`, residues in `[0, q)`, low-to-high, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModPolynomial {
    modulus: u64,
    coeffs: Vec<u64>,
}

impl ModPolynomial {
    pub fn new(modulus: u64, coeffs: Vec<u64>) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % modulus).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { modulus, coeffs }
    }

    pub fn zero(modulus: u64) -> Self {
        Self::new(modulus, Vec::new())
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    fn mulmod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    fn inv(&self, a: u64) -> u64 {
        // Fermat; the modulus is prime.
        let mut base = a % self.modulus;
        let mut e = self.modulus - 2;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(acc, base);
            }
            base = self.mulmod(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let q = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                (self.coeffs.get(i).copied().unwrap_or(0)
                    + other.coeffs.get(i).copied().unwrap_or(0))
                    % q
            })
            .collect();
        Self::new(q, c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let q = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                (self.coeffs.get(i).copied().unwrap_or(0) + q
                    - other.coeffs.get(i).copied().unwrap_or(0))
                    % q
            })
            .collect();
        Self::new(q, c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.modulus);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + self.mulmod(a, b)) % self.modulus;
            }
        }
        Self::new(self.modulus, out)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let q = self.modulus;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(q), self.clone());
        }
        let lc_inv = self.inv(d.coeffs[dd]);
        let mut quo = vec![0u64; r.len() - dd];
        for i in (0..quo.len()).rev() {
            let f = self.mulmod(r[i + dd], lc_inv);
            quo[i] = f;
            if f == 0 {
                continue;
            }
            for (j, &dc) in d.coeffs.iter().enumerate() {
                r[i + j] = (r[i + j] + q - self.mulmod(f, dc)) % q;
            }
        }
        (Self::new(q, quo), Self::new(q, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    pub fn make_monic(&self) -> Self {
        match self.coeffs.last() {
            None | Some(1) => self.clone(),
            Some(&lc) => {
                let inv = self.inv(lc);
                Self::new(
                    self.modulus,
                    self.coeffs.iter().map(|&c| self.mulmod(c, inv)).collect(),
                )
            }
        }
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::new(self.modulus, vec![1]).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for ModPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.degree().map_or(-1, |d| d as isize))?;
        for c in &self.coeffs {
            write!(f, " {c}")?;
        }
        write!(f, " (mod {})", self.modulus)
    }
}

/// Coefficientwise reduction of `p` into `[0, q)`.
pub fn reduce_mod(p: &IntPolynomial, q: u64) -> ModPolynomial {
    let m = BigInt::from(q);
    ModPolynomial::new(
        q,
        p.coeffs()
            .iter()
            .map(|c| c.mod_floor(&m).to_u64().expect("residue fits in u64"))
            .collect(),
    )
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            out.push(f);
            while n % f == 0 {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: a monic `p` of degree `d` over `F_q` is irreducible iff
/// `p | t^(q^d) - t` and `gcd(p, t^(q^(d/r)) - t) = 1` for every prime `r | d`.
pub fn irreducible_mod_p(p: &ModPolynomial) -> Result<bool> {
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let d = p.degree().unwrap_or(0);
    if d == 0 {
        return Err(Error::DegreeTooSmall { found: 0, min: 1 });
    }
    if d == 1 {
        return Ok(true);
    }
    let q = p.modulus();
    let t = ModPolynomial::new(q, vec![0, 1]);
    // frob[k] = t^(q^k) mod p
    let mut frob = Vec::with_capacity(d + 1);
    frob.push(t.rem(p));
    for k in 1..=d {
        let next = frob[k - 1].pow_mod(q, p);
        frob.push(next);
    }
    if frob[d].sub(&t).rem(p) != ModPolynomial::zero(q) {
        return Ok(false);
    }
    for r in prime_factors(d) {
        let g = p.gcd(&frob[d / r].sub(&t));
        if g.degree() != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}
