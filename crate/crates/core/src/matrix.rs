//! Dense integer matrices, the lower-Hessenberg family and its relatives, and
//! exact characteristic polynomials.
//!
//! Two index conventions appear in the constructors:
//!
//! * the Bohemian family labels rows and columns by `[-n, n]`; label `i` lives
//!   at 0-based position `i + n` (see [`bohemian_index`]);
//! * the Mignotte matrices use 1-based labels; label `i` lives at `i - 1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// Maps a Bohemian label `i ∈ [-n, n]` to a 0-based position.
pub const fn bohemian_index(n: usize, i: isize) -> usize {
    (i + n as isize) as usize
}

/// Offset between 1-based labels and 0-based positions.
pub const ONE_BASED_OFFSET: usize = 1;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self {
            dim,
            entries: vec![BigInt::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidParameter(
                "matrix must be square and nonempty".into(),
            ));
        }
        Ok(Self {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.dim + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.dim..(r + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.entries.chunks(self.dim)
    }

    /// Maximum absolute entry.
    pub fn height(&self) -> BigInt {
        self.entries
            .iter()
            .map(|e| e.abs())
            .max()
            .unwrap_or_default()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn trace(&self) -> BigInt {
        (0..self.dim).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.dim;
        let mut a: Vec<Vec<BigInt>> = self.rows().map(|r| r.to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * prev
    }

    /// The matrix keeping only the entries equal to `value`.
    pub fn filter_entries(&self, value: &BigInt) -> Self {
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|e| {
                    if e == value {
                        e.clone()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect(),
        }
    }

    /// Text format: `dim` on the first line, then one space-separated row per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.dim);
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for IntMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let dim: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix file".into()))?
            .trim()
            .parse()
            .map_err(|_| Error::Parse("bad matrix dimension".into()))?;
        let rows = lines
            .map(|l| {
                l.split_whitespace()
                    .map(|t| {
                        t.parse::<BigInt>()
                            .map_err(|_| Error::Parse(format!("bad entry `{t}`")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Parse(format!(
                "expected {dim} rows of {dim} entries"
            )));
        }
        Self::from_rows(rows)
    }
}

/// Parameters of one member of the Bohemian family: the `(2n+1) x (2n+1)`
/// lower-Hessenberg matrix with superdiagonal `1` on labels `[-n, 0]`, `h` on
/// `[1, n-1]`, and the block `A` in rows `[1, n]` x columns `[-n, -1]`.
///
/// `a[r][c]` sits at label row `r + 1` and label column `c - n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BohemianSpec {
    pub n: usize,
    pub h: u64,
    pub a: Vec<Vec<u64>>,
}

impl BohemianSpec {
    pub fn new(n: usize, h: u64, a: Vec<Vec<u64>>) -> Result<Self> {
        let s = Self { n, h, a };
        s.validate()?;
        Ok(s)
    }

    pub fn zero(n: usize, h: u64) -> Result<Self> {
        Self::new(n, h, vec![vec![0; n]; n])
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParameter("n must be positive".into()));
        }
        if self.h < 2 {
            return Err(Error::InvalidParameter(format!(
                "h must be at least 2, got {}",
                self.h
            )));
        }
        if self.a.len() != self.n || self.a.iter().any(|r| r.len() != self.n) {
            return Err(Error::InvalidParameter(format!(
                "A must be {0}x{0}",
                self.n
            )));
        }
        for (r, row) in self.a.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v >= self.h {
                    return Err(Error::EntryOutOfRange {
                        row: r,
                        col: c,
                        value: v.to_string(),
                        allowed: format!("[0, {}]", self.h - 1),
                    });
                }
            }
        }
        Ok(())
    }

    /// Entry `B_{a,b}` for labels `a ∈ [1, n]`, `b ∈ [-n, -1]`.
    pub fn back_edge(&self, a: usize, b: isize) -> u64 {
        self.a[a - 1][(b + self.n as isize) as usize]
    }
}

pub fn build_bohemian(spec: &BohemianSpec) -> Result<IntMatrix> {
    spec.validate()?;
    let n = spec.n;
    let ni = n as isize;
    let mut m = IntMatrix::zeros(2 * n + 1);
    for i in -ni..ni {
        let w = if i <= 0 {
            BigInt::one()
        } else {
            BigInt::from(spec.h)
        };
        m.set(bohemian_index(n, i), bohemian_index(n, i + 1), w);
    }
    for a in 1..=ni {
        for b in -ni..=-1 {
            let v = spec.back_edge(a as usize, b);
            if v != 0 {
                m.set(bohemian_index(n, a), bohemian_index(n, b), BigInt::from(v));
            }
        }
    }
    Ok(m)
}

/// Recovers the spec of a family member. `h` is read from the superdiagonal
/// when `n >= 2`; otherwise it must be supplied.
pub fn bohemian_spec_from_matrix(m: &IntMatrix, h: Option<u64>) -> Result<BohemianSpec> {
    let dim = m.dim();
    if dim < 3 || dim.is_even() {
        return Err(Error::InvalidParameter(format!(
            "dimension {dim} is not 2n+1 with n >= 1"
        )));
    }
    let n = (dim - 1) / 2;
    let h = match h {
        Some(h) => h,
        None if n >= 2 => {
            let v = m.get(bohemian_index(n, 1), bohemian_index(n, 2));
            num_traits::ToPrimitive::to_u64(v).ok_or_else(|| {
                Error::InvalidParameter("superdiagonal entry is not a valid h".into())
            })?
        }
        None => return Err(Error::InvalidParameter("h is required when n = 1".into())),
    };
    let mut a = vec![vec![0u64; n]; n];
    for (r, row) in a.iter_mut().enumerate() {
        for (c, v) in row.iter_mut().enumerate() {
            let e = m.get(n + 1 + r, c);
            *v = num_traits::ToPrimitive::to_u64(e).ok_or_else(|| Error::EntryOutOfRange {
                row: n + 1 + r,
                col: c,
                value: e.to_string(),
                allowed: format!("[0, {}]", h.saturating_sub(1)),
            })?;
        }
    }
    let spec = BohemianSpec::new(n, h, a)?;
    if build_bohemian(&spec)? != *m {
        return Err(Error::InvalidParameter(
            "matrix is not a member of the lower-Hessenberg family".into(),
        ));
    }
    Ok(spec)
}

/// `det(tI - B)` read off the back edges: a back edge `(a, b)` closes a single
/// simple cycle of length `a - b + 1` and weight `B_{a,b} h^(a-1)`, giving
/// `t^(2n+1) - sum_k a_k t^k` with `a_k = sum_{a-b = 2n-k} B_{a,b} h^(a-1)`.
pub fn charpoly_structural(spec: &BohemianSpec) -> Result<IntPolynomial> {
    spec.validate()?;
    let n = spec.n;
    let h = BigInt::from(spec.h);
    let mut coeffs = vec![BigInt::zero(); 2 * n + 2];
    coeffs[2 * n + 1] = BigInt::one();
    let mut hp = BigInt::one();
    for a in 1..=n {
        for b in 1..=n {
            // label column -b
            let v = spec.back_edge(a, -(b as isize));
            if v != 0 {
                let k = 2 * n - (a + b);
                coeffs[k] -= &hp * v;
            }
        }
        hp *= &h;
    }
    Ok(IntPolynomial::new(coeffs))
}

/// `det(tI - M)` by evaluation at `t = 0..=dim` (Bareiss determinants) and
/// exact Newton forward-difference interpolation.
///
/// Every forward difference `Δ^k f(0)` of an integer polynomial is divisible by
/// `k!`; a failed division means an arithmetic bug and is reported as such.
pub fn charpoly_oracle(m: &IntMatrix) -> Result<IntPolynomial> {
    let n = m.dim();
    let values: Vec<BigInt> = (0..=n)
        .map(|x| {
            let mut shifted = m.clone();
            for r in 0..n {
                for c in 0..n {
                    let v = -m.get(r, c);
                    shifted.set(r, c, if r == c { v + x } else { v });
                }
            }
            shifted.determinant()
        })
        .collect();

    // forward differences in place: diffs[k] = Δ^k f(0)
    let mut diffs = values;
    for k in 1..=n {
        for i in (k..=n).rev() {
            let d = &diffs[i] - &diffs[i - 1];
            diffs[i] = d;
        }
    }

    // f(t) = sum_k (Δ^k f(0) / k!) * t(t-1)...(t-k+1)
    let mut result = IntPolynomial::zero();
    let mut falling = IntPolynomial::one();
    let mut fact = BigInt::one();
    for (k, d) in diffs.iter().enumerate() {
        if k > 0 {
            fact *= k;
            falling = &falling * &IntPolynomial::from_i64s(&[-(k as i64 - 1), 1]);
        }
        let (b, rem) = d.div_rem(&fact);
        if !rem.is_zero() {
            return Err(Error::Internal(format!(
                "interpolation: forward difference {k} is not divisible by {k}!"
            )));
        }
        if !b.is_zero() {
            result = &result + &falling.scale(&b);
        }
    }
    if result.degree() != Some(n) || !result.is_monic() {
        return Err(Error::Internal(
            "interpolated characteristic polynomial is not monic".into(),
        ));
    }
    Ok(result)
}

fn require_odd(n: usize) -> Result<()> {
    if n < 3 || n.is_even() {
        return Err(Error::InvalidParameter(format!(
            "n must be odd and at least 3, got {n}"
        )));
    }
    Ok(())
}

/// Superdiagonal of `n + 1` ones followed by `n - 1` copies of `h`.
fn mignotte_skeleton(n: usize, h: u64) -> IntMatrix {
    let mut m = IntMatrix::zeros(2 * n + 1);
    for i in 0..2 * n {
        let w = if i <= n {
            BigInt::one()
        } else {
            BigInt::from(h)
        };
        m.set(i, i + 1, w);
    }
    m
}

fn set_one_based(m: &mut IntMatrix, r: usize, c: usize, v: i64) {
    m.set(r - ONE_BASED_OFFSET, c - ONE_BASED_OFFSET, BigInt::from(v));
}

/// The `h = 2` Mignotte matrix: `M_{n+3,1} = 1`, `M_{(3n+3)/2,(n+1)/2} = 2`,
/// `M_{2n,n} = 1` (1-based).
pub fn build_mignotte_h2(n: usize) -> Result<IntMatrix> {
    require_odd(n)?;
    let mut m = mignotte_skeleton(n, 2);
    set_one_based(&mut m, n + 3, 1, 1);
    set_one_based(&mut m, (3 * n + 3) / 2, (n + 1) / 2, 2);
    set_one_based(&mut m, 2 * n, n, 1);
    Ok(m)
}

/// Same characteristic polynomial as [`build_mignotte_h2`], with the middle
/// exceptional `2` replaced by a `1` one step to the south-east, which puts the
/// matrix inside the Bohemian family.
pub fn build_mignotte_h2_in_family(n: usize) -> Result<IntMatrix> {
    require_odd(n)?;
    let mut m = mignotte_skeleton(n, 2);
    set_one_based(&mut m, n + 3, 1, 1);
    set_one_based(&mut m, (3 * n + 5) / 2, (n + 3) / 2, 1);
    set_one_based(&mut m, 2 * n, n, 1);
    Ok(m)
}

/// A constructed matrix plus whether its height exceeds the nominal `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MignotteMatrix {
    pub matrix: IntMatrix,
    /// Set when an exceptional entry exceeds `h` (only `h = 3`, entry 4).
    pub height_violation: bool,
}

/// `M_n(h)` for `h > 2`: exceptional entries `M_{n+2,2} = 2`,
/// `M_{(3n+1)/2,(n+3)/2} = 4`, `M_{2n-1,n+1} = 2` (1-based).
pub fn build_mignotte(n: usize, h: u64) -> Result<MignotteMatrix> {
    require_odd(n)?;
    if h < 3 {
        return Err(Error::InvalidParameter(format!(
            "h must be at least 3, got {h}"
        )));
    }
    let mut m = mignotte_skeleton(n, h);
    set_one_based(&mut m, n + 2, 2, 2);
    set_one_based(&mut m, (3 * n + 1) / 2, (n + 3) / 2, 4);
    set_one_based(&mut m, 2 * n - 1, n + 1, 2);
    Ok(MignotteMatrix {
        matrix: m,
        height_violation: h < 4,
    })
}

/// Replaces every entry by a 2x2 block: `0` by zeros, `1` by the identity,
/// `2` by the all-ones block.
pub fn double_cover(m: &IntMatrix) -> Result<IntMatrix> {
    let n = m.dim();
    let mut out = IntMatrix::zeros(2 * n);
    for r in 0..n {
        for c in 0..n {
            let v = m.get(r, c);
            let block: [[i64; 2]; 2] = if v.is_zero() {
                continue;
            } else if v.is_one() {
                [[1, 0], [0, 1]]
            } else if *v == BigInt::from(2) {
                [[1, 1], [1, 1]]
            } else {
                return Err(Error::EntryOutOfRange {
                    row: r,
                    col: c,
                    value: v.to_string(),
                    allowed: "{0, 1, 2}".into(),
                });
            };
            for (i, brow) in block.iter().enumerate() {
                for (j, &b) in brow.iter().enumerate() {
                    if b != 0 {
                        out.set(2 * r + i, 2 * c + j, BigInt::from(b));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Symmetric tridiagonal matrix with unit off-diagonals and diagonal `h, 0, ..., 0, h`.
pub fn build_wilkinson(n: usize, h: u64) -> Result<IntMatrix> {
    if n < 3 || h < 2 {
        return Err(Error::InvalidParameter(format!(
            "Wilkinson matrix needs n >= 3 and h >= 2, got n={n}, h={h}"
        )));
    }
    let mut m = IntMatrix::zeros(n);
    for i in 0..n - 1 {
        m.set(i, i + 1, BigInt::one());
        m.set(i + 1, i, BigInt::one());
    }
    m.set(0, 0, BigInt::from(h));
    m.set(n - 1, n - 1, BigInt::from(h));
    Ok(m)
}

pub const NEWTON_CHECK_LIMIT: usize = 64;

/// Checks Newton's identities between `charpoly_oracle(m)` and the exact power
/// traces `Tr(M^j)`, `j = 1..=dim`.
pub fn newton_check(m: &IntMatrix) -> Result<bool> {
    newton_check_with_limit(m, NEWTON_CHECK_LIMIT)
}

pub fn newton_check_with_limit(m: &IntMatrix, limit: usize) -> Result<bool> {
    let n = m.dim();
    if n > limit {
        return Err(Error::DimensionLimit { dim: n, limit });
    }
    let chi = charpoly_oracle(m)?;
    let mut traces = Vec::with_capacity(n + 1);
    traces.push(BigInt::from(n));
    let mut power = m.clone();
    for j in 1..=n {
        if j > 1 {
            power = power.mul(m);
        }
        traces.push(power.trace());
    }
    // chi = t^n + c_{n-1} t^{n-1} + ... ; k c_{n-k} = -sum_{i=1..k} c_{n-k+i} p_i
    for k in 1..=n {
        let mut s = BigInt::zero();
        for i in 1..=k {
            s += chi.coeff(n - k + i) * &traces[i];
        }
        if chi.coeff(n - k) * k != -s {
            return Ok(false);
        }
    }
    Ok(true)
}
