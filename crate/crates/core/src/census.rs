//! Exhaustive, shardable enumeration of the Bohemian family and of its
//! coefficient set, plus the mod-5 irreducibility census.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bijection::{coefficient_range, coeffs_to_spec, poly_to_coeffs, PCoefficients};
use crate::dyadic::DyadicRational;
use crate::error::{Error, Result};
use crate::matrix::{build_bohemian, charpoly_oracle, charpoly_structural, BohemianSpec};
use crate::modp::{irreducible_mod_p, reduce_mod, ModPolynomial};
use crate::poly::{rational_gcd, IntPolynomial};
use crate::rootgap::cauchy_bound;

pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

/// Contiguous slice `index` of `count` equal-ish parts of an enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Shard {
    pub index: u64,
    pub count: u64,
}

impl Shard {
    pub const ALL: Shard = Shard { index: 0, count: 1 };

    pub fn new(index: u64, count: u64) -> Result<Self> {
        if count == 0 || index >= count {
            return Err(Error::InvalidParameter(format!(
                "shard index {index} out of range for {count} shards"
            )));
        }
        Ok(Self { index, count })
    }

    /// The half-open index range this shard covers out of `total`.
    pub fn range(&self, total: u64) -> std::ops::Range<u64> {
        let start = (total as u128 * self.index as u128 / self.count as u128) as u64;
        let end = (total as u128 * (self.index + 1) as u128 / self.count as u128) as u64;
        start..end
    }
}

fn family_size(n: usize, h: u64, cap: u64) -> Result<u64> {
    let size = num_traits::pow(BigInt::from(h), n * n);
    match size.to_u64() {
        Some(s) if s <= cap => Ok(s),
        _ => Err(Error::EnumerationCap {
            size: size.to_string(),
            cap,
        }),
    }
}

/// Lexicographic enumeration of the `A` blocks (row-major, most significant
/// digit first), restricted to one shard.
pub struct SpecIter {
    n: usize,
    h: u64,
    next: u64,
    end: u64,
}

impl Iterator for SpecIter {
    type Item = BohemianSpec;

    fn next(&mut self) -> Option<BohemianSpec> {
        if self.next >= self.end {
            return None;
        }
        let spec = spec_at(self.n, self.h, self.next);
        self.next += 1;
        Some(spec)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = (self.end - self.next) as usize;
        (r, Some(r))
    }
}

fn spec_at(n: usize, h: u64, mut index: u64) -> BohemianSpec {
    let mut digits = vec![0u64; n * n];
    for d in digits.iter_mut().rev() {
        *d = index % h;
        index /= h;
    }
    BohemianSpec {
        n,
        h,
        a: digits.chunks(n).map(|r| r.to_vec()).collect(),
    }
}

pub fn enumerate_specs(n: usize, h: u64, shard: Shard) -> Result<SpecIter> {
    enumerate_specs_capped(n, h, shard, u64::MAX)
}

pub fn enumerate_specs_capped(n: usize, h: u64, shard: Shard, cap: u64) -> Result<SpecIter> {
    if n == 0 || h < 2 {
        return Err(Error::InvalidParameter(format!(
            "need n >= 1 and h >= 2, got n={n}, h={h}"
        )));
    }
    let total = family_size(n, h, cap)?;
    let r = shard.range(total);
    Ok(SpecIter {
        n,
        h,
        next: r.start,
        end: r.end,
    })
}

/// Enumerates the coefficient set directly from its ranges, restricted to a shard.
pub fn enumerate_coefficients(
    n: usize,
    h: u64,
    shard: Shard,
    cap: u64,
) -> Result<impl Iterator<Item = PCoefficients>> {
    let total = family_size(n, h, cap)?;
    let ranges: Vec<(u64, u64)> = (0..=2 * n - 2)
        .map(|i| {
            let r = coefficient_range(n, h, i);
            (r.scale.to_u64().unwrap(), r.count.to_u64().unwrap())
        })
        .collect();
    Ok(shard.range(total).map(move |mut idx| {
        let mut a = vec![BigInt::zero(); ranges.len()];
        // a_0 is the least significant digit
        for (i, &(scale, count)) in ranges.iter().enumerate() {
            a[i] = BigInt::from(scale) * (idx % count);
            idx /= count;
        }
        PCoefficients { n, h, a }
    }))
}

/// `a ∈ {h^(n-2), 2 h^(n-2)}` that is a quadratic nonresidue mod 5.
pub fn choose_a(n: usize, h: u64) -> Result<u64> {
    if n < 2 || h < 2 {
        return Err(Error::InvalidParameter(format!(
            "need n >= 2 and h >= 2, got n={n}, h={h}"
        )));
    }
    if h % 5 == 0 {
        return Err(Error::InvalidParameter(format!(
            "h = {h} is a multiple of 5"
        )));
    }
    let base = h
        .checked_pow((n - 2) as u32)
        .ok_or_else(|| Error::InvalidParameter("h^(n-2) overflows".into()))?;
    let is_nonresidue = |x: u64| matches!(x % 5, 2 | 3);
    [base, 2 * base]
        .into_iter()
        .find(|&x| is_nonresidue(x))
        .ok_or_else(|| Error::Internal("neither candidate is a nonresidue mod 5".into()))
}

fn decimal<S: serde::Serializer>(v: &u64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn decimal_opt<S: serde::Serializer>(
    v: &Option<u64>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

fn rational<S: serde::Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", v.numer(), v.denom()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CensusMode {
    Bijection,
    Mod5,
}

/// Outcome of a census run. Counts serialize as base-10 strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub mode: CensusMode,
    pub n: usize,
    pub h: u64,
    pub shard: Shard,
    #[serde(serialize_with = "decimal")]
    pub total_enumerated: u64,
    #[serde(serialize_with = "decimal")]
    pub distinct_charpolys: u64,
    pub all_in_p: bool,
    /// Both directions of the matrix/polynomial correspondence reproduce their input.
    pub roundtrip_ok: bool,
    #[serde(serialize_with = "decimal")]
    pub oracle_checked: u64,
    #[serde(serialize_with = "decimal")]
    pub oracle_mismatches: u64,
    #[serde(serialize_with = "decimal_opt")]
    pub mod5_a: Option<u64>,
    #[serde(serialize_with = "decimal_opt")]
    pub mod5_matching_count: Option<u64>,
    #[serde(serialize_with = "decimal_opt")]
    pub mod5_expected_count: Option<u64>,
    /// Every match reduces to `t` times an irreducible of degree `2n` mod 5.
    pub mod5_factorization_ok: Option<bool>,
    /// The degree-`2n` irreducible factors of distinct matches share no root.
    pub pairwise_coprime: Option<bool>,
    #[serde(serialize_with = "decimal_opt")]
    pub distinct_root_lower_bound: Option<u64>,
    #[serde(serialize_with = "rational")]
    pub theorem_bound: BigRational,
    /// The stronger count `2n / 5^(2n-1) * h^(n^2)`, recorded but not asserted.
    #[serde(serialize_with = "rational")]
    pub text_bound: BigRational,
    pub theorem_bound_met: Option<bool>,
    /// Largest Cauchy root bound over the matched polynomials.
    pub max_cauchy_bound: Option<DyadicRational>,
}

impl CensusReport {
    fn empty(mode: CensusMode, n: usize, h: u64, shard: Shard) -> Self {
        let hn2 = num_traits::pow(BigInt::from(h), n * n);
        let five = BigInt::from(5);
        let two_n = BigInt::from(2 * n);
        Self {
            mode,
            n,
            h,
            shard,
            total_enumerated: 0,
            distinct_charpolys: 0,
            all_in_p: true,
            roundtrip_ok: true,
            oracle_checked: 0,
            oracle_mismatches: 0,
            mod5_a: None,
            mod5_matching_count: None,
            mod5_expected_count: None,
            mod5_factorization_ok: None,
            pairwise_coprime: None,
            distinct_root_lower_bound: None,
            theorem_bound: BigRational::new(&two_n * &hn2, num_traits::pow(five.clone(), 2 * n)),
            text_bound: BigRational::new(&two_n * &hn2, num_traits::pow(five, 2 * n - 1)),
            theorem_bound_met: None,
            max_cauchy_bound: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn is_full_run(&self) -> bool {
        self.shard.count == 1
    }
}

#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub cap: u64,
    /// Number of specs whose structural polynomial is checked against the
    /// generic determinant oracle; `None` checks every spec.
    pub oracle_sample: Option<u64>,
    pub seed: u64,
    /// Shards processed (concurrently) and merged in this run.
    pub shards: u64,
}

impl Default for CensusOptions {
    fn default() -> Self {
        Self {
            cap: DEFAULT_ENUMERATION_CAP,
            oracle_sample: Some(64),
            seed: 0,
            shards: 1,
        }
    }
}

struct BijectionPartial {
    polys: BTreeSet<IntPolynomial>,
    total: u64,
    all_in_p: bool,
    roundtrip_ok: bool,
    oracle_checked: u64,
    oracle_mismatches: u64,
}

fn bijection_shard(
    n: usize,
    h: u64,
    shard: Shard,
    cap: u64,
    oracle_indices: &BTreeSet<u64>,
) -> Result<BijectionPartial> {
    let total = family_size(n, h, cap)?;
    let start = shard.range(total).start;
    let mut part = BijectionPartial {
        polys: BTreeSet::new(),
        total: 0,
        all_in_p: true,
        roundtrip_ok: true,
        oracle_checked: 0,
        oracle_mismatches: 0,
    };
    for (offset, spec) in enumerate_specs_capped(n, h, shard, cap)?.enumerate() {
        let idx = start + offset as u64;
        let chi = charpoly_structural(&spec)?;
        match poly_to_coeffs(&chi, n, h) {
            Ok(c) => {
                let back = coeffs_to_spec(&c)?;
                if back != spec || c.to_polynomial() != chi {
                    part.roundtrip_ok = false;
                }
            }
            Err(_) => part.all_in_p = false,
        }
        if oracle_indices.contains(&idx) {
            part.oracle_checked += 1;
            if charpoly_oracle(&build_bohemian(&spec)?)? != chi {
                part.oracle_mismatches += 1;
            }
        }
        part.polys.insert(chi);
        part.total += 1;
    }
    Ok(part)
}

fn oracle_indices(total: u64, opts: &CensusOptions) -> BTreeSet<u64> {
    match opts.oracle_sample {
        Some(k) if k < total => {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            sample(&mut rng, total as usize, k as usize)
                .into_iter()
                .map(|i| i as u64)
                .collect()
        }
        _ => (0..total).collect(),
    }
}

/// Runs `f` on each sub-shard of `shard` on its own thread; results come back
/// in shard order.
fn run_sharded<T: Send>(
    shard: Shard,
    pieces: u64,
    f: impl Fn(Shard) -> Result<T> + Sync,
) -> Result<Vec<T>> {
    let pieces = pieces.max(1);
    // sub-shard j of `shard` is global shard index * pieces + j of count * pieces
    let subs: Vec<Shard> = (0..pieces)
        .map(|j| Shard {
            index: shard.index * pieces + j,
            count: shard.count * pieces,
        })
        .collect();
    std::thread::scope(|s| {
        let handles: Vec<_> = subs
            .iter()
            .map(|&sub| {
                let f = &f;
                s.spawn(move || f(sub))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("census worker panicked"))
            .collect()
    })
}

/// Maps every member of the family through the structural characteristic
/// polynomial and checks distinctness, membership in the coefficient set,
/// both roundtrips, and agreement with the determinant oracle on a sample.
pub fn full_bijection_census(
    n: usize,
    h: u64,
    shard: Shard,
    opts: &CensusOptions,
) -> Result<CensusReport> {
    let total = family_size(n, h, opts.cap)?;
    let sample = oracle_indices(total, opts);
    let parts = run_sharded(shard, opts.shards, |sub| {
        bijection_shard(n, h, sub, opts.cap, &sample)
    })?;

    let mut report = CensusReport::empty(CensusMode::Bijection, n, h, shard);
    let mut polys = BTreeSet::new();
    for p in parts {
        report.total_enumerated += p.total;
        report.all_in_p &= p.all_in_p;
        report.roundtrip_ok &= p.roundtrip_ok;
        report.oracle_checked += p.oracle_checked;
        report.oracle_mismatches += p.oracle_mismatches;
        polys.extend(p.polys);
    }
    report.distinct_charpolys = polys.len() as u64;
    Ok(report)
}

/// Number of `m ∈ [0, count)` with `scale * m ≡ target (mod 5)`, for `scale`
/// prime to 5.
fn residue_count(scale: &BigInt, count: &BigInt, target: u64) -> BigInt {
    let five = BigInt::from(5);
    let s = scale.mod_floor(&five).to_u64().unwrap();
    let inv = (1..5).find(|i| (s * i) % 5 == 1).expect("scale prime to 5");
    let r = BigInt::from((target * inv) % 5);
    if &r >= count {
        BigInt::zero()
    } else {
        (count - 1u32 - &r) / &five + 1u32
    }
}

/// Closed-form count of coefficient-set members congruent to `t (t^(2n) - a)` mod 5.
pub fn mod5_expected_count(n: usize, h: u64, a: u64) -> BigInt {
    (0..=2 * n - 2)
        .map(|i| {
            let r = coefficient_range(n, h, i);
            let target = if i == 1 { a % 5 } else { 0 };
            residue_count(&r.scale, &r.count, target)
        })
        .product()
}

/// The factor of `p` left after removing its integer root, if it has one.
/// For a match this is the degree-`2n` part that is irreducible mod 5.
fn strip_integer_root(p: &IntPolynomial) -> IntPolynomial {
    let c0 = p.coeff(0);
    if c0.is_zero() {
        return p.strip_t_power().1;
    }
    // any integer root divides c0 and is at most the Cauchy bound in size
    let bound = p.height() + 1u32;
    let limit = std::cmp::min(c0.abs(), bound);
    let mut r = BigInt::one();
    while r <= limit {
        if c0.is_multiple_of(&r) {
            for cand in [r.clone(), -r.clone()] {
                if p.eval(&cand).is_zero() {
                    let lin = IntPolynomial::new(vec![-cand, BigInt::one()]);
                    return p.exact_div(&lin).expect("monic linear factor divides");
                }
            }
        }
        r += 1u32;
    }
    p.clone()
}

/// Counts members of the coefficient set congruent to `t (t^(2n) - a)` mod 5,
/// checks the mod-5 factorization of each, and checks that the degree-`2n`
/// irreducible factors of distinct matches are pairwise coprime over ℚ.
pub fn mod5_census(n: usize, h: u64, shard: Shard, opts: &CensusOptions) -> Result<CensusReport> {
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::InvalidParameter(format!(
            "n must be a power of 2, got {n}"
        )));
    }
    let a = choose_a(n, h)?;
    let target = {
        let mut c = vec![0u64; 2 * n + 2];
        c[2 * n + 1] = 1;
        c[1] = (5 - a % 5) % 5;
        ModPolynomial::new(5, c)
    };
    let deg2n = ModPolynomial::new(5, {
        let mut c = vec![0u64; 2 * n + 1];
        c[2 * n] = 1;
        c[0] = (5 - a % 5) % 5;
        c
    });
    let deg2n_irreducible = irreducible_mod_p(&deg2n)?;

    let parts = run_sharded(shard, opts.shards, |sub| {
        let mut total = 0u64;
        let mut matches = Vec::new();
        let mut all_in_p = true;
        for c in enumerate_coefficients(n, h, sub, opts.cap)? {
            total += 1;
            let p = c.to_polynomial();
            if poly_to_coeffs(&p, n, h).is_err() {
                all_in_p = false;
            }
            if reduce_mod(&p, 5) == target {
                matches.push(p);
            }
        }
        Ok((total, matches, all_in_p))
    })?;

    let mut report = CensusReport::empty(CensusMode::Mod5, n, h, shard);
    let mut matches = Vec::new();
    for (t, m, ok) in parts {
        report.total_enumerated += t;
        report.all_in_p &= ok;
        matches.extend(m);
    }

    let mut factorization_ok = deg2n_irreducible;
    let factors: Vec<IntPolynomial> = matches
        .iter()
        .map(|p| {
            let f = strip_integer_root(p);
            let reduced = reduce_mod(&f, 5);
            let ok = match f.degree() {
                Some(d) if d == 2 * n => reduced == deg2n,
                // no integer root: P itself must reduce to t * (t^(2n) - a)
                Some(d) if d == 2 * n + 1 => reduce_mod(p, 5) == target,
                _ => false,
            };
            factorization_ok &= ok;
            f
        })
        .collect();

    let mut coprime = true;
    'outer: for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            if !rational_gcd(&factors[i], &factors[j]).is_constant() {
                coprime = false;
                break 'outer;
            }
        }
    }

    report.max_cauchy_bound = matches.iter().map(cauchy_bound).max();
    let m = matches.len() as u64;
    report.distinct_charpolys = matches.iter().collect::<BTreeSet<_>>().len() as u64;
    report.mod5_a = Some(a);
    report.mod5_matching_count = Some(m);
    report.mod5_expected_count = if report.is_full_run() {
        mod5_expected_count(n, h, a).to_u64()
    } else {
        None
    };
    report.mod5_factorization_ok = Some(factorization_ok);
    report.pairwise_coprime = Some(coprime);
    let lower = if coprime && factorization_ok {
        2 * n as u64 * m
    } else {
        0
    };
    report.distinct_root_lower_bound = Some(lower);
    report.theorem_bound_met = report
        .is_full_run()
        .then(|| BigRational::from_integer(BigInt::from(lower)) >= report.theorem_bound.ceil());
    Ok(report)
}
