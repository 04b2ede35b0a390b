//! Certified real-root isolation and gap certificates.
//!
//! Everything here runs on exact integers: interval endpoints are dyadic,
//! sign queries are exact evaluations, and root counts come from Sturm chains.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::dyadic::DyadicRational;
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// Default lowest exponent refinement may reach before giving up.
pub const DEFAULT_PRECISION_CAP: i64 = -100_000;

/// Signed remainder sequence of the square-free part of `p` and its
/// derivative, each member reduced to its primitive part by a positive factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmChain {
    chain: Vec<IntPolynomial>,
}

impl SturmChain {
    pub fn new(p: &IntPolynomial) -> Self {
        assert!(!p.is_zero(), "Sturm chain of the zero polynomial");
        let sf = p.square_free_part();
        let mut chain = vec![sf.clone()];
        if sf.is_constant() {
            return Self { chain };
        }
        chain.push(sf.derivative().primitive_part());
        loop {
            let a = &chain[chain.len() - 2];
            let b = &chain[chain.len() - 1];
            let r = a.prem(b);
            if r.is_zero() {
                break;
            }
            // prem = lc(b)^k * rem; flip to a positive multiple of -rem
            let k = a.degree().unwrap() + 1 - b.degree().unwrap();
            let lc_neg = b.leading().unwrap().is_negative();
            let r = if lc_neg && k.is_odd() { r } else { -r };
            chain.push(r.primitive_part());
        }
        Self { chain }
    }

    pub fn polynomials(&self) -> &[IntPolynomial] {
        &self.chain
    }

    /// The square-free polynomial the chain starts with.
    pub fn base(&self) -> &IntPolynomial {
        &self.chain[0]
    }

    fn count_variations(signs: impl Iterator<Item = i32>) -> usize {
        let mut last = 0;
        let mut v = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, x: &DyadicRational) -> usize {
        Self::count_variations(self.chain.iter().map(|p| p.eval_sign_at_dyadic(x)))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::count_variations(self.chain.iter().map(|p| {
            let s = p
                .leading()
                .map_or(0, |c| if c.is_negative() { -1 } else { 1 });
            if !positive && p.degree().unwrap_or(0).is_odd() {
                -s
            } else {
                s
            }
        }))
    }

    /// Number of distinct real roots.
    pub fn total_real_roots(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &DyadicRational, hi: &DyadicRational) -> usize {
        assert!(lo < hi, "empty interval");
        self.variations_at(lo) - self.variations_at(hi)
    }
}

pub fn sturm_count(chain: &SturmChain, lo: &DyadicRational, hi: &DyadicRational) -> usize {
    chain.count(lo, hi)
}

/// Half-open interval `(lo, hi]` holding exactly one real root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootInterval {
    pub lo: DyadicRational,
    pub hi: DyadicRational,
}

impl RootInterval {
    pub fn width(&self) -> DyadicRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &DyadicRational) -> bool {
        &self.lo < x && x <= &self.hi
    }
}

/// Power of two `C >= 1 + max |c_i| / |lead|`; every root lies in `(-C, C)`.
pub fn cauchy_bound(p: &IntPolynomial) -> DyadicRational {
    let lead = p.leading().expect("nonzero polynomial").abs();
    let max = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_default();
    let b: BigInt = Integer::div_ceil(&max, &lead) + 1u32;
    // smallest k with 2^k >= b
    let k = if (&b & (&b - BigInt::one())).is_zero() {
        b.bits() - 1
    } else {
        b.bits()
    };
    DyadicRational::pow2(k as i64)
}

/// Disjoint intervals, sorted left to right, one per distinct real root.
pub fn isolate_real_roots(p: &IntPolynomial) -> Vec<RootInterval> {
    let chain = SturmChain::new(p);
    isolate_with_chain(&chain)
}

fn isolate_with_chain(chain: &SturmChain) -> Vec<RootInterval> {
    let c = cauchy_bound(chain.base());
    let mut out = Vec::new();
    let lo = -c.clone();
    let vlo = chain.variations_at(&lo);
    let vhi = chain.variations_at(&c);
    // depth-first, right half pushed first so output comes out sorted
    let mut stack = vec![(lo, c, vlo, vhi)];
    while let Some((lo, hi, vlo, vhi)) = stack.pop() {
        match vlo - vhi {
            0 => {}
            1 => out.push(RootInterval { lo, hi }),
            _ => {
                let mid = lo.midpoint(&hi);
                let vmid = chain.variations_at(&mid);
                stack.push((mid.clone(), hi, vmid, vhi));
                stack.push((lo, mid, vlo, vmid));
            }
        }
    }
    out
}

fn refine_square_free(sf: &IntPolynomial, iv: &RootInterval, eps: &DyadicRational) -> RootInterval {
    assert!(eps.is_positive(), "refinement width must be positive");
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    let exact_hit = |lo: &DyadicRational, r: DyadicRational| RootInterval {
        lo: std::cmp::max(lo.clone(), &r - eps),
        hi: r,
    };
    let s_hi = sf.eval_sign_at_dyadic(&hi);
    if s_hi == 0 {
        return exact_hit(&lo, hi);
    }
    while &hi - &lo > *eps {
        let mid = lo.midpoint(&hi);
        match sf.eval_sign_at_dyadic(&mid) {
            0 => return exact_hit(&lo, mid),
            // no sign change on (mid, hi]: the root sits in (lo, mid)
            s if s == s_hi => hi = mid,
            _ => lo = mid,
        }
    }
    RootInterval { lo, hi }
}

/// Bisects `iv` down to width `<= eps`, keeping the root of `p` it isolates.
pub fn refine(p: &IntPolynomial, iv: &RootInterval, eps: &DyadicRational) -> RootInterval {
    refine_square_free(&p.square_free_part(), iv, eps)
}

/// Two certified root intervals and rigorous bounds on the distance between
/// the roots they enclose.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapCertificate {
    #[serde(with = "poly_text")]
    pub polynomial: IntPolynomial,
    pub left: RootInterval,
    pub right: RootInterval,
    pub gap_upper: DyadicRational,
    pub gap_lower: DyadicRational,
    pub claimed_bound: DyadicRational,
    pub meets_claim: bool,
}

impl GapCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Re-checks the certificate from scratch: each interval isolates exactly
    /// one root, the intervals are ordered, and the recorded bounds follow.
    pub fn verify(&self) -> bool {
        let chain = SturmChain::new(&self.polynomial);
        self.left.lo < self.left.hi
            && self.right.lo < self.right.hi
            && self.left.hi <= self.right.lo
            && chain.count(&self.left.lo, &self.left.hi) == 1
            && chain.count(&self.right.lo, &self.right.hi) == 1
            && (self.gap_lower.clone(), self.gap_upper.clone())
                == gap_bounds(&self.polynomial, &self.left, &self.right)
            && self.meets_claim == (self.gap_upper <= self.claimed_bound)
    }
}

/// The tightest enclosure of the root in `iv`: the single point `hi` when the
/// root sits exactly there (bisection hits), otherwise the interval itself.
fn enclosure<'a>(
    p: &IntPolynomial,
    iv: &'a RootInterval,
) -> (&'a DyadicRational, &'a DyadicRational) {
    if p.eval_sign_at_dyadic(&iv.hi) == 0 {
        (&iv.hi, &iv.hi)
    } else {
        (&iv.lo, &iv.hi)
    }
}

/// `(lower, upper)` bounds on the distance between the roots in `left` and `right`.
fn gap_bounds(
    p: &IntPolynomial,
    left: &RootInterval,
    right: &RootInterval,
) -> (DyadicRational, DyadicRational) {
    let (llo, lhi) = enclosure(p, left);
    let (rlo, rhi) = enclosure(p, right);
    (rlo - lhi, rhi - llo)
}

mod poly_text {
    use super::IntPolynomial;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(p: &IntPolynomial, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&p.to_text())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<IntPolynomial, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug)]
pub struct CertifyOptions {
    /// Refinement stops with [`Error::PrecisionCap`] once the target width
    /// would drop below `2^precision_cap`.
    pub precision_cap: i64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            precision_cap: DEFAULT_PRECISION_CAP,
        }
    }
}

pub fn min_gap_certificate(p: &IntPolynomial, claimed: &DyadicRational) -> Result<GapCertificate> {
    min_gap_certificate_with(p, claimed, &CertifyOptions::default())
}

/// Certifies the minimum distance between distinct real roots of `p` against
/// `claimed`.
///
/// All roots are isolated, then every interval is refined to width
/// `eps = claimed / 8`, halving `eps` until the adjacent pair with the smallest
/// upper bound is separated (positive lower bound) and within the claim, or
/// until every adjacent pair is provably farther apart than the claim.
pub fn min_gap_certificate_with(
    p: &IntPolynomial,
    claimed: &DyadicRational,
    opts: &CertifyOptions,
) -> Result<GapCertificate> {
    if !claimed.is_positive() {
        return Err(Error::InvalidParameter(
            "claimed bound must be positive".into(),
        ));
    }
    if p.is_zero() {
        return Err(Error::TooFewRoots);
    }
    let chain = SturmChain::new(p);
    let sf = chain.base().clone();
    let mut roots = isolate_with_chain(&chain);
    if roots.len() < 2 {
        return Err(Error::TooFewRoots);
    }
    let mut eps = claimed.mul_pow2(-3);
    loop {
        if eps.floor_log2().unwrap() < opts.precision_cap {
            return Err(Error::PrecisionCap {
                cap: opts.precision_cap,
            });
        }
        for iv in roots.iter_mut() {
            if iv.width() > eps {
                *iv = refine_square_free(&sf, iv, &eps);
            }
        }
        let pairs: Vec<(DyadicRational, DyadicRational)> = roots
            .windows(2)
            .map(|w| {
                let (gl, gu) = gap_bounds(&sf, &w[0], &w[1]);
                (gu, gl)
            })
            .collect();
        let best = (0..pairs.len())
            .min_by(|&i, &j| pairs[i].0.cmp(&pairs[j].0))
            .expect("at least one pair");
        let (gu, gl) = &pairs[best];
        let met = gu <= claimed && gl.is_positive();
        let refuted = pairs.iter().all(|(_, gl)| gl > claimed);
        if met || refuted {
            return Ok(GapCertificate {
                polynomial: p.clone(),
                left: roots[best].clone(),
                right: roots[best + 1].clone(),
                gap_upper: gu.clone(),
                gap_lower: gl.clone(),
                claimed_bound: claimed.clone(),
                meets_claim: met,
            });
        }
        eps = eps.mul_pow2(-1);
    }
}

/// Reference value of a certificate's gap as `f64`, for reports.
pub fn approx_gap(cert: &GapCertificate) -> f64 {
    (cert.gap_upper.to_f64_lossy() + cert.gap_lower.to_f64_lossy()) / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::mignotte_poly;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn d(s: &str) -> DyadicRational {
        s.parse().unwrap()
    }

    fn int(v: i64) -> DyadicRational {
        DyadicRational::from_int(v)
    }

    #[test]
    fn sturm_counts() {
        let f = SturmChain::new(&p(&[-2, 0, 1]));
        assert_eq!(sturm_count(&f, &int(0), &int(2)), 1);
        assert_eq!(sturm_count(&f, &int(-2), &int(2)), 2);
        assert_eq!(f.total_real_roots(), 2);
        let g = SturmChain::new(&p(&[1, 0, 1]));
        assert_eq!(sturm_count(&g, &int(-10), &int(10)), 0);
        // root exactly at the right endpoint counts, at the left does not
        let h = SturmChain::new(&p(&[-1, 1]));
        assert_eq!(h.count(&int(0), &int(1)), 1);
        assert_eq!(h.count(&int(1), &int(2)), 0);
    }

    #[test]
    fn isolation_examples() {
        let r = isolate_real_roots(&p(&[-2, 0, 1]));
        assert_eq!(r.len(), 2);
        // cauchy bound 4; one bisection separates the roots
        assert_eq!((r[0].lo.clone(), r[0].hi.clone()), (int(-4), int(0)));
        assert_eq!((r[1].lo.clone(), r[1].hi.clone()), (int(0), int(4)));

        let t3 = isolate_real_roots(&p(&[0, 0, 0, 1]));
        assert_eq!(t3.len(), 1);
        assert!(t3[0].contains(&int(0)));

        let m = mignotte_poly(4, &BigInt::from(8)).unwrap();
        let roots = isolate_real_roots(&m);
        // the close pair near 1/8 plus one root near each of +-11
        assert_eq!(roots.len(), 4);
        let chain = SturmChain::new(&m);
        assert_eq!(chain.count(&d("1*2^-4"), &d("3*2^-4")), 2);
    }

    #[test]
    fn cauchy_bound_is_power_of_two() {
        assert_eq!(cauchy_bound(&p(&[-2, 0, 1])), int(4));
        assert_eq!(cauchy_bound(&p(&[-3, 0, 1])), int(4));
        assert_eq!(cauchy_bound(&p(&[-4, 0, 1])), int(8));
        assert_eq!(cauchy_bound(&p(&[0, 0, 1])), int(1));
    }

    #[test]
    fn refinement() {
        let f = p(&[-2, 0, 1]);
        let iv = RootInterval {
            lo: int(1),
            hi: int(2),
        };
        let eps = DyadicRational::pow2(-30);
        let r = refine(&f, &iv, &eps);
        assert!(r.width() <= eps);
        // sqrt(2) = 1.41421356237...
        let lo = r.lo.to_rational();
        let a = num_rational::BigRational::new(BigInt::from(141421356), BigInt::from(100000000));
        let b = num_rational::BigRational::new(BigInt::from(141421357), BigInt::from(100000000));
        assert!(a < lo && r.hi.to_rational() < b);

        let g = p(&[-3, 1]);
        let r = refine(
            &g,
            &RootInterval {
                lo: int(2),
                hi: int(4),
            },
            &DyadicRational::pow2(-10),
        );
        assert!(r.contains(&int(3)));
        assert!(r.width() <= DyadicRational::pow2(-10));
    }

    #[test]
    fn certificate_examples() {
        let c = min_gap_certificate(&p(&[-2, 0, 1]), &int(1)).unwrap();
        assert!(!c.meets_claim);
        assert!(c.gap_lower > int(2));
        assert!(c.verify());

        // (t-1)(t-2)(t-10)
        let f = &(&p(&[-1, 1]) * &p(&[-2, 1])) * &p(&[-10, 1]);
        let c = min_gap_certificate(&f, &int(2)).unwrap();
        assert!(c.meets_claim);
        assert!(c.left.contains(&int(1)) && c.right.contains(&int(2)));
        assert!(c.verify());

        assert_eq!(
            min_gap_certificate(&p(&[1, 0, 1]), &int(1)),
            Err(Error::TooFewRoots)
        );
        assert_eq!(
            min_gap_certificate(&p(&[-1, 1]), &int(1)),
            Err(Error::TooFewRoots)
        );
    }

    #[test]
    fn mignotte_4_8_exceeds_stated_bound() {
        // the close pair near 1/8 is about sqrt(2) * 8^-3 apart, above 8^-3
        let m = mignotte_poly(4, &BigInt::from(8)).unwrap();
        let c = min_gap_certificate(&m, &d("1*2^-9")).unwrap();
        assert!(!c.meets_claim);
        assert!(c.gap_lower > d("1*2^-9"));
        assert!(c.verify());
        let c2 = min_gap_certificate(&m, &d("1*2^-8")).unwrap();
        assert!(c2.meets_claim);
        assert!(c2.left.lo > d("1*2^-4") && c2.right.hi <= d("3*2^-4"));
    }

    #[test]
    fn precision_cap_is_reported() {
        // (t - 1)(t - 1 - 2^-20): gap 2^-20, claim 2^-21 is false but the
        // refutation needs width ~2^-24, beyond a cap of -22
        let f = &p(&[-1, 1]) * &IntPolynomial::from_i64s(&[-(1 << 20) - 1, 1 << 20]);
        let opts = CertifyOptions { precision_cap: -22 };
        assert_eq!(
            min_gap_certificate_with(&f, &DyadicRational::pow2(-19), &opts).map(|c| c.meets_claim),
            Ok(true)
        );
        let r = min_gap_certificate_with(&f, &DyadicRational::pow2(-21), &opts);
        assert_eq!(r, Err(Error::PrecisionCap { cap: -22 }));
        assert!(
            !min_gap_certificate(&f, &DyadicRational::pow2(-21))
                .unwrap()
                .meets_claim
        );
    }

    #[test]
    fn certificate_json_roundtrip() {
        let f = &(&p(&[-1, 1]) * &p(&[-2, 1])) * &p(&[-10, 1]);
        let c = min_gap_certificate(&f, &int(2)).unwrap();
        let s = c.to_json();
        assert!(s.contains("\"gap_upper\": \""));
        assert!(s.contains("*2^"));
        assert_eq!(GapCertificate::from_json(&s).unwrap(), c);
    }
}
