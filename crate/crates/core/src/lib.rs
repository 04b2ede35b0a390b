//! Exact construction of integer matrices with tiny eigenvalue gaps, their
//! characteristic polynomials, and rigorous certificates for the gaps.
//!
//! The modules build on each other bottom-up:
//!
//! * [`poly`], [`dyadic`], [`modp`]: integer and finite-field polynomial arithmetic;
//! * [`matrix`]: the lower-Hessenberg family, Mignotte-type matrices, double
//!   covers, the tridiagonal baseline, and an exact characteristic-polynomial oracle;
//! * [`bijection`]: the correspondence between the family and its coefficient set;
//! * [`rootgap`], [`bounds`]: Sturm isolation, refinement, certificates, and bound formulas;
//! * [`census`]: exhaustive, shardable enumerations;
//! * [`cli`]: the `bohemian-gap` command-line front end.

pub mod bijection;
pub mod bounds;
pub mod census;
pub mod cli;
pub mod dyadic;
pub mod error;
pub mod matrix;
pub mod modp;
pub mod poly;
pub mod rootgap;

pub use bijection::{coeffs_to_spec, poly_to_coeffs, PCoefficients};
pub use bounds::{
    explicit_gap_bound, hadamard_height_bound, mahler_lower_bound, mignotte_gap_bound,
    parlett_lu_bound, ExactBound, ExplicitBoundVariant,
};
pub use census::{
    choose_a, enumerate_specs, full_bijection_census, mod5_census, CensusOptions, CensusReport,
    Shard,
};
pub use dyadic::DyadicRational;
pub use error::{Error, Result};
pub use matrix::{
    build_bohemian, build_mignotte, build_mignotte_h2, build_mignotte_h2_in_family,
    build_wilkinson, charpoly_oracle, charpoly_structural, double_cover, newton_check,
    BohemianSpec, IntMatrix,
};
pub use modp::{irreducible_mod_p, reduce_mod, ModPolynomial};
pub use poly::{eisenstein_irreducible, mignotte_poly, rational_gcd, IntPolynomial};
pub use rootgap::{
    isolate_real_roots, min_gap_certificate, refine, sturm_count, GapCertificate, RootInterval,
    SturmChain,
};
