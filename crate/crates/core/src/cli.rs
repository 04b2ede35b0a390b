//! The `bohemian-gap` command line.
//!
//! Exit codes: 0 success (or claim met), 1 usage or internal error, 2 claim
//! refuted, 3 precision cap reached, 4 enumeration cap exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::json;

use crate::bounds::{
    explicit_gap_bound, hadamard_height_bound, mahler_lower_bound, parlett_lu_bound, ExactBound,
    ExplicitBoundVariant,
};
use crate::census::{
    full_bijection_census, mod5_census, CensusOptions, Shard, DEFAULT_ENUMERATION_CAP,
};
use crate::error::{Error, Result};
use crate::matrix::{
    bohemian_spec_from_matrix, build_bohemian, build_mignotte, build_mignotte_h2,
    build_mignotte_h2_in_family, build_wilkinson, charpoly_oracle, charpoly_structural,
    double_cover, BohemianSpec, IntMatrix,
};
use crate::poly::{eisenstein_irreducible, IntPolynomial};
use crate::rootgap::{min_gap_certificate_with, CertifyOptions, DEFAULT_PRECISION_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_REFUTED: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;
pub const EXIT_ENUMERATION: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    /// Mignotte matrix with entries in {0, 1, 2}
    H2,
    /// `M_n(h)` for h > 2
    General,
    /// h = 2 Mignotte matrix moved inside the lower-Hessenberg family
    #[value(name = "inB")]
    InB,
    /// symmetric tridiagonal baseline with diagonal h, 0, ..., 0, h
    Wilkinson,
    /// 0-1 double cover of the h = 2 Mignotte matrix
    Cover,
    /// member of the lower-Hessenberg family given by `--a`
    Bohemian,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CensusModeArg {
    Bijection,
    Mod5,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Write a matrix in the text format
    Construct,
    /// Characteristic polynomial of a matrix file
    Charpoly {
        /// matrix file (`dim`, then dim rows)
        input: PathBuf,
        /// also compute the polynomial from the back edges and require equality
        #[arg(long)]
        structural: bool,
        /// render high-to-low instead of the `deg c0 ... cdeg` format
        #[arg(long)]
        pretty: bool,
    },
    /// Certify the minimum real eigenvalue gap of a construction against its claimed bound
    Certify,
    /// Enumerate the family or its coefficient set
    Census {
        #[arg(long, value_enum, default_value = "bijection")]
        mode: CensusModeArg,
    },
    /// Print the classical and explicit gap bounds side by side
    Bounds,
}

/// Everything a run depends on; the seed fixes any random sampling.
#[derive(Clone, Debug, Parser)]
#[command(
    name = "bohemian-gap",
    version,
    about = "Exact eigenvalue-gap constructions and certificates"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true)]
    pub h: Option<u64>,
    #[arg(long, value_enum, global = true)]
    pub variant: Option<Variant>,
    /// lower-left block for `--variant bohemian`, rows separated by `;`
    #[arg(long, global = true)]
    pub a: Option<String>,
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1)]
    pub shards: u64,
    /// run only this shard (0-based) of `--shards`
    #[arg(long, global = true)]
    pub shard: Option<u64>,
    /// lowest exponent e allowed for refinement widths 2^e
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION_CAP, allow_hyphen_values = true)]
    pub precision_cap: i64,
    /// number of family members checked against the determinant oracle (0 = all)
    #[arg(long, global = true, default_value_t = 64)]
    pub sample: u64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub cap: u64,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

impl RunConfig {
    fn n(&self) -> Result<usize> {
        self.n.ok_or_else(|| usage("--n is required"))
    }

    fn h(&self) -> Result<u64> {
        self.h.ok_or_else(|| usage("--h is required"))
    }

    fn variant(&self) -> Result<Variant> {
        self.variant.ok_or_else(|| usage("--variant is required"))
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::PrecisionCap { .. } => EXIT_PRECISION,
        Error::EnumerationCap { .. } => EXIT_ENUMERATION,
        _ => EXIT_USAGE,
    }
}

/// Parses arguments and runs, writing to the process's stdout/stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_args(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => run(&cfg, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            code
        }
    }
}

pub fn run(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cfg.command {
        Command::Construct => cmd_construct(cfg, out, err),
        Command::Charpoly {
            input,
            structural,
            pretty,
        } => cmd_charpoly(cfg, input, *structural, *pretty, out),
        Command::Certify => cmd_certify(cfg, out, err),
        Command::Census { mode } => cmd_census(cfg, *mode, out),
        Command::Bounds => cmd_bounds(cfg, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn emit(cfg: &RunConfig, text: &str, out: &mut dyn Write) -> Result<()> {
    match &cfg.output {
        Some(path) => fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Error::Internal(e.to_string())),
    }
}

fn parse_block(s: &str, n: usize) -> Result<Vec<Vec<u64>>> {
    let rows: Vec<Vec<u64>> = s
        .split(';')
        .map(|r| {
            r.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<u64>()
                        .map_err(|_| usage(format!("bad entry `{t}` in --a")))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(usage(format!("--a must be {n} rows of {n} entries")));
    }
    Ok(rows)
}

/// A constructed matrix with the parameters certification needs.
pub struct Construction {
    pub matrix: IntMatrix,
    pub height_violation: bool,
    /// The bound the construction is claimed to meet.
    pub claimed: ExactBound,
    pub claimed_label: String,
}

pub fn construct(
    variant: Variant,
    n: usize,
    h: Option<u64>,
    a: Option<&str>,
) -> Result<Construction> {
    use ExplicitBoundVariant::*;
    let need_h = || h.ok_or_else(|| usage("--h is required for this variant"));
    Ok(match variant {
        Variant::H2 | Variant::InB => {
            let matrix = if variant == Variant::H2 {
                build_mignotte_h2(n)?
            } else {
                build_mignotte_h2_in_family(n)?
            };
            Construction {
                matrix,
                height_violation: false,
                claimed: explicit_gap_bound(n, 2, H2)?,
                claimed_label: format!("2^-((n+5)(n-3)/4) at n={n}"),
            }
        }
        Variant::General => {
            let h = need_h()?;
            let mm = build_mignotte(n, h)?;
            Construction {
                matrix: mm.matrix,
                height_violation: mm.height_violation,
                claimed: explicit_gap_bound(n, h, General)?,
                claimed_label: format!("h^-((n+3)(n-3)/4) at n={n}, h={h}"),
            }
        }
        Variant::Cover => Construction {
            matrix: double_cover(&build_mignotte_h2(n)?)?,
            height_violation: false,
            claimed: explicit_gap_bound(n, 2, General)?,
            claimed_label: format!("2^-((n+3)(n-3)/4) at n={n}"),
        },
        Variant::Wilkinson => {
            let h = need_h()?;
            Construction {
                matrix: build_wilkinson(n, h)?,
                height_violation: false,
                claimed: parlett_lu_bound(n, h)?,
                claimed_label: format!("2 h^-(n-2) at n={n}, h={h}"),
            }
        }
        Variant::Bohemian => {
            let h = need_h()?;
            let spec = match a {
                Some(s) => BohemianSpec::new(n, h, parse_block(s, n)?)?,
                None => BohemianSpec::zero(n, h)?,
            };
            Construction {
                matrix: build_bohemian(&spec)?,
                height_violation: false,
                claimed: parlett_lu_bound(2 * n + 1, h)?,
                claimed_label: format!("2 h^-(dim-2) at dim={}, h={h}", 2 * n + 1),
            }
        }
    })
}

fn cmd_construct(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let c = construct(cfg.variant()?, cfg.n()?, cfg.h, cfg.a.as_deref())?;
    if c.height_violation {
        let _ = writeln!(
            err,
            "warning: an exceptional entry exceeds h (height {})",
            c.matrix.height()
        );
    }
    emit(cfg, &c.matrix.to_text(), out)?;
    let summary = format!(
        "dimension {} height {}\n",
        c.matrix.dim(),
        c.matrix.height()
    );
    if cfg.output.is_some() {
        out.write_all(summary.as_bytes()).ok();
    } else {
        err.write_all(summary.as_bytes()).ok();
    }
    Ok(EXIT_OK)
}

fn cmd_charpoly(
    cfg: &RunConfig,
    input: &PathBuf,
    structural: bool,
    pretty: bool,
    out: &mut dyn Write,
) -> Result<i32> {
    let text = fs::read_to_string(input).map_err(|e| usage(format!("{}: {e}", input.display())))?;
    let m: IntMatrix = text.parse()?;
    let chi = charpoly_oracle(&m)?;
    let render = |p: &IntPolynomial| if pretty { p.pretty() } else { p.to_text() };
    let mut s = render(&chi) + "\n";
    if structural {
        let spec = bohemian_spec_from_matrix(&m, cfg.h)?;
        let st = charpoly_structural(&spec)?;
        if st != chi {
            return Err(Error::Internal(format!(
                "structural polynomial {} differs from oracle {}",
                st.to_text(),
                chi.to_text()
            )));
        }
        s.push_str(&render(&st));
        s.push('\n');
    }
    emit(cfg, &s, out)?;
    Ok(EXIT_OK)
}

fn cmd_certify(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let variant = cfg.variant()?;
    let c = construct(variant, cfg.n()?, cfg.h, cfg.a.as_deref())?;
    if c.height_violation {
        let _ = writeln!(
            err,
            "warning: an exceptional entry exceeds h (height {})",
            c.matrix.height()
        );
    }
    let chi = charpoly_oracle(&c.matrix)?;
    let (k, reduced) = chi.strip_t_power();
    let opts = CertifyOptions {
        precision_cap: cfg.precision_cap,
    };
    // the lower rounding makes meets_claim valid against the exact bound
    let cert = min_gap_certificate_with(&reduced, &c.claimed.lower, &opts)?;
    emit(cfg, &(cert.to_json() + "\n"), out)?;

    let dim = c.matrix.dim();
    let height = c.matrix.height().to_u64().unwrap_or(u64::MAX);
    let mahler = mahler_lower_bound(dim, height)?;
    let mut summary = vec![
        format!("matrix: dimension {dim}, height {height}"),
        format!(
            "stripped t^{k}; certified polynomial has degree {}",
            reduced.degree().unwrap_or(0)
        ),
        format!(
            "claimed bound: {} = {}",
            c.claimed_label,
            c.claimed.value_string()
        ),
        format!(
            "gap in [{}, {}] (~{:.6e})",
            cert.gap_lower,
            cert.gap_upper,
            crate::rootgap::approx_gap(&cert)
        ),
        format!(
            "mahler lower bound respected: {}",
            cert.gap_lower.to_rational() >= mahler.value
        ),
    ];
    if matches!(variant, Variant::H2 | Variant::InB | Variant::General) {
        summary.push(format!(
            "irreducible factor degree {} (eisenstein at 2: {})",
            reduced.degree().unwrap_or(0),
            eisenstein_irreducible(&reduced, &BigInt::from(2))
        ));
    }
    summary.push(format!("meets claim: {}", cert.meets_claim));
    let sink: &mut dyn Write = if cfg.output.is_some() { out } else { err };
    for line in summary {
        let _ = writeln!(sink, "{line}");
    }
    Ok(if cert.meets_claim {
        EXIT_OK
    } else {
        EXIT_REFUTED
    })
}

fn cmd_census(cfg: &RunConfig, mode: CensusModeArg, out: &mut dyn Write) -> Result<i32> {
    let (n, h) = (cfg.n()?, cfg.h()?);
    let (shard, pieces) = match cfg.shard {
        Some(i) => (Shard::new(i, cfg.shards)?, 1),
        None => (Shard::ALL, cfg.shards.max(1)),
    };
    let opts = CensusOptions {
        cap: cfg.cap,
        oracle_sample: (cfg.sample > 0).then_some(cfg.sample),
        seed: cfg.seed,
        shards: pieces,
    };
    let report = match mode {
        CensusModeArg::Bijection => full_bijection_census(n, h, shard, &opts)?,
        CensusModeArg::Mod5 => mod5_census(n, h, shard, &opts)?,
    };
    emit(cfg, &(report.to_json() + "\n"), out)?;
    Ok(EXIT_OK)
}

fn cmd_bounds(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let (n, h) = (cfg.n()?, cfg.h()?);
    if n < 2 || h == 0 {
        return Err(usage("bounds need n >= 2 and h >= 1"));
    }
    let explicit = explicit_gap_bound(n, h, ExplicitBoundVariant::General).ok();
    let explicit_h2 = (h == 2)
        .then(|| explicit_gap_bound(n, 2, ExplicitBoundVariant::H2).ok())
        .flatten();
    let doc = json!({
        "n": n,
        "h": h,
        "parlett_lu_upper": parlett_lu_bound(n, h)?,
        "mahler_lower": mahler_lower_bound(n, h)?,
        "hadamard_height": hadamard_height_bound(n, h)?.to_string(),
        "explicit_construction": explicit,
        "explicit_construction_h2": explicit_h2,
    });
    emit(
        cfg,
        &(serde_json::to_string_pretty(&doc).unwrap() + "\n"),
        out,
    )?;
    Ok(EXIT_OK)
}
