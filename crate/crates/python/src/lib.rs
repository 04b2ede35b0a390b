//! Python bindings: `import pybohemian`.
//!
//! Polynomials and matrices are wrapped as classes; certificates, bounds and
//! census reports cross the boundary as the same JSON the CLI prints.

use bohemian_gap as bg;
use bohemian_gap::bounds::{explicit_gap_bound, ExplicitBoundVariant};
use bohemian_gap::census::{CensusOptions, Shard};
use bohemian_gap::cli::Variant;
use bohemian_gap::rootgap::CertifyOptions;
use bohemian_gap::{DyadicRational, IntMatrix, IntPolynomial};
use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(pybohemian, BohemianError, PyException);
create_exception!(pybohemian, PrecisionCapError, BohemianError);
create_exception!(pybohemian, EnumerationCapError, BohemianError);

fn err(e: bg::Error) -> PyErr {
    match e {
        bg::Error::PrecisionCap { .. } => PrecisionCapError::new_err(e.to_string()),
        bg::Error::EnumerationCap { .. } => EnumerationCapError::new_err(e.to_string()),
        _ => BohemianError::new_err(e.to_string()),
    }
}

/// Integer polynomial, coefficients low to high.
#[pyclass(name = "Polynomial", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPolynomial(IntPolynomial);

#[pymethods]
impl PyPolynomial {
    #[new]
    fn new(coeffs: Vec<BigInt>) -> Self {
        Self(IntPolynomial::new(coeffs))
    }

    /// Parses `deg c0 c1 ... cdeg`.
    #[staticmethod]
    fn from_text(s: &str) -> PyResult<Self> {
        s.parse().map(Self).map_err(err)
    }

    fn coeffs(&self) -> Vec<BigInt> {
        self.0.coeffs().to_vec()
    }

    /// `-1` for the zero polynomial.
    #[getter]
    fn degree(&self) -> isize {
        self.0.degree_signed()
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    fn eval(&self, x: BigInt) -> BigInt {
        self.0.eval(&x)
    }

    /// `(k, q)` with `self = t^k q` and `q(0) != 0`.
    fn strip_t_power(&self) -> (usize, Self) {
        let (k, q) = self.0.strip_t_power();
        (k, Self(q))
    }

    fn square_free_part(&self) -> Self {
        Self(self.0.square_free_part())
    }

    fn real_root_count(&self) -> PyResult<usize> {
        if self.0.is_zero() {
            return Err(PyValueError::new_err("zero polynomial"));
        }
        Ok(bg::SturmChain::new(&self.0).total_real_roots())
    }

    fn __add__(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &Self) -> Self {
        Self(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0)
    }

    fn __str__(&self) -> String {
        self.0.pretty()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({})", self.0.pretty())
    }
}

/// Square integer matrix.
#[pyclass(name = "Matrix", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq)]
struct PyMatrix(IntMatrix);

#[pymethods]
impl PyMatrix {
    #[new]
    fn new(rows: Vec<Vec<BigInt>>) -> PyResult<Self> {
        IntMatrix::from_rows(rows).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_text(s: &str) -> PyResult<Self> {
        s.parse().map(Self).map_err(err)
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn height(&self) -> BigInt {
        self.0.height()
    }

    fn rows(&self) -> Vec<Vec<BigInt>> {
        self.0.rows().map(|r| r.to_vec()).collect()
    }

    fn determinant(&self) -> BigInt {
        self.0.determinant()
    }

    /// Exact `det(tI - M)`.
    fn charpoly(&self, py: Python<'_>) -> PyResult<PyPolynomial> {
        let m = self.0.clone();
        py.detach(move || bg::charpoly_oracle(&m))
            .map(PyPolynomial)
            .map_err(err)
    }

    fn newton_check(&self) -> PyResult<bool> {
        bg::newton_check(&self.0).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_text()
    }

    fn __repr__(&self) -> String {
        format!("Matrix(dim={})", self.0.dim())
    }
}

fn spec(n: usize, h: u64, a: Option<Vec<Vec<u64>>>) -> PyResult<bg::BohemianSpec> {
    match a {
        Some(a) => bg::BohemianSpec::new(n, h, a),
        None => bg::BohemianSpec::zero(n, h),
    }
    .map_err(err)
}

#[pyfunction]
fn mignotte_poly(d: usize, a: BigInt) -> PyResult<PyPolynomial> {
    bg::mignotte_poly(d, &a).map(PyPolynomial).map_err(err)
}

#[pyfunction]
fn build_mignotte_h2(n: usize) -> PyResult<PyMatrix> {
    bg::build_mignotte_h2(n).map(PyMatrix).map_err(err)
}

#[pyfunction]
fn build_mignotte_h2_in_family(n: usize) -> PyResult<PyMatrix> {
    bg::build_mignotte_h2_in_family(n)
        .map(PyMatrix)
        .map_err(err)
}

/// Returns `(matrix, height_violation)`.
#[pyfunction]
fn build_mignotte(n: usize, h: u64) -> PyResult<(PyMatrix, bool)> {
    let m = bg::build_mignotte(n, h).map_err(err)?;
    Ok((PyMatrix(m.matrix), m.height_violation))
}

#[pyfunction]
fn build_wilkinson(n: usize, h: u64) -> PyResult<PyMatrix> {
    bg::build_wilkinson(n, h).map(PyMatrix).map_err(err)
}

#[pyfunction]
fn double_cover(m: &PyMatrix) -> PyResult<PyMatrix> {
    bg::double_cover(&m.0).map(PyMatrix).map_err(err)
}

/// Member of the lower-Hessenberg family with lower-left block `a` (zero if omitted).
#[pyfunction]
#[pyo3(signature = (n, h, a=None))]
fn build_bohemian(n: usize, h: u64, a: Option<Vec<Vec<u64>>>) -> PyResult<PyMatrix> {
    bg::build_bohemian(&spec(n, h, a)?)
        .map(PyMatrix)
        .map_err(err)
}

/// Characteristic polynomial read off the back edges of the family member.
#[pyfunction]
#[pyo3(signature = (n, h, a=None))]
fn charpoly_structural(n: usize, h: u64, a: Option<Vec<Vec<u64>>>) -> PyResult<PyPolynomial> {
    bg::charpoly_structural(&spec(n, h, a)?)
        .map(PyPolynomial)
        .map_err(err)
}

/// `[a_0, ..., a_{2n-2}]` for a member of the coefficient set.
#[pyfunction]
fn poly_to_coeffs(p: &PyPolynomial, n: usize, h: u64) -> PyResult<Vec<BigInt>> {
    bg::poly_to_coeffs(&p.0, n, h)
        .map(|c| c.a)
        .map_err(|e| BohemianError::new_err(e.to_string()))
}

/// The lower-left block whose family member has the given coefficients.
#[pyfunction]
fn coeffs_to_spec(n: usize, h: u64, a: Vec<BigInt>) -> PyResult<Vec<Vec<u64>>> {
    bg::coeffs_to_spec(&bg::PCoefficients { n, h, a })
        .map(|s| s.a)
        .map_err(err)
}

#[pyfunction]
fn irreducible_mod_p(coeffs: Vec<u64>, p: u64) -> PyResult<bool> {
    bg::irreducible_mod_p(&bg::ModPolynomial::new(p, coeffs)).map_err(err)
}

#[pyfunction]
fn eisenstein_irreducible(p: &PyPolynomial, prime: BigInt) -> bool {
    bg::eisenstein_irreducible(&p.0, &prime)
}

/// Gap certificate JSON for `p` against `claimed`, a dyadic `"m*2^e"`.
#[pyfunction]
#[pyo3(signature = (p, claimed, precision_cap=bg::rootgap::DEFAULT_PRECISION_CAP))]
fn certify(
    py: Python<'_>,
    p: &PyPolynomial,
    claimed: &str,
    precision_cap: i64,
) -> PyResult<String> {
    let claimed: DyadicRational = claimed.parse().map_err(err)?;
    let p = p.0.clone();
    let opts = CertifyOptions { precision_cap };
    py.detach(move || bg::rootgap::min_gap_certificate_with(&p, &claimed, &opts))
        .map(|c| c.to_json())
        .map_err(err)
}

/// Builds a named construction and certifies it against its claimed bound,
/// like `bohemian-gap certify`. Returns the certificate JSON.
#[pyfunction]
#[pyo3(signature = (variant, n, h=None, precision_cap=bg::rootgap::DEFAULT_PRECISION_CAP))]
fn certify_construction(
    py: Python<'_>,
    variant: &str,
    n: usize,
    h: Option<u64>,
    precision_cap: i64,
) -> PyResult<String> {
    let variant = match variant {
        "h2" => Variant::H2,
        "general" => Variant::General,
        "inB" => Variant::InB,
        "wilkinson" => Variant::Wilkinson,
        "cover" => Variant::Cover,
        "bohemian" => Variant::Bohemian,
        other => return Err(PyValueError::new_err(format!("unknown variant {other:?}"))),
    };
    py.detach(move || {
        let c = bg::cli::construct(variant, n, h, None)?;
        let (_, reduced) = bg::charpoly_oracle(&c.matrix)?.strip_t_power();
        bg::rootgap::min_gap_certificate_with(
            &reduced,
            &c.claimed.lower,
            &CertifyOptions { precision_cap },
        )
    })
    .map(|c| c.to_json())
    .map_err(err)
}

/// Exact claimed bound for the explicit constructions as `"p/q"`.
#[pyfunction]
#[pyo3(signature = (n, h, h2_variant=false))]
fn explicit_bound(n: usize, h: u64, h2_variant: bool) -> PyResult<String> {
    let v = if h2_variant {
        ExplicitBoundVariant::H2
    } else {
        ExplicitBoundVariant::General
    };
    explicit_gap_bound(n, h, v)
        .map(|b| b.value_string())
        .map_err(err)
}

/// Census report JSON; `mode` is `"bijection"` or `"mod5"`.
#[pyfunction]
#[pyo3(signature = (n, h, mode="bijection", shards=1, sample=Some(64), seed=0, cap=bg::census::DEFAULT_ENUMERATION_CAP))]
#[allow(clippy::too_many_arguments)]
fn census(
    py: Python<'_>,
    n: usize,
    h: u64,
    mode: &str,
    shards: u64,
    sample: Option<u64>,
    seed: u64,
    cap: u64,
) -> PyResult<String> {
    let opts = CensusOptions {
        cap,
        oracle_sample: sample,
        seed,
        shards,
    };
    let mod5 = match mode {
        "bijection" => false,
        "mod5" => true,
        other => return Err(PyValueError::new_err(format!("unknown mode {other:?}"))),
    };
    py.detach(move || {
        if mod5 {
            bg::mod5_census(n, h, Shard::ALL, &opts)
        } else {
            bg::full_bijection_census(n, h, Shard::ALL, &opts)
        }
    })
    .map(|r| r.to_json())
    .map_err(err)
}

#[pymodule]
fn pybohemian(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolynomial>()?;
    m.add_class::<PyMatrix>()?;
    m.add("BohemianError", m.py().get_type::<BohemianError>())?;
    m.add("PrecisionCapError", m.py().get_type::<PrecisionCapError>())?;
    m.add(
        "EnumerationCapError",
        m.py().get_type::<EnumerationCapError>(),
    )?;
    m.add_function(wrap_pyfunction!(mignotte_poly, m)?)?;
    m.add_function(wrap_pyfunction!(build_mignotte_h2, m)?)?;
    m.add_function(wrap_pyfunction!(build_mignotte_h2_in_family, m)?)?;
    m.add_function(wrap_pyfunction!(build_mignotte, m)?)?;
    m.add_function(wrap_pyfunction!(build_wilkinson, m)?)?;
    m.add_function(wrap_pyfunction!(double_cover, m)?)?;
    m.add_function(wrap_pyfunction!(build_bohemian, m)?)?;
    m.add_function(wrap_pyfunction!(charpoly_structural, m)?)?;
    m.add_function(wrap_pyfunction!(poly_to_coeffs, m)?)?;
    m.add_function(wrap_pyfunction!(coeffs_to_spec, m)?)?;
    m.add_function(wrap_pyfunction!(irreducible_mod_p, m)?)?;
    m.add_function(wrap_pyfunction!(eisenstein_irreducible, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(certify_construction, m)?)?;
    m.add_function(wrap_pyfunction!(explicit_bound, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    Ok(())
}
