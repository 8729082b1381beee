//! Python bindings: fields, linearized polynomials, linear sets and audits.
//! Field elements cross the boundary as their integer encodings.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use linset_core::linset::LinearSetSpec;
use linset_core::redei::RedeiPoly;
use linset_core::report::{audit_graph, audit_line, audit_plane, audit_solid, AuditOptions};
use linset_core::spread;
use linset_core::{Elem, FieldCtx, LinPoly as CoreLinPoly, Subspace};

fn err(e: linset_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py_json(py: Python<'_>, v: &serde_json::Value) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// F_{q^n}, built from the prime power q and the degree n.
#[pyclass(module = "linset", frozen)]
struct Field {
    ctx: Arc<FieldCtx>,
}

impl Field {
    fn elem(&self, x: u64) -> PyResult<Elem> {
        self.ctx.elem(x).map_err(err)
    }

    fn elems(&self, xs: &[u64]) -> PyResult<Vec<Elem>> {
        xs.iter().map(|&x| self.elem(x)).collect()
    }

    fn subspace(&self, rows: Vec<Vec<u64>>) -> PyResult<Subspace> {
        let arity = rows.first().map_or(1, |r| r.len());
        let vs = rows
            .iter()
            .map(|r| self.elems(r))
            .collect::<PyResult<Vec<_>>>()?;
        Subspace::span(&self.ctx, arity, &vs).map_err(err)
    }
}

fn rows(u: &Subspace) -> Vec<Vec<u32>> {
    u.basis()
        .iter()
        .map(|v| v.iter().map(|e| e.value()).collect())
        .collect()
}

#[pymethods]
impl Field {
    #[new]
    #[pyo3(signature = (q, n, modulus=None))]
    fn new(q: u64, n: usize, modulus: Option<Vec<u32>>) -> PyResult<Self> {
        let ctx = FieldCtx::for_q(q, n, modulus.as_deref()).map_err(err)?;
        Ok(Field { ctx: Arc::new(ctx) })
    }

    #[getter]
    fn p(&self) -> u32 {
        self.ctx.p()
    }

    #[getter]
    fn q(&self) -> u32 {
        self.ctx.q()
    }

    #[getter]
    fn n(&self) -> usize {
        self.ctx.n()
    }

    #[getter]
    fn order(&self) -> u32 {
        self.ctx.order()
    }

    #[getter]
    fn modulus(&self) -> Vec<u32> {
        self.ctx.modulus().to_vec()
    }

    fn fq_basis(&self) -> Vec<u32> {
        self.ctx.fq_basis().iter().map(|e| e.value()).collect()
    }

    fn add(&self, a: u64, b: u64) -> PyResult<u32> {
        Ok(self.ctx.add(self.elem(a)?, self.elem(b)?).value())
    }

    fn mul(&self, a: u64, b: u64) -> PyResult<u32> {
        Ok(self.ctx.mul(self.elem(a)?, self.elem(b)?).value())
    }

    fn inv(&self, a: u64) -> PyResult<u32> {
        Ok(self.ctx.inv(self.elem(a)?).map_err(err)?.value())
    }

    /// a^{q^e}.
    fn frobenius(&self, a: u64, e: usize) -> PyResult<u32> {
        Ok(self.ctx.frobenius(self.elem(a)?, e).value())
    }

    fn trace(&self, a: u64) -> PyResult<u32> {
        Ok(self.ctx.trace(self.elem(a)?).value())
    }

    fn __repr__(&self) -> String {
        format!("Field(q={}, n={})", self.ctx.q(), self.ctx.n())
    }
}

/// Σ c_i X^{q^i} over a given field.
#[pyclass(module = "linset", frozen)]
struct LinPoly {
    field: Arc<FieldCtx>,
    poly: CoreLinPoly,
}

impl LinPoly {
    fn wrap(&self, poly: CoreLinPoly) -> LinPoly {
        LinPoly {
            field: self.field.clone(),
            poly,
        }
    }
}

#[pymethods]
impl LinPoly {
    #[new]
    fn new(field: &Field, coeffs: Vec<u64>) -> PyResult<Self> {
        let poly = CoreLinPoly::new(field.elems(&coeffs)?);
        Ok(LinPoly {
            field: field.ctx.clone(),
            poly,
        })
    }

    #[staticmethod]
    fn trace(field: &Field) -> LinPoly {
        LinPoly {
            field: field.ctx.clone(),
            poly: CoreLinPoly::trace_poly(&field.ctx),
        }
    }

    /// The monic polynomial whose roots are exactly the F_q-span of `basis`.
    #[staticmethod]
    fn subspace_poly(field: &Field, basis: Vec<u64>) -> PyResult<LinPoly> {
        let v = Subspace::scalar_span(&field.ctx, &field.elems(&basis)?);
        let poly = CoreLinPoly::subspace_poly(&field.ctx, &v).map_err(err)?;
        Ok(LinPoly {
            field: field.ctx.clone(),
            poly,
        })
    }

    #[getter]
    fn coeffs(&self) -> Vec<u32> {
        self.poly.coeffs().iter().map(|e| e.value()).collect()
    }

    #[getter]
    fn degree(&self) -> Option<usize> {
        self.poly.degree()
    }

    fn __call__(&self, x: u64) -> PyResult<u32> {
        let x = self.field.elem(x).map_err(err)?;
        Ok(self.poly.eval(&self.field, x).value())
    }

    /// self ∘ other, reduced mod X^{q^n} - X.
    fn compose(&self, other: &LinPoly) -> LinPoly {
        self.wrap(self.poly.sym_mul(&self.field, &other.poly))
    }

    /// (Q, H) with self = Q ∘ divisor + H and deg H < deg divisor.
    fn divrem(&self, divisor: &LinPoly) -> PyResult<(LinPoly, LinPoly)> {
        let (q, h) = self
            .poly
            .sym_divrem(&self.field, &divisor.poly)
            .map_err(err)?;
        Ok((self.wrap(q), self.wrap(h)))
    }

    /// Elements of the kernel in F_{q^n}.
    fn kernel(&self) -> Vec<u32> {
        self.poly
            .kernel(&self.field)
            .elements(&self.field)
            .iter()
            .map(|e| e.value())
            .collect()
    }

    fn __eq__(&self, other: &LinPoly) -> bool {
        self.poly == other.poly
    }

    fn __repr__(&self) -> String {
        format!("LinPoly({})", self.poly.to_text())
    }
}

fn options(full: bool) -> AuditOptions {
    if full {
        AuditOptions::FULL
    } else {
        AuditOptions::FAST
    }
}

/// Points of L_U with their weights, for U spanned by `rows`.
#[pyfunction]
fn points(field: &Field, rows: Vec<Vec<u64>>) -> PyResult<Vec<(Vec<u32>, usize)>> {
    let spec = LinearSetSpec::from_subspace(field.subspace(rows)?);
    Ok(spec
        .points(&field.ctx)
        .into_iter()
        .map(|w| {
            (
                w.point.coords().iter().map(|e| e.value()).collect(),
                w.weight,
            )
        })
        .collect())
}

/// Audit of the graph set of f on V = span(basis), as a dict.
#[pyfunction]
#[pyo3(signature = (field, basis, f, full=true))]
fn audit_map(
    py: Python<'_>,
    field: &Field,
    basis: Vec<u64>,
    f: &LinPoly,
    full: bool,
) -> PyResult<Py<PyAny>> {
    let v = Subspace::scalar_span(&field.ctx, &field.elems(&basis)?);
    let rep = audit_graph(&field.ctx, &v, &f.poly, options(full)).map_err(err)?;
    to_py_json(py, &serde_json::to_value(&rep).expect("serializable"))
}

/// Audit of the linear set of span(rows); rows of length 2, 3 or 4.
#[pyfunction]
#[pyo3(signature = (field, rows, full=true))]
fn audit_subspace(
    py: Python<'_>,
    field: &Field,
    rows: Vec<Vec<u64>>,
    full: bool,
) -> PyResult<Py<PyAny>> {
    let u = field.subspace(rows)?;
    let rep = match u.arity() {
        2 => audit_line(&field.ctx, &u, options(full)),
        3 => audit_plane(&field.ctx, &u, options(full)),
        4 => audit_solid(&field.ctx, &u, options(full)),
        r => return Err(PyValueError::new_err(format!("unsupported arity {r}"))),
    }
    .map_err(err)?;
    to_py_json(py, &serde_json::to_value(&rep).expect("serializable"))
}

/// Basis rows of a named construction: "line-tight", "plane-tight",
/// "subplane" or "rank6".
#[pyfunction]
#[pyo3(signature = (field, kind, k=None))]
fn construct(field: &Field, kind: &str, k: Option<usize>) -> PyResult<Vec<Vec<u32>>> {
    let ctx = &field.ctx;
    let k = k.unwrap_or(ctx.n());
    let u = match kind {
        "line-tight" => spread::construct_line_tight(ctx, k),
        "plane-tight" => spread::construct_plane_tight(ctx, k),
        "subplane" => spread::construct_subplane(ctx),
        "rank6" => spread::construct_rank6(ctx),
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown construction {other:?}"
            )))
        }
    }
    .map_err(err)?;
    Ok(rows(&u))
}

/// Division of X^{q^n} - X by the Redei polynomial of the graph of f on V.
#[pyfunction]
fn redei_division(
    py: Python<'_>,
    field: &Field,
    basis: Vec<u64>,
    f: &LinPoly,
) -> PyResult<Py<PyAny>> {
    let v = Subspace::scalar_span(&field.ctx, &field.elems(&basis)?);
    let r = RedeiPoly::from_graph(&field.ctx, &v, &f.poly).map_err(err)?;
    let div = r.divide_xqn(&field.ctx).map_err(err)?;
    to_py_json(py, &div.to_json(&r))
}

#[pymodule]
fn linset(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Field>()?;
    m.add_class::<LinPoly>()?;
    m.add_function(wrap_pyfunction!(points, m)?)?;
    m.add_function(wrap_pyfunction!(audit_map, m)?)?;
    m.add_function(wrap_pyfunction!(audit_subspace, m)?)?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(redei_division, m)?)?;
    Ok(())
}
