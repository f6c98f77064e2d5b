//! Python bindings for the `antiflex` core.
//!
//! Scalars cross the boundary as anything whose `str()` is an integer or
//! `p/q` (so `int` and `fractions.Fraction` both work) and come back as
//! `fractions.Fraction`.

use antiflex::algebra::{classify, deformed_product};
use antiflex::bimodule::regular_bimodule;
use antiflex::cli::document::{algebra_json, parse_document, render_value};
use antiflex::exactla::{parse_rational, render_rational, CoeffTensor, Matrix, Rational};
use antiflex::{cohomology, onstruct, structmaps};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: antiflex::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn scalar(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    let s = obj.str()?.to_string();
    parse_rational(&s).map_err(err)
}

fn fraction<'py>(py: Python<'py>, q: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((render_rational(q),))
}

fn fractions<'py>(py: Python<'py>, v: &[Rational]) -> PyResult<Vec<Bound<'py, PyAny>>> {
    v.iter().map(|q| fraction(py, q)).collect()
}

fn vector(items: &[Bound<'_, PyAny>]) -> PyResult<Vec<Rational>> {
    items.iter().map(scalar).collect()
}

fn matrix(rows: &[Vec<Bound<'_, PyAny>>]) -> PyResult<Matrix> {
    let rows: Vec<Vec<Rational>> = rows.iter().map(|r| vector(r)).collect::<PyResult<_>>()?;
    Matrix::from_rows(rows).map_err(err)
}

/// A finite-dimensional algebra given by structure constants.
#[pyclass(name = "Algebra", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyAlgebra(antiflex::Algebra);

#[pymethods]
impl PyAlgebra {
    /// `products` is a list of `(i, j, k, c)` meaning `e_i·e_j += c·e_k`.
    #[new]
    #[pyo3(signature = (dim, products, labels=None))]
    fn new(
        dim: usize,
        products: Vec<(usize, usize, usize, Bound<'_, PyAny>)>,
        labels: Option<Vec<String>>,
    ) -> PyResult<Self> {
        let mut t = CoeffTensor::square(2, dim);
        for (i, j, k, c) in &products {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(PyValueError::new_err(format!("index out of range in ({i}, {j}, {k})")));
            }
            t.entries_mut()[(i * dim + j) * dim + k] += scalar(c)?;
        }
        let a = antiflex::Algebra::from_table(t).map_err(err)?;
        Ok(Self(match labels {
            Some(l) => a.with_labels(l).map_err(err)?,
            None => a,
        }))
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.0.labels().to_vec()
    }

    fn multiply<'py>(
        &self,
        py: Python<'py>,
        x: Vec<Bound<'py, PyAny>>,
        y: Vec<Bound<'py, PyAny>>,
    ) -> PyResult<Vec<Bound<'py, PyAny>>> {
        let (x, y) = (vector(&x)?, vector(&y)?);
        if x.len() != self.0.dim() || y.len() != self.0.dim() {
            return Err(PyValueError::new_err("vector length must equal dim"));
        }
        fractions(py, &self.0.multiply(&x, &y))
    }

    fn is_anti_flexible(&self) -> bool {
        classify(&self.0).is_anti_flexible()
    }

    fn is_flexible(&self) -> bool {
        classify(&self.0).is_flexible()
    }

    fn is_associative(&self) -> bool {
        classify(&self.0).is_associative()
    }

    fn is_commutative(&self) -> bool {
        self.0.is_commutative()
    }

    /// The product `x·_N y = N(x)·y + x·N(y) − N(x·y)`.
    fn deformed(&self, n: &PyOperator) -> PyResult<Self> {
        deformed_product(&self.0, &n.0).map(Self).map_err(err)
    }

    fn to_json(&self) -> String {
        render_value(&algebra_json(&self.0))
    }

    fn __repr__(&self) -> String {
        format!("Algebra(dim={}, labels={:?})", self.0.dim(), self.0.labels())
    }
}

/// A linear map given by its matrix (columns are images of basis vectors).
#[pyclass(name = "Operator", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyOperator(antiflex::LinearOperator);

#[pymethods]
impl PyOperator {
    #[new]
    fn new(rows: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Self> {
        Ok(Self(antiflex::LinearOperator::new(matrix(&rows)?)))
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        Self(antiflex::LinearOperator::identity(n))
    }

    fn rows<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
        let m = self.0.matrix();
        (0..m.rows()).map(|r| fractions(py, m.row(r))).collect()
    }

    fn apply<'py>(
        &self,
        py: Python<'py>,
        v: Vec<Bound<'py, PyAny>>,
    ) -> PyResult<Vec<Bound<'py, PyAny>>> {
        let v = vector(&v)?;
        if v.len() != self.0.src_dim() {
            return Err(PyValueError::new_err("vector length must equal the source dimension"));
        }
        fractions(py, &self.0.apply(&v))
    }

    fn compose(&self, other: &PyOperator) -> PyResult<Self> {
        if self.0.src_dim() != other.0.dst_dim() {
            return Err(PyValueError::new_err("dimensions do not compose"));
        }
        Ok(Self(self.0.compose(&other.0)))
    }

    fn scale(&self, s: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Self(self.0.scale(&scalar(s)?)))
    }

    fn inverse(&self) -> PyResult<Self> {
        self.0.inverse().map(Self).map_err(err)
    }

    fn is_invertible(&self) -> bool {
        self.0.is_invertible()
    }

    fn __repr__(&self) -> String {
        format!("Operator({}x{})", self.0.dst_dim(), self.0.src_dim())
    }
}

/// A bimodule `(M, l, r)` over an algebra.
#[pyclass(name = "Bimodule", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyBimodule(antiflex::Bimodule);

#[pymethods]
impl PyBimodule {
    /// `l` and `r` hold one square matrix per basis element of `algebra`.
    #[new]
    fn new(
        algebra: &PyAlgebra,
        l: Vec<Vec<Vec<Bound<'_, PyAny>>>>,
        r: Vec<Vec<Vec<Bound<'_, PyAny>>>>,
    ) -> PyResult<Self> {
        let l = l.iter().map(|m| matrix(m)).collect::<PyResult<_>>()?;
        let r = r.iter().map(|m| matrix(m)).collect::<PyResult<_>>()?;
        antiflex::Bimodule::new(algebra.0.clone(), l, r)
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    fn regular(algebra: &PyAlgebra) -> PyResult<Self> {
        regular_bimodule(&algebra.0).map(Self).map_err(err)
    }

    #[getter]
    fn mdim(&self) -> usize {
        self.0.mdim()
    }

    #[getter]
    fn algebra(&self) -> PyAlgebra {
        PyAlgebra(self.0.base().clone())
    }

    fn is_valid(&self) -> bool {
        self.0.validate().holds()
    }
}

#[pyfunction]
fn is_rota_baxter(m: &PyBimodule, t: &PyOperator) -> PyResult<bool> {
    Ok(structmaps::is_rota_baxter(&m.0, &t.0).map_err(err)?.holds)
}

#[pyfunction]
fn is_nijenhuis(a: &PyAlgebra, n: &PyOperator) -> PyResult<bool> {
    Ok(structmaps::is_nijenhuis(&a.0, &n.0).map_err(err)?.holds)
}

#[pyfunction]
fn is_nijenhuis_structure(m: &PyBimodule, n: &PyOperator, s: &PyOperator) -> PyResult<bool> {
    let r = antiflex::deformation::is_nijenhuis_structure(&m.0, &n.0, &s.0).map_err(err)?;
    Ok(r.holds())
}

#[pyfunction]
fn is_on_structure(
    m: &PyBimodule,
    t: &PyOperator,
    n: &PyOperator,
    s: &PyOperator,
) -> PyResult<bool> {
    let v = onstruct::is_on_structure(&m.0, &t.0, &n.0, &s.0).map_err(err)?;
    Ok(v.holds())
}

/// `a ⋆_T b = T(l(Ta)b + r(Tb)a)` on the module.
#[pyfunction]
fn star_t(m: &PyBimodule, t: &PyOperator) -> PyResult<PyAlgebra> {
    structmaps::star_t_algebra(&m.0, &t.0)
        .map(PyAlgebra)
        .map_err(err)
}

/// `H^n` dimensions for `n = 0..=max_degree`; `None` where the image of
/// the previous differential is not inside the kernel.
#[pyfunction]
#[pyo3(signature = (m, t, max_degree=2))]
fn cohomology_dims(m: &PyBimodule, t: &PyOperator, max_degree: usize) -> PyResult<Vec<Option<usize>>> {
    let r = cohomology::cohomology_dims(&m.0, &t.0, max_degree).map_err(err)?;
    Ok(r.h_dims())
}

/// Parses a JSON document into `{"algebra", "bimodule", "operators"}`.
#[pyfunction]
fn load_document<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyDict>> {
    let doc = parse_document(text).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("algebra", PyAlgebra(doc.algebra.clone()))?;
    match doc.bimodule {
        Some(_) => out.set_item("bimodule", PyBimodule(doc.bimodule().map_err(err)?))?,
        None => out.set_item("bimodule", py.None())?,
    }
    let ops = PyDict::new(py);
    for (name, m) in &doc.operators {
        ops.set_item(name, PyOperator(antiflex::LinearOperator::new(m.clone())))?;
    }
    out.set_item("operators", ops)?;
    Ok(out)
}

#[pymodule]
pub fn pyantiflex(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyOperator>()?;
    m.add_class::<PyBimodule>()?;
    m.add_function(wrap_pyfunction!(is_rota_baxter, m)?)?;
    m.add_function(wrap_pyfunction!(is_nijenhuis, m)?)?;
    m.add_function(wrap_pyfunction!(is_nijenhuis_structure, m)?)?;
    m.add_function(wrap_pyfunction!(is_on_structure, m)?)?;
    m.add_function(wrap_pyfunction!(star_t, m)?)?;
    m.add_function(wrap_pyfunction!(cohomology_dims, m)?)?;
    m.add_function(wrap_pyfunction!(load_document, m)?)?;
    Ok(())
}
