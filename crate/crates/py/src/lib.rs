//! Python bindings: chain specifications, GT patterns, the `B` spectrum,
//! Bethe states and the suite runner.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use sovlab::betheq::{diagonalize_bethe, solve_all, NumericPolicy};
use sovlab::cli;
use sovlab::combinatorics::{enumerate_gt_patterns, weyl_dimension};
use sovlab::exactalg::rational::{parse_rat, rat_to_string};
use sovlab::exactalg::Precision;
use sovlab::sovcore::{b_eigenvalue, build_sov_basis};
use sovlab::yangian::{self, Chain};

fn err(e: sovlab::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_loads<'py>(py: Python<'py>, s: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (s,))
}

/// A rational `gl(n)` chain: site weights, inhomogeneities, `ħ`, twist `z` and weights `w`.
#[pyclass(name = "ChainSpec", module = "pysovlab", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyChainSpec {
    inner: yangian::ChainSpec,
}

#[pymethods]
impl PyChainSpec {
    /// Rationals are given as strings like `"3/7"`; empty `z`/`w` take defaults.
    #[new]
    #[pyo3(signature = (nu, theta, hbar = "1", z = vec![], w = vec![]))]
    fn new(nu: Vec<Vec<i64>>, theta: Vec<String>, hbar: &str, z: Vec<String>, w: Vec<String>) -> PyResult<Self> {
        let n = nu.first().map_or(0, Vec::len);
        let rats = |v: &[String]| v.iter().map(|s| parse_rat(s)).collect::<sovlab::Result<Vec<_>>>();
        let inner = yangian::ChainSpec::new(n, nu, rats(&theta).map_err(err)?, parse_rat(hbar).map_err(err)?, rats(&z).map_err(err)?, rats(&w).map_err(err)?).map_err(err)?;
        Ok(Self { inner })
    }

    /// One of the in-repo presets, e.g. `"t0"` or `"t1"`.
    #[staticmethod]
    fn preset(name: &str) -> PyResult<Self> {
        Ok(Self { inner: yangian::ChainSpec::preset(name).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        Ok(Self { inner: yangian::ChainSpec::from_json(s).map_err(err)? })
    }

    fn to_json(&self) -> PyResult<String> {
        self.inner.to_json().map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn nu(&self) -> Vec<Vec<i64>> {
        self.inner.nu.clone()
    }

    #[getter]
    fn theta(&self) -> Vec<String> {
        self.inner.theta.iter().map(rat_to_string).collect()
    }

    #[getter]
    fn z(&self) -> Vec<String> {
        self.inner.z.iter().map(rat_to_string).collect()
    }

    fn hilbert_dim(&self) -> usize {
        self.inner.hilbert_dim()
    }

    fn b_degree(&self) -> usize {
        self.inner.b_degree()
    }

    /// Exact `B(u)` eigenvalues over the SoV basis: one `(patterns, coefficients)`
    /// pair per basis covector, coefficients in increasing degree as rational strings.
    fn b_spectrum(&self) -> PyResult<Vec<(Vec<Vec<Vec<i64>>>, Vec<String>)>> {
        let chain = Chain::new(&self.inner).map_err(err)?;
        let basis = build_sov_basis(&chain).map_err(err)?;
        Ok(basis
            .entries
            .iter()
            .map(|e| {
                let pats = e.tuple.iter().map(|p| p.rows().to_vec()).collect();
                (pats, b_eigenvalue(&self.inner, &e.coords).coeffs().iter().map(rat_to_string).collect())
            })
            .collect())
    }

    /// Transfer-matrix eigenvalues and twisted Q-polynomials of every eigenstate,
    /// as a list of dicts with numbers printed to `precision // 2` digits.
    #[pyo3(signature = (precision = 60, seed = 0))]
    fn bethe_states<'py>(&self, py: Python<'py>, precision: u32, seed: u64) -> PyResult<Bound<'py, PyAny>> {
        let inner = self.inner.clone();
        let records = py
            .detach(move || -> sovlab::Result<String> {
                let mut sp = diagonalize_bethe(&inner, NumericPolicy::new(Precision::new(precision)), seed)?;
                solve_all(&mut sp)?;
                let recs: Vec<_> = sp.states.iter().map(|s| s.record(precision as usize / 2)).collect();
                Ok(serde_json::to_string(&recs)?)
            })
            .map_err(err)?;
        json_loads(py, &records)
    }

    fn __repr__(&self) -> String {
        format!("ChainSpec(n={}, nu={:?}, theta={:?})", self.inner.n, self.inner.nu, self.theta())
    }
}

/// A suite run: chain plus enabled suites, precision and seed.
#[pyclass(name = "RunConfig", module = "pysovlab")]
pub struct PyRunConfig {
    inner: cli::RunConfig,
}

#[pymethods]
impl PyRunConfig {
    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        Ok(Self { inner: cli::RunConfig::from_json(s).map_err(err)? })
    }

    #[staticmethod]
    #[pyo3(signature = (spec, suites = None, precision = 60, seed = 0))]
    fn from_spec(spec: &PyChainSpec, suites: Option<Vec<String>>, precision: u32, seed: u64) -> PyResult<Self> {
        let mut inner = cli::RunConfig::new(spec.inner.clone());
        if let Some(names) = suites {
            let parsed = names.iter().map(|s| s.parse()).collect::<sovlab::Result<Vec<cli::Suite>>>().map_err(err)?;
            inner.set_suites(&parsed);
        }
        inner.precision = precision;
        inner.seed = seed;
        inner.validate().map_err(err)?;
        Ok(Self { inner })
    }

    #[getter]
    fn suites(&self) -> Vec<String> {
        self.inner.suites.iter().map(ToString::to_string).collect()
    }

    #[getter]
    fn chain(&self) -> PyChainSpec {
        PyChainSpec { inner: self.inner.chain.clone() }
    }

    fn describe(&self) -> PyResult<String> {
        cli::describe(&self.inner).map_err(err)
    }

    /// Runs the enabled suites and returns the report as a dict.
    fn run<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let cfg = self.inner.clone();
        let json = py.detach(move || cli::run(&cfg).and_then(|r| r.to_json())).map_err(err)?;
        json_loads(py, &json)
    }
}

/// Number of Gelfand–Tsetlin patterns with top row `nu`.
#[pyfunction]
fn weyl_dim(nu: Vec<i64>) -> usize {
    weyl_dimension(&nu)
}

/// All GT patterns with top row `nu`, each as its list of rows, in canonical order.
#[pyfunction]
fn gt_patterns(nu: Vec<i64>) -> PyResult<Vec<Vec<Vec<i64>>>> {
    Ok(enumerate_gt_patterns(&nu).map_err(err)?.iter().map(|p| p.rows().to_vec()).collect())
}

#[pymodule]
pub fn pysovlab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyChainSpec>()?;
    m.add_class::<PyRunConfig>()?;
    m.add_function(wrap_pyfunction!(weyl_dim, m)?)?;
    m.add_function(wrap_pyfunction!(gt_patterns, m)?)?;
    Ok(())
}
