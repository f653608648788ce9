//! Python bindings: `import eca`.

use eca_core::analysis::{self, Regime, RegimeThresholds};
use eca_core::{Budget, ConfigSource, Constraints, Error, Family};
use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::{PyIndexError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(eca, BudgetExceededError, PyRuntimeError);

fn err(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded(_) | Error::PeriodOverflow { .. } => BudgetExceededError::new_err(e.to_string()),
        Error::IndexOutOfRange { .. } => PyIndexError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn budget() -> PyResult<Budget> {
    Budget::from_env().map_err(err)
}

#[pyclass(name = "Rule", module = "eca", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyRule(eca_core::Rule);

#[pymethods]
impl PyRule {
    #[new]
    fn new(code: u8) -> Self {
        PyRule(eca_core::Rule::new(code))
    }

    #[getter]
    fn code(&self) -> u8 {
        self.0.code()
    }

    fn apply(&self, left: bool, center: bool, right: bool) -> bool {
        self.0.apply(left, center, right)
    }

    fn reflect(&self) -> Self {
        PyRule(self.0.reflect())
    }

    fn complement(&self) -> Self {
        PyRule(self.0.complement())
    }

    fn class_rep(&self) -> Self {
        PyRule(self.0.class_rep())
    }

    fn __int__(&self) -> u8 {
        self.0.code()
    }

    fn __repr__(&self) -> String {
        format!("Rule({})", self.0.code())
    }
}

/// Accepts a `Rule` or a plain integer code.
fn rule_arg(obj: &Bound<'_, PyAny>) -> PyResult<eca_core::Rule> {
    if let Ok(r) = obj.extract::<PyRule>() {
        return Ok(r.0);
    }
    Ok(eca_core::Rule::new(obj.extract::<u8>()?))
}

#[pyclass(name = "Configuration", module = "eca", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyConfiguration(eca_core::Configuration);

#[pymethods]
impl PyConfiguration {
    /// From a '0'/'1' literal (cell 0 first) or a sequence of booleans.
    #[new]
    fn new(value: &Bound<'_, PyAny>) -> PyResult<Self> {
        if let Ok(text) = value.extract::<String>() {
            return text.parse().map(PyConfiguration).map_err(err);
        }
        let bits: Vec<bool> = value.extract()?;
        Ok(PyConfiguration(eca_core::Configuration::from_bits(&bits)))
    }

    /// Inverse of `pack`: cell 0 is the least significant bit.
    #[staticmethod]
    fn unpack(n: usize, value: u64) -> PyResult<Self> {
        eca_core::Configuration::unpack(n, value).map(PyConfiguration).map_err(err)
    }

    #[staticmethod]
    fn random(n: usize, count: usize, seed: u64) -> Vec<Self> {
        eca_core::sample_configs(n, count, seed).into_iter().map(PyConfiguration).collect()
    }

    fn pack(&self) -> PyResult<u64> {
        self.0.pack().map_err(err)
    }

    fn bits(&self) -> Vec<bool> {
        self.0.bits().collect()
    }

    fn count_ones(&self) -> usize {
        self.0.count_ones()
    }

    fn complement(&self) -> Self {
        PyConfiguration(self.0.complement())
    }

    fn reflect(&self) -> Self {
        PyConfiguration(self.0.reflect())
    }

    fn rotate(&self, k: usize) -> Self {
        PyConfiguration(self.0.rotate(k % self.0.len().max(1)))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __getitem__(&self, i: usize) -> PyResult<bool> {
        if i >= self.0.len() {
            return Err(PyIndexError::new_err(format!("cell {i} out of range for n={}", self.0.len())));
        }
        Ok(self.0.get(i))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Configuration('{}')", self.0)
    }
}

#[pyclass(name = "UpdateMode", module = "eca", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq, Eq)]
struct PyUpdateMode(eca_core::UpdateMode);

fn constraints(blocks: Option<usize>, max_period: Option<usize>) -> Constraints {
    Constraints { blocks, max_period, ..Default::default() }
}

#[pymethods]
impl PyUpdateMode {
    /// Parses the text form, e.g. `bp:{(0,1),(2)}`.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        eca_core::UpdateMode::parse_with_cap(text, budget()?.period_cap).map(PyUpdateMode).map_err(err)
    }

    #[staticmethod]
    fn parallel(n: usize) -> PyResult<Self> {
        eca_core::UpdateMode::parallel(n).map(PyUpdateMode).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (n, even_first = true))]
    fn bipartite(n: usize, even_first: bool) -> PyResult<Self> {
        eca_core::UpdateMode::bipartite(n, even_first).map(PyUpdateMode).map_err(err)
    }

    #[staticmethod]
    fn sequential(order: Vec<usize>) -> PyResult<Self> {
        eca_core::UpdateMode::sequential(order).map(PyUpdateMode).map_err(err)
    }

    #[staticmethod]
    fn block_sequential(blocks: Vec<Vec<usize>>) -> PyResult<Self> {
        eca_core::UpdateMode::block_sequential(blocks).map(PyUpdateMode).map_err(err)
    }

    #[staticmethod]
    fn block_parallel(subsequences: Vec<Vec<usize>>) -> PyResult<Self> {
        eca_core::UpdateMode::block_parallel(subsequences, budget()?.period_cap).map(PyUpdateMode).map_err(err)
    }

    #[staticmethod]
    fn local_clocks(periods: Vec<usize>, shifts: Vec<usize>) -> PyResult<Self> {
        eca_core::UpdateMode::local_clocks(periods, shifts, budget()?.period_cap).map(PyUpdateMode).map_err(err)
    }

    /// A random mode of the family; deterministic per seed.
    #[staticmethod]
    #[pyo3(signature = (family, n, seed, blocks = None, max_period = None))]
    fn sample(family: &str, n: usize, seed: u64, blocks: Option<usize>, max_period: Option<usize>) -> PyResult<Self> {
        let family: Family = family.parse().map_err(err)?;
        eca_core::sample_mode(family, n, seed, &constraints(blocks, max_period)).map(PyUpdateMode).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn family(&self) -> &'static str {
        self.0.family().as_str()
    }

    #[getter]
    fn period(&self) -> usize {
        self.0.period()
    }

    #[getter]
    fn blocks(&self) -> Vec<Vec<usize>> {
        self.0.blocks().to_vec()
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    fn __str__(&self) -> String {
        self.0.to_text()
    }

    fn __repr__(&self) -> String {
        format!("UpdateMode('{}')", self.0.to_text())
    }
}

#[pyfunction]
fn step(rule: &Bound<'_, PyAny>, mode: &PyUpdateMode, config: &PyConfiguration) -> PyResult<PyConfiguration> {
    eca_core::step(&config.0, rule_arg(rule)?, &mode.0).map(PyConfiguration).map_err(err)
}

type Substeps = Vec<Vec<PyConfiguration>>;

/// Configurations at steps `0..=steps`; with `substeps`, also the
/// intermediate configurations of every step.
#[pyfunction]
#[pyo3(signature = (rule, mode, config, steps, substeps = false))]
fn trajectory(
    rule: &Bound<'_, PyAny>,
    mode: &PyUpdateMode,
    config: &PyConfiguration,
    steps: usize,
    substeps: bool,
) -> PyResult<(Vec<PyConfiguration>, Option<Substeps>)> {
    let t = eca_core::trajectory(&config.0, rule_arg(rule)?, &mode.0, steps, substeps).map_err(err)?;
    let wrap = |v: Vec<eca_core::Configuration>| v.into_iter().map(PyConfiguration).collect::<Vec<_>>();
    Ok((wrap(t.steps), t.substeps.map(|s| s.into_iter().map(wrap).collect())))
}

#[pyfunction]
fn detect_cycle<'py>(
    py: Python<'py>,
    rule: &Bound<'py, PyAny>,
    mode: &PyUpdateMode,
    config: &PyConfiguration,
) -> PyResult<Bound<'py, PyDict>> {
    let out = eca_core::detect_cycle(&config.0, rule_arg(rule)?, &mode.0, &budget()?).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("transient", out.transient)?;
    d.set_item("cycle_length", out.cycle_length)?;
    d.set_item("cycle_min_rep", PyConfiguration(out.cycle_min_rep))?;
    Ok(d)
}

/// Exhaustive attractor sweep: every cycle as `(length, min_rep, basin)`.
#[pyfunction]
fn sweep_all<'py>(py: Python<'py>, rule: &Bound<'py, PyAny>, mode: &PyUpdateMode) -> PyResult<Bound<'py, PyDict>> {
    let rule = rule_arg(rule)?;
    let b = budget()?;
    let rep = py.detach(|| eca_core::sweep_all(rule, &mode.0, &b)).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("n", rep.n)?;
    d.set_item("mode", rep.mode)?;
    d.set_item("configurations", rep.configurations)?;
    d.set_item("max_cycle", rep.max_cycle)?;
    d.set_item("max_transient", rep.max_transient)?;
    let cycles: Vec<(u64, PyConfiguration, Option<u64>)> =
        rep.cycles.into_iter().map(|c| (c.length, PyConfiguration(c.min_rep), c.basin)).collect();
    d.set_item("cycles", cycles)?;
    Ok(d)
}

#[pyfunction]
fn find_absolute_walls(rule: &Bound<'_, PyAny>, k: usize) -> PyResult<Vec<String>> {
    Ok(eca_core::find_absolute_walls(rule_arg(rule)?, k).map_err(err)?.iter().map(|w| w.word_string()).collect())
}

/// Largest product of distinct primes summing to at most `n`, as an int.
#[pyfunction]
fn primorial(n: usize) -> BigUint {
    eca_core::primorial(n)
}

#[pyfunction]
fn density(config: &PyConfiguration) -> f64 {
    eca_core::density(&config.0)
}

#[pyfunction]
fn energy(config: &PyConfiguration) -> PyResult<i64> {
    eca_core::energy(&config.0).map_err(err)
}

#[pyfunction]
fn normalized_energy(config: &PyConfiguration) -> PyResult<f64> {
    eca_core::normalized_energy(&config.0).map_err(err)
}

/// Regime label of `(n, max_cycle)` points with the default thresholds.
#[pyfunction]
fn classify_regime(points: Vec<(usize, u64)>) -> PyResult<&'static str> {
    analysis::classify_regime(&points, &RegimeThresholds::default()).map(Regime::as_str).map_err(err)
}

#[pyfunction]
fn craft_lcm_config<'py>(
    py: Python<'py>,
    rule: &Bound<'py, PyAny>,
    n: usize,
    segments: Vec<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let c = eca_core::craft_lcm_config(rule_arg(rule)?, n, &segments, &budget()?).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("config", PyConfiguration(c.config))?;
    d.set_item("mode", PyUpdateMode(eca_core::UpdateMode::parse(&c.mode).map_err(err)?))?;
    let segs: Vec<(usize, usize, u64, bool)> =
        c.segments.iter().map(|s| (s.length, s.start, s.cycle, s.padding)).collect();
    d.set_item("segments", segs)?;
    d.set_item("transient", c.transient)?;
    d.set_item("global_cycle", c.global_cycle)?;
    d.set_item("lcm", c.lcm)?;
    Ok(d)
}

/// Mean density and normalized energy per step over `m` modes; `s=None`
/// uses all 2^n configurations.
#[pyfunction]
#[pyo3(signature = (rule, family, n, s, m, steps, seed, blocks = None, max_period = None))]
#[allow(clippy::too_many_arguments)]
fn run_series<'py>(
    py: Python<'py>,
    rule: &Bound<'py, PyAny>,
    family: &str,
    n: usize,
    s: Option<usize>,
    m: usize,
    steps: usize,
    seed: u64,
    blocks: Option<usize>,
    max_period: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let rule = rule_arg(rule)?;
    let family: Family = family.parse().map_err(err)?;
    let source = s.map_or(ConfigSource::Exhaustive, ConfigSource::Random);
    let c = constraints(blocks, max_period);
    let b = budget()?;
    let series = py.detach(|| eca_core::run_series(rule, family, &c, n, source, m, steps, seed, &b)).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("modes", series.modes)?;
    d.set_item("mean_density", series.mean_density)?;
    d.set_item("mean_norm_energy", series.mean_norm_energy)?;
    d.set_item("var_density", series.var_density)?;
    d.set_item("var_norm_energy", series.var_norm_energy)?;
    Ok(d)
}

#[pymodule]
fn eca(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRule>()?;
    m.add_class::<PyConfiguration>()?;
    m.add_class::<PyUpdateMode>()?;
    m.add("BudgetExceededError", m.py().get_type::<BudgetExceededError>())?;
    m.add_function(wrap_pyfunction!(step, m)?)?;
    m.add_function(wrap_pyfunction!(trajectory, m)?)?;
    m.add_function(wrap_pyfunction!(detect_cycle, m)?)?;
    m.add_function(wrap_pyfunction!(sweep_all, m)?)?;
    m.add_function(wrap_pyfunction!(find_absolute_walls, m)?)?;
    m.add_function(wrap_pyfunction!(primorial, m)?)?;
    m.add_function(wrap_pyfunction!(density, m)?)?;
    m.add_function(wrap_pyfunction!(energy, m)?)?;
    m.add_function(wrap_pyfunction!(normalized_energy, m)?)?;
    m.add_function(wrap_pyfunction!(classify_regime, m)?)?;
    m.add_function(wrap_pyfunction!(craft_lcm_config, m)?)?;
    m.add_function(wrap_pyfunction!(run_series, m)?)?;
    Ok(())
}
