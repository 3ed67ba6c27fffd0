//! Python bindings.  Scalars cross the boundary as native Python types
//! (arbitrary-precision counts as int, traces as complex); structured
//! reports cross as JSON strings so the Python side can `json.loads` them.

use fibwrt::category::AnyonLabel;
use fibwrt::cli;
use fibwrt::dqc1::{self, GateCircuit, Part};
use fibwrt::encoding;
use fibwrt::qudits;
use fibwrt::rep;
use fibwrt::spine;
use num_bigint::BigUint;
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: fibwrt::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn labels_from_bits(bits: &[u8]) -> PyResult<Vec<AnyonLabel>> {
    bits.iter()
        .map(|&b| {
            AnyonLabel::from_bit(b)
                .ok_or_else(|| PyValueError::new_err(format!("label {b} must be 0 or 1")))
        })
        .collect()
}

fn bits(labels: &[AnyonLabel]) -> Vec<u8> {
    labels.iter().map(|l| l.bit()).collect()
}

fn matrix_rows(m: &fibwrt::mat::CMat) -> Vec<Vec<Complex64>> {
    m.rows().into_iter().map(|r| r.to_vec()).collect()
}

#[pyfunction]
fn version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}

/// Number of admissible labelings of the genus-g spine, with optional
/// end-handle puncture labels (0 or 1 each, at most two).
#[pyfunction]
#[pyo3(signature = (genus, punctures=vec![]))]
fn spine_count(genus: usize, punctures: Vec<u8>) -> PyResult<BigUint> {
    let labels = labels_from_bits(&punctures)?;
    spine::count_punctured(genus, &labels).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (genus, punctures=vec![]))]
fn spine_labelings(genus: usize, punctures: Vec<u8>) -> PyResult<Vec<Vec<u8>>> {
    let labels = labels_from_bits(&punctures)?;
    let graph = spine::punctured_spine(genus, &labels).map_err(err)?;
    Ok(spine::enumerate_labelings(&graph)
        .iter()
        .map(|l| bits(l))
        .collect())
}

/// (z0, z1): completions of a length-n admissible chain whose last label
/// is vacuum resp. tau.
#[pyfunction]
fn completion_vector(n: usize) -> PyResult<(BigUint, BigUint)> {
    let v = spine::completion_vector(n).map_err(err)?;
    Ok((v.z0, v.z1))
}

/// Exact invariant of the mapping torus of `word`: (trace, dimension).
#[pyfunction]
fn wrt(genus: usize, word: &str) -> PyResult<(Complex64, usize)> {
    let w = cli::parse_word(genus, word).map_err(err)?;
    rep::wrt_invariant(&w).map_err(err)
}

/// Normalized trace of the beta-bit encoded word (the quantity the
/// one-clean-qubit experiment estimates).
#[pyfunction]
fn encoded_trace(genus: usize, word: &str, beta: u32) -> PyResult<Complex64> {
    let w = cli::parse_word(genus, word).map_err(err)?;
    encoding::encoded_word_trace_normalized(&w, beta).map_err(err)
}

#[pyfunction]
fn bias_bound(genus: usize, word_len: usize, beta: u32) -> f64 {
    encoding::bias_bound(genus, word_len, beta)
}

/// (edge index, (earlier context, nearer context), threshold).
type ThresholdRow = (usize, (Option<u8>, Option<u8>), u64);

/// Threshold rows of the register encoding.  Context entries are None
/// where the edge's window needs fewer than two earlier labels.
#[pyfunction]
fn thresholds(genus: usize, beta: u32) -> PyResult<Vec<ThresholdRow>> {
    let table = encoding::build_thresholds(genus, beta).map_err(err)?;
    Ok(table
        .rows()
        .into_iter()
        .map(|(i, (c2, c1), t)| (i, (c2.map(|l| l.bit()), c1.map(|l| l.bit())), t))
        .collect())
}

#[pyfunction]
fn decode_registers(genus: usize, beta: u32, registers: Vec<u64>) -> PyResult<Vec<u8>> {
    let table = encoding::build_thresholds(genus, beta).map_err(err)?;
    Ok(bits(&table.decode(&registers).map_err(err)?))
}

#[pyfunction]
fn preimage_size(genus: usize, beta: u32, labeling: Vec<u8>) -> PyResult<BigUint> {
    let table = encoding::build_thresholds(genus, beta).map_err(err)?;
    let labels = labels_from_bits(&labeling)?;
    table.preimage_size(&labels).map_err(err)
}

/// Worst relative deviation of decode-preimage sizes from the uniform
/// share; decreases as beta grows.
#[pyfunction]
fn preimage_deviation(genus: usize, beta: u32) -> PyResult<f64> {
    encoding::preimage_deviation(genus, beta).map_err(err)
}

/// (digits_per_qudit, copies, delta_achieved, discrepancy_bound) for
/// simulating n a-dimensional qudit traces in base b within delta.
#[pyfunction]
fn plan_qudits(a: u64, b: u64, n: u32, delta: f64) -> PyResult<(u32, BigUint, f64, f64)> {
    let p = qudits::plan(a, b, n, delta).map_err(err)?;
    let (d, delta_achieved, bound) = (p.d, p.delta(), p.discrepancy_bound());
    Ok((d, p.c, delta_achieved, bound))
}

/// Full estimation report (exact invariant, encoded trace, sampled
/// one-clean-qubit estimate) as a JSON string.
#[pyfunction]
fn estimate_json(
    genus: usize,
    word: &str,
    beta: u32,
    samples: u64,
    seed: u64,
) -> PyResult<String> {
    let w = cli::parse_word(genus, word).map_err(err)?;
    let run = dqc1::run_wrt_estimation(&w, beta, samples, seed).map_err(err)?;
    serde_json::to_string_pretty(&run).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Exact clean-qubit outcome probabilities (real prep, imag prep) for a
/// circuit given as JSON.
#[pyfunction]
fn circuit_p0(circuit_json: &str) -> PyResult<(f64, f64)> {
    let c = GateCircuit::from_json(circuit_json).map_err(err)?;
    let re = dqc1::exact_p0(&c, Part::Real).map_err(err)?;
    let im = dqc1::exact_p0(&c, Part::Imag).map_err(err)?;
    Ok((re, im))
}

/// Two-ancilla rewrite whose clean-qubit statistics read out |trace|
/// information through a real nonnegative trace; returns circuit JSON.
#[pyfunction]
fn reduce_abs_json(circuit_json: &str) -> PyResult<String> {
    let c = GateCircuit::from_json(circuit_json).map_err(err)?;
    let reduced = dqc1::absolute_trace_reduction(&c).map_err(err)?;
    Ok(reduced.to_json())
}

/// The mapping class group representation on admissible labelings of the
/// genus-g spine.
#[pyclass(name = "Representation")]
struct PyRepresentation {
    inner: rep::Representation,
}

#[pymethods]
impl PyRepresentation {
    #[new]
    fn new(genus: usize) -> PyResult<Self> {
        Ok(Self {
            inner: rep::Representation::new(genus).map_err(err)?,
        })
    }

    #[getter]
    fn genus(&self) -> usize {
        self.inner.genus()
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    #[getter]
    fn generator_count(&self) -> usize {
        rep::generator_count(self.inner.genus())
    }

    fn labelings(&self) -> Vec<Vec<u8>> {
        self.inner.labelings().iter().map(|l| bits(l)).collect()
    }

    /// Dense matrix of twist generator `id` (1-based) as nested lists.
    fn generator(&self, id: usize) -> PyResult<Vec<Vec<Complex64>>> {
        Ok(matrix_rows(self.inner.generator(id).map_err(err)?))
    }

    fn evaluate(&self, word: &str) -> PyResult<Vec<Vec<Complex64>>> {
        let w = cli::parse_word(self.inner.genus(), word).map_err(err)?;
        Ok(matrix_rows(&self.inner.evaluate_word(&w).map_err(err)?))
    }

    fn wrt(&self, word: &str) -> PyResult<Complex64> {
        let w = cli::parse_word(self.inner.genus(), word).map_err(err)?;
        self.inner.wrt(&w).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Representation(genus={}, dimension={})",
            self.inner.genus(),
            self.inner.dimension()
        )
    }
}

#[pymodule]
fn fibwrt_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRepresentation>()?;
    m.add_function(wrap_pyfunction!(version, m)?)?;
    m.add_function(wrap_pyfunction!(spine_count, m)?)?;
    m.add_function(wrap_pyfunction!(spine_labelings, m)?)?;
    m.add_function(wrap_pyfunction!(completion_vector, m)?)?;
    m.add_function(wrap_pyfunction!(wrt, m)?)?;
    m.add_function(wrap_pyfunction!(encoded_trace, m)?)?;
    m.add_function(wrap_pyfunction!(bias_bound, m)?)?;
    m.add_function(wrap_pyfunction!(thresholds, m)?)?;
    m.add_function(wrap_pyfunction!(decode_registers, m)?)?;
    m.add_function(wrap_pyfunction!(preimage_size, m)?)?;
    m.add_function(wrap_pyfunction!(preimage_deviation, m)?)?;
    m.add_function(wrap_pyfunction!(plan_qudits, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_json, m)?)?;
    m.add_function(wrap_pyfunction!(circuit_p0, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_abs_json, m)?)?;
    Ok(())
}
