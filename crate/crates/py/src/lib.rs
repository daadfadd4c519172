//! Python bindings: the two codes, encoding, the correction pipeline,
//! trajectory sampling, the certification checks, and the generic
//! experiment runner.

use num_complex::Complex64;
use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

use jumpcode::code::{self, LogicalQubit};
use jumpcode::decode::{Decoder, ScriptStep};
use jumpcode::noise::{self, ErrorOp, TrajectoryConfig};
use jumpcode::qsim::{rng_from_seed, BasisWord};
use jumpcode::verify;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn logical(alpha: Complex64, beta: Complex64) -> PyResult<LogicalQubit> {
    LogicalQubit::new(alpha, beta).map_err(err)
}

/// A two-codeword code given as signed basis words.
#[pyclass(frozen)]
struct Code {
    inner: code::CodeSpec,
}

#[pymethods]
impl Code {
    /// The five-qubit single-error-correcting code.
    #[staticmethod]
    fn five_bit() -> Code {
        Code { inner: code::five_bit_code() }
    }

    /// The eight-qubit equal-excitation code.
    #[staticmethod]
    fn eight_bit() -> Code {
        Code { inner: code::eight_bit_code() }
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    /// Signed words of the logical-zero state as `(sign, bits)` pairs.
    fn zero_words(&self) -> Vec<(i8, String)> {
        self.inner
            .zero_words
            .iter()
            .map(|sw| (sw.sign, sw.word.to_string()))
            .collect()
    }

    fn one_words(&self) -> Vec<(i8, String)> {
        self.inner
            .one_words
            .iter()
            .map(|sw| (sw.sign, sw.word.to_string()))
            .collect()
    }

    fn is_equal_excitation(&self) -> bool {
        self.inner.is_equal_excitation()
    }

    /// Normalized amplitudes of `alpha |0_L> + beta |1_L>`.
    fn encode(&self, alpha: Complex64, beta: Complex64) -> PyResult<Vec<Complex64>> {
        let q = logical(alpha, beta)?;
        Ok(code::encode(&self.inner, &q).map_err(err)?.amps().to_vec())
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __repr__(&self) -> String {
        format!("Code({}, n={})", self.inner.name, self.inner.n)
    }
}

/// Syndrome extraction and correction machinery for one of the built-in
/// codes ("five-bit" or "eight-bit").
#[pyclass(frozen)]
struct Machine {
    inner: &'static Decoder,
}

fn parse_script(steps: Vec<String>) -> PyResult<Vec<ScriptStep>> {
    steps
        .iter()
        .map(|s| {
            let (kind, arg) = s
                .split_once(':')
                .ok_or_else(|| PyValueError::new_err(format!("bad script step {s:?}")))?;
            match kind {
                "evolve" => arg
                    .parse::<f64>()
                    .map(ScriptStep::Evolve)
                    .map_err(|e| PyValueError::new_err(format!("{s:?}: {e}"))),
                "error" => ErrorOp::parse(arg).map(ScriptStep::Error).map_err(err),
                "jump" => arg
                    .parse::<usize>()
                    .map(ScriptStep::Jump)
                    .map_err(|e| PyValueError::new_err(format!("{s:?}: {e}"))),
                other => Err(PyValueError::new_err(format!("unknown step kind {other:?}"))),
            }
        })
        .collect()
}

#[pymethods]
impl Machine {
    #[new]
    fn new(code_name: &str) -> PyResult<Self> {
        let inner = match code_name {
            "five-bit" => Decoder::five_bit().map_err(err)?,
            "eight-bit" => Decoder::eight_bit().map_err(err)?,
            other => {
                return Err(PyKeyError::new_err(format!(
                    "unknown code {other:?}; use \"five-bit\" or \"eight-bit\""
                )))
            }
        };
        Ok(Machine { inner })
    }

    #[getter]
    fn data_qubit(&self) -> usize {
        self.inner.data_qubit()
    }

    /// Distinct syndromes, the clean class included.
    fn syndrome_class_count(&self) -> usize {
        self.inner.table().class_count()
    }

    /// The regenerated syndrome table as JSON.
    fn syndrome_table_json(&self) -> String {
        self.inner.table().to_json()
    }

    /// Errors sharing the syndrome of `error_name`, with reported phases.
    fn degenerate_partners(&self, error_name: &str) -> PyResult<Vec<(String, i8)>> {
        let e = ErrorOp::parse(error_name).map_err(err)?;
        for class in self.inner.table().classes.values() {
            if class.members.iter().any(|m| m.error == Some(e)) {
                return Ok(class
                    .members
                    .iter()
                    .map(|m| (m.error.map_or("None".into(), |x| x.to_string()), m.phase))
                    .collect());
            }
        }
        Err(PyKeyError::new_err(format!("{error_name} not in table")))
    }

    /// Encode, run a corruption script, extract the syndrome, correct.
    ///
    /// Script steps: `"evolve:GAMMA_T"`, `"error:NAME"`, `"jump:QUBIT"`.
    /// Returns `(alpha, beta, fidelity)` of the recovered logical qubit.
    fn full_cycle(
        &self,
        alpha: Complex64,
        beta: Complex64,
        script: Vec<String>,
        seed: u64,
    ) -> PyResult<(Complex64, Complex64, f64)> {
        let q = logical(alpha, beta)?;
        let steps = parse_script(script)?;
        let mut rng = rng_from_seed(seed);
        let (recovered, fidelity) = self.inner.full_cycle(&q, &steps, &mut rng).map_err(err)?;
        Ok((recovered.alpha, recovered.beta, fidelity))
    }

    /// Sample one emission trajectory of the encoded state and correct the
    /// outcome. Returns `(fidelity, [(gamma_t, qubit), ...])`.
    fn trajectory_cycle(
        &self,
        alpha: Complex64,
        beta: Complex64,
        gamma_t_total: f64,
        seed: u64,
    ) -> PyResult<(f64, Vec<(f64, usize)>)> {
        let q = logical(alpha, beta)?;
        let psi = self.inner.encode(&q).map_err(err)?;
        let cfg = TrajectoryConfig::new(gamma_t_total, seed).map_err(err)?.with_max_jumps(8);
        let (state, jumps) = noise::sample_trajectory(&psi, &cfg).map_err(err)?;
        let mut rng = rng_from_seed(seed ^ 0x9e37_79b9_7f4a_7c15);
        let (syndrome, measured, _) = self.inner.extract_syndrome(&state, &mut rng).map_err(err)?;
        let fidelity = match self.inner.table().correct(&syndrome, &measured) {
            Ok(recovered) => q.fidelity_up_to_phase(&recovered),
            Err(jumpcode::Error::UnknownSyndrome(_)) => 0.0,
            Err(e) => return Err(err(e)),
        };
        Ok((fidelity, jumps.into_iter().map(|j| (j.gamma_t, j.qubit)).collect()))
    }
}

/// Lift a length-5 word into the eight-qubit code's word set.
#[pyfunction]
fn lift_word(bits: &str) -> PyResult<String> {
    let w = BasisWord::parse(bits).map_err(err)?;
    Ok(code::lift_word(&w).map_err(err)?.to_string())
}

/// Fidelity of the renormalized no-emission evolution of an encoded
/// eight-qubit state against the clean encoding.
#[pyfunction]
fn invariance_fidelity(gamma_t: f64, alpha: Complex64, beta: Complex64) -> PyResult<f64> {
    let q = logical(alpha, beta)?;
    let psi = code::encode(&code::eight_bit_code(), &q).map_err(err)?;
    let evolved = noise::conditional_evolve_gt(&psi, gamma_t)
        .map_err(err)?
        .normalized()
        .map_err(err)?;
    jumpcode::qsim::fidelity_up_to_phase(&evolved, &psi).map_err(err)
}

/// Largest deviation of the decay-mixing identities on the eight-qubit code.
#[pyfunction]
fn decay_mixing_deviation(
    qubit: usize,
    gamma_t: f64,
    alpha: Complex64,
    beta: Complex64,
) -> PyResult<f64> {
    let q = logical(alpha, beta)?;
    noise::decay_mixing_check(&code::eight_bit_code(), &q, qubit, gamma_t).map_err(err)
}

/// Exact sphere-packing inequality: returns `(holds, lhs, rhs)` with the
/// integers rendered as strings.
#[pyfunction]
fn sphere_bound(l: u32, n: u32, t: u32) -> PyResult<(bool, String, String)> {
    let r = verify::sphere_bound(verify::BoundQuery { l, n, t }).map_err(err)?;
    Ok((r.holds, r.lhs.to_string(), r.rhs.to_string()))
}

/// Whether the code satisfies the error-correction conditions over the full
/// single-error alphabet.
#[pyfunction]
fn kl_satisfied(code: &Code) -> PyResult<bool> {
    let alphabet = verify::single_error_words(code.inner.n);
    Ok(verify::kl_check(&code.inner, &alphabet).map_err(err)?.satisfied)
}

/// Whether distinct errors map the code space to mutually orthogonal
/// subspaces (the strict condition degenerate codes violate).
#[pyfunction]
fn strict_orthogonality_satisfied(code: &Code) -> PyResult<bool> {
    let alphabet = verify::single_error_words(code.inner.n);
    Ok(verify::em_orthogonality_check(&code.inner, &alphabet)
        .map_err(err)?
        .satisfied)
}

/// Rank of the space spanned by the code and all single-error images.
#[pyfunction]
fn error_space_dimension(code: &Code) -> PyResult<usize> {
    let alphabet = verify::single_error_words(code.inner.n);
    verify::error_space_dimension(&code.inner, &alphabet).map_err(err)
}

/// Run any experiment from its JSON spec; returns the JSON report.
#[pyfunction]
fn run_experiment_json(spec_json: &str) -> PyResult<String> {
    let spec: jumpcode::experiments::ExperimentSpec =
        serde_json::from_str(spec_json).map_err(err)?;
    let report = jumpcode::experiments::run_experiment(&spec).map_err(err)?;
    Ok(report.to_json_pretty())
}

#[pymodule]
fn jumpcode_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Code>()?;
    m.add_class::<Machine>()?;
    m.add_function(wrap_pyfunction!(lift_word, m)?)?;
    m.add_function(wrap_pyfunction!(invariance_fidelity, m)?)?;
    m.add_function(wrap_pyfunction!(decay_mixing_deviation, m)?)?;
    m.add_function(wrap_pyfunction!(sphere_bound, m)?)?;
    m.add_function(wrap_pyfunction!(kl_satisfied, m)?)?;
    m.add_function(wrap_pyfunction!(strict_orthogonality_satisfied, m)?)?;
    m.add_function(wrap_pyfunction!(error_space_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment_json, m)?)?;
    Ok(())
}
