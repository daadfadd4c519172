use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit {qubit} out of range for a {n_qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },

    #[error("register size {0} outside supported range 1..=10")]
    UnsupportedRegisterSize(usize),

    #[error("dimension mismatch: expected {expected} qubits, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("amplitude vector of length {len} does not match 2^{n_qubits}")]
    BadAmplitudeCount { len: usize, n_qubits: usize },

    #[error("amplitudes must be finite")]
    NonFiniteAmplitude,

    #[error("squared norm {0} exceeds 1 beyond tolerance")]
    NormTooLarge(f64),

    #[error("state has zero norm")]
    ZeroNorm,

    #[error("gate target {0} is also listed as a control")]
    TargetIsControl(usize),

    #[error("control qubit {0} listed twice")]
    DuplicateControl(usize),

    #[error("{kind} gate requires a target qubit")]
    MissingTarget { kind: &'static str },

    #[error("invalid basis word: {0}")]
    BadWord(String),

    #[error("invalid code: {0}")]
    InvalidCode(String),

    #[error("gate table parse error on line {line}: {msg}")]
    GateTableParse { line: usize, msg: String },

    #[error("encoder validation failed: {0}")]
    EncoderValidation(String),

    #[error("encoder synthesis failed: {0}")]
    Synthesis(String),

    #[error("quantum jump impossible: qubit {0} carries no excited amplitude")]
    JumpImpossible(usize),

    #[error("logical amplitudes not normalized: |alpha|^2+|beta|^2 = {0}")]
    NotNormalized(f64),

    #[error("error {error} produced a non-deterministic syndrome; encoder and code disagree")]
    NonDeterministicSyndrome { error: String },

    #[error("syndrome class {syndrome} is inconsistent: {msg}")]
    InconsistentClass { syndrome: String, msg: String },

    #[error("unknown syndrome {0}: corruption beyond the code's single-error capability")]
    UnknownSyndrome(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
