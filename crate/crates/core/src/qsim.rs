//! Exact state-vector simulation of small qubit registers.
//!
//! Conventions used throughout the crate:
//!
//! - Qubits are indexed from 1. Qubit 1 is the leftmost character of a ket
//!   string and the most significant bit of an amplitude index, so
//!   `|10010110>` on 8 qubits is amplitude index `0b10010110`.
//! - States may be sub-normalized: the no-emission conditional evolution
//!   shrinks the norm by construction, and normalization happens only at
//!   measurement and in fidelity computations.
//! - Every stochastic operation takes an explicit RNG stream handle; the
//!   stream type is pinned to ChaCha12 so seeded runs reproduce bit for bit
//!   across platforms.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// 1-based qubit index.
pub type Qubit = usize;

/// Largest register size supported by the dense simulator.
pub const MAX_QUBITS: usize = 10;

/// The crate-wide reproducible random number generator.
pub type SimRng = rand_chacha::ChaCha12Rng;

/// Build the named RNG stream for a seed.
pub fn rng_from_seed(seed: u64) -> SimRng {
    SimRng::seed_from_u64(seed)
}

/// Bit mask of `qubit` inside an amplitude index of an `n`-qubit register.
#[inline]
pub fn qubit_mask(n_qubits: usize, qubit: Qubit) -> usize {
    1 << (n_qubits - qubit)
}

/// Value (0 or 1) of `qubit` in the basis word with amplitude index `index`.
#[inline]
pub fn bit_of(index: usize, n_qubits: usize, qubit: Qubit) -> u8 {
    ((index >> (n_qubits - qubit)) & 1) as u8
}

/// Number of excited (1) qubits in the basis word with amplitude index `index`.
#[inline]
pub fn excitation(index: usize) -> u32 {
    index.count_ones()
}

fn check_qubit(n_qubits: usize, qubit: Qubit) -> Result<()> {
    if qubit == 0 || qubit > n_qubits {
        Err(Error::QubitOutOfRange { qubit, n_qubits })
    } else {
        Ok(())
    }
}

/// A computational-basis product state on `n` qubits.
///
/// Stored as the amplitude index; position 1 of the bit string is the most
/// significant bit of the index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisWord {
    n_qubits: usize,
    index: usize,
}

impl BasisWord {
    pub fn from_index(n_qubits: usize, index: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::UnsupportedRegisterSize(n_qubits));
        }
        if index >= (1 << n_qubits) {
            return Err(Error::BadWord(format!(
                "index {index} out of range for {n_qubits} qubits"
            )));
        }
        Ok(Self { n_qubits, index })
    }

    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        if bits.is_empty() || bits.len() > MAX_QUBITS {
            return Err(Error::UnsupportedRegisterSize(bits.len()));
        }
        let mut index = 0usize;
        for &b in bits {
            if b > 1 {
                return Err(Error::BadWord(format!("bit value {b} is not 0/1")));
            }
            index = (index << 1) | b as usize;
        }
        Ok(Self { n_qubits: bits.len(), index })
    }

    /// Parse a ket string such as `"00001111"`.
    pub fn parse(s: &str) -> Result<Self> {
        let bits: Result<Vec<u8>> = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::BadWord(format!("unexpected character {other:?}"))),
            })
            .collect();
        Self::from_bits(&bits?)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Amplitude index; qubit 1 is the most significant bit.
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn bits(&self) -> Vec<u8> {
        (1..=self.n_qubits)
            .map(|q| bit_of(self.index, self.n_qubits, q))
            .collect()
    }

    pub fn bit(&self, qubit: Qubit) -> u8 {
        bit_of(self.index, self.n_qubits, qubit)
    }

    /// Hamming weight: the number of excited qubits.
    pub fn weight(&self) -> u32 {
        excitation(self.index)
    }
}

impl std::fmt::Display for BasisWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for q in 1..=self.n_qubits {
            write!(f, "{}", self.bit(q))?;
        }
        Ok(())
    }
}

/// A sub-normalized pure state of an `n`-qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct QState {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

/// Tolerance allowed above unit squared norm at construction.
const NORM_SLACK: f64 = 1e-12;

impl QState {
    /// The all-ground state `|0...0>`.
    pub fn ground(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::UnsupportedRegisterSize(n_qubits));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    /// The basis state `|word>`.
    pub fn basis(word: BasisWord) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << word.n_qubits];
        amps[word.index] = Complex64::new(1.0, 0.0);
        Self { n_qubits: word.n_qubits, amps }
    }

    /// Validating constructor from a full amplitude vector.
    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::UnsupportedRegisterSize(n_qubits));
        }
        if amps.len() != 1 << n_qubits {
            return Err(Error::BadAmplitudeCount { len: amps.len(), n_qubits });
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFiniteAmplitude);
        }
        let state = Self { n_qubits, amps };
        let n2 = state.norm_sqr();
        if n2 > 1.0 + NORM_SLACK {
            return Err(Error::NormTooLarge(n2));
        }
        Ok(state)
    }

    /// Product state with `(alpha, beta)` on `data_qubit` and `|0>` elsewhere.
    pub fn with_data_qubit(
        n_qubits: usize,
        data_qubit: Qubit,
        alpha: Complex64,
        beta: Complex64,
    ) -> Result<Self> {
        let mut state = Self::ground(n_qubits)?;
        check_qubit(n_qubits, data_qubit)?;
        let mask = qubit_mask(n_qubits, data_qubit);
        state.amps[0] = alpha;
        state.amps[mask] = beta;
        let n2 = state.norm_sqr();
        if n2 > 1.0 + NORM_SLACK {
            return Err(Error::NormTooLarge(n2));
        }
        Ok(state)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amp(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub(crate) fn amps_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Renormalized copy; error on a zero-norm state.
    pub fn normalized(&self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 <= 0.0 {
            return Err(Error::ZeroNorm);
        }
        let s = 1.0 / n2.sqrt();
        let amps = self.amps.iter().map(|a| a * s).collect();
        Ok(Self { n_qubits: self.n_qubits, amps })
    }

    /// `<self|other>` with the conjugate on `self`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                got: other.n_qubits,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Euclidean distance between amplitude vectors.
    pub fn vector_distance(&self, other: &Self) -> Result<f64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                got: other.n_qubits,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }
}

/// `|<a|b>| / (|a||b|)`, insensitive to global phase.
pub fn fidelity_up_to_phase(a: &QState, b: &QState) -> Result<f64> {
    let na = a.norm_sqr();
    let nb = b.norm_sqr();
    if na <= 0.0 || nb <= 0.0 {
        return Err(Error::ZeroNorm);
    }
    Ok(a.inner(b)?.norm() / (na * nb).sqrt())
}

/// Control polarity: fire on `|1>` (filled dot) or on `|0>` (open dot).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Polarity {
    On1,
    On0,
}

/// A control attached to a gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Control {
    pub qubit: Qubit,
    pub polarity: Polarity,
}

impl Control {
    pub fn on1(qubit: Qubit) -> Self {
        Self { qubit, polarity: Polarity::On1 }
    }

    pub fn on0(qubit: Qubit) -> Self {
        Self { qubit, polarity: Polarity::On0 }
    }
}

/// Elementary gate kinds. All three are involutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GateKind {
    /// One-bit rotation: `|0> -> (|0>+|1>)/sqrt2`, `|1> -> (|0>-|1>)/sqrt2`.
    Rotation,
    /// Bit flip `|0> <-> |1>`.
    Not,
    /// Sign flip. With a target, negates the target's `|1>` component when
    /// all controls are satisfied. Without a target, negates the whole
    /// amplitude when the controls are satisfied (a pure controlled phase).
    PhasePi,
}

impl GateKind {
    pub fn token(self) -> &'static str {
        match self {
            GateKind::Rotation => "R",
            GateKind::Not => "NOT",
            GateKind::PhasePi => "PHASE_PI",
        }
    }
}

/// A controlled elementary gate.
///
/// `target` may be `None` only for [`GateKind::PhasePi`]: that is the
/// phase circle attached to nothing but its control dots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    pub target: Option<Qubit>,
    pub controls: Vec<Control>,
}

impl Gate {
    pub fn rotation(target: Qubit) -> Self {
        Self { kind: GateKind::Rotation, target: Some(target), controls: Vec::new() }
    }

    pub fn not(target: Qubit) -> Self {
        Self { kind: GateKind::Not, target: Some(target), controls: Vec::new() }
    }

    pub fn controlled_not(target: Qubit, controls: Vec<Control>) -> Self {
        Self { kind: GateKind::Not, target: Some(target), controls }
    }

    /// Phase gate on the `|1>` component of `target`.
    pub fn phase_pi_on(target: Qubit, controls: Vec<Control>) -> Self {
        Self { kind: GateKind::PhasePi, target: Some(target), controls }
    }

    /// Pure controlled sign: `-1` whenever all controls are satisfied.
    pub fn phase_pi(controls: Vec<Control>) -> Self {
        Self { kind: GateKind::PhasePi, target: None, controls }
    }

    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        if self.target.is_none() && self.kind != GateKind::PhasePi {
            return Err(Error::MissingTarget { kind: self.kind.token() });
        }
        if let Some(t) = self.target {
            check_qubit(n_qubits, t)?;
            if self.controls.iter().any(|c| c.qubit == t) {
                return Err(Error::TargetIsControl(t));
            }
        }
        for (i, c) in self.controls.iter().enumerate() {
            check_qubit(n_qubits, c.qubit)?;
            if self.controls[..i].iter().any(|d| d.qubit == c.qubit) {
                return Err(Error::DuplicateControl(c.qubit));
            }
        }
        Ok(())
    }

    fn controls_satisfied(&self, index: usize, n_qubits: usize) -> bool {
        self.controls.iter().all(|c| {
            let bit = bit_of(index, n_qubits, c.qubit);
            match c.polarity {
                Polarity::On1 => bit == 1,
                Polarity::On0 => bit == 0,
            }
        })
    }
}

impl std::fmt::Display for Gate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.kind.token())?;
        match self.target {
            Some(t) => write!(f, " {t}")?,
            None => write!(f, " -")?,
        }
        for c in &self.controls {
            let p = match c.polarity {
                Polarity::On1 => 1,
                Polarity::On0 => 0,
            };
            write!(f, " {}:{}", c.qubit, p)?;
        }
        Ok(())
    }
}

/// Apply a single gate; linear, norm-preserving.
pub fn apply_gate(state: &QState, gate: &Gate) -> Result<QState> {
    gate.validate(state.n_qubits)?;
    let n = state.n_qubits;
    let mut out = state.clone();
    match (gate.kind, gate.target) {
        (GateKind::Rotation, Some(t)) => {
            let mask = qubit_mask(n, t);
            let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
            for i in 0..out.amps.len() {
                if i & mask == 0 && gate.controls_satisfied(i, n) {
                    let a0 = out.amps[i];
                    let a1 = out.amps[i | mask];
                    out.amps[i] = (a0 + a1) * inv_sqrt2;
                    out.amps[i | mask] = (a0 - a1) * inv_sqrt2;
                }
            }
        }
        (GateKind::Not, Some(t)) => {
            let mask = qubit_mask(n, t);
            for i in 0..out.amps.len() {
                if i & mask == 0 && gate.controls_satisfied(i, n) {
                    out.amps.swap(i, i | mask);
                }
            }
        }
        (GateKind::PhasePi, Some(t)) => {
            let mask = qubit_mask(n, t);
            for i in 0..out.amps.len() {
                if i & mask != 0 && gate.controls_satisfied(i, n) {
                    out.amps[i] = -out.amps[i];
                }
            }
        }
        (GateKind::PhasePi, None) => {
            for i in 0..out.amps.len() {
                if gate.controls_satisfied(i, n) {
                    out.amps[i] = -out.amps[i];
                }
            }
        }
        (_, None) => unreachable!("validate rejects missing targets"),
    }
    Ok(out)
}

/// Direction in which to run a [`GateProgram`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Forward,
    Reverse,
}

/// An ordered list of gates on a fixed-width register.
///
/// Every gate kind is its own inverse, so running the program in reverse
/// order undoes a forward run exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct GateProgram {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl GateProgram {
    pub fn new(n_qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::UnsupportedRegisterSize(n_qubits));
        }
        for g in &gates {
            g.validate(n_qubits)?;
        }
        Ok(Self { n_qubits, gates })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Parse the line-oriented gate table format.
    ///
    /// One gate per line: `KIND target [control:polarity ...]` with
    /// polarities `1`/`0`; `-` in the target slot marks a phase gate with no
    /// target; `#` starts a comment.
    pub fn parse(n_qubits: usize, text: &str) -> Result<Self> {
        let mut gates = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::GateTableParse { line: lineno + 1, msg };
            let mut tokens = line.split_whitespace();
            let kind = match tokens.next().unwrap() {
                "R" => GateKind::Rotation,
                "NOT" => GateKind::Not,
                "PHASE_PI" => GateKind::PhasePi,
                other => return Err(err(format!("unknown gate kind {other:?}"))),
            };
            let target_tok = tokens
                .next()
                .ok_or_else(|| err("missing target field".into()))?;
            let target = if target_tok == "-" {
                None
            } else {
                Some(
                    target_tok
                        .parse::<usize>()
                        .map_err(|_| err(format!("bad target {target_tok:?}")))?,
                )
            };
            let mut controls = Vec::new();
            for tok in tokens {
                let (q, p) = tok
                    .split_once(':')
                    .ok_or_else(|| err(format!("bad control {tok:?}")))?;
                let qubit = q
                    .parse::<usize>()
                    .map_err(|_| err(format!("bad control qubit {q:?}")))?;
                let polarity = match p {
                    "1" => Polarity::On1,
                    "0" => Polarity::On0,
                    other => return Err(err(format!("bad polarity {other:?}"))),
                };
                controls.push(Control { qubit, polarity });
            }
            gates.push(Gate { kind, target, controls });
        }
        Self::new(n_qubits, gates)
    }

    /// Render in the same format accepted by [`GateProgram::parse`].
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for g in &self.gates {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }
}

/// Run a program forward or in reverse.
pub fn run_program(state: &QState, program: &GateProgram, direction: Direction) -> Result<QState> {
    if state.n_qubits != program.n_qubits {
        return Err(Error::DimensionMismatch {
            expected: program.n_qubits,
            got: state.n_qubits,
        });
    }
    let mut s = state.clone();
    match direction {
        Direction::Forward => {
            for g in &program.gates {
                s = apply_gate(&s, g)?;
            }
        }
        Direction::Reverse => {
            for g in program.gates.iter().rev() {
                s = apply_gate(&s, g)?;
            }
        }
    }
    Ok(s)
}

/// Projectively measure `qubits`, sampling the joint outcome per the Born
/// rule on the normalized state.
///
/// Returns the outcome bits in the order of `qubits` and the collapsed,
/// renormalized state. Deterministic given the RNG stream.
pub fn measure_qubits(
    state: &QState,
    qubits: &[Qubit],
    rng: &mut SimRng,
) -> Result<(Vec<u8>, QState)> {
    let n = state.n_qubits;
    for &q in qubits {
        check_qubit(n, q)?;
    }
    let total = state.norm_sqr();
    if total <= 0.0 {
        return Err(Error::ZeroNorm);
    }

    let outcome_key = |index: usize| -> usize {
        qubits
            .iter()
            .fold(0usize, |k, &q| (k << 1) | bit_of(index, n, q) as usize)
    };

    let mut probs = vec![0.0f64; 1 << qubits.len()];
    for (i, a) in state.amps.iter().enumerate() {
        probs[outcome_key(i)] += a.norm_sqr();
    }

    let draw: f64 = rng.random::<f64>() * total;
    let mut acc = 0.0;
    let mut chosen = probs.len() - 1;
    for (k, &p) in probs.iter().enumerate() {
        acc += p;
        if draw < acc {
            chosen = k;
            break;
        }
    }
    // Guard against landing on a zero-probability tail through rounding.
    if probs[chosen] <= 0.0 {
        chosen = probs
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(k, _)| k)
            .unwrap();
    }

    let mut collapsed = state.clone();
    for (i, a) in collapsed.amps.iter_mut().enumerate() {
        if outcome_key(i) != chosen {
            *a = Complex64::new(0.0, 0.0);
        }
    }
    let collapsed = collapsed.normalized()?;
    let bits = (0..qubits.len())
        .map(|pos| ((chosen >> (qubits.len() - 1 - pos)) & 1) as u8)
        .collect();
    Ok((bits, collapsed))
}
