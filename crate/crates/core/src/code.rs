//! The two codes as data, the lift that turns the five-qubit code into the
//! eight-qubit equal-excitation code, direct encoding, and encoder circuits.
//!
//! Both codes superpose eight product-state words with signs +-1 per logical
//! state. The word sets are cosets of a 3-dimensional binary linear code,
//! which is what makes a compact encoder circuit possible: three register
//! qubits are rotated into a uniform superposition, sign structure is fixed
//! by controlled phase gates, and CNOT fan-out routes each register pattern
//! to its codeword.
//!
//! The eight-qubit encoder network is stored as a checked-in gate table, not
//! hard-coded logic, and is validated at load against the directly encoded
//! codewords. The five-qubit encoder is synthesized by
//! [`synthesize_encoder`] and validated the same way.

use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::qsim::{
    fidelity_up_to_phase, run_program, BasisWord, Control, Direction, Gate, GateProgram, QState,
    Qubit,
};
use crate::{Error, Result};

/// A basis word carrying a sign of +1 or -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedWord {
    pub sign: i8,
    pub word: BasisWord,
}

impl SignedWord {
    pub fn new(sign: i8, word: BasisWord) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(Error::InvalidCode(format!("sign {sign} must be +-1")));
        }
        Ok(Self { sign, word })
    }

    pub fn parse(sign: i8, bits: &str) -> Result<Self> {
        Self::new(sign, BasisWord::parse(bits)?)
    }
}

impl Serialize for SignedWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SignedWord", 2)?;
        st.serialize_field("sign", &self.sign)?;
        st.serialize_field("bits", &self.word.to_string())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for SignedWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            sign: i8,
            bits: String,
        }
        let raw = Raw::deserialize(d)?;
        SignedWord::parse(raw.sign, &raw.bits).map_err(serde::de::Error::custom)
    }
}

/// A two-codeword code given as signed basis words, amplitudes unnormalized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodeSpec {
    pub name: String,
    pub n: usize,
    pub zero_words: Vec<SignedWord>,
    pub one_words: Vec<SignedWord>,
}

impl CodeSpec {
    pub fn new(
        name: impl Into<String>,
        n: usize,
        zero_words: Vec<SignedWord>,
        one_words: Vec<SignedWord>,
    ) -> Result<Self> {
        let spec = Self { name: name.into(), n, zero_words, one_words };
        spec.validate()?;
        Ok(spec)
    }

    /// Check the structural invariants: consistent widths, distinct words in
    /// each list, equal cardinality, orthogonal logical states of equal norm.
    pub fn validate(&self) -> Result<()> {
        if self.zero_words.is_empty() || self.zero_words.len() != self.one_words.len() {
            return Err(Error::InvalidCode(format!(
                "{}: word lists must be nonempty and of equal cardinality",
                self.name
            )));
        }
        for sw in self.zero_words.iter().chain(&self.one_words) {
            if sw.word.n_qubits() != self.n {
                return Err(Error::InvalidCode(format!(
                    "{}: word {} has wrong width",
                    self.name, sw.word
                )));
            }
        }
        for list in [&self.zero_words, &self.one_words] {
            for (i, a) in list.iter().enumerate() {
                if list[..i].iter().any(|b| b.word == a.word) {
                    return Err(Error::InvalidCode(format!(
                        "{}: duplicate word {}",
                        self.name, a.word
                    )));
                }
            }
        }
        if self.inner_zero_one() != 0 {
            return Err(Error::InvalidCode(format!(
                "{}: logical states are not orthogonal",
                self.name
            )));
        }
        Ok(())
    }

    /// `<0_L|1_L>` over the unnormalized +-1 amplitudes (an exact integer).
    pub fn inner_zero_one(&self) -> i64 {
        let mut sum = 0i64;
        for a in &self.zero_words {
            for b in &self.one_words {
                if a.word == b.word {
                    sum += (a.sign * b.sign) as i64;
                }
            }
        }
        sum
    }

    /// True when every word in both lists has Hamming weight `n/2`.
    pub fn is_equal_excitation(&self) -> bool {
        self.n.is_multiple_of(2)
            && self
                .zero_words
                .iter()
                .chain(&self.one_words)
                .all(|sw| sw.word.weight() as usize * 2 == self.n)
    }

    /// The logical state `|u_L>` (`u` = 0 or 1) as a normalized state vector.
    pub fn logical_state(&self, u: u8) -> QState {
        let words = if u == 0 { &self.zero_words } else { &self.one_words };
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << self.n];
        let scale = 1.0 / (words.len() as f64).sqrt();
        for sw in words {
            amps[sw.word.index()] = Complex64::new(sw.sign as f64 * scale, 0.0);
        }
        QState::from_amplitudes(self.n, amps).expect("validated code")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("codes serialize")
    }
}

/// One logical qubit's amplitudes, normalized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogicalQubit {
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl LogicalQubit {
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let n = alpha.norm_sqr() + beta.norm_sqr();
        if (n - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized(n));
        }
        Ok(Self { alpha, beta })
    }

    /// Normalize arbitrary amplitudes; error on a zero vector.
    pub fn from_unnormalized(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let n = alpha.norm_sqr() + beta.norm_sqr();
        if n <= 0.0 {
            return Err(Error::ZeroNorm);
        }
        let s = 1.0 / n.sqrt();
        Ok(Self { alpha: alpha * s, beta: beta * s })
    }

    pub fn from_reals(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(Complex64::new(alpha, 0.0), Complex64::new(beta, 0.0))
    }

    pub fn zero() -> Self {
        Self { alpha: Complex64::new(1.0, 0.0), beta: Complex64::new(0.0, 0.0) }
    }

    pub fn one() -> Self {
        Self { alpha: Complex64::new(0.0, 0.0), beta: Complex64::new(1.0, 0.0) }
    }

    /// `|<self|other>|`, insensitive to global phase.
    pub fn fidelity_up_to_phase(&self, other: &Self) -> f64 {
        (self.alpha.conj() * other.alpha + self.beta.conj() * other.beta).norm()
    }

    /// Signed overlap `Re<self|other>`; distinguishes a -1 global phase.
    pub fn signed_overlap(&self, other: &Self) -> f64 {
        (self.alpha.conj() * other.alpha + self.beta.conj() * other.beta).re
    }
}

fn signed_words(pairs: &[(i8, &str)]) -> Vec<SignedWord> {
    pairs
        .iter()
        .map(|&(s, w)| SignedWord::parse(s, w).expect("static word tables are well-formed"))
        .collect()
}

/// The five-qubit single-error-correcting code.
pub fn five_bit_code() -> CodeSpec {
    let zero = signed_words(&[
        (1, "00000"),
        (1, "11100"),
        (-1, "10011"),
        (-1, "01111"),
        (1, "11010"),
        (1, "00110"),
        (1, "01001"),
        (1, "10101"),
    ]);
    let one = signed_words(&[
        (1, "11111"),
        (-1, "00011"),
        (1, "01100"),
        (-1, "10000"),
        (-1, "00101"),
        (1, "11001"),
        (1, "10110"),
        (-1, "01010"),
    ]);
    CodeSpec::new("five-bit", 5, zero, one).expect("static code is valid")
}

/// Lift a 5-qubit word to the 8-qubit code: concatenate the word with the
/// bit-reversed bitwise inverse (10 bits), then delete positions 5 and 6.
pub fn lift_word(w: &BasisWord) -> Result<BasisWord> {
    if w.n_qubits() != 5 {
        return Err(Error::BadWord(format!(
            "lift_word expects length 5, got {}",
            w.n_qubits()
        )));
    }
    let bits = w.bits();
    let mut ten: Vec<u8> = Vec::with_capacity(10);
    ten.extend_from_slice(&bits);
    ten.extend(bits.iter().rev().map(|b| 1 - b));
    // Positions 5 and 6 (1-based) are the seam between the halves.
    ten.remove(5);
    ten.remove(4);
    BasisWord::from_bits(&ten)
}

/// The eight-qubit equal-excitation code, derived by lifting the five-qubit
/// code word by word with signs carried over.
pub fn eight_bit_code() -> CodeSpec {
    let five = five_bit_code();
    let lift = |words: &[SignedWord]| -> Vec<SignedWord> {
        words
            .iter()
            .map(|sw| SignedWord {
                sign: sw.sign,
                word: lift_word(&sw.word).expect("five-bit words lift"),
            })
            .collect()
    };
    CodeSpec::new(
        "eight-bit",
        8,
        lift(&five.zero_words),
        lift(&five.one_words),
    )
    .expect("lifted code is valid")
}

/// Encode `alpha|0_L> + beta|1_L>` directly from the word lists, normalized.
///
/// Independent of any gate program; this is the oracle the encoder circuits
/// are validated against.
pub fn encode(code: &CodeSpec, q: &LogicalQubit) -> Result<QState> {
    code.validate()?;
    let words = code.zero_words.len() as f64;
    let scale = 1.0 / words.sqrt();
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << code.n];
    for sw in &code.zero_words {
        amps[sw.word.index()] += q.alpha * sw.sign as f64 * scale;
    }
    for sw in &code.one_words {
        amps[sw.word.index()] += q.beta * sw.sign as f64 * scale;
    }
    QState::from_amplitudes(code.n, amps)
}

/// Data qubit of the eight-qubit encoder network.
pub const EIGHT_BIT_DATA_QUBIT: Qubit = 3;

/// Data qubit of the synthesized five-qubit encoder.
pub const FIVE_BIT_DATA_QUBIT: Qubit = 3;

const EIGHT_BIT_ENCODER_TABLE: &str = include_str!("../data/encoder_8bit.txt");

/// Check that `program` maps `|0..psi..0>` (input on `data_qubit`) onto
/// `encode(code, psi)` up to one common global phase.
pub fn validate_encoder(code: &CodeSpec, program: &GateProgram, data_qubit: Qubit) -> Result<()> {
    // A superposed input catches relative-phase errors between the two
    // basis branches that separate basis checks would miss.
    let probes = [
        LogicalQubit::zero(),
        LogicalQubit::one(),
        LogicalQubit::from_reals(0.6, 0.8)?,
        LogicalQubit::new(Complex64::new(0.48, -0.36), Complex64::new(-0.64, 0.48))?,
    ];
    for q in &probes {
        let input = QState::with_data_qubit(code.n, data_qubit, q.alpha, q.beta)?;
        let produced = run_program(&input, program, Direction::Forward)?;
        let expected = encode(code, q)?;
        let fid = fidelity_up_to_phase(&produced, &expected)?;
        if fid < 1.0 - 1e-12 {
            return Err(Error::EncoderValidation(format!(
                "{}: fidelity {fid} for probe ({}, {})",
                code.name, q.alpha, q.beta
            )));
        }
    }
    Ok(())
}

/// The eight-qubit encoding network, parsed from the checked-in gate table
/// and validated against [`encode`] on first use.
pub fn encoder_program() -> Result<&'static GateProgram> {
    static PROGRAM: OnceLock<Result<GateProgram>> = OnceLock::new();
    PROGRAM
        .get_or_init(|| {
            let program = GateProgram::parse(8, EIGHT_BIT_ENCODER_TABLE)?;
            validate_encoder(&eight_bit_code(), &program, EIGHT_BIT_DATA_QUBIT)?;
            Ok(program)
        })
        .as_ref()
        .map_err(clone_static_err)
}

/// Encoder for the five-qubit code, synthesized from its coset structure and
/// validated against [`encode`] on first use.
pub fn five_bit_encoder_program() -> Result<&'static GateProgram> {
    static PROGRAM: OnceLock<Result<GateProgram>> = OnceLock::new();
    PROGRAM
        .get_or_init(|| {
            let code = five_bit_code();
            let program = synthesize_encoder(&code, FIVE_BIT_DATA_QUBIT)?;
            validate_encoder(&code, &program, FIVE_BIT_DATA_QUBIT)?;
            Ok(program)
        })
        .as_ref()
        .map_err(clone_static_err)
}

fn clone_static_err(e: &Error) -> Error {
    Error::EncoderValidation(e.to_string())
}

// ---------------------------------------------------------------------------
// Encoder synthesis for coset codes.
//
// Writing words as bit masks with qubit 1 the most significant bit, a code in
// scope here has zero words w00 ^ V and one words w10 ^ V for one
// 3-dimensional linear space V. Pick register qubits R = {r1,r2,r3} on which
// V projects bijectively and a data qubit d; re-origin so that the zero-word
// leader has zero R-coordinates and the branch translation t has zero
// R-coordinates and t_d = 1. The circuit is then
//
//   X on complement qubits set in the leader
//   R on each register qubit
//   controlled-pi gates realizing the sign polynomial over (d, R) wires
//   CNOT(r_i -> d) where the dual generator g_i has a d-component
//   CNOT fan-out from d and R onto the complement qubits
//
// and each basis input |m on d, x on R> routes to its signed codeword.
// ---------------------------------------------------------------------------

struct CosetStructure {
    /// Zero-coset leader with zero R-coordinates.
    leader: usize,
    /// Branch translation with zero R-coordinates and bit set at `d`.
    translation: usize,
    /// Dual generators: `dual[i]` is the element of V whose R-coordinates
    /// are the i-th unit vector.
    dual: [usize; 3],
    registers: [Qubit; 3],
}

fn word_masks(words: &[SignedWord]) -> Vec<usize> {
    words.iter().map(|sw| sw.word.index()).collect()
}

/// The linear span of `{w ^ w0}` if the word set is an affine subspace.
fn affine_space(words: &[usize]) -> Option<Vec<usize>> {
    let w0 = words[0];
    let mut v: Vec<usize> = words.iter().map(|&w| w ^ w0).collect();
    v.sort_unstable();
    for &a in &v {
        for &b in &v {
            if v.binary_search(&(a ^ b)).is_err() {
                return None;
            }
        }
    }
    Some(v)
}

fn find_structure(code: &CodeSpec, data_qubit: Qubit) -> Result<CosetStructure> {
    let n = code.n;
    let zero = word_masks(&code.zero_words);
    let one = word_masks(&code.one_words);
    if zero.len() != 8 {
        return Err(Error::Synthesis(format!(
            "{}: synthesis supports 8-word codes, got {}",
            code.name,
            zero.len()
        )));
    }
    let space = affine_space(&zero).ok_or_else(|| {
        Error::Synthesis(format!("{}: zero words are not a coset", code.name))
    })?;
    let one_space = affine_space(&one).ok_or_else(|| {
        Error::Synthesis(format!("{}: one words are not a coset", code.name))
    })?;
    if space != one_space {
        return Err(Error::Synthesis(format!(
            "{}: word lists are cosets of different spaces",
            code.name
        )));
    }

    let r_coords = |w: usize, regs: &[Qubit; 3]| -> usize {
        regs.iter().fold(0usize, |acc, &r| {
            (acc << 1) | ((w >> (n - r)) & 1)
        })
    };

    // Candidate register triples in deterministic order.
    let others: Vec<Qubit> = (1..=n).filter(|&q| q != data_qubit).collect();
    for i in 0..others.len() {
        for j in (i + 1)..others.len() {
            for k in (j + 1)..others.len() {
                let regs = [others[i], others[j], others[k]];
                // V must project bijectively onto the register coordinates.
                let mut seen = [false; 8];
                if !space.iter().all(|&v| {
                    let c = r_coords(v, &regs);
                    !std::mem::replace(&mut seen[c], true)
                }) {
                    continue;
                }
                let leader = *zero
                    .iter()
                    .find(|&&w| r_coords(w, &regs) == 0)
                    .expect("bijective projection");
                let one_leader = *one
                    .iter()
                    .find(|&&w| r_coords(w, &regs) == 0)
                    .expect("bijective projection");
                let translation = leader ^ one_leader;
                let dmask = 1 << (n - data_qubit);
                if leader & dmask != 0 || translation & dmask == 0 {
                    continue;
                }
                let mut dual = [0usize; 3];
                for (idx, d) in dual.iter_mut().enumerate() {
                    *d = *space
                        .iter()
                        .find(|&&v| r_coords(v, &regs) == 4 >> idx)
                        .expect("bijective projection");
                }
                return Ok(CosetStructure { leader, translation, dual, registers: regs });
            }
        }
    }
    Err(Error::Synthesis(format!(
        "{}: no register assignment found for data qubit {data_qubit}",
        code.name
    )))
}

/// Sign exponents of the code relative to a structure: `table[m*8 + x]` is 1
/// where the amplitude of the word addressed by branch `m` and register
/// pattern `x` is negative relative to the zero leader's sign.
fn sign_table(code: &CodeSpec, st: &CosetStructure) -> Result<[u8; 16]> {
    let lookup = |words: &[SignedWord], mask: usize| -> Result<i8> {
        words
            .iter()
            .find(|sw| sw.word.index() == mask)
            .map(|sw| sw.sign)
            .ok_or_else(|| Error::Synthesis("word lookup failed".into()))
    };
    let word_at = |m: usize, x: usize| -> usize {
        let mut w = st.leader ^ if m == 1 { st.translation } else { 0 };
        for (i, &g) in st.dual.iter().enumerate() {
            if x & (4 >> i) != 0 {
                w ^= g;
            }
        }
        w
    };
    let base = lookup(&code.zero_words, st.leader)?;
    let mut table = [0u8; 16];
    for m in 0..2usize {
        let words = if m == 0 { &code.zero_words } else { &code.one_words };
        for x in 0..8usize {
            let s = lookup(words, word_at(m, x))?;
            table[m * 8 + x] = u8::from(s != base);
        }
    }
    Ok(table)
}

/// Algebraic normal form of a boolean function on (m, x1, x2, x3) given as a
/// 16-entry truth table; returns the set of monomials as 4-bit masks
/// (bit 3 = m, bits 2..0 = x1..x3).
fn anf(table: &[u8; 16]) -> Vec<usize> {
    let mut coef = *table;
    // Moebius transform over F_2^4.
    for bit in 0..4 {
        let step = 1 << bit;
        for i in 0..16 {
            if i & step != 0 {
                coef[i] ^= coef[i ^ step];
            }
        }
    }
    (0..16).filter(|&mono| coef[mono] == 1).collect()
}

/// Construct an encoder program for an 8-word coset code with the logical
/// input on `data_qubit`.
///
/// The forward action matches [`encode`] up to a global phase, so the
/// reversed program defines a syndrome basis for the code.
pub fn synthesize_encoder(code: &CodeSpec, data_qubit: Qubit) -> Result<GateProgram> {
    code.validate()?;
    let n = code.n;
    let st = find_structure(code, data_qubit)?;
    let signs = sign_table(code, &st)?;
    let bit = |w: usize, q: Qubit| -> bool { w & (1 << (n - q)) != 0 };

    let complement: Vec<Qubit> = (1..=n)
        .filter(|&q| q != data_qubit && !st.registers.contains(&q))
        .collect();

    let mut gates = Vec::new();
    for &q in &complement {
        if bit(st.leader, q) {
            gates.push(Gate::not(q));
        }
    }
    for &r in &st.registers {
        gates.push(Gate::rotation(r));
    }
    // Sign polynomial as one controlled-pi gate per ANF monomial, reading the
    // data wire (m) and register wires (x) before any CNOT touches them.
    for mono in anf(&signs) {
        let mut controls = Vec::new();
        if mono & 8 != 0 {
            controls.push(Control::on1(data_qubit));
        }
        for (i, &r) in st.registers.iter().enumerate() {
            if mono & (4 >> i) != 0 {
                controls.push(Control::on1(r));
            }
        }
        gates.push(Gate::phase_pi(controls));
    }
    // Data-qubit corrections: fold in the dual generators' d-components.
    let mut h = [false; 3];
    for (i, &g) in st.dual.iter().enumerate() {
        h[i] = bit(g, data_qubit);
        if h[i] {
            gates.push(Gate::controlled_not(data_qubit, vec![Control::on1(st.registers[i])]));
        }
    }
    // Fan-out. The data wire now holds m ^ (h . x), so generator components
    // on the complement are adjusted where the translation also feeds in.
    for &q in &complement {
        if bit(st.translation, q) {
            gates.push(Gate::controlled_not(q, vec![Control::on1(data_qubit)]));
        }
        for (i, &g) in st.dual.iter().enumerate() {
            if bit(g, q) ^ (bit(st.translation, q) && h[i]) {
                gates.push(Gate::controlled_not(q, vec![Control::on1(st.registers[i])]));
            }
        }
    }
    GateProgram::new(n, gates)
}
