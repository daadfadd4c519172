//! Syndrome extraction through the reversed encoder, the brute-force
//! syndrome table, recovery on the data qubit, and the full
//! encode–corrupt–correct cycle.
//!
//! The syndrome table is never transcribed from anywhere: it is regenerated
//! by decoding every single-qubit error applied to both codewords and
//! classifying the resulting data-qubit transformation. Degeneracy — several
//! errors sharing one syndrome — is legal as long as one recovery restores
//! the logical state for every member, up to a global sign that is reported
//! per member rather than corrected.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::code::{
    eight_bit_code, encode, encoder_program, five_bit_code, five_bit_encoder_program, CodeSpec,
    LogicalQubit, EIGHT_BIT_DATA_QUBIT, FIVE_BIT_DATA_QUBIT,
};
use crate::noise::{
    apply_error, apply_jump, conditional_evolve, single_error_alphabet, DecayParams, ErrorOp,
};
use crate::qsim::{
    bit_of, measure_qubits, qubit_mask, run_program, Direction, GateProgram, QState, Qubit, SimRng,
};
use crate::{Error, Result};

/// Measured bits of all non-data qubits, ascending by qubit index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Syndrome {
    bits: Vec<u8>,
}

impl Syndrome {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::InvalidParameter("syndrome bits must be 0/1".into()));
        }
        Ok(Self { bits })
    }

    pub fn parse(s: &str) -> Result<Self> {
        let bits: Result<Vec<u8>> = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::InvalidParameter(format!(
                    "unexpected syndrome character {other:?}"
                ))),
            })
            .collect();
        Self::new(bits?)
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }
}

impl std::fmt::Display for Syndrome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl Serialize for Syndrome {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Syndrome {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Syndrome::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Recovery operation applied to the data qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecoveryOp {
    Identity,
    PhaseFlip,
    BitFlip,
    /// Bit flip followed by phase flip.
    BitPhaseFlip,
}

impl RecoveryOp {
    /// 2x2 real matrix acting on `(alpha, beta)`.
    pub fn matrix(self) -> [[f64; 2]; 2] {
        match self {
            RecoveryOp::Identity => [[1.0, 0.0], [0.0, 1.0]],
            RecoveryOp::PhaseFlip => [[1.0, 0.0], [0.0, -1.0]],
            RecoveryOp::BitFlip => [[0.0, 1.0], [1.0, 0.0]],
            RecoveryOp::BitPhaseFlip => [[0.0, 1.0], [-1.0, 0.0]],
        }
    }

    pub const ALL: [RecoveryOp; 4] = [
        RecoveryOp::Identity,
        RecoveryOp::PhaseFlip,
        RecoveryOp::BitFlip,
        RecoveryOp::BitPhaseFlip,
    ];

    pub fn apply(self, q: &LogicalQubit) -> LogicalQubit {
        let m = self.matrix();
        LogicalQubit {
            alpha: q.alpha * m[0][0] + q.beta * m[0][1],
            beta: q.alpha * m[1][0] + q.beta * m[1][1],
        }
    }
}

/// One member of a syndrome class: the error (or `None` for the clean case)
/// and the global sign left behind after the class recovery is applied.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassMember {
    pub error: Option<ErrorOp>,
    pub phase: i8,
}

/// All errors mapping to one syndrome, with the shared recovery.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyndromeClass {
    pub recovery: RecoveryOp,
    pub members: Vec<ClassMember>,
}

/// Map from syndrome to recovery action and the errors producing it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyndromeTable {
    pub data_qubit: Qubit,
    pub syndrome_qubits: Vec<Qubit>,
    pub classes: BTreeMap<Syndrome, SyndromeClass>,
}

impl SyndromeTable {
    pub fn lookup(&self, s: &Syndrome) -> Option<&SyndromeClass> {
        self.classes.get(s)
    }

    /// Number of distinct syndromes, the clean class included.
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Apply the recovery for `syndrome` to the measured data-qubit state.
    ///
    /// The result equals the encoded input up to a global sign; which sign
    /// depends on which member of the class actually occurred, so it is
    /// recorded in the table rather than corrected here.
    pub fn correct(&self, syndrome: &Syndrome, q: &LogicalQubit) -> Result<LogicalQubit> {
        let class = self
            .classes
            .get(syndrome)
            .ok_or_else(|| Error::UnknownSyndrome(syndrome.to_string()))?;
        Ok(class.recovery.apply(q))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }
}

/// A code together with its encoder circuit: everything needed to extract
/// syndromes and correct errors.
pub struct Decoder {
    code: CodeSpec,
    program: GateProgram,
    data_qubit: Qubit,
    table: SyndromeTable,
}

impl Decoder {
    /// Build a decoder, regenerating the syndrome table by brute force over
    /// the full single-error alphabet plus the clean case.
    pub fn new(code: CodeSpec, program: GateProgram, data_qubit: Qubit) -> Result<Self> {
        code.validate()?;
        if program.n_qubits() != code.n {
            return Err(Error::DimensionMismatch {
                expected: code.n,
                got: program.n_qubits(),
            });
        }
        let table = build_syndrome_table(&code, &program, data_qubit)?;
        Ok(Self { code, program, data_qubit, table })
    }

    /// The shared decoder for the eight-qubit code and its encoder network.
    pub fn eight_bit() -> Result<&'static Decoder> {
        static DECODER: OnceLock<Result<Decoder>> = OnceLock::new();
        DECODER
            .get_or_init(|| {
                Decoder::new(
                    eight_bit_code(),
                    encoder_program()?.clone(),
                    EIGHT_BIT_DATA_QUBIT,
                )
            })
            .as_ref()
            .map_err(|e| Error::EncoderValidation(e.to_string()))
    }

    /// The shared decoder for the five-qubit code and its synthesized
    /// encoder.
    pub fn five_bit() -> Result<&'static Decoder> {
        static DECODER: OnceLock<Result<Decoder>> = OnceLock::new();
        DECODER
            .get_or_init(|| {
                Decoder::new(
                    five_bit_code(),
                    five_bit_encoder_program()?.clone(),
                    FIVE_BIT_DATA_QUBIT,
                )
            })
            .as_ref()
            .map_err(|e| Error::EncoderValidation(e.to_string()))
    }

    pub fn code(&self) -> &CodeSpec {
        &self.code
    }

    pub fn program(&self) -> &GateProgram {
        &self.program
    }

    pub fn data_qubit(&self) -> Qubit {
        self.data_qubit
    }

    pub fn table(&self) -> &SyndromeTable {
        &self.table
    }

    pub fn syndrome_qubits(&self) -> Vec<Qubit> {
        (1..=self.code.n).filter(|&q| q != self.data_qubit).collect()
    }

    pub fn encode(&self, q: &LogicalQubit) -> Result<QState> {
        encode(&self.code, q)
    }

    /// Run the encoder in reverse and measure all non-data qubits.
    ///
    /// Returns the syndrome, the post-measurement data-qubit amplitudes, and
    /// the collapsed register state.
    pub fn extract_syndrome(
        &self,
        state: &QState,
        rng: &mut SimRng,
    ) -> Result<(Syndrome, LogicalQubit, QState)> {
        if state.n_qubits() != self.code.n {
            return Err(Error::DimensionMismatch {
                expected: self.code.n,
                got: state.n_qubits(),
            });
        }
        let decoded = run_program(state, &self.program, Direction::Reverse)?;
        let qubits = self.syndrome_qubits();
        let (bits, collapsed) = measure_qubits(&decoded, &qubits, rng)?;
        let n = self.code.n;
        let mut base = 0usize;
        for (&q, &b) in qubits.iter().zip(&bits) {
            if b == 1 {
                base |= qubit_mask(n, q);
            }
        }
        let dmask = qubit_mask(n, self.data_qubit);
        let logical =
            LogicalQubit::from_unnormalized(collapsed.amp(base), collapsed.amp(base | dmask))?;
        Ok((Syndrome::new(bits)?, logical, collapsed))
    }

    /// Encode, apply a corruption script, extract the syndrome, correct.
    ///
    /// Returns the recovered logical qubit and its fidelity (up to global
    /// phase) against the input.
    pub fn full_cycle(
        &self,
        q: &LogicalQubit,
        script: &[ScriptStep],
        rng: &mut SimRng,
    ) -> Result<(LogicalQubit, f64)> {
        let mut state = self.encode(q)?;
        for step in script {
            state = match *step {
                ScriptStep::Evolve(gamma_t) => {
                    conditional_evolve(&state, DecayParams::new(gamma_t)?)
                }
                ScriptStep::Error(e) => apply_error(&state, e)?,
                ScriptStep::Jump(qubit) => apply_jump(&state, qubit)?,
            };
        }
        let (syndrome, measured, _) = self.extract_syndrome(&state, rng)?;
        let recovered = self.table.correct(&syndrome, &measured)?;
        let fidelity = q.fidelity_up_to_phase(&recovered);
        Ok((recovered, fidelity))
    }
}

/// One step of a corruption script.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "step")]
pub enum ScriptStep {
    /// No-emission conditional evolution for `Gamma t`.
    Evolve(f64),
    /// A discrete error from the alphabet.
    Error(ErrorOp),
    /// A spontaneous emission on one qubit.
    Jump(Qubit),
}

/// The data-qubit transformation a corruption induces, as a real 2x2 matrix
/// in the decoded basis.
type DataQubitMap = [[Complex64; 2]; 2];

/// Decode the corrupted codewords and find the unique syndrome sector plus
/// the induced data-qubit map: column `u` of the map holds the data-qubit
/// amplitudes obtained from decoding the corrupted `|u_L>`.
fn decode_deterministic(
    code: &CodeSpec,
    program: &GateProgram,
    data_qubit: Qubit,
    error: Option<ErrorOp>,
) -> Result<(Syndrome, DataQubitMap)> {
    let n = code.n;
    let dmask = qubit_mask(n, data_qubit);
    let name = error.map_or_else(|| "None".to_string(), |e| e.to_string());
    let mut syndrome: Option<usize> = None;
    let mut matrix = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (u, logical) in [LogicalQubit::zero(), LogicalQubit::one()].into_iter().enumerate() {
        let mut state = encode(code, &logical)?;
        if let Some(e) = error {
            state = apply_error(&state, e)?;
        }
        let decoded = run_program(&state, program, Direction::Reverse)?;
        // The decoded state must occupy a single syndrome sector.
        let mut sector: Option<usize> = None;
        for (i, a) in decoded.amps().iter().enumerate() {
            if a.norm_sqr() > 1e-20 {
                let s = i & !dmask;
                match sector {
                    None => sector = Some(s),
                    Some(prev) if prev != s => {
                        return Err(Error::NonDeterministicSyndrome { error: name });
                    }
                    _ => {}
                }
            }
        }
        let sector = sector.ok_or(Error::ZeroNorm)?;
        match syndrome {
            None => syndrome = Some(sector),
            Some(prev) if prev != sector => {
                return Err(Error::NonDeterministicSyndrome { error: name });
            }
            _ => {}
        }
        matrix[0][u] = decoded.amp(sector);
        matrix[1][u] = decoded.amp(sector | dmask);
    }
    let sector = syndrome.unwrap();
    let bits: Vec<u8> = (1..=n)
        .filter(|&q| q != data_qubit)
        .map(|q| bit_of(sector, n, q))
        .collect();
    Ok((Syndrome::new(bits)?, matrix))
}

/// Classify a data-qubit matrix as `phase * recovery^-1`: find the recovery
/// whose application turns the matrix into a +-1 multiple of the identity.
fn classify_recovery(m: &DataQubitMap) -> Option<(RecoveryOp, i8)> {
    const TOL: f64 = 1e-9;
    for op in RecoveryOp::ALL {
        let r = op.matrix();
        // p = r * m
        let p = [
            [
                m[0][0] * r[0][0] + m[1][0] * r[0][1],
                m[0][1] * r[0][0] + m[1][1] * r[0][1],
            ],
            [
                m[0][0] * r[1][0] + m[1][0] * r[1][1],
                m[0][1] * r[1][0] + m[1][1] * r[1][1],
            ],
        ];
        if p[0][1].norm() < TOL
            && p[1][0].norm() < TOL
            && (p[0][0] - p[1][1]).norm() < TOL
            && p[0][0].im.abs() < TOL
            && (p[0][0].re.abs() - 1.0).abs() < TOL
        {
            let phase = if p[0][0].re > 0.0 { 1 } else { -1 };
            return Some((op, phase));
        }
    }
    None
}

/// Regenerate the syndrome table by brute force: decode every error in the
/// alphabet (and the clean case) applied to both codewords, demand a
/// deterministic syndrome, group by syndrome, and derive the shared
/// recovery with per-member phases.
pub fn build_syndrome_table(
    code: &CodeSpec,
    program: &GateProgram,
    data_qubit: Qubit,
) -> Result<SyndromeTable> {
    let mut raw: BTreeMap<Syndrome, Vec<(Option<ErrorOp>, DataQubitMap)>> = BTreeMap::new();
    let mut members: Vec<Option<ErrorOp>> = vec![None];
    members.extend(single_error_alphabet(code.n).into_iter().map(Some));
    for error in members {
        let (syndrome, matrix) = decode_deterministic(code, program, data_qubit, error)?;
        raw.entry(syndrome).or_default().push((error, matrix));
    }

    let mut classes: BTreeMap<Syndrome, SyndromeClass> = BTreeMap::new();
    for (syndrome, entries) in raw {
        let (recovery, first_phase) = classify_recovery(&entries[0].1).ok_or_else(|| {
            Error::InconsistentClass {
                syndrome: syndrome.to_string(),
                msg: format!(
                    "{} does not reduce to a single-qubit recovery",
                    entries[0].0.map_or("None".into(), |e| e.to_string())
                ),
            }
        })?;
        let mut class_members = vec![ClassMember { error: entries[0].0, phase: first_phase }];
        for (error, matrix) in &entries[1..] {
            match classify_recovery(matrix) {
                Some((op, phase)) if op == recovery => {
                    class_members.push(ClassMember { error: *error, phase });
                }
                _ => {
                    return Err(Error::InconsistentClass {
                        syndrome: syndrome.to_string(),
                        msg: format!(
                            "members disagree on the recovery ({} vs {})",
                            class_members[0]
                                .error
                                .map_or("None".into(), |e| e.to_string()),
                            error.map_or("None".into(), |e| e.to_string()),
                        ),
                    });
                }
            }
        }
        classes.insert(syndrome, SyndromeClass { recovery, members: class_members });
    }
    Ok(SyndromeTable {
        data_qubit,
        syndrome_qubits: (1..=code.n).filter(|&q| q != data_qubit).collect(),
        classes,
    })
}
