//! The single-qubit error alphabet, the no-emission conditional evolution,
//! quantum jumps, and trajectory sampling.
//!
//! Units: hbar = 1 and time enters only through the dimensionless product
//! `Gamma * t`. The Einstein coefficient of the excited level is `2 Gamma`,
//! so under the conditional (no-emission) evolution each basis word's
//! amplitude shrinks by `exp(-Gamma t)` per excited qubit and each excited
//! qubit emits at rate `2 Gamma`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::code::{encode, CodeSpec, LogicalQubit};
use crate::qsim::{excitation, qubit_mask, QState, Qubit, SimRng};
use crate::{Error, Result};

/// Kinds of single-qubit error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ErrorKind {
    /// Bit flip `|0> <-> |1>` (a NOT).
    Amplitude,
    /// Sign flip of the excited component.
    Phase,
    /// The operator product of both: the phase flip acts first, then the
    /// bit flip, so `|0> -> |1>` and `|1> -> -|0>`.
    AmplitudePhase,
}

/// One error from the alphabet, acting on a single qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ErrorOp {
    pub kind: ErrorKind,
    pub qubit: Qubit,
}

impl ErrorOp {
    pub fn amplitude(qubit: Qubit) -> Self {
        Self { kind: ErrorKind::Amplitude, qubit }
    }

    pub fn phase(qubit: Qubit) -> Self {
        Self { kind: ErrorKind::Phase, qubit }
    }

    pub fn amplitude_phase(qubit: Qubit) -> Self {
        Self { kind: ErrorKind::AmplitudePhase, qubit }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("unrecognized error name {s:?}"));
        if let Some(rest) = s.strip_prefix('A') {
            if let Some((q, tail)) = split_leading_number(rest) {
                if tail.is_empty() {
                    return Ok(Self::amplitude(q));
                }
                if tail == format!("P{q}") {
                    return Ok(Self::amplitude_phase(q));
                }
            }
            return Err(bad());
        }
        if let Some(rest) = s.strip_prefix('P') {
            if let Some((q, tail)) = split_leading_number(rest) {
                if tail.is_empty() {
                    return Ok(Self::phase(q));
                }
            }
        }
        Err(bad())
    }
}

fn split_leading_number(s: &str) -> Option<(usize, &str)> {
    let digits: String = s.chars().take_while(|c| c.is_ascii_digit()).collect();
    if digits.is_empty() {
        return None;
    }
    digits.parse().ok().map(|q| (q, &s[digits.len()..]))
}

impl std::fmt::Display for ErrorOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.kind {
            ErrorKind::Amplitude => write!(f, "A{}", self.qubit),
            ErrorKind::Phase => write!(f, "P{}", self.qubit),
            ErrorKind::AmplitudePhase => write!(f, "A{0}P{0}", self.qubit),
        }
    }
}

/// The full single-error alphabet on `n` qubits, in a fixed order:
/// amplitude, phase, then combined errors, each by ascending qubit.
pub fn single_error_alphabet(n: usize) -> Vec<ErrorOp> {
    let mut out = Vec::with_capacity(3 * n);
    out.extend((1..=n).map(ErrorOp::amplitude));
    out.extend((1..=n).map(ErrorOp::phase));
    out.extend((1..=n).map(ErrorOp::amplitude_phase));
    out
}

/// Apply one error; unitary.
pub fn apply_error(state: &QState, e: ErrorOp) -> Result<QState> {
    let n = state.n_qubits();
    if e.qubit == 0 || e.qubit > n {
        return Err(Error::QubitOutOfRange { qubit: e.qubit, n_qubits: n });
    }
    let mask = qubit_mask(n, e.qubit);
    let mut out = state.clone();
    let amps = out.amps_mut();
    match e.kind {
        ErrorKind::Amplitude => {
            for i in 0..amps.len() {
                if i & mask == 0 {
                    amps.swap(i, i | mask);
                }
            }
        }
        ErrorKind::Phase => {
            for (i, a) in amps.iter_mut().enumerate() {
                if i & mask != 0 {
                    *a = -*a;
                }
            }
        }
        ErrorKind::AmplitudePhase => {
            // Phase first, then flip: the excited amplitude moves down with
            // a minus sign, the ground amplitude moves up unchanged.
            for i in 0..amps.len() {
                if i & mask == 0 {
                    amps.swap(i, i | mask);
                    amps[i] = -amps[i];
                }
            }
        }
    }
    Ok(out)
}

/// Dimensionless decay parameter `Gamma * t`, nonnegative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayParams {
    gamma_t: f64,
}

impl DecayParams {
    pub fn new(gamma_t: f64) -> Result<Self> {
        if !gamma_t.is_finite() || gamma_t < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "gamma_t must be finite and >= 0, got {gamma_t}"
            )));
        }
        Ok(Self { gamma_t })
    }

    pub fn gamma_t(&self) -> f64 {
        self.gamma_t
    }
}

/// No-emission conditional evolution for `Gamma t`: each basis amplitude is
/// multiplied by `exp(-gamma_t * excitation)`. No renormalization.
pub fn conditional_evolve(state: &QState, d: DecayParams) -> QState {
    let mut out = state.clone();
    let g = d.gamma_t();
    for (i, a) in out.amps_mut().iter_mut().enumerate() {
        *a *= (-g * excitation(i) as f64).exp();
    }
    out
}

/// Convenience wrapper taking a raw nonnegative `gamma_t`.
pub fn conditional_evolve_gt(state: &QState, gamma_t: f64) -> Result<QState> {
    Ok(conditional_evolve(state, DecayParams::new(gamma_t)?))
}

/// Excited population of `qubit` in the (possibly sub-normalized) state.
pub fn excited_population(state: &QState, qubit: Qubit) -> Result<f64> {
    let n = state.n_qubits();
    if qubit == 0 || qubit > n {
        return Err(Error::QubitOutOfRange { qubit, n_qubits: n });
    }
    let mask = qubit_mask(n, qubit);
    Ok(state
        .amps()
        .iter()
        .enumerate()
        .filter(|(i, _)| i & mask != 0)
        .map(|(_, a)| a.norm_sqr())
        .sum())
}

/// Spontaneous emission on `qubit`: the lowering operator `|0><1|` followed
/// by renormalization. Fails when the qubit carries no excited amplitude.
pub fn apply_jump(state: &QState, qubit: Qubit) -> Result<QState> {
    let n = state.n_qubits();
    if qubit == 0 || qubit > n {
        return Err(Error::QubitOutOfRange { qubit, n_qubits: n });
    }
    let mask = qubit_mask(n, qubit);
    let mut out = state.clone();
    let amps = out.amps_mut();
    for i in 0..amps.len() {
        if i & mask == 0 {
            amps[i] = amps[i | mask];
            amps[i | mask] = num_complex::Complex64::new(0.0, 0.0);
        }
    }
    if out.norm_sqr() <= 1e-300 {
        return Err(Error::JumpImpossible(qubit));
    }
    out.normalized()
}

/// Configuration for one stochastic trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryConfig {
    /// Total dimensionless duration `Gamma t`.
    pub gamma_t_total: f64,
    pub seed: u64,
    /// Cap on the number of *recorded* jumps; later jumps still happen but
    /// are no longer logged.
    pub max_jumps: usize,
}

impl TrajectoryConfig {
    pub fn new(gamma_t_total: f64, seed: u64) -> Result<Self> {
        if !gamma_t_total.is_finite() || gamma_t_total < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "gamma_t_total must be finite and >= 0, got {gamma_t_total}"
            )));
        }
        Ok(Self { gamma_t_total, seed, max_jumps: 2 })
    }

    pub fn with_max_jumps(mut self, max_jumps: usize) -> Self {
        self.max_jumps = max_jumps;
        self
    }
}

/// One recorded emission event.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JumpEvent {
    /// Cumulative `Gamma t` at which the jump occurred.
    pub gamma_t: f64,
    pub qubit: Qubit,
}

/// Squared norm after evolving the excitation populations for `tau`:
/// `sum_w P_w exp(-2 tau w)` with `P_w` the population at excitation `w`.
fn surviving_norm(pops: &[f64], tau: f64) -> f64 {
    pops.iter()
        .enumerate()
        .map(|(w, p)| p * (-2.0 * tau * w as f64).exp())
        .sum()
}

/// Populations bucketed by excitation number.
fn excitation_populations(state: &QState) -> Vec<f64> {
    let mut pops = vec![0.0; state.n_qubits() + 1];
    for (i, a) in state.amps().iter().enumerate() {
        pops[excitation(i) as usize] += a.norm_sqr();
    }
    pops
}

/// Solve `surviving_norm(pops, tau) = target` for `tau` in `[0, hi]` by
/// bisection; the norm is strictly decreasing whenever excitation is present.
fn solve_crossing(pops: &[f64], target: f64, hi: f64) -> f64 {
    let mut lo = 0.0f64;
    let mut hi = hi;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if surviving_norm(pops, mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-16 * (1.0 + hi) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Sample one quantum trajectory: no-jump conditional evolution interrupted
/// by spontaneous emissions, event-driven with the crossing times solved to
/// machine precision. Deterministic given the seed.
///
/// Returns the normalized final state and the recorded jump log.
pub fn sample_trajectory(
    state: &QState,
    cfg: &TrajectoryConfig,
) -> Result<(QState, Vec<JumpEvent>)> {
    if !cfg.gamma_t_total.is_finite() || cfg.gamma_t_total < 0.0 {
        return Err(Error::InvalidParameter(
            "gamma_t_total must be finite and >= 0".into(),
        ));
    }
    let n2 = state.norm_sqr();
    if (n2 - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidParameter(format!(
            "trajectory input must be normalized, squared norm = {n2}"
        )));
    }
    let mut rng: SimRng = crate::qsim::rng_from_seed(cfg.seed);
    let mut current = state.clone();
    let mut elapsed = 0.0f64;
    let mut jumps: Vec<JumpEvent> = Vec::new();

    loop {
        let remaining = cfg.gamma_t_total - elapsed;
        if remaining <= 0.0 {
            break;
        }
        let threshold: f64 = rng.random();
        let pops = excitation_populations(&current);
        if surviving_norm(&pops, remaining) > threshold {
            // Survives to the end of the interval without emitting.
            current = conditional_evolve(&current, DecayParams::new(remaining)?);
            break;
        }
        let tau = solve_crossing(&pops, threshold, remaining);
        current = conditional_evolve(&current, DecayParams::new(tau)?);
        elapsed += tau;

        // Emitting qubit: every excited qubit radiates at the same rate, so
        // the chooser weights are the excited populations.
        let weights: Vec<f64> = (1..=current.n_qubits())
            .map(|q| excited_population(&current, q))
            .collect::<Result<_>>()?;
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            // Numerically extinct excitation; nothing left to emit.
            break;
        }
        let mut draw = rng.random::<f64>() * total;
        let mut qubit = current.n_qubits();
        for (idx, w) in weights.iter().enumerate() {
            if draw < *w {
                qubit = idx + 1;
                break;
            }
            draw -= w;
        }
        current = apply_jump(&current, qubit)?;
        if jumps.len() < cfg.max_jumps {
            jumps.push(JumpEvent { gamma_t: elapsed, qubit });
        }
    }
    Ok((current.normalized()?, jumps))
}

/// Deviation of the decay-mixing identities on an equal-excitation code.
///
/// For a weight-4 code, evolving an amplitude-error state for `gamma_t`
/// equals `exp(-3 gamma_t)/2 [(1+x) A_i - (1-x) A_iP_i]` applied to the
/// clean encoded state, with `x = exp(-2 gamma_t)`; the combined-error
/// counterpart swaps the coefficients with signs `-(1-x)` and `(1+x)`.
/// Returns the larger of the two vector-norm deviations.
pub fn decay_mixing_check(
    code: &CodeSpec,
    q: &LogicalQubit,
    qubit: Qubit,
    gamma_t: f64,
) -> Result<f64> {
    if !code.is_equal_excitation() || code.n != 8 {
        return Err(Error::InvalidCode(format!(
            "{}: decay-mixing identities hold for weight-4 equal-excitation codes",
            code.name
        )));
    }
    let d = DecayParams::new(gamma_t)?;
    let psi = encode(code, q)?;
    let a_psi = apply_error(&psi, ErrorOp::amplitude(qubit))?;
    let ap_psi = apply_error(&psi, ErrorOp::amplitude_phase(qubit))?;
    let x = (-2.0 * gamma_t).exp();
    let pref = 0.5 * (-3.0 * gamma_t).exp();

    let combine = |ca: f64, cap: f64| -> QState {
        let mut amps = Vec::with_capacity(a_psi.dim());
        for i in 0..a_psi.dim() {
            amps.push(a_psi.amp(i) * ca + ap_psi.amp(i) * cap);
        }
        QState::from_amplitudes(code.n, amps).expect("bounded combination")
    };

    let lhs_a = conditional_evolve(&a_psi, d);
    let rhs_a = combine(pref * (1.0 + x), -pref * (1.0 - x));
    let dev_a = lhs_a.vector_distance(&rhs_a)?;

    let lhs_ap = conditional_evolve(&ap_psi, d);
    let rhs_ap = combine(-pref * (1.0 - x), pref * (1.0 + x));
    let dev_ap = lhs_ap.vector_distance(&rhs_ap)?;

    Ok(dev_a.max(dev_ap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{eight_bit_code, five_bit_code};
    use crate::qsim::{fidelity_up_to_phase, rng_from_seed, BasisWord};
    use num_complex::Complex64;
    use rand::Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn amplitude_error_is_bit_flip() {
        let s = QState::ground(2).unwrap();
        let out = apply_error(&s, ErrorOp::amplitude(1)).unwrap();
        assert_eq!(out.amp(0b10), c(1.0));
    }

    #[test]
    fn phase_error_leaves_ground_words_alone() {
        let s = QState::basis(BasisWord::parse("00001111").unwrap());
        let out = apply_error(&s, ErrorOp::phase(1)).unwrap();
        assert_eq!(out.amp(0b00001111), c(1.0));
        // And flips the sign where the qubit is excited.
        let s = QState::basis(BasisWord::parse("10001111").unwrap());
        let out = apply_error(&s, ErrorOp::phase(1)).unwrap();
        assert_eq!(out.amp(0b10001111), c(-1.0));
    }

    #[test]
    fn combined_error_convention() {
        // |0> -> |1>, |1> -> -|0>.
        let s = QState::ground(1).unwrap();
        let out = apply_error(&s, ErrorOp::amplitude_phase(1)).unwrap();
        assert_eq!(out.amp(1), c(1.0));
        let s = QState::basis(BasisWord::parse("1").unwrap());
        let out = apply_error(&s, ErrorOp::amplitude_phase(1)).unwrap();
        assert_eq!(out.amp(0), c(-1.0));
    }

    #[test]
    fn amplitude_error_on_code_moves_leading_word() {
        // Flipping qubit 1 of the zero codeword's leading word 00001111
        // produces 10001111; check every lifted word follows.
        let code = eight_bit_code();
        let zero = code.logical_state(0);
        let out = apply_error(&zero, ErrorOp::amplitude(1)).unwrap();
        let expect = 1.0 / 8f64.sqrt();
        for sw in &code.zero_words {
            let flipped = sw.word.index() ^ crate::qsim::qubit_mask(8, 1);
            assert!((out.amp(flipped).re - sw.sign as f64 * expect).abs() < 1e-15);
        }
        assert!(out.amp(0b10001111).re > 0.0);
    }

    #[test]
    fn errors_are_unitary_and_involutions_up_to_phase() {
        let mut rng = rng_from_seed(9);
        let mut amps: Vec<Complex64> = (0..32)
            .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect();
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in &mut amps {
            *a /= norm;
        }
        let s = QState::from_amplitudes(5, amps).unwrap();
        for e in single_error_alphabet(5) {
            let once = apply_error(&s, e).unwrap();
            assert!((once.norm_sqr() - 1.0).abs() < 1e-13);
            let twice = apply_error(&once, e).unwrap();
            match e.kind {
                ErrorKind::Amplitude | ErrorKind::Phase => {
                    assert!(s.vector_distance(&twice).unwrap() < 1e-13, "{e}");
                }
                ErrorKind::AmplitudePhase => {
                    // Squares to minus identity: same ray, opposite sign.
                    assert!(fidelity_up_to_phase(&s, &twice).unwrap() > 1.0 - 1e-13);
                    let minus = twice.amps().iter().zip(s.amps()).all(|(a, b)| (a + b).norm() < 1e-12);
                    assert!(minus, "{e} squared should be -identity");
                }
            }
        }
    }

    #[test]
    fn conditional_evolution_decays_by_excitation() {
        let s = QState::from_amplitudes(
            5,
            {
                let mut v = vec![Complex64::new(0.0, 0.0); 32];
                v[0b00000] = c(0.5);
                v[0b11100] = c(0.5);
                v
            },
        )
        .unwrap();
        let g = 0.37;
        let out = conditional_evolve_gt(&s, g).unwrap();
        assert!((out.amp(0).re - 0.5).abs() < 1e-15, "ground word unchanged");
        assert!((out.amp(0b11100).re - 0.5 * (-3.0 * g).exp()).abs() < 1e-15);
    }

    #[test]
    fn conditional_evolution_is_a_semigroup() {
        let mut rng = rng_from_seed(2);
        let mut amps: Vec<Complex64> = (0..16)
            .map(|_| Complex64::new(rng.random::<f64>() - 0.5, 0.0))
            .collect();
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in &mut amps {
            *a /= norm;
        }
        let s = QState::from_amplitudes(4, amps).unwrap();
        let ab = conditional_evolve_gt(&conditional_evolve_gt(&s, 0.3).unwrap(), 0.9).unwrap();
        let once = conditional_evolve_gt(&s, 1.2).unwrap();
        assert!(ab.vector_distance(&once).unwrap() < 1e-15);
        // No amplitude's modulus grows, and neither does the norm.
        for (before, after) in s.amps().iter().zip(once.amps()) {
            assert!(after.norm() <= before.norm() + 1e-16);
        }
        assert!(once.norm_sqr() <= s.norm_sqr() + 1e-15);
    }

    #[test]
    fn equal_excitation_makes_decay_a_global_factor() {
        let code = eight_bit_code();
        let q = LogicalQubit::from_reals(0.6, 0.8).unwrap();
        let psi = encode(&code, &q).unwrap();
        for gt in [0.1, 1.0, 10.0] {
            let evolved = conditional_evolve_gt(&psi, gt).unwrap();
            // All words weight 4: a pure global factor exp(-4 gamma_t).
            let expected_norm = (-8.0 * gt).exp();
            assert!((evolved.norm_sqr() - expected_norm).abs() < 1e-12 * expected_norm.max(1e-30));
            assert!(fidelity_up_to_phase(&evolved.normalized().unwrap(), &psi).unwrap() > 1.0 - 1e-12);
        }
    }

    #[test]
    fn five_bit_code_is_not_invariant_under_decay() {
        let code = five_bit_code();
        let psi = encode(&code, &LogicalQubit::zero()).unwrap();
        let evolved = conditional_evolve_gt(&psi, 1.0).unwrap().normalized().unwrap();
        assert!(fidelity_up_to_phase(&evolved, &psi).unwrap() < 1.0 - 1e-3);
    }

    #[test]
    fn jump_lowers_a_known_excited_qubit() {
        let s = QState::basis(BasisWord::parse("10").unwrap());
        let out = apply_jump(&s, 1).unwrap();
        assert_eq!(out.amp(0), c(1.0));
    }

    #[test]
    fn jump_on_ground_qubit_fails() {
        let s = QState::ground(2).unwrap();
        assert!(matches!(apply_jump(&s, 1), Err(Error::JumpImpossible(1))));
    }

    #[test]
    fn jump_expands_in_the_error_alphabet() {
        // Lowering = (A - AP)/2 under the phase-first composite convention.
        let code = eight_bit_code();
        let q = LogicalQubit::from_reals(0.6, 0.8).unwrap();
        let psi = encode(&code, &q).unwrap();
        let jumped = apply_jump(&psi, 1).unwrap();
        let a = apply_error(&psi, ErrorOp::amplitude(1)).unwrap();
        let ap = apply_error(&psi, ErrorOp::amplitude_phase(1)).unwrap();
        let mut combo = Vec::with_capacity(psi.dim());
        for i in 0..psi.dim() {
            combo.push((a.amp(i) - ap.amp(i)) * 0.5);
        }
        let combo = QState::from_amplitudes(8, combo).unwrap().normalized().unwrap();
        assert!(jumped.vector_distance(&combo).unwrap() < 1e-13);
    }

    #[test]
    fn trajectory_with_zero_duration_is_identity() {
        let code = eight_bit_code();
        let psi = encode(&code, &LogicalQubit::zero()).unwrap();
        let cfg = TrajectoryConfig::new(0.0, 42).unwrap();
        let (out, jumps) = sample_trajectory(&psi, &cfg).unwrap();
        assert!(jumps.is_empty());
        assert!(out.vector_distance(&psi).unwrap() < 1e-14);
    }

    #[test]
    fn all_ground_register_never_jumps() {
        let s = QState::ground(4).unwrap();
        for seed in 0..50 {
            let cfg = TrajectoryConfig::new(5.0, seed).unwrap();
            let (out, jumps) = sample_trajectory(&s, &cfg).unwrap();
            assert!(jumps.is_empty());
            assert!(out.vector_distance(&s).unwrap() < 1e-14);
        }
    }

    #[test]
    fn single_qubit_emission_fraction_matches_analytic_rate() {
        // One excited qubit: P(at least one jump by t) = 1 - exp(-2 Gamma t).
        let s = QState::basis(BasisWord::parse("1").unwrap());
        let gt = 0.4;
        let trials = 10_000usize;
        let mut jumped = 0usize;
        for seed in 0..trials {
            let cfg = TrajectoryConfig::new(gt, seed as u64).unwrap();
            let (_, jumps) = sample_trajectory(&s, &cfg).unwrap();
            if !jumps.is_empty() {
                jumped += 1;
            }
        }
        let p = 1.0 - (-2.0 * gt).exp();
        let sigma = (trials as f64 * p * (1.0 - p)).sqrt();
        let dev = (jumped as f64 - trials as f64 * p).abs();
        assert!(dev < 3.0 * sigma, "jumped = {jumped}, expected ~{}", trials as f64 * p);
    }

    #[test]
    fn max_jumps_caps_the_log_but_not_the_dynamics() {
        let s = QState::basis(BasisWord::parse("1111").unwrap());
        let cfg = TrajectoryConfig::new(50.0, 7).unwrap().with_max_jumps(1);
        let (out, jumps) = sample_trajectory(&s, &cfg).unwrap();
        assert_eq!(jumps.len(), 1);
        // After Gamma t = 50 every qubit has certainly decayed.
        assert!((out.amp(0).norm() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn decay_mixing_identity_at_zero_time_is_trivial() {
        let code = eight_bit_code();
        let q = LogicalQubit::from_reals(0.6, 0.8).unwrap();
        let dev = decay_mixing_check(&code, &q, 1, 0.0).unwrap();
        assert!(dev < 1e-15);
    }

    #[test]
    fn decay_mixing_identity_holds_at_finite_time() {
        let code = eight_bit_code();
        let q = LogicalQubit::from_reals(0.6, 0.8).unwrap();
        for qubit in 1..=8 {
            let dev = decay_mixing_check(&code, &q, qubit, 0.7).unwrap();
            assert!(dev < 1e-12, "qubit {qubit}: deviation {dev}");
        }
    }

    #[test]
    fn decay_mixing_long_time_limit_direction() {
        // As gamma_t grows the evolved amplitude-error state aligns with
        // (A_i - A_iP_i) applied to the clean state.
        let code = eight_bit_code();
        let q = LogicalQubit::from_reals(0.6, 0.8).unwrap();
        let psi = encode(&code, &q).unwrap();
        let gt = 8.0;
        let evolved = conditional_evolve_gt(
            &apply_error(&psi, ErrorOp::amplitude(2)).unwrap(),
            gt,
        )
        .unwrap();
        let a = apply_error(&psi, ErrorOp::amplitude(2)).unwrap();
        let ap = apply_error(&psi, ErrorOp::amplitude_phase(2)).unwrap();
        let mut diff = Vec::with_capacity(psi.dim());
        for i in 0..psi.dim() {
            diff.push((a.amp(i) - ap.amp(i)) * 0.5);
        }
        let direction = QState::from_amplitudes(8, diff).unwrap();
        assert!(
            fidelity_up_to_phase(&evolved, &direction).unwrap() > 1.0 - 1e-6,
            "long-time limit should align with A - AP"
        );
    }

    #[test]
    fn decay_mixing_rejects_unequal_excitation_codes() {
        let code = five_bit_code();
        let q = LogicalQubit::zero();
        assert!(decay_mixing_check(&code, &q, 1, 0.5).is_err());
    }

    #[test]
    fn error_names_round_trip() {
        for e in single_error_alphabet(8) {
            let s = e.to_string();
            assert_eq!(ErrorOp::parse(&s).unwrap(), e);
        }
        assert!(ErrorOp::parse("A3P4").is_err());
        assert!(ErrorOp::parse("Q2").is_err());
    }
}
