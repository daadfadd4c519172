//! Exact simulation and certification of small qubit codes under
//! spontaneous-emission dynamics.
//!
//! The crate centers on two codes for a single logical qubit: the classic
//! five-qubit code that corrects one general error, and an eight-qubit
//! equal-excitation code whose code space is left invariant by the
//! non-unitary no-emission (conditional) time evolution, so that decay
//! between emissions is corrected to all orders while one general error
//! remains correctable.
//!
//! Modules:
//!
//! - [`qsim`] — exact state-vector simulation of registers up to 10 qubits:
//!   gates, programs, projective measurement, fidelity.
//! - [`code`] — both codes as signed-word data, the lift that derives the
//!   eight-qubit code from the five-qubit one, direct encoding, the encoder
//!   network, and encoder synthesis for arbitrary coset codes.
//! - [`noise`] — the single-qubit error alphabet, diagonal no-emission decay,
//!   quantum jumps, and trajectory sampling.
//! - [`decode`] — syndrome extraction through the reversed encoder, the
//!   brute-force syndrome table, recovery, and the full
//!   encode–corrupt–correct cycle.
//! - [`verify`] — error-correction condition checkers, error-space dimension,
//!   the sphere-packing bound, and the five-qubit failure scan.
//! - [`search`] — budgeted, checkpointable search for equal-excitation coset
//!   codes.
//! - [`experiments`] — named, seeded, reproducible experiment runners with
//!   JSON reports.

pub mod code;
pub mod decode;
pub mod experiments;
pub mod noise;
pub mod qsim;
pub mod search;
pub mod verify;

mod error;

pub use error::{Error, Result};
