//! Numerical kernels for acausal quantum-electrodynamic observables:
//! photon propagators on and off the light cone, positive/negative-frequency
//! field decompositions, space-like wavepacket transition probabilities,
//! transmission-line superluminal signal statistics, and two-photon
//! coincidence counting.
//!
//! All internal physics is in Gaussian CGS units; see [`units`] for the
//! conventions and conversions.

// Precondition checks are written as negated comparisons (`!(x > 0.0)`) so
// that NaN inputs are rejected too; index loops in the transform kernels are
// deliberate.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop)]

pub mod correlations;
pub mod propagator;
pub mod spectral;
pub mod transmission_line;
pub mod units;
pub mod wavepacket;
