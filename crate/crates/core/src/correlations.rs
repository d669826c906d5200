//! Two-photon coincidence statistics.
//!
//! Coincidence counting of two photons over two detectors has four physical
//! possibilities; probabilities add for the distinguishable ones and
//! amplitudes add for the indistinguishable pair. On the two-quantum sector
//! N₁+N₂ = 2 the counting statistics at detector 1 fix the cross-correlation
//! with detector 2 through the identity 2⟨N₁⟩ − ⟨N₁²⟩ = ⟨N₁N₂⟩.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum CorrelationsError {
    #[error("two-photon state is not normalized: |c|² sums to {0}")]
    NotNormalized(f64),
    #[error("all amplitudes are zero")]
    ZeroState,
}

/// Amplitudes for the four ways a coincidence count can happen:
/// both photons from source 1 (`a11`), both from source 2 (`a22`), and the
/// direct/exchange assignments (`a12`, `a21`). Relative weights; they need
/// not be normalized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoincidenceAmplitudes {
    pub a11: Complex64,
    pub a22: Complex64,
    pub a12: Complex64,
    pub a21: Complex64,
}

/// Normalized amplitudes over the occupations (N₁,N₂) ∈ {(2,0),(0,2),(1,1)}.
#[derive(Debug, Clone, Copy)]
pub struct TwoPhotonState {
    c20: Complex64,
    c02: Complex64,
    c11: Complex64,
}

const NORM_TOL: f64 = 1e-12;

impl TwoPhotonState {
    /// Accepts amplitudes already normalized to 1e-12.
    pub fn new(c20: Complex64, c02: Complex64, c11: Complex64) -> Result<Self, CorrelationsError> {
        let n = c20.norm_sqr() + c02.norm_sqr() + c11.norm_sqr();
        if (n - 1.0).abs() > NORM_TOL {
            return Err(CorrelationsError::NotNormalized(n));
        }
        Ok(TwoPhotonState { c20, c02, c11 })
    }

    /// Normalizes arbitrary amplitudes; fails on the zero vector.
    pub fn normalized(
        c20: Complex64,
        c02: Complex64,
        c11: Complex64,
    ) -> Result<Self, CorrelationsError> {
        let n = (c20.norm_sqr() + c02.norm_sqr() + c11.norm_sqr()).sqrt();
        if n == 0.0 {
            return Err(CorrelationsError::ZeroState);
        }
        Ok(TwoPhotonState {
            c20: c20 / n,
            c02: c02 / n,
            c11: c11 / n,
        })
    }

    pub fn c20(&self) -> Complex64 {
        self.c20
    }
    pub fn c02(&self) -> Complex64 {
        self.c02
    }
    pub fn c11(&self) -> Complex64 {
        self.c11
    }
}

/// Counting statistics of detector 1 and the coincidence correlation
/// C = ⟨N₁N₂⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPhotonStats {
    pub mean_n1: f64,
    pub mean_n1_sq: f64,
    pub correlation: f64,
}

/// Relative coincidence probability |a₁₁|² + |a₂₂|² + |a₁₂ + a₂₁|²:
/// probabilities for the distinguishable possibilities, amplitudes for the
/// indistinguishable exchange pair.
pub fn coincidence_probability(amps: &CoincidenceAmplitudes) -> f64 {
    amps.a11.norm_sqr() + amps.a22.norm_sqr() + (amps.a12 + amps.a21).norm_sqr()
}

/// ⟨N₁⟩, ⟨N₁²⟩ and C = ⟨N₁N₂⟩ for a normalized two-photon state.
///
/// On the N₁+N₂ = 2 sector the three satisfy 2⟨N₁⟩ − ⟨N₁²⟩ = C exactly.
pub fn two_photon_stats(state: &TwoPhotonState) -> TwoPhotonStats {
    let p20 = state.c20.norm_sqr();
    let p11 = state.c11.norm_sqr();
    TwoPhotonStats {
        mean_n1: 2.0 * p20 + p11,
        mean_n1_sq: 4.0 * p20 + p11,
        correlation: p11,
    }
}

/// Glue from the four coincidence possibilities to the occupation basis:
/// c₂₀ ∝ a₁₁, c₀₂ ∝ a₂₂ and c₁₁ ∝ a₁₂ + a₂₁ (the interfering pair), then
/// normalized.
pub fn interference_amplitudes_to_state(
    amps: &CoincidenceAmplitudes,
) -> Result<TwoPhotonState, CorrelationsError> {
    TwoPhotonState::normalized(amps.a11, amps.a22, amps.a12 + amps.a21)
}
