//! Physical constants, unit systems, and impedance conversions.
//!
//! All internal physics in this crate is carried out in Gaussian CGS units;
//! SI and natural-unit values appear only at input/output boundaries. The
//! vacuum impedance is stored through its defining expressions (4π/c in
//! Gaussian units, μ₀c in SI) rather than as rounded literals.

use thiserror::Error;

/// Speed of light in vacuum (cm/s, exact).
pub const SPEED_OF_LIGHT_CM_PER_S: f64 = 2.997_924_58e10;

/// Speed of light in vacuum (m/s, exact).
pub const SPEED_OF_LIGHT_M_PER_S: f64 = 2.997_924_58e8;

/// Reduced Planck constant (erg·s, CODATA).
pub const HBAR_ERG_S: f64 = 1.054_571_817e-27;

/// Reduced Planck constant (J·s, CODATA).
pub const HBAR_J_S: f64 = 1.054_571_817e-34;

/// Elementary charge (esu, CODATA).
pub const ELEMENTARY_CHARGE_ESU: f64 = 4.803_204_25e-10;

/// Elementary charge in C, derived from the esu value (1 C = 10·c_m/s esu)
/// so that α is identical across unit systems.
pub const ELEMENTARY_CHARGE_C: f64 = ELEMENTARY_CHARGE_ESU / (10.0 * SPEED_OF_LIGHT_M_PER_S);

/// Vacuum impedance in Gaussian units, 4π/c (s/cm).
pub const R_VAC_GAUSSIAN_S_PER_CM: f64 = 4.0 * std::f64::consts::PI / SPEED_OF_LIGHT_CM_PER_S;

/// Vacuum impedance in SI, μ₀c with μ₀ = 4π×10⁻⁷ (Ω). ≈ 376.730313…
pub const R_VAC_SI_OHM: f64 = 4.0e-7 * std::f64::consts::PI * SPEED_OF_LIGHT_M_PER_S;

/// Seconds per picosecond.
const PS_PER_S: f64 = 1.0e12;

#[derive(Debug, Error, PartialEq)]
pub enum UnitsError {
    #[error("impedance must be non-negative, got {0}")]
    InvalidImpedance(f64),
    #[error("constants must be positive: {0}")]
    InvalidConstants(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitSystem {
    Gaussian,
    Si,
    Natural,
}

impl UnitSystem {
    pub fn label(&self) -> &'static str {
        match self {
            UnitSystem::Gaussian => "gaussian",
            UnitSystem::Si => "si",
            UnitSystem::Natural => "natural",
        }
    }
}

/// Fundamental constants expressed in one unit system.
///
/// `r_vac` is in the base unit of the system (s/cm for Gaussian, Ω for SI,
/// dimensionless 1/c = 1 for natural units); `alpha` is dimensionless in all
/// of them.
#[derive(Debug, Clone, Copy)]
pub struct Constants {
    pub system: UnitSystem,
    pub c: f64,
    pub hbar: f64,
    pub e_charge: f64,
    pub r_vac: f64,
    pub alpha: f64,
}

impl Constants {
    pub fn gaussian() -> Self {
        let alpha =
            ELEMENTARY_CHARGE_ESU * ELEMENTARY_CHARGE_ESU / (HBAR_ERG_S * SPEED_OF_LIGHT_CM_PER_S);
        Constants {
            system: UnitSystem::Gaussian,
            c: SPEED_OF_LIGHT_CM_PER_S,
            hbar: HBAR_ERG_S,
            e_charge: ELEMENTARY_CHARGE_ESU,
            r_vac: R_VAC_GAUSSIAN_S_PER_CM,
            alpha,
        }
    }

    pub fn si() -> Self {
        Constants {
            system: UnitSystem::Si,
            c: SPEED_OF_LIGHT_M_PER_S,
            hbar: HBAR_J_S,
            e_charge: ELEMENTARY_CHARGE_C,
            r_vac: R_VAC_SI_OHM,
            alpha: Constants::gaussian().alpha,
        }
    }

    /// High-energy-physics convention: c = ħ = 1, R_vac = 1/c = 1, and the
    /// charge is fixed by e² = 4πα/R_vac.
    pub fn natural() -> Self {
        let alpha = Constants::gaussian().alpha;
        Constants {
            system: UnitSystem::Natural,
            c: 1.0,
            hbar: 1.0,
            e_charge: (4.0 * std::f64::consts::PI * alpha).sqrt(),
            r_vac: 1.0,
            alpha,
        }
    }

    pub fn for_system(system: UnitSystem) -> Self {
        match system {
            UnitSystem::Gaussian => Constants::gaussian(),
            UnitSystem::Si => Constants::si(),
            UnitSystem::Natural => Constants::natural(),
        }
    }
}

/// A numeric impedance together with the unit it is quoted in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Impedance {
    pub value: f64,
    pub unit: &'static str,
}

/// The vacuum impedance in the convention of the given unit system:
/// 4π/c ≈ 419.169 ps/cm (Gaussian), μ₀c ≈ 376.730 Ω (SI), exactly 1 (natural).
pub fn vacuum_impedance(system: UnitSystem) -> Impedance {
    match system {
        UnitSystem::Gaussian => Impedance {
            value: R_VAC_GAUSSIAN_S_PER_CM * PS_PER_S,
            unit: "ps/cm",
        },
        UnitSystem::Si => Impedance {
            value: R_VAC_SI_OHM,
            unit: "Ohm",
        },
        UnitSystem::Natural => Impedance {
            value: 1.0,
            unit: "1",
        },
    }
}

/// Convert an impedance in Ω to the Gaussian convention in ps/cm.
///
/// The conversion is the fixed ratio of the two vacuum-impedance values,
/// ≈ 1.112650 (ps/cm)/Ω; a 50 Ω cable is ≈ 55.63 ps/cm.
pub fn ohms_to_gaussian(r_ohms: f64) -> Result<f64, UnitsError> {
    if !(r_ohms >= 0.0) {
        return Err(UnitsError::InvalidImpedance(r_ohms));
    }
    Ok(r_ohms * (R_VAC_GAUSSIAN_S_PER_CM * PS_PER_S / R_VAC_SI_OHM))
}

/// Inverse of [`ohms_to_gaussian`].
pub fn gaussian_to_ohms(r_ps_per_cm: f64) -> Result<f64, UnitsError> {
    if !(r_ps_per_cm >= 0.0) {
        return Err(UnitsError::InvalidImpedance(r_ps_per_cm));
    }
    Ok(r_ps_per_cm * (R_VAC_SI_OHM / (R_VAC_GAUSSIAN_S_PER_CM * PS_PER_S)))
}

/// Convert an impedance in Ω to Gaussian s/cm (the unit used internally).
pub fn ohms_to_gaussian_s_per_cm(r_ohms: f64) -> Result<f64, UnitsError> {
    Ok(ohms_to_gaussian(r_ohms)? / PS_PER_S)
}

/// The electrodynamic coupling strength α = e²R_vac/(4πħ).
///
/// The combination is unit-system independent; for Gaussian inputs it
/// reduces to e²/ħc.
pub fn fine_structure(constants: &Constants) -> Result<f64, UnitsError> {
    if !(constants.c > 0.0) {
        return Err(UnitsError::InvalidConstants("c"));
    }
    if !(constants.hbar > 0.0) {
        return Err(UnitsError::InvalidConstants("hbar"));
    }
    if !(constants.e_charge > 0.0) {
        return Err(UnitsError::InvalidConstants("e_charge"));
    }
    Ok(constants.e_charge * constants.e_charge * constants.r_vac
        / (4.0 * std::f64::consts::PI * constants.hbar))
}
