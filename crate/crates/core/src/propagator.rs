//! Vacuum photon propagator kernels and the regulated transmission-line
//! equal-time correlator.
//!
//! The free propagator splits into an on-light-cone part (half the sum of the
//! retarded and advanced kernels δ(cT∓R)/R) and an off-cone part
//! 1/(π(R²−c²T²)) which is nonzero at space-like and time-like separations.
//! Delta distributions are represented by unit-area Gaussian mollifiers of
//! caller-supplied width, which keeps every identity numerically testable.

use crate::units::SPEED_OF_LIGHT_CM_PER_S;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum PropagatorError {
    #[error("separation lies within {tol:e} of the light cone (R={r}, cT={ct})")]
    LightConeSingular { r: f64, ct: f64, tol: f64 },
    #[error("spatial separation must be positive, got R={0}")]
    DegenerateSeparation(f64),
    #[error("mollifier width must be positive, got {0}")]
    InvalidMollifier(f64),
    #[error("coincident points: z = 0")]
    CoincidentPoints,
    #[error("|z| = {z} exceeds the regulator length {lambda}")]
    RegulatorViolation { z: f64, lambda: f64 },
    #[error("invalid regulated line: {0}")]
    InvalidLine(&'static str),
}

/// Spatial distance R = |x−y| and time separation cT = x⁰−y⁰, both in cm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacetimePoint {
    pub r_distance: f64,
    pub ct: f64,
}

impl SpacetimePoint {
    pub fn new(r_distance: f64, ct: f64) -> Result<Self, PropagatorError> {
        if !(r_distance >= 0.0) {
            return Err(PropagatorError::DegenerateSeparation(r_distance));
        }
        Ok(SpacetimePoint { r_distance, ct })
    }
}

/// Infrared-regulated infinite cable: regulator length Λ (cm) standing in for
/// the finite cable length, and the line impedance in Gaussian s/cm.
#[derive(Debug, Clone, Copy)]
pub struct RegulatedLine {
    pub lambda_reg: f64,
    pub r_line: f64,
}

impl RegulatedLine {
    pub fn new(lambda_reg: f64, r_line: f64) -> Result<Self, PropagatorError> {
        if !(lambda_reg > 0.0) {
            return Err(PropagatorError::InvalidLine("lambda_reg must be > 0"));
        }
        if !(r_line > 0.0) {
            return Err(PropagatorError::InvalidLine("r_line must be > 0"));
        }
        Ok(RegulatedLine { lambda_reg, r_line })
    }
}

fn default_cone_tol(p: &SpacetimePoint) -> f64 {
    1e-12 * (p.r_distance * p.r_distance).max(p.ct * p.ct).max(1.0)
}

/// Off-cone (imaginary) part of the vacuum propagator, 1/(π(R²−c²T²)) in
/// 1/cm². Positive for space-like and negative for time-like separation.
///
/// Uses the default cone tolerance 1e-12·max(R², (cT)², 1).
pub fn offcone_im(p: &SpacetimePoint) -> Result<f64, PropagatorError> {
    offcone_im_with_tol(p, default_cone_tol(p))
}

/// Same as [`offcone_im`] with an explicit tolerance on |R²−(cT)²| below
/// which the input counts as on-cone.
pub fn offcone_im_with_tol(p: &SpacetimePoint, tol_cone: f64) -> Result<f64, PropagatorError> {
    let denom = p.r_distance * p.r_distance - p.ct * p.ct;
    if denom.abs() <= tol_cone {
        return Err(PropagatorError::LightConeSingular {
            r: p.r_distance,
            ct: p.ct,
            tol: tol_cone,
        });
    }
    Ok(1.0 / (std::f64::consts::PI * denom))
}

/// Unit-area Gaussian of width sigma.
fn gaussian_mollifier(x: f64, sigma: f64) -> f64 {
    let z = x / sigma;
    (-0.5 * z * z).exp() / (sigma * (2.0 * std::f64::consts::PI).sqrt())
}

/// On-cone (real) part of the propagator with the delta functions mollified:
/// ½[g_σ(cT−R) + g_σ(cT+R)]/R, retarded plus advanced.
///
/// Integrating this over cT recovers 1/R for σ well inside the window.
pub fn oncone_re_mollified(p: &SpacetimePoint, sigma: f64) -> Result<f64, PropagatorError> {
    if !(p.r_distance > 0.0) {
        return Err(PropagatorError::DegenerateSeparation(p.r_distance));
    }
    if !(sigma > 0.0) {
        return Err(PropagatorError::InvalidMollifier(sigma));
    }
    let retarded = gaussian_mollifier(p.ct - p.r_distance, sigma);
    let advanced = gaussian_mollifier(p.ct + p.r_distance, sigma);
    Ok(0.5 * (retarded + advanced) / p.r_distance)
}

/// Equal-time Wightman function of the regulated line,
/// W(z) = (cR/2π) ln|Λ/z|, valid for 0 < |z| < Λ.
///
/// Only differences W(z₁)−W(z₂) are physical; the regulator length cancels
/// from them.
pub fn tline_wightman(z: f64, line: &RegulatedLine) -> Result<f64, PropagatorError> {
    if z == 0.0 {
        return Err(PropagatorError::CoincidentPoints);
    }
    let abs_z = z.abs();
    if abs_z >= line.lambda_reg {
        return Err(PropagatorError::RegulatorViolation {
            z,
            lambda: line.lambda_reg,
        });
    }
    Ok(
        SPEED_OF_LIGHT_CM_PER_S * line.r_line / (2.0 * std::f64::consts::PI)
            * (line.lambda_reg / abs_z).ln(),
    )
}
