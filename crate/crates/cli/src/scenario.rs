//! JSON scenario schemas. Unknown keys are rejected and every physical
//! quantity carries its unit in the key name.

use num_complex::Complex64;
use serde::Deserialize;

/// Two-packet overlap scenario. The grid is an N³ box of the given spacing;
/// if no origin is given the box is centered on the coordinate origin.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OverlapScenario {
    pub grid_n: usize,
    pub spacing_cm: f64,
    #[serde(default)]
    pub origin_cm: Option<[f64; 3]>,
    pub initial: PacketSpec,
    pub r#final: PacketSpec,
}

impl OverlapScenario {
    pub fn origin(&self) -> [f64; 3] {
        self.origin_cm.unwrap_or_else(|| {
            let half = 0.5 * self.grid_n as f64 * self.spacing_cm;
            [-half, -half, -half]
        })
    }
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum PacketSpec {
    Gaussian {
        center_cm: [f64; 3],
        width_cm: f64,
        /// complex 3-vector as [[re, im]; 3]
        polarization: [[f64; 2]; 3],
    },
}

impl PacketSpec {
    pub fn center_cm(&self) -> [f64; 3] {
        match self {
            PacketSpec::Gaussian { center_cm, .. } => *center_cm,
        }
    }

    pub fn width_cm(&self) -> f64 {
        match self {
            PacketSpec::Gaussian { width_cm, .. } => *width_cm,
        }
    }

    pub fn polarization(&self) -> [Complex64; 3] {
        match self {
            PacketSpec::Gaussian { polarization, .. } => [
                Complex64::new(polarization[0][0], polarization[0][1]),
                Complex64::new(polarization[1][0], polarization[1][1]),
                Complex64::new(polarization[2][0], polarization[2][1]),
            ],
        }
    }
}
