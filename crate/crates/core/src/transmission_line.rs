//! Transmission-line engineering: line parameters, classical d'Alembert
//! evolution, the Euclidean action for a displaced charge density, the
//! superluminal transition probability P(b) = e^{−2S/ħ}, and its decay
//! exponent β.
//!
//! The action for a charge density λ(z) displaced by b reduces, after the
//! regulator length cancels, to
//! S = (R/4π) ∫∫ λ(z) λ(z′) ln|b²/(z−z′)² − 1| dz dz′,
//! and the full log argument is always evaluated (no large-b truncation).
//! The quadrature is a tensor-product midpoint rule on half-cell-offset
//! grids, so no node can land on the u = 0 or |u| = b singularities, with
//! Richardson extrapolation of the first-order singular error until
//! successive extrapolants agree to the requested tolerance.

use rayon::prelude::*;
use thiserror::Error;

use crate::propagator::{tline_wightman, PropagatorError, RegulatedLine};
use crate::units::{
    ELEMENTARY_CHARGE_ESU, HBAR_ERG_S, R_VAC_GAUSSIAN_S_PER_CM, SPEED_OF_LIGHT_CM_PER_S,
};

#[derive(Debug, Error, PartialEq)]
pub enum TlineError {
    #[error("classical line would be superluminal: εμ = {0} < 1")]
    SuperluminalClassicalLine(f64),
    #[error("invalid line parameters: {0}")]
    InvalidLine(&'static str),
    #[error("invalid charge profile: {0}")]
    InvalidProfile(&'static str),
    #[error("quadrature did not converge: last relative change {0:e}")]
    QuadratureNotConverged(f64),
    #[error("regulator length {lambda} too small for window {needed}")]
    RegulatorTooSmall { lambda: f64, needed: f64 },
    #[error("propagator error in regulated action: {0}")]
    Propagator(#[from] PropagatorError),
    #[error("need at least 3 samples for a decay fit, got {0}")]
    InsufficientData(usize),
    #[error("bad sweep: {0}")]
    BadSweep(&'static str),
}

/// Line capacitance/inductance per length (dimensionless in the Gaussian
/// convention) with the derived signal velocity u = c/√(εμ) and impedance
/// R = (R_vac/4π)√(μ/ε).
#[derive(Debug, Clone, Copy)]
pub struct LineSpec {
    pub eps: f64,
    pub mu: f64,
    /// signal velocity, cm/s
    pub u: f64,
    /// line impedance, Gaussian s/cm
    pub r_line: f64,
}

/// u = c/√(εμ) with εμ ≥ 1 (classical lines are subluminal), and the three
/// equivalent impedance forms 1/(εu) = μu/c² = (R_vac/4π)√(μ/ε).
///
/// A product within one part in 10¹² of 1 counts as the luminal line, so
/// constructions like ε = 1/μ cannot be rejected over the last ulp.
pub fn line_params(eps: f64, mu: f64) -> Result<LineSpec, TlineError> {
    if !(eps > 0.0) || !(mu > 0.0) {
        return Err(TlineError::InvalidLine("ε and μ must be positive"));
    }
    let em = eps * mu;
    if em < 1.0 - 1e-12 {
        return Err(TlineError::SuperluminalClassicalLine(em));
    }
    let c = SPEED_OF_LIGHT_CM_PER_S;
    let u = c / em.max(1.0).sqrt();
    let r1 = 1.0 / (eps * u);
    let r2 = mu * u / (c * c);
    let r3 = R_VAC_GAUSSIAN_S_PER_CM / (4.0 * std::f64::consts::PI) * (mu / eps).sqrt();
    debug_assert!((r1 - r2).abs() <= 1e-12 * r1 && (r1 - r3).abs() <= 1e-12 * r1);
    Ok(LineSpec {
        eps,
        mu,
        u,
        r_line: r1,
    })
}

impl LineSpec {
    /// Line of the given impedance running at u = c (εμ = 1).
    pub fn from_impedance_ohms(r_ohms: f64) -> Result<Self, TlineError> {
        if !(r_ohms > 0.0) {
            return Err(TlineError::InvalidLine("impedance must be positive"));
        }
        let r_gauss = crate::units::ohms_to_gaussian_s_per_cm(r_ohms)
            .map_err(|_| TlineError::InvalidLine("impedance must be positive"))?;
        let root = SPEED_OF_LIGHT_CM_PER_S * r_gauss; // √(μ/ε)
        line_params(1.0 / root, root)
    }
}

/// 1D line-charge density λ(z) with total charge Ne and spatial spread a.
#[derive(Debug, Clone)]
pub enum ChargeProfile {
    Gaussian {
        /// total charge ∫λ dz = Ne, esu
        total_charge: f64,
        /// spread a in λ(z) = (Ne/a√π) e^{−z²/a²}, cm
        width_a: f64,
    },
    Sampled {
        z: Vec<f64>,
        lambda: Vec<f64>,
        total_charge: f64,
        width_a: f64,
    },
}

impl ChargeProfile {
    /// Gaussian profile carrying N electrons.
    pub fn gaussian(n_electrons: u32, width_a: f64) -> Result<Self, TlineError> {
        if !(width_a > 0.0) {
            return Err(TlineError::InvalidProfile("width must be positive"));
        }
        Ok(ChargeProfile::Gaussian {
            total_charge: n_electrons as f64 * ELEMENTARY_CHARGE_ESU,
            width_a,
        })
    }

    /// Sampled profile; z strictly increasing. Total charge is the trapezoid
    /// integral and the width is the √2-scaled rms spread about the centroid
    /// (so a Gaussian profile recovers its own a).
    pub fn from_samples(z: Vec<f64>, lambda: Vec<f64>) -> Result<Self, TlineError> {
        if z.len() != lambda.len() {
            return Err(TlineError::InvalidProfile("z and λ lengths differ"));
        }
        if z.len() < 2 {
            return Err(TlineError::InvalidProfile("need at least 2 samples"));
        }
        if z.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(TlineError::InvalidProfile("z must be strictly increasing"));
        }
        let trapz = |f: &dyn Fn(f64, f64) -> f64| -> f64 {
            z.windows(2)
                .zip(lambda.windows(2))
                .map(|(zw, lw)| 0.5 * (zw[1] - zw[0]) * (f(zw[0], lw[0]) + f(zw[1], lw[1])))
                .sum()
        };
        let total = trapz(&|_, l| l);
        if total == 0.0 {
            return Err(TlineError::InvalidProfile("total charge is zero"));
        }
        let centroid = trapz(&|zz, l| zz * l) / total;
        let var = trapz(&|zz, l| (zz - centroid) * (zz - centroid) * l) / total;
        if !(var > 0.0) {
            return Err(TlineError::InvalidProfile("zero spatial spread"));
        }
        Ok(ChargeProfile::Sampled {
            z,
            lambda,
            total_charge: total,
            width_a: (2.0 * var).sqrt(),
        })
    }

    pub fn total_charge(&self) -> f64 {
        match self {
            ChargeProfile::Gaussian { total_charge, .. } => *total_charge,
            ChargeProfile::Sampled { total_charge, .. } => *total_charge,
        }
    }

    pub fn width_a(&self) -> f64 {
        match self {
            ChargeProfile::Gaussian { width_a, .. } => *width_a,
            ChargeProfile::Sampled { width_a, .. } => *width_a,
        }
    }

    /// λ(z); sampled profiles interpolate linearly and vanish outside their
    /// sample range.
    pub fn eval(&self, zq: f64) -> f64 {
        match self {
            ChargeProfile::Gaussian {
                total_charge,
                width_a,
            } => {
                let x = zq / width_a;
                total_charge / (width_a * std::f64::consts::PI.sqrt()) * (-x * x).exp()
            }
            ChargeProfile::Sampled { z, lambda, .. } => {
                let n = z.len();
                if zq < z[0] || zq > z[n - 1] {
                    return 0.0;
                }
                let idx = match z.binary_search_by(|v| v.partial_cmp(&zq).unwrap()) {
                    Ok(i) => return lambda[i],
                    Err(i) => i,
                };
                let (z0, z1) = (z[idx - 1], z[idx]);
                let t = (zq - z0) / (z1 - z0);
                lambda[idx - 1] * (1.0 - t) + lambda[idx] * t
            }
        }
    }

    /// Integration window [lo, hi] covering the support.
    fn window(&self, pad: f64) -> (f64, f64) {
        match self {
            ChargeProfile::Gaussian { width_a, .. } => (-pad * width_a, pad * width_a),
            ChargeProfile::Sampled { z, .. } => (z[0], z[z.len() - 1]),
        }
    }
}

/// Euclidean action, the transition probability e^{−2S/ħ} and its logarithm.
/// The log form survives exponents far beyond double-precision underflow.
#[derive(Debug, Clone, Copy)]
pub struct ActionResult {
    /// S, erg·s
    pub action: f64,
    /// e^{−2S/ħ} (0.0 once the exponent underflows)
    pub probability: f64,
    /// −2S/ħ
    pub log_probability: f64,
}

impl ActionResult {
    fn from_action(s: f64) -> Self {
        let log_p = -2.0 * s / HBAR_ERG_S;
        ActionResult {
            action: s,
            probability: log_p.exp(),
            log_probability: log_p,
        }
    }
}

/// Controls for the displaced-charge quadrature.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    /// stop when successive Richardson extrapolants agree to this
    pub rel_tol: f64,
    /// cells at the coarsest level
    pub initial_cells: usize,
    /// maximum number of doublings
    pub max_refinements: u32,
    /// Gaussian support is truncated at ±pad·a (λ there is ~e^{−pad²})
    pub support_pad: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-6,
            initial_cells: 64,
            max_refinements: 14,
            support_pad: 8.0,
        }
    }
}

/// log-probability changes below this count as converged regardless of the
/// relative test (S near zero, e.g. tiny displacements)
const LOG_P_FLOOR: f64 = 1e-9;

/// One midpoint-correlation evaluation of ∫∫λ(z)λ(z′)K(z−z′) dz dz′ with n
/// cells. The z-grid sits on cell midpoints and the z′-grid on cell edges,
/// a half-cell offset, so z−z′ is always a half-integer multiple of h.
fn tensor_offset_sum<K: Fn(f64) -> f64>(
    profile: &ChargeProfile,
    lo: f64,
    hi: f64,
    n: usize,
    kernel: K,
) -> f64 {
    let h = (hi - lo) / n as f64;
    let li: Vec<f64> = (0..n)
        .map(|i| profile.eval(lo + (i as f64 + 0.5) * h))
        .collect();
    let lj: Vec<f64> = (0..n).map(|j| profile.eval(lo + j as f64 * h)).collect();
    // cross-correlation c_m = Σ_i li[i]·lj[i−m]; kernel depends on u only
    let mut sum = 0.0;
    for m in -(n as i64 - 1)..n as i64 {
        let c: f64 = if m >= 0 {
            let m = m as usize;
            li[m..].iter().zip(&lj[..n - m]).map(|(a, b)| a * b).sum()
        } else {
            let m = (-m) as usize;
            li[..n - m].iter().zip(&lj[m..]).map(|(a, b)| a * b).sum()
        };
        let u = (m as f64 + 0.5) * h;
        sum += c * kernel(u);
    }
    sum * h * h
}

fn richardson_quadrature<K: Fn(f64) -> f64 + Copy>(
    profile: &ChargeProfile,
    lo: f64,
    hi: f64,
    quad: &QuadratureSpec,
    prefactor: f64,
    kernel: K,
) -> Result<f64, TlineError> {
    let mut n = quad.initial_cells.max(8);
    let mut s_prev = prefactor * tensor_offset_sum(profile, lo, hi, n, kernel);
    let mut extrap_prev: Option<f64> = None;
    let mut last_change = f64::INFINITY;
    for _ in 0..quad.max_refinements {
        n *= 2;
        let s = prefactor * tensor_offset_sum(profile, lo, hi, n, kernel);
        if !s.is_finite() {
            return Err(TlineError::QuadratureNotConverged(f64::INFINITY));
        }
        // the offset-midpoint error on the log singularity is first order
        let extrap = 2.0 * s - s_prev;
        if let Some(prev) = extrap_prev {
            let change = (extrap - prev).abs();
            last_change = change / extrap.abs().max(f64::MIN_POSITIVE);
            let log_p_change = 2.0 * change / HBAR_ERG_S;
            if last_change <= quad.rel_tol || log_p_change <= LOG_P_FLOOR {
                return Ok(extrap);
            }
        }
        extrap_prev = Some(extrap);
        s_prev = s;
    }
    Err(TlineError::QuadratureNotConverged(last_change))
}

/// Euclidean action for transporting the charge profile by a displacement b,
/// with the regulator length cancelled analytically:
/// S = (R/4π) ∫∫ λ(z)λ(z′) ln|b²/(z−z′)² − 1| dz dz′.
///
/// b enters only quadratically, so S(b) = S(−b); b = 0 gives S = 0 and
/// probability 1 exactly.
pub fn action_displaced(
    profile: &ChargeProfile,
    b: f64,
    line: &LineSpec,
    quad: &QuadratureSpec,
) -> Result<ActionResult, TlineError> {
    if b == 0.0 {
        return Ok(ActionResult::from_action(0.0));
    }
    let (lo, hi) = profile.window(quad.support_pad);
    let b2 = b * b;
    let s = richardson_quadrature(
        profile,
        lo,
        hi,
        quad,
        line.r_line / (4.0 * std::f64::consts::PI),
        move |u| (b2 / (u * u) - 1.0).abs().ln(),
    )?;
    Ok(ActionResult::from_action(s))
}

/// The same action through the unreduced route
/// S = (1/2c) ∫∫ λλ′ [2W(u) − W(u−b) − W(u+b)] dz dz′
/// with the explicitly regulated Wightman function W(z) = (cR/2π)ln|Λ/z|.
///
/// The 2−1−1 coefficient combination cancels the regulator, so the result
/// must be independent of Λ; it exists to make that cancellation checkable.
pub fn action_displaced_regulated(
    profile: &ChargeProfile,
    b: f64,
    line: &LineSpec,
    lambda_reg: f64,
    quad: &QuadratureSpec,
) -> Result<ActionResult, TlineError> {
    if b == 0.0 {
        return Ok(ActionResult::from_action(0.0));
    }
    let (lo, hi) = profile.window(quad.support_pad);
    let needed = (hi - lo) + b.abs();
    if lambda_reg <= needed {
        return Err(TlineError::RegulatorTooSmall {
            lambda: lambda_reg,
            needed,
        });
    }
    let reg = RegulatedLine::new(lambda_reg, line.r_line)?;
    let w = move |z: f64| tline_wightman(z, &reg).unwrap_or(f64::NAN);
    let s = richardson_quadrature(
        profile,
        lo,
        hi,
        quad,
        1.0 / (2.0 * SPEED_OF_LIGHT_CM_PER_S),
        move |u| 2.0 * w(u) - w(u - b) - w(u + b),
    )?;
    Ok(ActionResult::from_action(s))
}

/// Decay exponent β = (e²R/πħ)N² = 4α(R/R_vac)N²; the two algebraic forms
/// are both evaluated and must agree.
pub fn beta(n_electrons: u32, r_line: f64) -> f64 {
    assert!(r_line > 0.0, "line impedance must be positive");
    let n2 = (n_electrons as f64) * (n_electrons as f64);
    let direct = ELEMENTARY_CHARGE_ESU * ELEMENTARY_CHARGE_ESU * r_line
        / (std::f64::consts::PI * HBAR_ERG_S)
        * n2;
    let alpha = crate::units::fine_structure(&crate::units::Constants::gaussian())
        .expect("built-in constants are positive");
    let via_alpha = 4.0 * alpha * (r_line / R_VAC_GAUSSIAN_S_PER_CM) * n2;
    assert!(
        (direct - via_alpha).abs() <= 1e-12 * direct.max(f64::MIN_POSITIVE),
        "β forms disagree: {direct} vs {via_alpha}"
    );
    direct
}

/// Least-squares fit of the decay law P(b) ≈ (a/b)^β.
#[derive(Debug, Clone, Copy)]
pub struct DecayFit {
    /// −slope of log P against ln b
    pub beta_fit: f64,
    /// intercept of the fit line
    pub intercept: f64,
}

impl DecayFit {
    /// Effective spread a_eff with log P = −β ln(b/a_eff).
    pub fn a_eff(&self) -> f64 {
        (self.intercept / self.beta_fit).exp()
    }
}

/// Fit log P = intercept − β ln b over (b, log P) samples with b strictly
/// increasing.
pub fn decay_fit(samples: &[(f64, f64)]) -> Result<DecayFit, TlineError> {
    if samples.len() < 3 {
        return Err(TlineError::InsufficientData(samples.len()));
    }
    if samples.windows(2).any(|w| !(w[1].0 > w[0].0)) {
        return Err(TlineError::BadSweep("b values must be strictly increasing"));
    }
    if samples.iter().any(|&(b, lp)| !(b > 0.0) || !lp.is_finite()) {
        return Err(TlineError::BadSweep("b must be positive and log P finite"));
    }
    let n = samples.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(b, lp) in samples {
        let x = b.ln();
        sx += x;
        sy += lp;
        sxx += x * x;
        sxy += x * lp;
    }
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-12 * sxx.abs().max(1.0) {
        return Err(TlineError::BadSweep("degenerate abscissae"));
    }
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    Ok(DecayFit {
        beta_fit: -slope,
        intercept,
    })
}

/// Evaluate log P(b) over a b-sweep; points are independent and run in
/// parallel, results ordered by b.
pub fn sweep_log_probability(
    profile: &ChargeProfile,
    line: &LineSpec,
    quad: &QuadratureSpec,
    bs: &[f64],
) -> Result<Vec<(f64, f64)>, TlineError> {
    bs.par_iter()
        .map(|&b| action_displaced(profile, b, line, quad).map(|r| (b, r.log_probability)))
        .collect()
}

/// Uniformly sampled voltage profile v(z) on the line.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledProfile {
    pub z0: f64,
    pub dz: f64,
    pub v: Vec<f64>,
}

impl SampledProfile {
    pub fn new(z0: f64, dz: f64, v: Vec<f64>) -> Result<Self, TlineError> {
        if v.len() < 2 {
            return Err(TlineError::InvalidProfile("need at least 2 samples"));
        }
        if !(dz > 0.0) {
            return Err(TlineError::InvalidProfile("dz must be positive"));
        }
        Ok(SampledProfile { z0, dz, v })
    }

    /// Linear interpolation; zero outside the sampled range.
    pub fn interpolate(&self, z: f64) -> f64 {
        let x = (z - self.z0) / self.dz;
        if x < 0.0 || x > (self.v.len() - 1) as f64 {
            return 0.0;
        }
        let i = (x.floor() as usize).min(self.v.len() - 2);
        let t = x - i as f64;
        self.v[i] * (1.0 - t) + self.v[i + 1] * t
    }

    pub fn z_at(&self, i: usize) -> f64 {
        self.z0 + i as f64 * self.dz
    }
}

/// Classical evolution of an initial voltage profile with zero initial time
/// derivative: v(z,t) = ½[v₀(z−ut) + v₀(z+ut)].
///
/// Strictly causal: the support at time t is contained in the initial
/// support widened by u·|t|.
pub fn dalembert_evolve(v0: &SampledProfile, t: f64, line: &LineSpec) -> SampledProfile {
    let shift = line.u * t;
    let v = (0..v0.v.len())
        .map(|i| {
            let z = v0.z_at(i);
            0.5 * (v0.interpolate(z - shift) + v0.interpolate(z + shift))
        })
        .collect();
    SampledProfile {
        z0: v0.z0,
        dz: v0.dz,
        v,
    }
}
