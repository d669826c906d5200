//! Photon wavepackets at fixed time: the complex field F = e + i·b on a
//! uniform spatial grid, its momentum-space wave function Ψ(k), energy,
//! normalization under the Lorentz-invariant d³k/|k| measure, and the
//! space-like transition amplitude between two field configurations.
//!
//! Transform conventions: Ψ(k) = Σ F(r) e^{−ik·r} Δ³ with r the absolute
//! node positions, and F(r) = Σ Ψ(k) e^{+ik·r} dk³/(2π)³ with
//! dk = 2π/(NΔ), so the round trip is the identity. The k = 0 mode is
//! excluded from every |k|-weighted sum and zeroed by the transverse
//! projection; its measure vanishes as dk³ in the continuum limit.

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use thiserror::Error;

use crate::units::{HBAR_ERG_S, SPEED_OF_LIGHT_CM_PER_S};

/// Average of 1/|u|² over a grid cell centered on the singularity,
/// in units of spacing⁻². Replaces the diagonal term of the 1/|r−s|² kernel.
pub const CELL_AVG_INV_R2: f64 = 7.674124222443732;

/// Norm tolerance accepted by [`overlap`] before flagging `NotNormalized`.
const NORM_TOL: f64 = 1e-6;

#[derive(Debug, Error, PartialEq)]
pub enum WavepacketError {
    #[error("grids do not match: {0}")]
    GridMismatch(&'static str),
    #[error("field has zero norm under the d³k/|k| measure")]
    ZeroNorm,
    #[error("wavepacket is not normalized: norm² = {0}")]
    NotNormalized(f64),
    #[error("invalid grid: {0}")]
    InvalidGrid(&'static str),
}

/// Complex 3-vector samples on an N³ uniform spatial grid (cm).
#[derive(Debug, Clone, PartialEq)]
pub struct VectorFieldGrid {
    n: usize,
    spacing: f64,
    origin: [f64; 3],
    values: Vec<[Complex64; 3]>,
}

/// Complex 3-vector samples on the dual N³ momentum grid (1/cm).
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumWavepacket {
    n: usize,
    spacing: f64,
    origin: [f64; 3],
    values: Vec<[Complex64; 3]>,
}

const ZERO3: [Complex64; 3] = [
    Complex64::new(0.0, 0.0),
    Complex64::new(0.0, 0.0),
    Complex64::new(0.0, 0.0),
];

impl VectorFieldGrid {
    pub fn zeros(n: usize, spacing: f64, origin: [f64; 3]) -> Result<Self, WavepacketError> {
        if n < 2 {
            return Err(WavepacketError::InvalidGrid("N must be at least 2"));
        }
        if !(spacing > 0.0) {
            return Err(WavepacketError::InvalidGrid("spacing must be positive"));
        }
        Ok(VectorFieldGrid {
            n,
            spacing,
            origin,
            values: vec![ZERO3; n * n * n],
        })
    }

    /// Fill from a closure over absolute node positions.
    pub fn from_fn<F: FnMut([f64; 3]) -> [Complex64; 3]>(
        n: usize,
        spacing: f64,
        origin: [f64; 3],
        mut f: F,
    ) -> Result<Self, WavepacketError> {
        let mut grid = Self::zeros(n, spacing, origin)?;
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let r = grid.position(i, j, l);
                    grid.values[(i * n + j) * n + l] = f(r);
                }
            }
        }
        Ok(grid)
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn spacing(&self) -> f64 {
        self.spacing
    }
    pub fn origin(&self) -> [f64; 3] {
        self.origin
    }
    pub fn values(&self) -> &[[Complex64; 3]] {
        &self.values
    }
    pub fn values_mut(&mut self) -> &mut [[Complex64; 3]] {
        &mut self.values
    }

    pub fn position(&self, i: usize, j: usize, l: usize) -> [f64; 3] {
        [
            self.origin[0] + i as f64 * self.spacing,
            self.origin[1] + j as f64 * self.spacing,
            self.origin[2] + l as f64 * self.spacing,
        ]
    }

    pub fn at(&self, i: usize, j: usize, l: usize) -> [Complex64; 3] {
        self.values[(i * self.n + j) * self.n + l]
    }

    fn same_grid(&self, other: &VectorFieldGrid) -> bool {
        self.n == other.n && self.spacing == other.spacing && self.origin == other.origin
    }
}

impl MomentumWavepacket {
    pub fn n(&self) -> usize {
        self.n
    }
    /// Momentum-grid spacing dk = 2π/(NΔ).
    pub fn dk(&self) -> f64 {
        2.0 * std::f64::consts::PI / (self.n as f64 * self.spacing)
    }
    pub fn values(&self) -> &[[Complex64; 3]] {
        &self.values
    }
    pub fn values_mut(&mut self) -> &mut [[Complex64; 3]] {
        &mut self.values
    }

    /// Signed integer frequency of a bin index (Nyquist maps to −N/2).
    fn signed_freq(&self, m: usize) -> i64 {
        let n = self.n as i64;
        let m = m as i64;
        if m < n - n / 2 {
            m
        } else {
            m - n
        }
    }

    /// Physical wave vector of the bin (i, j, l).
    pub fn wave_vector(&self, i: usize, j: usize, l: usize) -> [f64; 3] {
        let dk = self.dk();
        [
            self.signed_freq(i) as f64 * dk,
            self.signed_freq(j) as f64 * dk,
            self.signed_freq(l) as f64 * dk,
        ]
    }

    fn same_grid(&self, other: &MomentumWavepacket) -> bool {
        self.n == other.n && self.spacing == other.spacing && self.origin == other.origin
    }

    /// Σ over k≠0 of f(k, Ψ(k)) — the |k|-weighted sums all skip the k = 0
    /// node, whose d³k/|k| measure is ill-defined on the grid.
    fn sum_off_zero<T, F>(&self, init: T, mut f: F) -> T
    where
        F: FnMut(T, [f64; 3], &[Complex64; 3]) -> T,
    {
        let n = self.n;
        let mut acc = init;
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    if i == 0 && j == 0 && l == 0 {
                        continue;
                    }
                    acc = f(
                        acc,
                        self.wave_vector(i, j, l),
                        &self.values[(i * n + j) * n + l],
                    );
                }
            }
        }
        acc
    }
}

/// F = e + i·b, nodewise.
pub fn riemann_silberstein(
    e: &VectorFieldGrid,
    b: &VectorFieldGrid,
) -> Result<VectorFieldGrid, WavepacketError> {
    if !e.same_grid(b) {
        return Err(WavepacketError::GridMismatch(
            "electric and magnetic grids differ",
        ));
    }
    let mut out = e.clone();
    let i = Complex64::new(0.0, 1.0);
    for (f, bv) in out.values.iter_mut().zip(&b.values) {
        for c in 0..3 {
            f[c] += i * bv[c];
        }
    }
    Ok(out)
}

/// In-place FFT over every axis of one vector component.
fn fft3(values: &mut [[Complex64; 3]], n: usize, inverse: bool) {
    let mut planner = FftPlanner::new();
    let fft = if inverse {
        planner.plan_fft_inverse(n)
    } else {
        planner.plan_fft_forward(n)
    };
    let mut lane = vec![Complex64::new(0.0, 0.0); n];
    // (base stride of lane start, stride within lane) per axis
    for comp in 0..3 {
        for axis in 0..3 {
            for a in 0..n {
                for b in 0..n {
                    let (base, stride) = match axis {
                        0 => ((a * n + b), n * n),
                        1 => ((a * n * n + b), n),
                        _ => ((a * n + b) * n, 1),
                    };
                    for (t, slot) in lane.iter_mut().enumerate() {
                        *slot = values[base + t * stride][comp];
                    }
                    fft.process(&mut lane);
                    for (t, slot) in lane.iter().enumerate() {
                        values[base + t * stride][comp] = *slot;
                    }
                }
            }
        }
    }
    if inverse {
        let scale = 1.0 / (n * n * n) as f64;
        for v in values.iter_mut() {
            for c in 0..3 {
                v[c] *= scale;
            }
        }
    }
}

/// Ψ(k) = Σ F(r) e^{−ik·r} Δ³ over the absolute node positions.
pub fn to_momentum(field: &VectorFieldGrid) -> MomentumWavepacket {
    let n = field.n;
    let mut values = field.values.clone();
    fft3(&mut values, n, false);
    let vol = field.spacing.powi(3);
    let mut out = MomentumWavepacket {
        n,
        spacing: field.spacing,
        origin: field.origin,
        values,
    };
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let k = out.wave_vector(i, j, l);
                let phase = Complex64::from_polar(
                    vol,
                    -(k[0] * field.origin[0] + k[1] * field.origin[1] + k[2] * field.origin[2]),
                );
                let v = &mut out.values[(i * n + j) * n + l];
                for c in 0..3 {
                    v[c] *= phase;
                }
            }
        }
    }
    out
}

/// F(r) = Σ Ψ(k) e^{+ik·r} dk³/(2π)³; exact inverse of [`to_momentum`].
pub fn from_momentum(packet: &MomentumWavepacket) -> VectorFieldGrid {
    let n = packet.n;
    let mut values = packet.values.clone();
    let inv_vol = 1.0 / packet.spacing.powi(3);
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let k = packet.wave_vector(i, j, l);
                let phase = Complex64::from_polar(
                    inv_vol,
                    k[0] * packet.origin[0] + k[1] * packet.origin[1] + k[2] * packet.origin[2],
                );
                let v = &mut values[(i * n + j) * n + l];
                for c in 0..3 {
                    v[c] *= phase;
                }
            }
        }
    }
    fft3(&mut values, n, true);
    VectorFieldGrid {
        n,
        spacing: packet.spacing,
        origin: packet.origin,
        values,
    }
}

/// Mean field energy (1/8π) Σ |F|² Δ³, in erg.
pub fn mean_energy(field: &VectorFieldGrid) -> f64 {
    let sum: f64 = field
        .values
        .iter()
        .map(|v| v.iter().map(|c| c.norm_sqr()).sum::<f64>())
        .sum();
    sum * field.spacing.powi(3) / (8.0 * std::f64::consts::PI)
}

/// Same energy through the momentum representation,
/// (1/8π) Σ |Ψ|² dk³/(2π)³; agrees with [`mean_energy`] by Parseval.
pub fn mean_energy_momentum(packet: &MomentumWavepacket) -> f64 {
    let sum: f64 = packet
        .values
        .iter()
        .map(|v| v.iter().map(|c| c.norm_sqr()).sum::<f64>())
        .sum();
    let dk = packet.dk();
    sum * dk.powi(3) / ((2.0 * std::f64::consts::PI).powi(3) * 8.0 * std::f64::consts::PI)
}

/// Remove the longitudinal part nodewise: Ψ → Ψ − k̂(k̂·Ψ), with the k = 0
/// node zeroed. Idempotent; the output satisfies k·Ψ(k) = 0 to roundoff,
/// the momentum-space form of ∇·F = 0.
pub fn project_transverse(packet: &MomentumWavepacket) -> MomentumWavepacket {
    let mut out = packet.clone();
    let n = out.n;
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let idx = (i * n + j) * n + l;
                if i == 0 && j == 0 && l == 0 {
                    out.values[idx] = ZERO3;
                    continue;
                }
                let k = out.wave_vector(i, j, l);
                let mag = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
                let khat = [k[0] / mag, k[1] / mag, k[2] / mag];
                let v = out.values[idx];
                let dot = khat[0] * v[0] + khat[1] * v[1] + khat[2] * v[2];
                for c in 0..3 {
                    out.values[idx][c] = v[c] - khat[c] * dot;
                }
            }
        }
    }
    out
}

/// ‖k·Ψ‖ / ‖Ψ‖ over the grid (0 for the zero field).
pub fn transversality_residual(packet: &MomentumWavepacket) -> f64 {
    let (num, den) = packet.sum_off_zero((0.0, 0.0), |(num, den), k, v| {
        let kmag2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        let dot = k[0] * v[0] + k[1] * v[1] + k[2] * v[2];
        let v2 = v.iter().map(|c| c.norm_sqr()).sum::<f64>();
        (num + dot.norm_sqr() / kmag2, den + v2)
    });
    if den == 0.0 {
        0.0
    } else {
        (num / den).sqrt()
    }
}

/// Squared norm under the Lorentz-invariant measure,
/// (1/8πħc) Σ |Ψ|² dk³/((2π)³|k|).
pub fn norm_sq(packet: &MomentumWavepacket) -> f64 {
    let sum = packet.sum_off_zero(0.0, |acc, k, v| {
        let kmag = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
        acc + v.iter().map(|c| c.norm_sqr()).sum::<f64>() / kmag
    });
    sum * packet.dk().powi(3)
        / ((2.0 * std::f64::consts::PI).powi(3)
            * 8.0
            * std::f64::consts::PI
            * HBAR_ERG_S
            * SPEED_OF_LIGHT_CM_PER_S)
}

/// Rescale so that [`norm_sq`] is exactly 1.
pub fn normalize(packet: &MomentumWavepacket) -> Result<MomentumWavepacket, WavepacketError> {
    let n2 = norm_sq(packet);
    if n2 <= 0.0 || !n2.is_finite() {
        return Err(WavepacketError::ZeroNorm);
    }
    let scale = 1.0 / n2.sqrt();
    let mut out = packet.clone();
    for v in out.values.iter_mut() {
        for c in 0..3 {
            v[c] *= scale;
        }
    }
    Ok(out)
}

/// Transition amplitude ⟨f|i⟩ = (1/8πħc) Σ Ψf*·Ψi dk³/((2π)³|k|) between
/// normalized packets on the same grid.
pub fn overlap(
    psi_f: &MomentumWavepacket,
    psi_i: &MomentumWavepacket,
) -> Result<Complex64, WavepacketError> {
    if !psi_f.same_grid(psi_i) {
        return Err(WavepacketError::GridMismatch("momentum grids differ"));
    }
    for p in [psi_f, psi_i] {
        let n2 = norm_sq(p);
        if (n2 - 1.0).abs() > NORM_TOL {
            return Err(WavepacketError::NotNormalized(n2));
        }
    }
    let n = psi_f.n;
    let mut sum = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                if i == 0 && j == 0 && l == 0 {
                    continue;
                }
                let idx = (i * n + j) * n + l;
                let k = psi_f.wave_vector(i, j, l);
                let kmag = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
                let f = &psi_f.values[idx];
                let g = &psi_i.values[idx];
                let dot = f[0].conj() * g[0] + f[1].conj() * g[1] + f[2].conj() * g[2];
                sum += dot / kmag;
            }
        }
    }
    Ok(sum * psi_f.dk().powi(3)
        / ((2.0 * std::f64::consts::PI).powi(3)
            * 8.0
            * std::f64::consts::PI
            * HBAR_ERG_S
            * SPEED_OF_LIGHT_CM_PER_S))
}

/// Position-space route to the same amplitude:
/// (1/16π³ħc) ΣΣ F_f*(r)·F_i(s) / |r−s|² Δ⁶, brute force over all node
/// pairs. The r = s term uses the analytic cell average of the kernel.
///
/// Agrees with [`overlap`] up to discretization error that shrinks with N.
pub fn overlap_position(
    f_f: &VectorFieldGrid,
    f_i: &VectorFieldGrid,
) -> Result<Complex64, WavepacketError> {
    if !f_f.same_grid(f_i) {
        return Err(WavepacketError::GridMismatch("field grids differ"));
    }
    let n = f_f.n as i64;
    let spacing = f_f.spacing;

    // kernel lookup over node differences, indexed by (di+n-1, dj+n-1, dl+n-1)
    let side = (2 * n - 1) as usize;
    let mut kernel = vec![0.0f64; side * side * side];
    for di in -(n - 1)..n {
        for dj in -(n - 1)..n {
            for dl in -(n - 1)..n {
                let idx = (((di + n - 1) as usize * side) + (dj + n - 1) as usize) * side
                    + (dl + n - 1) as usize;
                let r2 = (di * di + dj * dj + dl * dl) as f64 * spacing * spacing;
                kernel[idx] = if r2 == 0.0 {
                    CELL_AVG_INV_R2 / (spacing * spacing)
                } else {
                    1.0 / r2
                };
            }
        }
    }

    let nu = n as usize;
    // Parallel over the outer grid index; per-slab partial sums are collected
    // in index order and reduced sequentially, so the result is bitwise
    // independent of the number of worker threads.
    let partials: Vec<Complex64> = (0..nu)
        .into_par_iter()
        .map(|i| {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..nu {
                for l in 0..nu {
                    let fv = f_f.values[(i * nu + j) * nu + l];
                    let fc = [fv[0].conj(), fv[1].conj(), fv[2].conj()];
                    for i2 in 0..nu {
                        let kbase_i = (i + nu - 1 - i2) * side * side;
                        for j2 in 0..nu {
                            let kbase = kbase_i + (j + nu - 1 - j2) * side + l + nu - 1;
                            let row = &f_i.values[(i2 * nu + j2) * nu..][..nu];
                            for (l2, gv) in row.iter().enumerate() {
                                // node difference dl = l - l2
                                let kval = kernel[kbase - l2];
                                let dot = fc[0] * gv[0] + fc[1] * gv[1] + fc[2] * gv[2];
                                acc += kval * dot;
                            }
                        }
                    }
                }
            }
            acc
        })
        .collect();
    let total: Complex64 = partials.into_iter().sum();

    let scale = f_f.spacing.powi(6)
        / (16.0 * std::f64::consts::PI.powi(3) * HBAR_ERG_S * SPEED_OF_LIGHT_CM_PER_S);
    Ok(total * scale)
}

/// |⟨f|i⟩|² for normalized transverse packets.
pub fn transition_probability(
    psi_f: &MomentumWavepacket,
    psi_i: &MomentumWavepacket,
) -> Result<f64, WavepacketError> {
    Ok(overlap(psi_f, psi_i)?.norm_sqr())
}

/// Discrete divergence of the field by central differences with periodic
/// wrap (the grid is DFT-periodic), per node.
pub fn divergence_central(field: &VectorFieldGrid) -> Vec<Complex64> {
    let n = field.n;
    let inv2h = 1.0 / (2.0 * field.spacing);
    let mut out = vec![Complex64::new(0.0, 0.0); n * n * n];
    let idx = |i: usize, j: usize, l: usize| (i * n + j) * n + l;
    for i in 0..n {
        let ip = (i + 1) % n;
        let im = (i + n - 1) % n;
        for j in 0..n {
            let jp = (j + 1) % n;
            let jm = (j + n - 1) % n;
            for l in 0..n {
                let lp = (l + 1) % n;
                let lm = (l + n - 1) % n;
                let dx = field.values[idx(ip, j, l)][0] - field.values[idx(im, j, l)][0];
                let dy = field.values[idx(i, jp, l)][1] - field.values[idx(i, jm, l)][1];
                let dz = field.values[idx(i, j, lp)][2] - field.values[idx(i, j, lm)][2];
                out[idx(i, j, l)] = (dx + dy + dz) * inv2h;
            }
        }
    }
    out
}

/// Normalized transverse Gaussian packet: envelope exp(−|r−center|²/width²)
/// along `polarization`, transformed, projected and normalized.
pub fn gaussian_packet(
    n: usize,
    spacing: f64,
    origin: [f64; 3],
    center: [f64; 3],
    width: f64,
    polarization: [Complex64; 3],
) -> Result<MomentumWavepacket, WavepacketError> {
    if !(width > 0.0) {
        return Err(WavepacketError::InvalidGrid("width must be positive"));
    }
    let field = VectorFieldGrid::from_fn(n, spacing, origin, |r| {
        let d2 =
            (r[0] - center[0]).powi(2) + (r[1] - center[1]).powi(2) + (r[2] - center[2]).powi(2);
        let env = (-d2 / (width * width)).exp();
        [
            polarization[0] * env,
            polarization[1] * env,
            polarization[2] * env,
        ]
    })?;
    normalize(&project_transverse(&to_momentum(&field)))
}
