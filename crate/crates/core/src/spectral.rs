//! Positive/negative-frequency decomposition of sampled fields and the
//! quantum-optics intensity functional.
//!
//! Frequency convention: a field is written as an integral over modes
//! e^{−iωt}, so the positive-frequency part φ₊ destroys quanta and the
//! negative-frequency part φ₋ creates them. In terms of the standard forward
//! DFT (bin k multiplies e^{+2πikn/M} in reconstruction) the physics-positive
//! frequencies are the bins M/2 < k < M and the physics-negative ones are
//! 0 < k < M/2. The ω = 0 and Nyquist bins are split half-and-half between
//! the two parts, which keeps the masks exactly complementary and the
//! reconstruction φ₊ + φ₋ = φ exact.

use num_complex::Complex64;
use rustfft::FftPlanner;
use thiserror::Error;

use crate::units::SPEED_OF_LIGHT_CM_PER_S;

#[derive(Debug, Error, PartialEq)]
pub enum SpectralError {
    #[error("signal must have at least 2 samples, got {0}")]
    SignalTooShort(usize),
    #[error("sample spacing must be positive, got {0}")]
    InvalidSpacing(f64),
    #[error("window of {window} s is shorter than 2·dt = {min} s")]
    WindowTooShort { window: f64, min: f64 },
    #[error("regulator epsilon must be positive, got {0}")]
    InvalidRegulator(f64),
    #[error("correlation kernel is not square: {len} values for m = {m}")]
    KernelShapeMismatch { len: usize, m: usize },
}

/// Uniformly sampled complex time series.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    samples: Vec<Complex64>,
    dt: f64,
    t0: f64,
}

impl SampledSignal {
    pub fn new(samples: Vec<Complex64>, dt: f64, t0: f64) -> Result<Self, SpectralError> {
        if samples.len() < 2 {
            return Err(SpectralError::SignalTooShort(samples.len()));
        }
        if !(dt > 0.0) {
            return Err(SpectralError::InvalidSpacing(dt));
        }
        Ok(SampledSignal { samples, dt, t0 })
    }

    pub fn from_real(samples: &[f64], dt: f64, t0: f64) -> Result<Self, SpectralError> {
        Self::new(
            samples.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
            dt,
            t0,
        )
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }
    pub fn dt(&self) -> f64 {
        self.dt
    }
    pub fn t0(&self) -> f64 {
        self.t0
    }
    pub fn len(&self) -> usize {
        self.samples.len()
    }
    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Sample times t0 + n·dt.
    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.samples.len()).map(move |n| self.t0 + n as f64 * self.dt)
    }
}

/// Positive- and negative-frequency parts of a signal, on the same grid.
#[derive(Debug, Clone)]
pub struct FrequencyDecomposition {
    pub plus: SampledSignal,
    pub minus: SampledSignal,
}

fn fft_in_place(buf: &mut [Complex64], inverse: bool) {
    let mut planner = FftPlanner::new();
    let fft = if inverse {
        planner.plan_fft_inverse(buf.len())
    } else {
        planner.plan_fft_forward(buf.len())
    };
    fft.process(buf);
    if inverse {
        let scale = 1.0 / buf.len() as f64;
        for v in buf.iter_mut() {
            *v *= scale;
        }
    }
}

/// Forward DFT of the samples (unnormalized, standard sign convention).
pub fn spectrum(signal: &SampledSignal) -> Vec<Complex64> {
    let mut buf = signal.samples.to_vec();
    fft_in_place(&mut buf, false);
    buf
}

/// Split a signal into positive- and negative-frequency parts by spectral
/// masking. Signals whose length is not a power of two are zero-padded for
/// the transform and the padding is stripped from the output.
pub fn decompose(signal: &SampledSignal) -> Result<FrequencyDecomposition, SpectralError> {
    let m_orig = signal.len();
    let m = m_orig.next_power_of_two();

    let mut buf = signal.samples.clone();
    buf.resize(m, Complex64::new(0.0, 0.0));
    fft_in_place(&mut buf, false);

    let mut plus = vec![Complex64::new(0.0, 0.0); m];
    let mut minus = vec![Complex64::new(0.0, 0.0); m];
    let half = m / 2;
    for (k, &v) in buf.iter().enumerate() {
        if k == 0 || k == half {
            plus[k] = 0.5 * v;
            minus[k] = 0.5 * v;
        } else if k > half {
            plus[k] = v;
        } else {
            minus[k] = v;
        }
    }
    fft_in_place(&mut plus, true);
    fft_in_place(&mut minus, true);
    plus.truncate(m_orig);
    minus.truncate(m_orig);

    Ok(FrequencyDecomposition {
        plus: SampledSignal::new(plus, signal.dt, signal.t0)?,
        minus: SampledSignal::new(minus, signal.dt, signal.t0)?,
    })
}

/// Space-time route to the same decomposition: convolution with the kernel
/// (i/2π)/(τ + iε) for τ in [−tau_window, tau_window], the signal extended
/// periodically. φ₊ samples the field at t+τ and φ₋ at t−τ.
///
/// Each τ-cell carries the exact integral of the kernel across it, and the
/// result converges to [`decompose`] as ε → 0 and the window grows.
pub fn decompose_kernel(
    signal: &SampledSignal,
    epsilon: f64,
    tau_window: f64,
) -> Result<FrequencyDecomposition, SpectralError> {
    if !(epsilon > 0.0) {
        return Err(SpectralError::InvalidRegulator(epsilon));
    }
    let dt = signal.dt;
    if tau_window < 2.0 * dt {
        return Err(SpectralError::WindowTooShort {
            window: tau_window,
            min: 2.0 * dt,
        });
    }
    let m = signal.len() as isize;
    let nw = (tau_window / dt).round() as isize;

    // cell-integrated kernel weight over [τ−dt/2, τ+dt/2]
    let i_over_2pi = Complex64::new(0.0, 1.0 / (2.0 * std::f64::consts::PI));
    let weights: Vec<Complex64> = (-nw..=nw)
        .map(|j| {
            let tau = j as f64 * dt;
            let upper = Complex64::new(tau + 0.5 * dt, epsilon);
            let lower = Complex64::new(tau - 0.5 * dt, epsilon);
            i_over_2pi * (upper.ln() - lower.ln())
        })
        .collect();

    let x = &signal.samples;
    let wrap = |n: isize| -> Complex64 { x[n.rem_euclid(m) as usize] };

    let mut plus = Vec::with_capacity(x.len());
    let mut minus = Vec::with_capacity(x.len());
    for n in 0..m {
        let mut p = Complex64::new(0.0, 0.0);
        let mut q = Complex64::new(0.0, 0.0);
        for (idx, j) in (-nw..=nw).enumerate() {
            let w = weights[idx];
            p += wrap(n + j) * w;
            q += wrap(n - j) * w;
        }
        plus.push(p);
        minus.push(q);
    }

    Ok(FrequencyDecomposition {
        plus: SampledSignal::new(plus, signal.dt, signal.t0)?,
        minus: SampledSignal::new(minus, signal.dt, signal.t0)?,
    })
}

/// Samples of the two-point function ⟨E(t+s₁)E(t+s₂)⟩ on a square grid of
/// delays s_j = (j − (m−1)/2)·ds, j = 0..m.
#[derive(Debug, Clone)]
pub struct CorrelationKernel {
    values: Vec<Complex64>,
    m: usize,
    ds: f64,
}

impl CorrelationKernel {
    /// `values` in row-major order over (s₁, s₂); must be m×m.
    pub fn new(values: Vec<Complex64>, m: usize, ds: f64) -> Result<Self, SpectralError> {
        if values.len() != m * m {
            return Err(SpectralError::KernelShapeMismatch {
                len: values.len(),
                m,
            });
        }
        if !(ds > 0.0) {
            return Err(SpectralError::InvalidSpacing(ds));
        }
        Ok(CorrelationKernel { values, m, ds })
    }

    /// Build from a closure over the physical delays (s₁, s₂).
    pub fn from_fn<F: FnMut(f64, f64) -> Complex64>(
        m: usize,
        ds: f64,
        mut f: F,
    ) -> Result<Self, SpectralError> {
        let offset = (m as f64 - 1.0) / 2.0;
        let mut values = Vec::with_capacity(m * m);
        for j in 0..m {
            let s1 = (j as f64 - offset) * ds;
            for k in 0..m {
                let s2 = (k as f64 - offset) * ds;
                values.push(f(s1, s2));
            }
        }
        CorrelationKernel::new(values, m, ds)
    }

    pub fn m(&self) -> usize {
        self.m
    }
    pub fn ds(&self) -> f64 {
        self.ds
    }
    pub fn delay(&self, j: usize) -> f64 {
        (j as f64 - (self.m as f64 - 1.0) / 2.0) * self.ds
    }
}

/// Intensity functional
/// I = (c/16π³) ΣΣ K(s₁,s₂) ds² / ((s₁−iε)(s₂+iε)), in erg/cm²/s.
///
/// The two-point function is needed on both sides of the observation time:
/// the delays run over past and future alike. For Hermitian kernels the
/// double sum is exactly real; the real part is returned.
pub fn intensity(kernel: &CorrelationKernel, epsilon: f64) -> Result<f64, SpectralError> {
    if !(epsilon > 0.0) {
        return Err(SpectralError::InvalidRegulator(epsilon));
    }
    let m = kernel.m;
    let ds = kernel.ds;
    // 1/(s - iε) for the s₁ axis; the s₂ axis uses its conjugate
    let inv1: Vec<Complex64> = (0..m)
        .map(|j| Complex64::new(1.0, 0.0) / Complex64::new(kernel.delay(j), -epsilon))
        .collect();

    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..m {
        let mut row = Complex64::new(0.0, 0.0);
        for k in 0..m {
            row += kernel.values[j * m + k] * inv1[k].conj();
        }
        sum += inv1[j] * row;
    }
    let scale = SPEED_OF_LIGHT_CM_PER_S * ds * ds / (16.0 * std::f64::consts::PI.powi(3));
    Ok(scale * sum.re)
}
