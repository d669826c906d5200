//! Acceptance suite. One test per criterion; each prints a PASS line with
//! the measured numbers once its assertions hold (visible under
//! `cargo test --test acceptance -- --nocapture`).

#![allow(clippy::assertions_on_constants)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use acausal_core::correlations::{
    coincidence_probability, two_photon_stats, CoincidenceAmplitudes, TwoPhotonState,
};
use acausal_core::spectral::{decompose, SampledSignal};
use acausal_core::transmission_line::{
    action_displaced_regulated, beta, dalembert_evolve, decay_fit, sweep_log_probability,
    ChargeProfile, LineSpec, QuadratureSpec, SampledProfile,
};
use acausal_core::units::{
    fine_structure, ohms_to_gaussian_s_per_cm, vacuum_impedance, Constants, UnitSystem,
    R_VAC_GAUSSIAN_S_PER_CM,
};
use acausal_core::wavepacket::{
    from_momentum, gaussian_packet, mean_energy, mean_energy_momentum, overlap, overlap_position,
    to_momentum, transition_probability, VectorFieldGrid,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn y_pol() -> [Complex64; 3] {
    [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]
}

#[test]
fn criterion_01_beta_reproduction() {
    let r50 = ohms_to_gaussian_s_per_cm(50.0).unwrap();
    let b = beta(1, r50);
    // beta() itself cross-checks the 4α(R/R_vac) form to 1e-12
    let rel = (b - 0.004).abs() / 0.004;
    assert!(rel < 0.05, "β(1, 50Ω) = {b} is {rel:.3} from 0.004");
    assert!((b - 0.00387).abs() < 5e-5);
    println!("ACCEPTANCE 1 PASS: β(N=1, 50Ω) = {b:.6} within 5% of the quoted 0.004");
}

#[test]
fn criterion_02_decay_law_end_to_end() {
    let started = std::time::Instant::now();
    let line = LineSpec::from_impedance_ohms(50.0).unwrap();
    let quad = QuadratureSpec::default();
    let a = 1.0;
    let bs: Vec<f64> = (0..20)
        .map(|i| a * 10f64.powf(2.0 + 2.0 * i as f64 / 19.0))
        .collect();
    let mut rels = Vec::new();
    for n_e in 1..=3u32 {
        let profile = ChargeProfile::gaussian(n_e, a).unwrap();
        let samples = sweep_log_probability(&profile, &line, &quad, &bs).unwrap();
        let fit = decay_fit(&samples).unwrap();
        let expected = beta(n_e, line.r_line);
        let rel = (fit.beta_fit - expected).abs() / expected;
        assert!(
            rel < 0.02,
            "N = {n_e}: fitted β {} vs {expected} (rel {rel:.4})",
            fit.beta_fit
        );
        rels.push(rel);
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 60, "sweep took {elapsed:?}");
    println!(
        "ACCEPTANCE 2 PASS: decay-fit slopes within 2% of β·N² for N = 1,2,3 \
         (rel errs {rels:?}, {elapsed:?})"
    );
}

#[test]
fn criterion_03_regulator_invariance() {
    let line = LineSpec::from_impedance_ohms(50.0).unwrap();
    let profile = ChargeProfile::gaussian(1, 1.0).unwrap();
    let quad = QuadratureSpec::default();
    let b = 50.0;
    let lambda = 1e4;
    let s1 = action_displaced_regulated(&profile, b, &line, lambda, &quad)
        .unwrap()
        .action;
    let s2 = action_displaced_regulated(&profile, b, &line, 1e3 * lambda, &quad)
        .unwrap()
        .action;
    let rel = (s1 - s2).abs() / s1.abs();
    assert!(rel < 1e-9, "Λ → 10³Λ changed the action by {rel:e}");
    println!("ACCEPTANCE 3 PASS: unreduced action invariant under Λ → 10³Λ (rel {rel:.2e})");
}

#[test]
fn criterion_04_vacuum_impedance_constants() {
    let g = vacuum_impedance(UnitSystem::Gaussian);
    let rel_g = (g.value - 419.169004390336).abs() / 419.169004390336;
    assert!(rel_g < 1e-12, "Gaussian R_vac off by {rel_g:e}");

    let si = vacuum_impedance(UnitSystem::Si);
    let rel_si = (si.value - 376.730313461771).abs() / 376.730313461771;
    assert!(rel_si < 1e-12, "SI R_vac off by {rel_si:e}");

    assert_eq!(vacuum_impedance(UnitSystem::Natural).value, 1.0);
    println!(
        "ACCEPTANCE 4 PASS: R_vac = {:.12} ps/cm, {:.12} Ω to 12 significant digits",
        g.value, si.value
    );
}

#[test]
fn criterion_05_parseval_hundred_random_fields() {
    let mut rng = ChaCha8Rng::seed_from_u64(16161616);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let field = VectorFieldGrid::from_fn(16, 0.5, [-4.0, -4.0, -4.0], |_| {
            [
                c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
                c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
                c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
            ]
        })
        .unwrap();
        let e_pos = mean_energy(&field);
        let e_mom = mean_energy_momentum(&to_momentum(&field));
        worst = worst.max((e_pos - e_mom).abs() / e_pos);
    }
    assert!(worst < 1e-12, "worst Parseval deviation {worst:e}");
    println!("ACCEPTANCE 5 PASS: energy routes agree on 100 random 16³ fields (worst {worst:.2e})");
}

#[test]
fn criterion_06_overlap_route_equivalence() {
    let started = std::time::Instant::now();
    let l_box = 10.0;
    let half = l_box / 2.0;
    let mut diffs = Vec::new();
    for n in [8usize, 16, 24] {
        let spacing = l_box / n as f64;
        let origin = [-half, -half, -half];
        let psi_a = gaussian_packet(n, spacing, origin, [0.0; 3], 1.0, y_pol()).unwrap();
        let psi_b = gaussian_packet(n, spacing, origin, [0.0; 3], 1.4, y_pol()).unwrap();
        let mom = overlap(&psi_b, &psi_a).unwrap();
        let pos = overlap_position(&from_momentum(&psi_b), &from_momentum(&psi_a)).unwrap();
        diffs.push(((pos - mom).norm(), mom.norm()));
    }
    assert!(
        diffs[0].0 > diffs[1].0 && diffs[1].0 > diffs[2].0,
        "|pos − mom| not monotone over N ∈ {{8,16,24}}: {diffs:?}"
    );
    let rel_final = diffs[2].0 / diffs[2].1;
    assert!(
        rel_final < 0.05,
        "route difference at N = 24: {rel_final:.4}"
    );
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 300, "position sums took {elapsed:?}");
    println!(
        "ACCEPTANCE 6 PASS: |overlap_position − overlap| = {:.4} → {:.4} → {:.4}, \
         {:.2}% at N = 24 ({elapsed:?})",
        diffs[0].0,
        diffs[1].0,
        diffs[2].0,
        100.0 * rel_final
    );
}

#[test]
fn criterion_07_spacelike_transition_vs_classical_causality() {
    // quantum side: disjoint-support packets at time zero keep a finite
    // transition probability
    let n = 16usize;
    let l_box = 12.0;
    let spacing = l_box / n as f64;
    let origin = [-6.0, -6.0, -6.0];
    let psi_i = gaussian_packet(n, spacing, origin, [-2.0, 0.0, 0.0], 1.0, y_pol()).unwrap();
    let psi_f = gaussian_packet(n, spacing, origin, [2.0, 0.0, 0.0], 1.0, y_pol()).unwrap();
    let p = transition_probability(&psi_f, &psi_i).unwrap();
    assert!(p > 1e-12, "space-like transition probability {p:e}");

    // classical side: the d'Alembert front is strict
    let line = LineSpec::from_impedance_ohms(50.0).unwrap();
    let grid_n = 512;
    let dz = 0.5;
    let z0 = -(grid_n as f64) * dz / 2.0;
    let support = 20.0;
    let v: Vec<f64> = (0..grid_n)
        .map(|i| {
            let z = z0 + i as f64 * dz;
            if z.abs() < support {
                (-(z / 5.0).powi(2)).exp() - (-(support / 5.0f64).powi(2)).exp()
            } else {
                0.0
            }
        })
        .collect();
    let profile = SampledProfile::new(z0, dz, v).unwrap();
    let travel = 60.0;
    let evolved = dalembert_evolve(&profile, travel / line.u, &line);
    let mut beyond_front = 0.0f64;
    for i in 0..grid_n {
        let z = evolved.z_at(i);
        if z.abs() > support + travel + dz {
            beyond_front = beyond_front.max(evolved.v[i].abs());
        }
    }
    assert!(
        beyond_front < 1e-12,
        "classical signal leaked past the front: {beyond_front:e}"
    );
    println!(
        "ACCEPTANCE 7 PASS: P(space-like) = {p:.3e} > 0 while the classical line \
         shows |v| ≤ {beyond_front:.1e} beyond the u·t front"
    );
}

#[test]
fn criterion_08_spectral_reconstruction() {
    // 100 random signals
    let mut rng = ChaCha8Rng::seed_from_u64(88);
    let m = 64;
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let samples: Vec<f64> = (0..m).map(|_| rng.gen::<f64>() - 0.5).collect();
        let sig = SampledSignal::from_real(&samples, 0.25, 0.0).unwrap();
        let dec = decompose(&sig).unwrap();
        let scale = samples.iter().fold(1e-30f64, |acc, &x| acc.max(x.abs()));
        for n in 0..m {
            let recon = dec.plus.samples()[n] + dec.minus.samples()[n];
            worst = worst.max((recon - sig.samples()[n]).norm() / scale);
        }
    }
    assert!(worst < 1e-12, "worst reconstruction error {worst:e}");

    // single-mode analytic cases
    let dt = 0.5;
    let w0 = 2.0 * std::f64::consts::PI * 5.0 / (m as f64 * dt);
    let cos_sig = SampledSignal::from_real(
        &(0..m)
            .map(|n| (w0 * n as f64 * dt).cos())
            .collect::<Vec<_>>(),
        dt,
        0.0,
    )
    .unwrap();
    let sin_sig = SampledSignal::from_real(
        &(0..m)
            .map(|n| (w0 * n as f64 * dt).sin())
            .collect::<Vec<_>>(),
        dt,
        0.0,
    )
    .unwrap();
    let dc = decompose(&cos_sig).unwrap();
    let ds = decompose(&sin_sig).unwrap();
    let mut mode_err = 0.0f64;
    for (n, t) in cos_sig.times().enumerate() {
        let e_cos = 0.5 * Complex64::from_polar(1.0, -w0 * t);
        let e_sin = Complex64::new(0.0, 0.5) * Complex64::from_polar(1.0, -w0 * t);
        mode_err = mode_err
            .max((dc.plus.samples()[n] - e_cos).norm())
            .max((ds.plus.samples()[n] - e_sin).norm());
    }
    assert!(
        mode_err < 1e-12,
        "single-mode decomposition error {mode_err:e}"
    );
    println!(
        "ACCEPTANCE 8 PASS: φ₊+φ₋ = φ on 100 random signals (worst {worst:.2e}); \
         cos/sin modes exact to {mode_err:.2e}"
    );
}

#[test]
fn criterion_09_spooky_identity_and_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(5555);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let draw = |rng: &mut ChaCha8Rng| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
        let state = match TwoPhotonState::normalized(draw(&mut rng), draw(&mut rng), draw(&mut rng))
        {
            Ok(s) => s,
            Err(_) => continue,
        };
        let stats = two_photon_stats(&state);
        worst = worst.max((2.0 * stats.mean_n1 - stats.mean_n1_sq - stats.correlation).abs());
    }
    assert!(worst < 1e-12, "spooky identity violated by {worst:e}");

    // brute-force enumeration of the four possibilities on the fixtures:
    // amplitudes grouped by distinguishable outcome, probabilities added
    let enumerate = |amps: &CoincidenceAmplitudes| -> f64 {
        let groups: [&[Complex64]; 3] = [&[amps.a11], &[amps.a22], &[amps.a12, amps.a21]];
        groups
            .iter()
            .map(|g| g.iter().sum::<Complex64>().norm_sqr())
            .sum()
    };
    let a = c(0.3, 0.4);
    let zero = c(0.0, 0.0);
    let fixtures = [
        CoincidenceAmplitudes {
            a11: zero,
            a22: zero,
            a12: a,
            a21: a,
        },
        CoincidenceAmplitudes {
            a11: zero,
            a22: zero,
            a12: a,
            a21: -a,
        },
        CoincidenceAmplitudes {
            a11: zero,
            a22: zero,
            a12: zero,
            a21: zero,
        },
        CoincidenceAmplitudes {
            a11: c(1.0, 0.0),
            a22: c(0.5, -0.5),
            a12: c(0.2, 0.1),
            a21: c(-0.3, 0.2),
        },
    ];
    for amps in &fixtures {
        let direct = coincidence_probability(amps);
        let enumerated = enumerate(amps);
        assert!(
            (direct - enumerated).abs() <= 1e-14 * direct.max(1.0),
            "enumeration mismatch: {direct} vs {enumerated}"
        );
    }
    println!(
        "ACCEPTANCE 9 PASS: 2⟨N₁⟩−⟨N₁²⟩ = C on 1000 random states (worst {worst:.2e}); \
         coincidence rule matches four-possibility enumeration"
    );
}

#[test]
fn criterion_10_qualitative_claims_covered_by_property_suites() {
    // the macroscopic-acausality discussion has no numbers to reproduce;
    // its checkable content is exactly the invariants asserted elsewhere:
    // finite space-like transition probability (criterion 7), off-cone
    // propagator support, and the spooky identity (criterion 9). Verify the
    // ingredients are in place rather than pretending to a measurement.
    let alpha = fine_structure(&Constants::gaussian()).unwrap();
    assert!(alpha > 0.0);
    let r50 = ohms_to_gaussian_s_per_cm(50.0).unwrap();
    assert!(beta(1, r50) > 0.0);
    assert!(R_VAC_GAUSSIAN_S_PER_CM > 0.0);
    println!(
        "ACCEPTANCE 10 PASS: qualitative macroscopic-acausality claims are covered \
         by the property suites (criteria 7 and 9), no numeric reproduction applies"
    );
}
