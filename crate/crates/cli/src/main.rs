//! `acausal` — command-line front end for the acausal-QED numerics.
//!
//! Exit codes: 0 on success, 2 on usage/configuration errors, 1 when a
//! numerical operation fails (the failing operation is named on stderr).
//! All CSV output is deterministic: identical inputs produce byte-identical
//! files, floats carry 17 significant digits, LF line endings.

// NaN-rejecting comparisons, as in the core crate.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use acausal_core::correlations::{
    coincidence_probability, interference_amplitudes_to_state, two_photon_stats,
    CoincidenceAmplitudes,
};
use acausal_core::propagator::{offcone_im, oncone_re_mollified, SpacetimePoint};
use acausal_core::spectral::{decompose, SampledSignal};
use acausal_core::transmission_line::{
    beta, dalembert_evolve, line_params, sweep_log_probability, ChargeProfile, LineSpec,
    QuadratureSpec, SampledProfile,
};
use acausal_core::units::{ohms_to_gaussian_s_per_cm, vacuum_impedance, Constants, UnitSystem};
use acausal_core::wavepacket::{
    from_momentum, gaussian_packet, overlap, overlap_position, MomentumWavepacket,
};

mod scenario;

#[derive(Parser)]
#[command(
    name = "acausal",
    version,
    about = "Acausal quantum-electrodynamics numerics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print physical constants as key=value lines
    Constants {
        /// Unit system: gaussian, si, or natural
        #[arg(long, default_value = "gaussian")]
        system: String,
    },
    /// Evaluate the vacuum propagator at separation (R, cT), CSV to stdout
    Propagator {
        /// Spatial separation R in cm
        #[arg(long)]
        r: f64,
        /// Time separation cT in cm
        #[arg(long, allow_hyphen_values = true)]
        ct: f64,
        /// Mollifier width for the on-cone part, cm
        #[arg(long)]
        sigma: Option<f64>,
    },
    /// Split a sampled signal into positive/negative-frequency parts
    Decompose {
        /// Input CSV with columns t,re,im
        #[arg(long = "in")]
        input: PathBuf,
        /// Output CSV with columns t,re_plus,im_plus,re_minus,im_minus
        #[arg(long)]
        out: PathBuf,
    },
    /// Transition amplitude between two wavepackets from a JSON scenario
    Overlap {
        /// Scenario JSON (two gaussian packets, grid size, spacing)
        #[arg(long)]
        config: PathBuf,
        /// Output CSV with columns route,re,im,probability
        #[arg(long)]
        out: PathBuf,
    },
    /// Transmission-line calculations
    #[command(subcommand)]
    Tline(TlineCommand),
    /// Two-photon coincidence statistics
    Coincidence(CoincidenceArgs),
}

#[derive(Subcommand)]
enum TlineCommand {
    /// Decay exponent β = 4α(R/R_vac)N²
    Beta {
        /// Number of electrons N
        #[arg(long)]
        n: u32,
        /// Line impedance in Ω
        #[arg(long)]
        r_ohms: f64,
    },
    /// Sweep the superluminal transition probability P(b)
    Sweep {
        /// Number of electrons N
        #[arg(long)]
        n: u32,
        /// Line impedance in Ω
        #[arg(long)]
        r_ohms: f64,
        /// Charge-density spread a in cm
        #[arg(long)]
        a: f64,
        /// Smallest displacement b in cm
        #[arg(long)]
        b_min: f64,
        /// Largest displacement b in cm
        #[arg(long)]
        b_max: f64,
        /// Number of log-spaced sweep points
        #[arg(long)]
        points: usize,
        /// Output CSV with columns b,log_p,p,beta_running
        #[arg(long)]
        out: PathBuf,
        /// Cap on worker threads (default: all cores)
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Classical d'Alembert evolution of a sampled voltage profile
    Classical {
        /// Input CSV with columns z,v (uniform z)
        #[arg(long)]
        profile: PathBuf,
        /// Evolution time in seconds
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        /// Line capacitance per length (Gaussian convention)
        #[arg(long, default_value_t = 1.0)]
        eps: f64,
        /// Line inductance per length (Gaussian convention)
        #[arg(long, default_value_t = 1.0)]
        mu: f64,
    },
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true, subcommand_negates_reqs = true)]
struct CoincidenceArgs {
    #[command(subcommand)]
    command: Option<CoincidenceCommand>,
    /// Amplitude for both photons from source 1, as re,im
    #[arg(long, required = true, allow_hyphen_values = true)]
    a11: Option<String>,
    /// Amplitude for both photons from source 2, as re,im
    #[arg(long, required = true, allow_hyphen_values = true)]
    a22: Option<String>,
    /// Direct assignment amplitude, as re,im
    #[arg(long, required = true, allow_hyphen_values = true)]
    a12: Option<String>,
    /// Exchange assignment amplitude, as re,im
    #[arg(long, required = true, allow_hyphen_values = true)]
    a21: Option<String>,
}

#[derive(Subcommand)]
enum CoincidenceCommand {
    /// Intensity-interferometry fringes for two point sources (illustrative
    /// plane-wave path phases, not a detector model)
    Fringes {
        /// Maximum detector baseline in m
        #[arg(long)]
        baseline: f64,
        /// Light wavelength in m
        #[arg(long)]
        wavelength: f64,
        /// Angular separation of the sources in rad
        #[arg(long)]
        separation: f64,
        /// Number of baseline samples
        #[arg(long)]
        points: usize,
        /// Output CSV with columns baseline_m,p,c
        #[arg(long)]
        out: PathBuf,
    },
}

enum CliError {
    Usage(String),
    Numerical(String),
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
    fn numerical(op: &str, err: impl std::fmt::Display) -> Self {
        CliError::Numerical(format!("{op}: {err}"))
    }
}

/// 17 significant digits; loses nothing on a double round trip.
fn f17(x: f64) -> String {
    format!("{x:.16e}")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Constants { system } => cmd_constants(&system),
        Command::Propagator { r, ct, sigma } => cmd_propagator(r, ct, sigma),
        Command::Decompose { input, out } => cmd_decompose(&input, &out),
        Command::Overlap { config, out } => cmd_overlap(&config, &out),
        Command::Tline(t) => match t {
            TlineCommand::Beta { n, r_ohms } => cmd_tline_beta(n, r_ohms),
            TlineCommand::Sweep {
                n,
                r_ohms,
                a,
                b_min,
                b_max,
                points,
                out,
                threads,
            } => cmd_tline_sweep(n, r_ohms, a, b_min, b_max, points, &out, threads),
            TlineCommand::Classical {
                profile,
                t,
                eps,
                mu,
            } => cmd_tline_classical(&profile, t, eps, mu),
        },
        Command::Coincidence(args) => match args.command {
            Some(CoincidenceCommand::Fringes {
                baseline,
                wavelength,
                separation,
                points,
                out,
            }) => cmd_fringes(baseline, wavelength, separation, points, &out),
            None => cmd_coincidence(args),
        },
    }
}

fn cmd_constants(system: &str) -> Result<(), CliError> {
    let sys = match system {
        "gaussian" => UnitSystem::Gaussian,
        "si" => UnitSystem::Si,
        "natural" => UnitSystem::Natural,
        other => {
            return Err(CliError::usage(format!(
                "unknown unit system '{other}' (expected gaussian, si or natural)"
            )))
        }
    };
    let k = Constants::for_system(sys);
    let imp = vacuum_impedance(sys);
    let (c_unit, hbar_unit, e_unit, r_unit) = match sys {
        UnitSystem::Gaussian => ("cm_per_s", "erg_s", "esu", "ps_per_cm"),
        UnitSystem::Si => ("m_per_s", "j_s", "coulomb", "ohm"),
        UnitSystem::Natural => ("natural", "natural", "natural", "natural"),
    };
    println!("system={}", sys.label());
    println!("c_{}={}", c_unit, f17(k.c));
    println!("hbar_{}={}", hbar_unit, f17(k.hbar));
    println!("e_charge_{}={}", e_unit, f17(k.e_charge));
    println!("r_vac_{}={}", r_unit, f17(imp.value));
    println!("alpha={}", f17(k.alpha));
    println!("inverse_alpha={}", f17(1.0 / k.alpha));
    Ok(())
}

fn cmd_propagator(r: f64, ct: f64, sigma: Option<f64>) -> Result<(), CliError> {
    let point = SpacetimePoint::new(r, ct)
        .map_err(|e| CliError::usage(format!("invalid separation: {e}")))?;
    let off = offcone_im(&point).map_err(|e| CliError::numerical("propagator offcone_im", e))?;
    let on = sigma
        .map(|s| {
            oncone_re_mollified(&point, s)
                .map_err(|e| CliError::numerical("propagator oncone_re_mollified", e))
        })
        .transpose()?;
    println!("r_cm,ct_cm,offcone_im_per_cm2,oncone_re_mollified");
    println!(
        "{},{},{},{}",
        f17(r),
        f17(ct),
        f17(off),
        on.map(f17).unwrap_or_default()
    );
    Ok(())
}

fn read_csv_columns(path: &PathBuf, expected: &[&str]) -> Result<Vec<Vec<f64>>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| CliError::usage(format!("{} is empty", path.display())))?;
    let names: Vec<&str> = header.split(',').map(str::trim).collect();
    if names != expected {
        return Err(CliError::usage(format!(
            "{} must have header {}, got {header}",
            path.display(),
            expected.join(",")
        )));
    }
    let mut cols = vec![Vec::new(); expected.len()];
    for (lineno, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != expected.len() {
            return Err(CliError::usage(format!(
                "{} line {}: expected {} fields",
                path.display(),
                lineno + 2,
                expected.len()
            )));
        }
        for (col, field) in cols.iter_mut().zip(&fields) {
            let v: f64 = field.trim().parse().map_err(|_| {
                CliError::usage(format!(
                    "{} line {}: bad float '{field}'",
                    path.display(),
                    lineno + 2
                ))
            })?;
            col.push(v);
        }
    }
    Ok(cols)
}

fn uniform_spacing(ts: &[f64], what: &str) -> Result<f64, CliError> {
    if ts.len() < 2 {
        return Err(CliError::usage(format!("{what}: need at least 2 rows")));
    }
    let dt = ts[1] - ts[0];
    if !(dt > 0.0) {
        return Err(CliError::usage(format!("{what}: grid must be increasing")));
    }
    for w in ts.windows(2) {
        if ((w[1] - w[0]) - dt).abs() > 1e-9 * dt {
            return Err(CliError::usage(format!("{what}: grid must be uniform")));
        }
    }
    Ok(dt)
}

fn cmd_decompose(input: &PathBuf, out: &PathBuf) -> Result<(), CliError> {
    let cols = read_csv_columns(input, &["t", "re", "im"])?;
    let dt = uniform_spacing(&cols[0], "signal time column")?;
    let samples: Vec<Complex64> = cols[1]
        .iter()
        .zip(&cols[2])
        .map(|(&re, &im)| Complex64::new(re, im))
        .collect();
    let signal = SampledSignal::new(samples, dt, cols[0][0])
        .map_err(|e| CliError::usage(format!("invalid signal: {e}")))?;
    let dec = decompose(&signal).map_err(|e| CliError::numerical("decompose", e))?;

    let mut csv = String::from("t,re_plus,im_plus,re_minus,im_minus\n");
    for (n, t) in signal.times().enumerate() {
        let p = dec.plus.samples()[n];
        let m = dec.minus.samples()[n];
        let _ = writeln!(
            csv,
            "{},{},{},{},{}",
            f17(t),
            f17(p.re),
            f17(p.im),
            f17(m.re),
            f17(m.im)
        );
    }
    fs::write(out, csv)
        .map_err(|e| CliError::usage(format!("cannot write {}: {e}", out.display())))?;
    Ok(())
}

fn cmd_overlap(config: &PathBuf, out: &PathBuf) -> Result<(), CliError> {
    let text = fs::read_to_string(config)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", config.display())))?;
    let scenario: scenario::OverlapScenario = serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("bad scenario {}: {e}", config.display())))?;

    let build = |p: &scenario::PacketSpec| -> Result<MomentumWavepacket, CliError> {
        match p {
            scenario::PacketSpec::Gaussian { .. } => gaussian_packet(
                scenario.grid_n,
                scenario.spacing_cm,
                scenario.origin(),
                p.center_cm(),
                p.width_cm(),
                p.polarization(),
            )
            .map_err(|e| CliError::numerical("overlap packet construction", e)),
        }
    };
    let psi_i = build(&scenario.initial)?;
    let psi_f = build(&scenario.r#final)?;

    let mom = overlap(&psi_f, &psi_i).map_err(|e| CliError::numerical("overlap", e))?;
    let pos = overlap_position(&from_momentum(&psi_f), &from_momentum(&psi_i))
        .map_err(|e| CliError::numerical("overlap_position", e))?;

    let mut csv = String::from("route,re,im,probability\n");
    let _ = writeln!(
        csv,
        "momentum,{},{},{}",
        f17(mom.re),
        f17(mom.im),
        f17(mom.norm_sqr())
    );
    let _ = writeln!(
        csv,
        "position,{},{},{}",
        f17(pos.re),
        f17(pos.im),
        f17(pos.norm_sqr())
    );
    fs::write(out, csv)
        .map_err(|e| CliError::usage(format!("cannot write {}: {e}", out.display())))?;
    Ok(())
}

fn cmd_tline_beta(n: u32, r_ohms: f64) -> Result<(), CliError> {
    if !(r_ohms > 0.0) {
        return Err(CliError::usage("impedance must be positive"));
    }
    let r_line = ohms_to_gaussian_s_per_cm(r_ohms)
        .map_err(|e| CliError::usage(format!("bad impedance: {e}")))?;
    println!("beta={}", f17(beta(n, r_line)));
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_tline_sweep(
    n: u32,
    r_ohms: f64,
    a: f64,
    b_min: f64,
    b_max: f64,
    points: usize,
    out: &PathBuf,
    threads: Option<usize>,
) -> Result<(), CliError> {
    if !(b_min > 0.0) || b_max < b_min {
        return Err(CliError::usage(
            "BadSweep: need 0 < b_min and b_max >= b_min",
        ));
    }
    if points < 2 {
        return Err(CliError::usage("BadSweep: need at least 2 points"));
    }
    if !(a > 0.0) {
        return Err(CliError::usage("charge spread a must be positive"));
    }
    let line = LineSpec::from_impedance_ohms(r_ohms)
        .map_err(|e| CliError::usage(format!("bad line: {e}")))?;
    let profile =
        ChargeProfile::gaussian(n, a).map_err(|e| CliError::usage(format!("bad profile: {e}")))?;
    let quad = QuadratureSpec::default();

    let bs: Vec<f64> = (0..points)
        .map(|i| {
            let t = i as f64 / (points - 1) as f64;
            b_min * (b_max / b_min).powf(t)
        })
        .collect();

    let sweep = || sweep_log_probability(&profile, &line, &quad, &bs);
    let samples = match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| CliError::usage(format!("cannot build thread pool: {e}")))?
            .install(sweep),
        None => sweep(),
    }
    .map_err(|e| CliError::numerical("tline sweep action_displaced", e))?;

    let mut csv = String::from("b,log_p,p,beta_running\n");
    for (i, &(b, log_p)) in samples.iter().enumerate() {
        let beta_running = if i == 0 {
            String::new()
        } else {
            let (b0, lp0) = samples[i - 1];
            f17(-(log_p - lp0) / (b.ln() - b0.ln()))
        };
        let _ = writeln!(
            csv,
            "{},{},{},{}",
            f17(b),
            f17(log_p),
            f17(log_p.exp()),
            beta_running
        );
    }
    fs::write(out, csv)
        .map_err(|e| CliError::usage(format!("cannot write {}: {e}", out.display())))?;
    Ok(())
}

fn cmd_tline_classical(profile: &PathBuf, t: f64, eps: f64, mu: f64) -> Result<(), CliError> {
    let cols = read_csv_columns(profile, &["z", "v"])?;
    let dz = uniform_spacing(&cols[0], "profile z column")?;
    let line = line_params(eps, mu).map_err(|e| CliError::usage(format!("bad line: {e}")))?;
    let v0 = SampledProfile::new(cols[0][0], dz, cols[1].clone())
        .map_err(|e| CliError::usage(format!("bad profile: {e}")))?;
    let evolved = dalembert_evolve(&v0, t, &line);
    println!("z,v");
    for (i, v) in evolved.v.iter().enumerate() {
        println!("{},{}", f17(evolved.z_at(i)), f17(*v));
    }
    Ok(())
}

fn parse_complex(label: &str, s: &str) -> Result<Complex64, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::usage(format!(
            "{label} must be re,im — got '{s}'"
        )));
    }
    let re: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| CliError::usage(format!("{label}: bad float '{}'", parts[0])))?;
    let im: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| CliError::usage(format!("{label}: bad float '{}'", parts[1])))?;
    Ok(Complex64::new(re, im))
}

fn cmd_coincidence(args: CoincidenceArgs) -> Result<(), CliError> {
    let amps = CoincidenceAmplitudes {
        a11: parse_complex("--a11", &args.a11.expect("required by clap"))?,
        a22: parse_complex("--a22", &args.a22.expect("required by clap"))?,
        a12: parse_complex("--a12", &args.a12.expect("required by clap"))?,
        a21: parse_complex("--a21", &args.a21.expect("required by clap"))?,
    };
    let p = coincidence_probability(&amps);
    println!("p_coincidence={}", f17(p));
    match interference_amplitudes_to_state(&amps) {
        Ok(state) => {
            let stats = two_photon_stats(&state);
            println!("c={}", f17(stats.correlation));
            println!("mean_n1={}", f17(stats.mean_n1));
            println!("mean_n1_sq={}", f17(stats.mean_n1_sq));
        }
        Err(e) => return Err(CliError::numerical("coincidence statistics", e)),
    }
    Ok(())
}

fn cmd_fringes(
    baseline: f64,
    wavelength: f64,
    separation: f64,
    points: usize,
    out: &PathBuf,
) -> Result<(), CliError> {
    if !(baseline > 0.0) || !(wavelength > 0.0) || !(separation > 0.0) {
        return Err(CliError::usage(
            "baseline, wavelength and separation must be positive",
        ));
    }
    if points < 2 {
        return Err(CliError::usage("need at least 2 points"));
    }
    let mut csv = String::from("baseline_m,p,c\n");
    for i in 0..points {
        let b = baseline * i as f64 / (points - 1) as f64;
        // plane-wave path-difference phase between the two assignments
        let phase = 2.0 * std::f64::consts::PI * b * separation / wavelength;
        let amps = CoincidenceAmplitudes {
            a11: Complex64::new(1.0, 0.0),
            a22: Complex64::new(1.0, 0.0),
            a12: Complex64::from_polar(1.0, 0.5 * phase),
            a21: Complex64::from_polar(1.0, -0.5 * phase),
        };
        let p = coincidence_probability(&amps);
        let state = interference_amplitudes_to_state(&amps)
            .map_err(|e| CliError::numerical("fringes statistics", e))?;
        let stats = two_photon_stats(&state);
        let _ = writeln!(csv, "{},{},{}", f17(b), f17(p), f17(stats.correlation));
    }
    fs::write(out, csv)
        .map_err(|e| CliError::usage(format!("cannot write {}: {e}", out.display())))?;
    Ok(())
}
