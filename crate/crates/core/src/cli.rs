//! Command-line front end: energy sweeps and wavefunction dumps.

use std::ffi::OsString;
use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::barriers::{Barrier, ScatteringConfig};
use crate::parallel::Execution;
use crate::sweep::{run_sweep, PointProblem, SweepRecord, SweepSpec};
use crate::wavefunctions::{current, lw_wave, tanh_wave, WaveSample};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "kgscatter",
    version,
    about = "Klein-Gordon reflection and transmission for step, tanh and Lambert-W barriers",
    args_conflicts_with_subcommands = true,
    allow_negative_numbers = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,
    #[command(flatten)]
    pub sweep: SweepArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample the exact wavefunction and its current on a grid of positions.
    Wavefunction(WaveArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BarrierKind {
    Step,
    Tanh,
    Lambertw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WaveBarrier {
    Tanh,
    Lambertw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Barrier shape (required for sweeps).
    #[arg(long, value_enum)]
    pub barrier: Option<BarrierKind>,
    /// Barrier height.
    #[arg(long = "V0", default_value_t = 3.0)]
    pub height: f64,
    /// Particle mass.
    #[arg(long = "m", default_value_t = 1.0)]
    pub mass: f64,
    /// Tanh smoothness.
    #[arg(long, default_value_t = 0.5)]
    pub b: f64,
    /// Lambert-W smoothness.
    #[arg(long, default_value_t = 0.15)]
    pub sigma: f64,
    #[arg(long, default_value_t = 1.05)]
    pub emin: f64,
    #[arg(long, default_value_t = 6.0)]
    pub emax: f64,
    /// Number of grid energies.
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u32).range(1..))]
    pub steps: u32,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Check every point against direct integration.
    #[arg(long)]
    pub oracle: bool,
    /// Oracle tolerance on |ΔR| and |ΔT|.
    #[arg(long, default_value_t = 1e-4)]
    pub tol: f64,
    /// Treat singular energies as failures.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct WaveArgs {
    #[arg(long, value_enum)]
    pub barrier: WaveBarrier,
    #[arg(long = "E", default_value_t = 5.0)]
    pub energy: f64,
    #[arg(long = "V0", default_value_t = 3.0)]
    pub height: f64,
    #[arg(long = "m", default_value_t = 1.0)]
    pub mass: f64,
    #[arg(long, default_value_t = 0.5)]
    pub b: f64,
    #[arg(long, default_value_t = 0.15)]
    pub sigma: f64,
    #[arg(long, default_value_t = -10.0)]
    pub xmin: f64,
    #[arg(long, default_value_t = 10.0)]
    pub xmax: f64,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u32).range(1..))]
    pub points: u32,
    /// Weight of the first solution, as `re,im`.
    #[arg(long, default_value = "1,0", value_parser = parse_complex)]
    pub c1: Complex64,
    /// Weight of the second solution, as `re,im`.
    #[arg(long, default_value = "0,0", value_parser = parse_complex)]
    pub c2: Complex64,
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let (re, im) = s.split_once(',').unwrap_or((s, "0"));
    let parse = |v: &str| {
        v.trim()
            .parse::<f64>()
            .map_err(|e| format!("invalid complex component {v:?}: {e}"))
    };
    Ok(Complex64::new(parse(re)?, parse(im)?))
}

/// Fixed float format: 12 significant digits, lowercase exponent.
fn fmt_float(v: f64) -> String {
    format!("{v:.11e}")
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let result = match cli.command {
        Some(Command::Wavefunction(ref args)) => run_wavefunction(args, out, err),
        None => run_sweep_command(&cli.sweep, out, err),
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(err, "kgscatter: output error: {e}");
        EXIT_NUMERICAL
    })
}

fn usage_error(err: &mut dyn Write, message: &str) -> io::Result<i32> {
    writeln!(err, "error: {message}")?;
    writeln!(err, "\nFor more information, try '--help'.")?;
    Ok(EXIT_USAGE)
}

fn run_sweep_command(args: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    let Some(kind) = args.barrier else {
        return usage_error(err, "the following required arguments were not provided: --barrier <BARRIER>");
    };
    let barrier = match kind {
        BarrierKind::Step => Barrier::Step,
        BarrierKind::Tanh => Barrier::Tanh { b: args.b },
        BarrierKind::Lambertw => Barrier::LambertW { sigma: args.sigma },
    };
    if let Err(e) = ScatteringConfig::new(args.emin, args.mass, args.height, barrier) {
        return usage_error(err, &e.to_string());
    }
    if !(args.emax.is_finite() && args.emax >= args.emin) {
        return usage_error(err, "--emax must not be below --emin");
    }
    if args.oracle && !(args.tol.is_finite() && args.tol > 0.0) {
        return usage_error(err, "--tol must be positive");
    }
    let spec = SweepSpec {
        barrier,
        mass: args.mass,
        height: args.height,
        emin: args.emin,
        emax: args.emax,
        steps: args.steps as usize,
        oracle_tol: args.oracle.then_some(args.tol),
    };
    let points = match run_sweep(&spec, Execution::Parallel) {
        Ok(points) => points,
        Err(e) => return usage_error(err, &e.to_string()),
    };

    let records: Vec<&SweepRecord> = points.iter().map(|p| &p.record).collect();
    match args.format {
        Format::Csv => {
            writeln!(out, "E,R,T,region,flags")?;
            for r in &records {
                let opt = |v: Option<f64>| v.map(fmt_float).unwrap_or_default();
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    fmt_float(r.energy),
                    opt(r.reflection),
                    opt(r.transmission),
                    r.region,
                    r.flags
                )?;
            }
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &records)?;
            writeln!(out)?;
        }
    }

    let mut singular = 0;
    let mut oracle_failures = 0;
    let mut numerical = 0;
    for p in &points {
        match &p.problem {
            None => {}
            Some(PointProblem::Singular) => {
                singular += 1;
                writeln!(err, "kgscatter: closed form singular at E = {}", p.record.energy)?;
            }
            Some(PointProblem::Oracle(msg)) => {
                oracle_failures += 1;
                writeln!(err, "kgscatter: oracle check failed: {msg}")?;
            }
            Some(PointProblem::Numerical(msg)) => {
                numerical += 1;
                writeln!(err, "kgscatter: numerical failure at E = {}: {msg}", p.record.energy)?;
            }
        }
    }
    if args.oracle {
        let worst = points
            .iter()
            .filter_map(|p| p.oracle_deviation)
            .fold(0.0_f64, f64::max);
        writeln!(
            err,
            "kgscatter: oracle max deviation {worst:.3e} over {} points (tol {:e}), {oracle_failures} failed",
            points.len(),
            args.tol
        )?;
    }
    Ok(if numerical > 0 {
        EXIT_NUMERICAL
    } else if oracle_failures > 0 || (args.strict && singular > 0) {
        EXIT_CHECK_FAILED
    } else {
        EXIT_OK
    })
}

fn run_wavefunction(args: &WaveArgs, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    if !(args.xmin.is_finite() && args.xmax.is_finite() && args.xmin <= args.xmax) {
        return usage_error(err, "--xmin must not exceed --xmax");
    }
    let barrier = match args.barrier {
        WaveBarrier::Tanh => Barrier::Tanh { b: args.b },
        WaveBarrier::Lambertw => Barrier::LambertW { sigma: args.sigma },
    };
    if let Err(e) = ScatteringConfig::new(args.energy, args.mass, args.height, barrier) {
        return usage_error(err, &e.to_string());
    }
    let n = args.points as usize;
    let xs: Vec<f64> = if n == 1 {
        vec![args.xmin]
    } else {
        let width = args.xmax - args.xmin;
        (0..n)
            .map(|i| if i == n - 1 { args.xmax } else { args.xmin + i as f64 * width / (n - 1) as f64 })
            .collect()
    };
    let samples = Execution::Parallel.map(&xs, |&x| match barrier {
        Barrier::Tanh { b } => {
            tanh_wave(args.energy, args.mass, args.height, b, args.c1, args.c2, x)
        }
        Barrier::LambertW { sigma } => {
            lw_wave(args.energy, args.mass, args.height, sigma, args.c1, args.c2, x)
        }
        Barrier::Step => unreachable!("step has no wavefunction subcommand"),
    });
    let mut good: Vec<WaveSample> = Vec::with_capacity(n);
    for (x, s) in xs.iter().zip(samples) {
        match s {
            Ok(s) => good.push(s),
            Err(e) => {
                writeln!(err, "kgscatter: numerical failure at x = {x}: {e}")?;
                return Ok(EXIT_NUMERICAL);
            }
        }
    }

    writeln!(out, "x,phi_re,phi_im,density,current")?;
    let mut j_min = f64::INFINITY;
    let mut j_max = f64::NEG_INFINITY;
    for s in &good {
        let j = current(s);
        j_min = j_min.min(j);
        j_max = j_max.max(j);
        writeln!(
            out,
            "{},{},{},{},{}",
            fmt_float(s.x),
            fmt_float(s.phi.re),
            fmt_float(s.phi.im),
            fmt_float(s.density()),
            fmt_float(j)
        )?;
    }
    let spread = j_max - j_min;
    let scale = j_min.abs().max(j_max.abs());
    let relative = if scale > 0.0 { spread / scale } else { 0.0 };
    writeln!(
        err,
        "kgscatter: current in [{}, {}], relative spread {relative:.3e}",
        fmt_float(j_min),
        fmt_float(j_max)
    )?;
    Ok(EXIT_OK)
}
