use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use trojan_cli::{
    render_constants, render_kinematics, render_report, render_sweep, render_verification, sweep,
    Format, GridAxis, SweepConfig,
};
use trojan_core::harmonic::{scaled_field_max, Q_MIN};
use trojan_core::verify::{run_verification, Fault, VerifyOptions};
use trojan_core::{
    kinematics_report, q_of_scaled_field, resonance_report, Convention, ParticleSpec,
    BEST_CONFINED_Q,
};

const EXIT_USAGE: u8 = 2;
const EXIT_VERIFY_FAILED: u8 = 3;
const EXIT_IO: u8 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "trojan",
    version,
    about = "Trojan wavepacket emission rates and drive parameters"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rates, drive and kinematics at one resonance point
    Report(ReportArgs),
    /// Table of shape functions and rates over the stability window
    Sweep(SweepArgs),
    /// Orbital acceleration, beta/gamma and Davies temperature
    Kinematics(KinematicsArgs),
    /// Pinned constants and the particle registry
    Constants(OutputArgs),
    /// Run the oracle suite
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ReportArgs {
    #[arg(long, default_value = "muon")]
    particle: String,
    #[arg(long, default_value_t = 12)]
    n: u32,
    #[arg(long, conflicts_with = "scaled_field")]
    q: Option<f64>,
    #[arg(long)]
    scaled_field: Option<f64>,
    #[arg(long, value_enum, default_value_t = ConventionArg::Calibrated)]
    convention: ConventionArg,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, default_value = "muon")]
    particle: String,
    #[arg(long, default_value_t = 1)]
    n: u32,
    #[arg(long, value_enum, default_value_t = GridArg::Q)]
    grid: GridArg,
    #[arg(long)]
    q_from: Option<f64>,
    #[arg(long)]
    q_to: Option<f64>,
    #[arg(long)]
    scaled_field_from: Option<f64>,
    #[arg(long)]
    scaled_field_to: Option<f64>,
    #[arg(long, default_value_t = 400)]
    points: usize,
    #[arg(long, value_enum, default_value_t = ConventionArg::Calibrated)]
    convention: ConventionArg,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct KinematicsArgs {
    #[arg(long, default_value = "muon")]
    particle: String,
    #[arg(long, default_value_t = 1)]
    n: u32,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Replace every check threshold with this value
    #[arg(long)]
    tolerance: Option<f64>,
    /// Inject a known defect to confirm the suite detects it
    #[arg(long, value_enum)]
    inject_fault: Option<FaultArg>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Csv,
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ConventionArg {
    Calibrated,
    Printed,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GridArg {
    Q,
    ScaledField,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FaultArg {
    DroppedRadical,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
            FormatArg::Text => Format::Text,
        }
    }
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Calibrated => Convention::Calibrated,
            ConventionArg::Printed => Convention::AsPrinted,
        }
    }
}

enum Failure {
    Usage(String),
    Io(String),
    Verification(String),
}

impl From<trojan_core::Error> for Failure {
    fn from(e: trojan_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn format_or(arg: Option<FormatArg>, default: Format) -> Format {
    arg.map(Format::from).unwrap_or(default)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Report(a) => {
            let particle = ParticleSpec::by_name(&a.particle)?;
            let q = match (a.q, a.scaled_field) {
                (Some(q), _) => q,
                (None, Some(sf)) => q_of_scaled_field(sf)?,
                (None, None) => BEST_CONFINED_Q,
            };
            let rates = resonance_report(a.n, q, &particle, a.convention.into())?;
            let kin = kinematics_report(a.n, &particle)?;
            emit(
                &render_report(&rates, &kin, format_or(a.output.format, Format::Text)),
                &a.output.out,
            )
        }
        Command::Sweep(a) => {
            let particle = ParticleSpec::by_name(&a.particle)?;
            let (axis, from, to) = match a.grid {
                GridArg::Q => (
                    GridAxis::Q,
                    a.q_from.unwrap_or(Q_MIN + 1e-4),
                    a.q_to.unwrap_or(1.0),
                ),
                GridArg::ScaledField => (
                    GridAxis::ScaledField,
                    a.scaled_field_from.unwrap_or(0.0),
                    a.scaled_field_to
                        .unwrap_or(scaled_field_max() * (1.0 - 1e-3)),
                ),
            };
            let cfg = SweepConfig {
                particle,
                n: a.n,
                axis,
                from,
                to,
                points: a.points,
                convention: a.convention.into(),
            };
            let rows = sweep(&cfg)?;
            emit(
                &render_sweep(&rows, format_or(a.output.format, Format::Csv)),
                &a.output.out,
            )
        }
        Command::Kinematics(a) => {
            let particle = ParticleSpec::by_name(&a.particle)?;
            let kin = kinematics_report(a.n, &particle)?;
            emit(
                &render_kinematics(&kin, format_or(a.output.format, Format::Text)),
                &a.output.out,
            )
        }
        Command::Constants(o) => emit(&render_constants(format_or(o.format, Format::Text)), &o.out),
        Command::Verify(a) => {
            let opts = VerifyOptions {
                tolerance: a.tolerance,
                fault: a
                    .inject_fault
                    .map(|FaultArg::DroppedRadical| Fault::DroppedRadical),
            };
            let report = run_verification(opts)?;
            emit(
                &render_verification(&report, format_or(a.output.format, Format::Text)),
                &a.output.out,
            )?;
            if report.all_passed() {
                Ok(())
            } else {
                let n = report.failures().count();
                Err(Failure::Verification(format!(
                    "{n} verification check(s) failed"
                )))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_IO)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_VERIFY_FAILED)
        }
    }
}
