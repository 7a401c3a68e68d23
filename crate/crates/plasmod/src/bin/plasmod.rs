//! Thin command-line wrapper over the library's sweep commands.
//!
//! Exit codes: 0 success, 2 config error, 3 numerical singularity,
//! 4 theorem-hypothesis violation.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use plasmod::cli::{
    cmd_blowup_scan, cmd_heat_profile, cmd_shell_modes, cmd_sphere_resonance, OutputFormat,
    StructureConfig, SweepResult,
};
use plasmod::Error;

#[derive(Parser)]
#[command(
    name = "plasmod",
    version,
    about = "Quasi-static plasmonics and photothermal sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sphere energy across a frequency grid for a Drude particle
    SphereResonance(RunArgs),
    /// Resonant mode table of a concentric nanoshell
    ShellModes(RunArgs),
    /// Steady-state temperature profile of a heated sphere
    HeatProfile(RunArgs),
    /// tau-energy blow-up scan at a resonant frequency
    BlowupScan(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// JSON configuration file
    #[arg(long)]
    config: PathBuf,
    /// Output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> OutputFormat {
        match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        }
    }
}

fn load_config(path: &PathBuf) -> Result<StructureConfig, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {}", path.display(), e)))?;
    StructureConfig::from_json(&text)
}

fn emit(result: &SweepResult, args: &RunArgs) -> std::io::Result<()> {
    let rendered = result.render(args.format.into());
    match &args.out {
        Some(path) => fs::write(path, rendered),
        None => std::io::stdout().write_all(rendered.as_bytes()),
    }
}

fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::Config(_) | Error::InvalidInput(_) => "config",
        Error::HypothesisViolated { .. } => "hypothesis_violated",
        Error::ResonantSingularity
        | Error::SingularMatrix { .. }
        | Error::ExactResonanceSingularity => "singularity",
        _ => "error",
    }
}

type Runner = fn(&StructureConfig) -> Result<SweepResult, Error>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (args, runner): (&RunArgs, Runner) = match &cli.command {
        Command::SphereResonance(a) => (a, cmd_sphere_resonance),
        Command::ShellModes(a) => (a, cmd_shell_modes),
        Command::HeatProfile(a) => (a, cmd_heat_profile),
        Command::BlowupScan(a) => (a, cmd_blowup_scan),
    };
    let result = load_config(&args.config).and_then(|cfg| runner(&cfg));
    match result {
        Ok(sweep) => {
            if let Err(e) = emit(&sweep, args) {
                eprintln!("{{\"error\":\"io\",\"message\":\"{}\"}}", e);
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            let record = serde_json::json!({
                "error": error_kind(&err),
                "message": err.to_string(),
            });
            eprintln!("{}", record);
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
