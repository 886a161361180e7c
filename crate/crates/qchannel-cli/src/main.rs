//! Command-line front end for the channel laboratory.
//!
//! Data (records or the verify report) goes to `--out` or stdout; the human
//! summary goes to stderr so piped output stays clean. Exit codes: 0 on
//! success / all checks passed, 1 when a verification check fails, 2 on
//! usage, configuration or I/O errors.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qchannel::harness::{
    parse_config_file, run, ExperimentConfig, FileConfig, Mode, OutputFormat, RunOutput,
};
use qchannel::Error;

#[derive(Parser)]
#[command(
    name = "qchannel",
    version,
    about = "Two-qubit channel coupled to a qubit environment: entanglement distribution and teleportation experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monte Carlo sweep over Haar-random interactions (default 10000 samples)
    Cue(SampleArgs),
    /// Deterministic 11x11 scan of the damping family against its closed forms
    PqScan(CommonArgs),
    /// Teleportation experiment: simulated fidelity vs formulas (default 200 samples)
    Teleport(SampleArgs),
    /// Partially entangled initial states: within-bin spread of the singlet fraction
    Partial(PartialArgs),
    /// Full verification suite; exit status reports the result (default 1000 samples)
    Verify(SampleArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Master seed for all random streams
    #[arg(long)]
    seed: Option<u64>,
    /// Output file for records / report (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// key=value config file; command-line flags override it
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct SampleArgs {
    /// Number of samples
    #[arg(long)]
    samples: Option<u64>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct PartialArgs {
    /// Number of samples
    #[arg(long)]
    samples: Option<u64>,
    /// Initial-state angle in radians: cos(theta)|00> + sin(theta)|11>,
    /// strictly below pi/4
    #[arg(long)]
    theta: Option<f64>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Jsonl,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Jsonl => OutputFormat::JsonLines,
        }
    }
}

struct ResolvedArgs {
    samples: Option<u64>,
    theta: Option<f64>,
    common: CommonArgs,
}

impl Command {
    fn mode(&self) -> Mode {
        match self {
            Command::Cue(_) => Mode::Cue,
            Command::PqScan(_) => Mode::PqScan,
            Command::Teleport(_) => Mode::Teleport,
            Command::Partial(_) => Mode::Partial,
            Command::Verify(_) => Mode::Verify,
        }
    }

    fn into_args(self) -> ResolvedArgs {
        match self {
            Command::Cue(a) | Command::Teleport(a) | Command::Verify(a) => ResolvedArgs {
                samples: a.samples,
                theta: None,
                common: a.common,
            },
            Command::PqScan(common) => ResolvedArgs {
                samples: None,
                theta: None,
                common,
            },
            Command::Partial(a) => ResolvedArgs {
                samples: a.samples,
                theta: a.theta,
                common: a.common,
            },
        }
    }
}

/// Precedence: defaults, then config file, then flags.
fn build_config(mode: Mode, args: ResolvedArgs) -> Result<ExperimentConfig, Error> {
    let file = match &args.common.config {
        Some(path) => parse_config_file(path)?,
        None => FileConfig::default(),
    };
    let mut config = ExperimentConfig::new(mode);
    if let Some(samples) = args.samples.or(file.samples) {
        config.sample_count = samples;
    }
    if let Some(seed) = args.common.seed.or(file.seed) {
        config.master_seed = seed;
    }
    if let Some(theta) = args.theta.or(file.theta) {
        config.initial_theta = theta;
    }
    if let Some(format) = args.common.format.map(OutputFormat::from).or(file.format) {
        config.output_format = format;
    }
    config.output_path = args.common.out.or(file.out);
    config.validate()?;
    Ok(config)
}

fn emit(config: &ExperimentConfig, output: &RunOutput) -> Result<(), Error> {
    match &config.output_path {
        Some(path) => {
            let file = File::create(path).map_err(|e| {
                Error::Io(std::io::Error::new(
                    e.kind(),
                    format!("cannot write {}: {e}", path.display()),
                ))
            })?;
            let mut writer = BufWriter::new(file);
            output.write_data(config.output_format, &mut writer)?;
            writer.flush()?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut writer = BufWriter::new(stdout.lock());
            output.write_data(config.output_format, &mut writer)?;
            writer.flush()?;
        }
    }
    Ok(())
}

fn run_cli(command: Command) -> Result<bool, Error> {
    let mode = command.mode();
    let config = build_config(mode, command.into_args())?;
    let output = run(&config)?;
    emit(&config, &output)?;
    for line in output.summary_lines() {
        eprintln!("{line}");
    }
    Ok(output.all_checks_passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run_cli(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                // Usage, configuration and I/O problems exit 2; anything else
                // is a failed run.
                Error::Io(_) | Error::Config(_) | Error::InvalidParameter(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
