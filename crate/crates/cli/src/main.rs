//! `mosaic`: run transport scenarios and verification suites.

mod config;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mosaic_core::scenarios::solve;
use mosaic_core::verify::{run_suite, SUITES};
use mosaic_core::MosaicError;

use config::{FieldArg, Format, InitialArg, ObserverArg, RunConfig};

const EXIT_FAILED: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_SOLVER: u8 = 3;

#[derive(Parser)]
#[command(name = "mosaic", version, about = "Observer-invariant transport on moving surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a transport problem and write the sampled trajectory.
    Run(RunArgs),
    /// Run a verification suite and print its JSON report.
    Verify {
        /// oracle | identities | scenarios
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(clap::Args)]
struct RunArgs {
    /// JSON RunConfig; flags given on the command line override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// stretching-spheroid | rotating-sphere | helical-spheroid
    #[arg(long)]
    scenario: Option<String>,
    /// material, jaumann, truesdell, upper-convected, lower-convected, upper-lower, ...
    #[arg(long)]
    derivative: Option<String>,
    #[arg(long, value_enum)]
    observer: Option<ObserverArg>,
    /// N1xN2
    #[arg(long)]
    grid: Option<String>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    t_end: Option<f64>,
    #[arg(long, value_enum)]
    field: Option<FieldArg>,
    #[arg(long, value_enum)]
    initial: Option<InitialArg>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Output file; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
}

impl RunArgs {
    fn resolve(self) -> Result<RunConfig, MosaicError> {
        let mut c = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| MosaicError::Config(format!("{}: {e}", path.display())))?;
                RunConfig::from_json(&text)?
            }
            None => RunConfig::default(),
        };
        macro_rules! set {
            ($($f:ident),*) => { $(if let Some(v) = self.$f { c.$f = v; })* };
        }
        set!(scenario, derivative, observer, grid, dt, t_end, field, initial, format, seed);
        if self.output.is_some() {
            c.output = self.output;
        }
        Ok(c)
    }
}

fn is_config_error(e: &MosaicError) -> bool {
    matches!(
        e,
        MosaicError::Config(_)
            | MosaicError::UnsupportedKind { .. }
            | MosaicError::UnknownKind(_)
            | MosaicError::RankMismatch { .. }
            | MosaicError::RankCap(_)
    )
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("mosaic: {msg}");
    ExitCode::from(code)
}

fn configure_threads() -> Result<(), MosaicError> {
    let Ok(v) = std::env::var("MOSAIC_THREADS") else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| MosaicError::Config(format!("MOSAIC_THREADS must be a positive integer, got '{v}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| MosaicError::Config(format!("thread pool: {e}")))
}

fn run(args: RunArgs) -> ExitCode {
    let cfg = match args.resolve() {
        Ok(c) => c,
        Err(e) => return fail(EXIT_CONFIG, e),
    };
    let problem = match cfg.problem() {
        Ok(p) => p,
        Err(e) => return fail(EXIT_CONFIG, e),
    };
    let rows = solve(&problem).and_then(|tr| output::rows(&problem, &tr));
    let rows = match rows {
        Ok(r) => r,
        Err(e) if is_config_error(&e) => return fail(EXIT_CONFIG, e),
        Err(e) => return fail(EXIT_SOLVER, e),
    };
    let header = output::header(problem.field.rank());
    let sink: Box<dyn Write> = match &cfg.output {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => return fail(EXIT_CONFIG, format!("{}: {e}", path.display())),
        },
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let written = match cfg.format {
        Format::Csv => output::write_csv(sink, &header, &rows),
        Format::Json => output::write_json(sink, &cfg, &header, &rows),
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(EXIT_SOLVER, format!("writing output: {e}")),
    }
}

fn verify(suite: &str, seed: u64) -> ExitCode {
    if !SUITES.contains(&suite) {
        return fail(EXIT_CONFIG, format!("unknown suite '{suite}', expected one of {}", SUITES.join(", ")));
    }
    let report = match run_suite(suite, seed) {
        Ok(r) => r,
        Err(e) => return fail(EXIT_CONFIG, e),
    };
    match serde_json::to_string_pretty(&report) {
        Ok(s) => println!("{s}"),
        Err(e) => return fail(EXIT_FAILED, e),
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILED)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        return fail(EXIT_CONFIG, e);
    }
    match cli.command {
        Command::Run(args) => run(args),
        Command::Verify { suite, seed } => verify(&suite, seed),
    }
}
