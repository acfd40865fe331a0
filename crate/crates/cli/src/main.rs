//! Command-line front end: reads a JSON map document from a file or stdin,
//! runs one analysis, and prints a JSON report on stdout.
//!
//! Exit codes: 0 success, 1 usage error, 2 input or domain error,
//! 3 tolerance violation in `verify`.

mod commands;
mod document;
mod report;

use std::fmt;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use document::{builtin_registry, MapDocument};
use hermap::ToleranceConfig;

#[derive(Debug)]
pub enum CliError {
    /// Malformed JSON or schema violation.
    Parse(String),
    /// Well-formed input describing something invalid.
    Input(String),
    /// Error surfaced from the analysis library.
    Core(hermap::Error),
    Io(std::io::Error),
}

impl CliError {
    fn parse(msg: impl Into<String>) -> Self {
        Self::Parse(msg.into())
    }

    fn input(msg: impl Into<String>) -> Self {
        Self::Input(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Parse(msg) => write!(f, "parse error: {msg}"),
            Self::Input(msg) => write!(f, "invalid input: {msg}"),
            Self::Core(e) => write!(f, "{e}"),
            Self::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e)
    }
}

#[derive(Parser)]
#[command(
    name = "hermap",
    version,
    about = "Analyze Hermitian-preserving maps through their Choi matrices",
    after_help = builtin_help()
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Map document file; stdin when omitted.
    #[arg(long, global = true, value_name = "FILE")]
    input: Option<PathBuf>,

    /// Set eig-zero, PSD-slack, and reconstruction tolerances together.
    #[arg(long, global = true, value_name = "TOL")]
    tol: Option<f64>,

    /// Eigenvalue magnitude treated as zero.
    #[arg(long, global = true, value_name = "TOL")]
    tol_eig: Option<f64>,

    /// Allowed negative eigenvalue magnitude in PSD checks.
    #[arg(long, global = true, value_name = "TOL")]
    tol_psd: Option<f64>,

    /// Max-entry budget for reconstruction identities.
    #[arg(long, global = true, value_name = "TOL")]
    tol_recon: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Choi matrix of the map as a reusable map document.
    Choi,
    /// Spectrum, CP distance, multiplicity, norm bound, CP and Hermiticity verdicts.
    Analyze,
    /// Positive/negative CP parts of the map.
    Jordan,
    /// Best CP approximation in Hilbert-Schmidt norm and its distance.
    Approx,
    /// Weighted Kraus terms from the Choi spectrum.
    Kraus,
    /// CP extension on an auxiliary space of dimension rank(Choi).
    Extend,
    /// Reduced CP extension for a block-diagonal Choi matrix.
    Reduce {
        /// Block sizes as "m1,m2,.../n1,n2,..."; auto-detected when omitted.
        #[arg(long, value_name = "SPEC")]
        partition: Option<String>,
    },
    /// Audit a claimed CP decomposition (c1, c2) of the map.
    Audit {
        /// JSON file with the first (positive) Choi matrix {"re": ..., "im": ...}.
        #[arg(long, value_name = "FILE")]
        c1: PathBuf,
        /// JSON file with the subtracted Choi matrix.
        #[arg(long, value_name = "FILE")]
        c2: PathBuf,
    },
    /// Check extension reconstruction against the Choi action on random inputs.
    Verify {
        /// Number of random inputs.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// RNG seed for reproducible reports.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn builtin_help() -> String {
    let mut s = String::from("Built-in maps for {\"builtin\": {\"name\": ...}}:\n");
    for info in builtin_registry() {
        s.push_str(&format!("  {info}\n"));
    }
    s
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };

    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    let text = read_input(cli)?;
    let doc = MapDocument::parse(&text)?;
    let tol = resolve_tolerances(cli, &doc)?;

    let (value, code) = match &cli.command {
        Command::Choi => commands::choi(&doc, &tol)?,
        Command::Analyze => commands::analyze(&doc, &tol)?,
        Command::Jordan => commands::jordan_split(&doc, &tol)?,
        Command::Approx => commands::approx(&doc, &tol)?,
        Command::Kraus => commands::kraus(&doc, &tol)?,
        Command::Extend => commands::extend(&doc, &tol)?,
        Command::Reduce { partition } => commands::reduce(&doc, &tol, partition.as_deref())?,
        Command::Audit { c1, c2 } => {
            let c1_text = std::fs::read_to_string(c1)?;
            let c2_text = std::fs::read_to_string(c2)?;
            commands::audit(&doc, &tol, &c1_text, &c2_text)?
        }
        Command::Verify { samples, seed } => commands::verify(&doc, &tol, *samples, *seed)?,
    };

    let rendered = serde_json::to_string_pretty(&value).expect("report serializes");
    use std::io::Write;
    if let Err(e) = writeln!(std::io::stdout(), "{rendered}") {
        // a closed pipe downstream is not our error
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            return Err(e.into());
        }
    }
    Ok(code.try_into().expect("small exit codes"))
}

fn read_input(cli: &Cli) -> Result<String, CliError> {
    match &cli.input {
        Some(path) => Ok(std::fs::read_to_string(path)?),
        None => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            Ok(buf)
        }
    }
}

/// Precedence: defaults < document "tol" block < --tol < --tol-eig/--tol-psd/--tol-recon.
fn resolve_tolerances(cli: &Cli, doc: &MapDocument) -> Result<ToleranceConfig, CliError> {
    let mut t = doc.tolerances();
    if let Some(all) = cli.tol {
        t = ToleranceConfig {
            eig_zero: all,
            psd_slack: all,
            recon: all,
        };
    }
    if let Some(v) = cli.tol_eig {
        t.eig_zero = v;
    }
    if let Some(v) = cli.tol_psd {
        t.psd_slack = v;
    }
    if let Some(v) = cli.tol_recon {
        t.recon = v;
    }
    for (name, v) in [
        ("eig_zero", t.eig_zero),
        ("psd_slack", t.psd_slack),
        ("recon", t.recon),
    ] {
        if !v.is_finite() || v < 0.0 {
            return Err(CliError::input(format!(
                "tolerance {name} must be finite and nonnegative, got {v}"
            )));
        }
    }
    Ok(t)
}
