use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use quasiparabolic::cli::{load_config, run, Mode, RunConfig};

#[derive(Parser)]
#[command(name = "quasiparabolic", version, about = "Composition operators on H²(ℍ) as finite matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    /// Run configuration (flat `key = value` file).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory; overrides `output_dir`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write SVG scatter plots.
    #[arg(long)]
    svg: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Cluster set and essential range of the symbol at infinity.
    Cluster(Common),
    /// Expansion plan and assembled matrix.
    Expand(Common),
    /// Predicted essential spectrum against the finite section.
    Spectrum(Common),
    /// Series against the quadrature oracle.
    Compare(Common),
    /// Acceptance suite with a pass/fail table.
    Selftest(Common),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mode, common) = match cli.command {
        Command::Cluster(c) => (Mode::Cluster, c),
        Command::Expand(c) => (Mode::Expand, c),
        Command::Spectrum(c) => (Mode::Spectrum, c),
        Command::Compare(c) => (Mode::Compare, c),
        Command::Selftest(c) => (Mode::Selftest, c),
    };
    let mut cfg = match &common.config {
        Some(path) => match load_config(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(e.exit_code() as u8);
            }
        },
        None if mode == Mode::Selftest => RunConfig::default(),
        None => {
            eprintln!("error: --config is required for this subcommand");
            return ExitCode::from(2);
        }
    };
    cfg.mode = mode;
    if let Some(out) = common.out {
        cfg.output_dir = out;
    }
    cfg.emit_svg |= common.svg;
    match run(&cfg) {
        Ok(outcome) => {
            for line in &outcome.summary {
                println!("{line}");
            }
            for path in &outcome.artifacts {
                println!("wrote {}", path.display());
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
