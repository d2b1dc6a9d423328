//! Command-line front end: structure verification, curve analysis, Legendre
//! generation, spherical classification and projection plots.

pub mod commands;
pub mod config;
pub mod failure;
pub mod svg;

use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand};

pub use commands::Emitted;
pub use config::{Flags, RunConfig};
pub use failure::{CliResult, Failure};

#[derive(Debug, Parser)]
#[command(name = "pseudocontact", version, about = "Almost contact pseudo-metric 3-manifolds and their curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check structure axioms, compatibility, normality, α/β and the quasi-Sasakian condition.
    VerifyManifold(Flags),
    /// Per-sample Frenet table of a curve (CSV) with a JSON summary.
    AnalyzeCurve(Flags),
    /// Generate a Legendre curve in Q³ from an angle function ψ.
    GenLegendre(Flags),
    /// Classify a Legendre curve (or a closed-form θ profile) as spherical.
    CheckSpherical(Flags),
    /// SVG with the xy, xz and yz projections of a curve.
    Plot(Flags),
}

impl Command {
    pub fn flags(&self) -> &Flags {
        match self {
            Command::VerifyManifold(f)
            | Command::AnalyzeCurve(f)
            | Command::GenLegendre(f)
            | Command::CheckSpherical(f)
            | Command::Plot(f) => f,
        }
    }
}

/// Resolves the configuration and runs the command without writing anything.
pub fn run(cmd: &Command) -> CliResult<(RunConfig, Emitted)> {
    let cfg = RunConfig::resolve(cmd.flags())?;
    let out = match cmd {
        Command::VerifyManifold(_) => commands::verify_manifold(&cfg)?,
        Command::AnalyzeCurve(_) => commands::analyze_curve(&cfg)?,
        Command::GenLegendre(_) => commands::gen_legendre(&cfg)?,
        Command::CheckSpherical(_) => commands::check_spherical(&cfg)?,
        Command::Plot(_) => commands::plot(&cfg)?,
    };
    Ok((cfg, out))
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| Failure::validation(format!("{}: {e}", path.display())))
}

/// Runs the command, writes its outputs and returns the exit code.
pub fn execute(cmd: &Command) -> i32 {
    match run(cmd).and_then(|(cfg, out)| {
        match &cfg.out {
            Some(p) => {
                write_file(p, &out.main)?;
                if let Some(s) = &out.summary {
                    write_file(&p.with_extension("json"), s)?;
                }
            }
            None => {
                std::io::stdout().write_all(out.main.as_bytes())?;
                if let Some(s) = &out.summary {
                    eprint!("{s}");
                }
            }
        }
        for n in &out.notices {
            eprintln!("note: {n}");
        }
        Ok(out.passed)
    }) {
        Ok(true) => 0,
        Ok(false) => {
            eprintln!("verification failed");
            1
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
