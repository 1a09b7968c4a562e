//! Batch sweeps over the `fracdim` library with CSV / JSON-lines output.
//!
//! Exit-code contract of the binary: 0 when every gate passes, 1 on a
//! numerical gate failure, 2 on a configuration or usage error.

pub mod commands;
pub mod config;
pub mod output;

use clap::{Parser, Subcommand};
use config::{CommonArgs, SweepConfig};

#[derive(Parser, Debug)]
#[command(name = "fracdim", version, about = "Spectral-triple and one-loop sweeps for deformed Dirac operators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Predicted poles z_k and fitted pole reports.
    DimensionSpectrum(CommonArgs),
    /// Tadpole by every applicable method, cross-validated.
    Tadpole(CommonArgs),
    /// Bubble by every applicable method, cross-validated.
    Bubble(CommonArgs),
    /// Partial sums, ln N fits and slope-ratio checks.
    Dixmier(CommonArgs),
    /// Differential, witness and junk-form invariants on the mode lattice.
    TripleCheck(CommonArgs),
    /// Compare the two momentum weightings over a q grid.
    ExponentCompare(CommonArgs),
}

impl Command {
    pub fn args(&self) -> &CommonArgs {
        match self {
            Command::DimensionSpectrum(a)
            | Command::Tadpole(a)
            | Command::Bubble(a)
            | Command::Dixmier(a)
            | Command::TripleCheck(a)
            | Command::ExponentCompare(a) => a,
        }
    }

    pub fn run(&self, cfg: &SweepConfig) -> anyhow::Result<commands::Outcome> {
        match self {
            Command::DimensionSpectrum(_) => commands::dimension_spectrum(cfg),
            Command::Tadpole(_) => commands::tadpole(cfg),
            Command::Bubble(_) => commands::bubble(cfg),
            Command::Dixmier(_) => commands::dixmier(cfg),
            Command::TripleCheck(_) => commands::triple_check(cfg),
            Command::ExponentCompare(_) => commands::exponent_compare(cfg),
        }
    }
}
