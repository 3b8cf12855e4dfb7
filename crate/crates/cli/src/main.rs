mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use report::{emit, Failure};

/// Exact dualities between finite spaces and function rings, from the command line.
#[derive(Parser, Debug)]
#[command(name = "bcring", version)]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
    /// JSON input file.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Where to write the JSON report; standard output when absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, env = "SPECTRA_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Size cap for exhaustive enumerations.
    #[arg(long, global = true)]
    pub max_size: Option<usize>,
    #[arg(long, global = true)]
    pub epsilon: Option<f64>,
    /// Depth of generated towers.
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Cap on integers factored during root extraction.
    #[arg(long, global = true)]
    pub norm_cap: Option<u64>,
    /// Number of random samples, where a command draws any.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Verb {
    /// List the maximal ideals of a ring.
    RingMspec,
    /// Split a structure-constant algebra into characters.
    RingSplit,
    /// Round trip a map of finite spaces through its function rings.
    DualityRoundtrip,
    /// Check the compactification certificate of a finite space.
    Scc,
    /// Check the Banach* axioms for the canonical norm.
    NormCheck,
    /// Refine a clopen covering of a tower by a level covering.
    ProfiniteRefine,
    /// Certify a step function within epsilon.
    ApproxDensity,
    /// Compute the hermitian real form of an involutive algebra.
    ComplexHermitian,
    /// Check the isomorphism certificates between real forms and complexifications.
    ComplexRoundtrip,
    /// Pull back the maximal ideal (0) of Q(t) to Q[t].
    DemoNonfunctorial,
    /// Find a point in the intersection of two principal open sets.
    DemoNonhausdorff,
    /// Run an acceptance suite, or all of them.
    Suite { name: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = commands::run(&cli);
    let code = match &outcome {
        Ok(out) if out.holds => 0,
        Ok(_) => 1,
        Err(Failure::Schema(_)) => 2,
        Err(Failure::Refusal { .. }) => 3,
    };
    if let Err(e) = emit(&cli, outcome) {
        eprintln!("cannot write report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
