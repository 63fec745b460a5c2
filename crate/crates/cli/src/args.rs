use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "tfa",
    version,
    about = "Structural identifiability of linear state-space structures via transfer-function invariants"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Derive invariants, build the test system and classify the structure.
    Analyze(AnalyzeArgs),
    /// Print the labeled invariant vector.
    Invariants(InvariantsArgs),
    /// Reduced Gröbner bases of the invariants under chosen orders.
    Groebner(GroebnerArgs),
    /// Simulate the output at a parameter point.
    Simulate(SimulateArgs),
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// Model file, or `@s0` / `@s1` for a bundled structure.
    pub file: String,

    /// Input set: auto, full, uncontrolled, none, or signals (impulse,
    /// step, ramp, exp:RATE), comma-separated per input channel.
    #[arg(long, default_value = "auto")]
    pub inputs: String,
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    /// Reduction-step budget per Gröbner basis (overrides TFA_STEP_BUDGET).
    #[arg(long)]
    pub step_budget: Option<u64>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub model: ModelArgs,

    /// Seed for the random specializations; 0 draws one from entropy.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    /// Monomial order for classification, e.g. `grevlex` or
    /// `lex:k01,k12,...`.
    #[arg(long, default_value = "grevlex")]
    pub order: String,

    /// Write the JSON report here (`-` for stdout).
    #[arg(long)]
    pub json: Option<PathBuf>,

    /// Enumerate solutions and confirm them by simulation.
    #[arg(long)]
    pub validate: bool,

    /// Largest solution count to enumerate with --validate.
    #[arg(long, default_value_t = 8)]
    pub max_solution_degree: u64,

    /// Also compute bases of the invariant ideal under `--order` and this
    /// order, and compare them.
    #[arg(long)]
    pub compare_order: Option<String>,

    /// Record per-stage wall-clock timings in the report.
    #[arg(long)]
    pub timings: bool,

    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Args)]
pub struct InvariantsArgs {
    #[command(flatten)]
    pub model: ModelArgs,

    /// Write the invariants as JSON here (`-` for stdout).
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GroebnerArgs {
    #[command(flatten)]
    pub model: ModelArgs,

    /// Order for the basis, e.g. `lex:k21,k32,k01,k12,k23,x20`.
    #[arg(long, default_value = "grevlex")]
    pub order: String,

    /// Second order; prints ideal equality and shared basis elements.
    #[arg(long)]
    pub compare_order: Option<String>,

    /// Write the bases as JSON here (`-` for stdout).
    #[arg(long)]
    pub json: Option<PathBuf>,

    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Model file, or `@s0` / `@s1` for a bundled structure.
    pub file: String,

    /// Parameter values `name=value,...` (rationals such as `3/2`).
    #[arg(long)]
    pub theta: String,

    /// Signal on every input channel: none, impulse, step, ramp, exp:RATE.
    #[arg(long, default_value = "none")]
    pub input: String,

    /// End of the time grid.
    #[arg(long, default_value_t = 10.0)]
    pub t_end: f64,

    /// Number of grid points.
    #[arg(long, default_value_t = 201)]
    pub points: usize,

    /// Write the CSV here instead of stdout.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}
