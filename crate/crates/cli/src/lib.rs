//! `aqslab` — scriptable analyses of single-qubit arbitrated quantum
//! signature schemes with deterministic seeding and CSV/JSON outputs.
//!
//! The binary surface lives in [`Cli`]; the report schemas the commands
//! emit live in [`report`].

pub mod commands;
pub mod opts;
pub mod report;
pub mod sweep_out;

use clap::{Args, Parser, Subcommand};

/// Exit codes: 0 success/confirmed, 1 property refuted, 2 bad input,
/// 3 I/O failure.
#[derive(Debug)]
pub enum Failure {
    BadInput(String),
    Io(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::BadInput(_) => 2,
            Failure::Io(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::BadInput(m) | Failure::Io(m) => m,
        }
    }
}

/// `Ok(true)` confirms, `Ok(false)` refutes (exit 1).
pub type CmdResult = Result<bool, Failure>;

#[derive(Parser)]
#[command(
    name = "aqslab",
    version,
    about = "Analysis lab for single-qubit arbitrated quantum signature schemes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Check the key-averaged encryption against the depolarizing channel.
    CheckEncryption(CheckEncryptionArgs),
    /// Construct and certify a forgeable message for an assistant (biased
    /// Z2 rotations).
    FindForgeable(FindForgeableArgs),
    /// Classify an assistant against the all-messages-forgeable conditions.
    Classify(ClassifyArgs),
    /// Test whether one attack forges every message of a scheme.
    UniformForgery(UniformForgeryArgs),
    /// Monte-Carlo sweep of attack distance against minimum detection
    /// probability (unbiased Z4 rotations).
    Sweep(SweepArgs),
    /// Sign a message, optionally tamper in transit, and verify.
    DemoSign(DemoSignArgs),
}

#[derive(Args)]
pub struct CheckEncryptionArgs {
    /// Assistant: preset name (wa, t, identity) or four comma-separated
    /// canonical coefficients.
    #[arg(long)]
    pub assistant: String,
    /// Number of sampled states.
    #[arg(long, default_value_t = 1000)]
    pub n: u64,
    /// RNG seed for the state sample.
    #[arg(long)]
    pub seed: u64,
    /// Output path (stdout when omitted).
    #[arg(long)]
    pub out: Option<String>,
    /// Output format (json or csv).
    #[arg(long, default_value = "json")]
    pub format: String,
}

#[derive(Args)]
pub struct FindForgeableArgs {
    #[arg(long)]
    pub assistant: String,
    /// Certification tolerance on per-key phase residuals.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub assistant: String,
    /// Tolerance on the condition residuals.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Certify the classification with random messages per attack.
    #[arg(long, default_value_t = false)]
    pub cross_check: bool,
    /// RNG seed (required with --cross-check).
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<String>,
    #[arg(long, default_value = "json")]
    pub format: String,
}

#[derive(Args)]
pub struct UniformForgeryArgs {
    #[arg(long)]
    pub assistant: String,
    /// Attack: s0..s3 or four comma-separated canonical coefficients.
    #[arg(long)]
    pub attack: String,
    /// Rotation family: z2 or z4.
    #[arg(long, default_value = "z2")]
    pub rotations: String,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Assert the outcome (exists | none); a mismatch exits 1.
    #[arg(long)]
    pub expect: Option<String>,
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub assistant: String,
    /// Rotation family; the sweep is defined over z4 only.
    #[arg(long, default_value = "z4")]
    pub rotations: String,
    /// Number of sampled attacks.
    #[arg(long, default_value_t = 10_000)]
    pub n: u64,
    #[arg(long)]
    pub seed: u64,
    /// Bloch grid as THETAxPHI, e.g. 64x128.
    #[arg(long, default_value = "64x128")]
    pub grid: String,
    /// Refinement tolerance of the per-attack minimizer.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Envelope bin count.
    #[arg(long, default_value_t = 100)]
    pub bins: usize,
    /// Append the three Pauli attacks to the sample set.
    #[arg(long, default_value_t = false)]
    pub include_paulis: bool,
    /// Output directory for sweep.csv and envelope.csv.
    #[arg(long, default_value = ".")]
    pub out: String,
}

#[derive(Args)]
pub struct DemoSignArgs {
    #[arg(long, default_value = "identity")]
    pub assistant: String,
    #[arg(long, default_value = "z2")]
    pub rotations: String,
    /// Rotation key index.
    #[arg(long, default_value_t = 0)]
    pub j: usize,
    /// Encryption key index.
    #[arg(long, default_value_t = 0)]
    pub k: usize,
    /// Message polar angle (radians).
    #[arg(long)]
    pub theta: Option<f64>,
    /// Message azimuth (radians).
    #[arg(long)]
    pub phi: Option<f64>,
    /// Message amplitudes re0,im0,re1,im1 (overrides --theta/--phi).
    #[arg(long)]
    pub amps: Option<String>,
    /// Apply a Pauli to the signature in transit (s0..s3).
    #[arg(long)]
    pub tamper: Option<String>,
    /// Also run the sampled swap-test verdict with this many copies.
    #[arg(long)]
    pub copies: Option<usize>,
    /// RNG seed (required with --copies).
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

/// Dispatches a parsed invocation.
pub fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::CheckEncryption(args) => commands::check_encryption(args),
        Command::FindForgeable(args) => commands::find_forgeable(args),
        Command::Classify(args) => commands::classify(args),
        Command::UniformForgery(args) => commands::uniform_forgery_cmd(args),
        Command::Sweep(args) => commands::sweep(args),
        Command::DemoSign(args) => commands::demo_sign(args),
    }
}
