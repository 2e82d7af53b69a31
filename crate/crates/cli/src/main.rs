//! `fgl-cobord`: build and export truncated Lazard presentations, run the
//! identity checkers, multiply line-bundle classes, and decompose classes on
//! projective spaces. Output is JSON (default) or a plain-text table.

mod checks;
mod commands;
mod context;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use context::Failure;

#[derive(Parser, Debug)]
#[command(name = "fgl-cobord", version, about = "Exact formal group law and line-bundle cobordism calculator")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Truncation N of the Lazard ring. Presentation cost grows quickly past 8.
    #[arg(long, short = 'N', global = true, default_value_t = 6)]
    pub max_weight: usize,
    /// Integral mode refuses projective-space classes without an integrality certificate.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Integral)]
    pub mode: ModeArg,
    #[arg(long, global = true, value_enum, default_value_t = Emit::Json)]
    pub emit: Emit,
    /// Write the result here instead of standard output.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Integral,
    Rational,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Emit {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Export the truncated Lazard presentation.
    Lazard,
    /// Run identity checks; exit status 1 if any fails.
    Verify(VerifyArgs),
    /// Product e_i • e_j in the line-bundle module.
    Lbmul(LbmulArgs),
    /// Projective bundle decomposition over the point.
    Wpbf {
        #[command(subcommand)]
        action: WpbfAction,
    },
    /// Apply a ring map out of the Lazard ring and print the resulting table.
    Specialize {
        /// `additive`, `multiplicative`, or a path to a morphism JSON file.
        morphism: String,
    },
    /// Projective-space classes p_0, ..., p_depth with integrality certificates.
    Mishchenko {
        #[arg(long)]
        depth: Option<usize>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    InverseIdentity,
    DpcSplit,
    FglRoundtrip,
    PsiBiorthogonality,
    WpbfRoundtrip,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub check: Check,
    /// Degree through which series identities are checked.
    #[arg(long)]
    pub cap: Option<usize>,
    /// Caps (n, m) of P^n x P^m.
    #[arg(long, num_args = 2, value_names = ["N", "M"])]
    pub caps: Option<Vec<usize>>,
    /// Largest index checked in the line-bundle module.
    #[arg(long)]
    pub depth: Option<usize>,
}

#[derive(Args, Debug)]
pub struct LbmulArgs {
    pub i: usize,
    pub j: usize,
    /// `additive`, `multiplicative`, or a path to a morphism JSON file.
    #[arg(long)]
    pub specialize: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum WpbfAction {
    /// (α_0, ..., α_n) -> sum t^i α_i.
    Compose {
        #[arg(long)]
        n: usize,
        /// JSON array of coefficients, or an object {"n", "alphas"}; `-` reads standard input.
        alphas: String,
    },
    /// sum t^i α_i -> (α_0, ..., α_n).
    Decompose {
        #[arg(long)]
        n: usize,
        /// A series in `t` such as "a11*t^2 + t", or series JSON; `-` reads standard input.
        element: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Refused(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
