//! `grtwist`: load structures from JSON, run one check or construction,
//! print a report.
//!
//! Exit status: 0 when the check passes, 1 when it fails, 2 for input that
//! cannot be read or does not describe a valid structure.

mod commands;
mod demo;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "grtwist", version, about = "Exact verifier for twists of group-graded algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(clap::Args, Clone, Debug)]
pub struct Options {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Where constructions write their result.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Seed for randomized suites.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Include wall-clock timings in reports.
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Group axioms of a finite multiplication table.
    CheckGroup { group: PathBuf },
    /// Associativity and unit axioms of a graded algebra.
    CheckAlgebra { algebra: PathBuf },
    /// Action axioms of a graded module.
    CheckModule { module: PathBuf },
    /// Invertibility and the twisting condition.
    CheckTwist { twist: PathBuf, algebra: PathBuf },
    /// Builds the twisted algebra.
    TwistAlgebra { twist: PathBuf, algebra: PathBuf },
    /// Builds the twisted module over the twisted algebra.
    TwistModule { twist: PathBuf, module: PathBuf },
    /// Checks a φ-family.
    CheckPhi { phi: PathBuf },
    /// Recovers a twisting system from a φ-family.
    TwistFromPhi { phi: PathBuf },
    /// Internal Hom of two modules as an equalizer, with its basis.
    HomSpace { source: PathBuf, target: PathBuf },
    /// The endomorphism algebra of the regular module.
    Gamma { algebra: PathBuf },
    /// Verifies the isomorphism between an algebra and its endomorphism algebra.
    VerifyEndo { algebra: PathBuf },
    /// Shift identities for internal Homs.
    ShiftProps {
        source: PathBuf,
        target: PathBuf,
        /// Shift degree; every element when omitted (finite groups only).
        #[arg(long)]
        degree: Option<i64>,
    },
    /// Equivalence data of the twist functor on the shifts of the algebra.
    ZmForward {
        twist: PathBuf,
        algebra: PathBuf,
        /// d-window `lo,hi`, needed over Z.
        #[arg(long, value_parser = commands::parse_window)]
        window: Option<(i64, i64)>,
    },
    /// φ-family on endomorphism algebras induced by equivalence data.
    GammaTwist { equivalence: PathBuf },
    /// Twist of the source algebra recovered from equivalence data.
    Backward { equivalence: PathBuf },
    /// Bundled walkthroughs.
    Demo {
        #[arg(value_enum)]
        name: demo::Demo,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.opts.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let code = match commands::run(cli.command, &cli.opts) {
        Ok(out) => output::emit(&out, &cli.opts),
        Err(e) => output::emit_error(&e, &cli.opts),
    };
    ExitCode::from(code)
}
