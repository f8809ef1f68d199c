//! pisotlab: exact analysis of Pisot units from the command line.

use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use pisot_cli::{report, RunConfig};
use pisot_core::{Error, PisotPolynomial};

#[derive(Parser, Debug)]
#[command(
    name = "pisotlab",
    about = "Exact arithmetic for Pisot units: discriminant group, beta-expansions, symbolic representation, toral codings",
    version
)]
struct Cli {
    /// Polynomial, e.g. "x^3-x^2-x-1" or "[1,-1,-1,-1]" (leading coefficient first)
    #[arg(long, global = true)]
    poly: Option<String>,

    /// Working precision in bits for certified numerics
    #[arg(long, global = true, env = "PISOTLAB_PRECISION", default_value_t = 128)]
    precision: u32,

    /// Coefficient height bound for finitary searches
    #[arg(long, global = true, default_value_t = 10)]
    height: u64,

    /// Coefficient height for tail-set extension over ZZ[beta]-translates
    #[arg(long = "ext-height", global = true, default_value_t = 6)]
    ext_height: u64,

    /// Cap on greedy-orbit steps
    #[arg(long = "steps", global = true, default_value_t = 1_000_000)]
    steps: usize,

    /// Output format: text or json
    #[arg(long, global = true, default_value = "text")]
    format: String,

    /// RNG seed for sampled verifications
    #[arg(long, global = true, default_value_t = 0xC0FFEE)]
    seed: u64,

    /// Number of random samples per verification suite
    #[arg(long, global = true, default_value_t = 100)]
    samples: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pisot certificate, trace matrix, discriminant, xi0, group structure
    Analyze,
    /// Beta-expansion of a nonnegative value in QQ(beta)
    Expand {
        /// Value: integer, p/q, "beta", "xi0", or {"num":[..],"den":d}
        value: String,
    },
    /// Enumerate the group with its symbolic tails
    Group,
    /// Finitary classification (criteria plus bounded search)
    Finitary {
        /// Also measure the empirical carry bound over Fin(beta) pairs
        #[arg(long)]
        carry: bool,
    },
    /// Companion matrix, endomorphism A, kernel, semiconjugacy, factorization
    Coding,
    /// Nearest-integer sequence of xi·beta^n, its onset, recognition, limits
    Recurrent {
        /// xi: integer, p/q, "beta", "xi0", or {"num":[..],"den":d}
        xi: String,
        /// How many terms to generate
        n: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::KernelViolation(_)
        | Error::SemiconjugacyViolation(_)
        | Error::FactorizationViolation(_) => 3,
        Error::InternalInconsistency(_) | Error::DeterminantMismatch(_) => 1,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    let poly_text = cli
        .poly
        .as_deref()
        .ok_or_else(|| Error::Parse("--poly is required".into()))?;
    let field = Arc::new(PisotPolynomial::parse(poly_text)?);
    let json = match cli.format.as_str() {
        "json" => true,
        "text" => false,
        other => return Err(Error::Parse(format!("unknown format '{other}'"))),
    };
    let cfg = RunConfig {
        field,
        precision: cli.precision,
        height: cli.height,
        ext_height: cli.ext_height,
        steps: cli.steps,
        json,
        seed: cli.seed,
        samples: cli.samples,
    };
    match cli.command {
        Command::Analyze => report::cmd_analyze(&cfg),
        Command::Expand { value } => report::cmd_expand(&cfg, &value),
        Command::Group => report::cmd_group(&cfg),
        Command::Finitary { carry } => report::cmd_finitary(&cfg, carry),
        Command::Coding => report::cmd_coding(&cfg),
        Command::Recurrent { xi, n } => report::cmd_recurrent(&cfg, &xi, n),
    }
}
