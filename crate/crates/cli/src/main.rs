//! Command line interface over the curve-branch library. Every subcommand
//! renders the same data as text or JSON; output is deterministic byte for
//! byte. Exit codes: 0 success, 1 domain error (with a machine-readable
//! category in JSON mode), 2 usage error.

mod commands;
mod output;

use clap::{Parser, Subcommand};

use arf_core::FieldSpec;
use output::{emit_error, emit_result};

#[derive(Parser)]
#[command(name = "arf", version, about = "Invariants of curve branches given by power series")]
struct Cli {
    /// Coefficient field: q for the rationals or f\<p\> for a prime field
    #[arg(long, global = true, default_value = "q")]
    field: String,

    /// Working precision of the series arithmetic (at least 8)
    #[arg(long = "prec", global = true, default_value_t = 128)]
    prec: u64,

    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Blow-up step limit
    #[arg(long = "max-steps", global = true, default_value_t = 64)]
    max_steps: u64,

    #[command(subcommand)]
    family: Family,
}

#[derive(Subcommand)]
enum Family {
    /// Numerical semigroups: closure, Arf test, characters
    #[command(subcommand)]
    Semigroup(SemigroupCmd),
    /// Parameterized branches: blow-up resolution and its invariants
    #[command(subcommand)]
    Branch(BranchCmd),
    /// Generated subrings of the power series ring
    #[command(subcommand)]
    Ring(RingCmd),
    /// Character sets: sequences, realizability, stability
    #[command(subcommand)]
    Chars(CharsCmd),
    /// Brute-force cross-checks of the fast algorithms
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand)]
enum SemigroupCmd {
    /// Arf closure and its multiplicity sequence
    Closure {
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<u64>,
    },
    /// Test the Arf property
    IsArf {
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<u64>,
    },
    /// Characters of an Arf semigroup
    Characters {
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<u64>,
    },
}

#[derive(Subcommand)]
enum BranchCmd {
    /// Multiplicity sequence via iterated blow-up
    Multseq { branch: String },
    /// Characters of the branch
    Characters { branch: String },
    /// Minimal embedding dimension
    EmbedDim { branch: String },
    /// Full blow-up trace with recentering data
    BlowupTrace { branch: String },
}

#[derive(Subcommand)]
enum RingCmd {
    /// Achieved orders of the generated ring
    Orders { gens: String },
    /// Arf closure chain of the generated ring
    Closure { gens: String },
    /// Base, base characters and dimension of the closure
    Base { gens: String },
}

#[derive(Subcommand)]
enum CharsCmd {
    /// Multiplicity sequence determined by a character set
    ToMultseq {
        #[arg(value_delimiter = ',')]
        chars: Vec<u64>,
    },
    /// Monomial branch realizing a character set, with verification
    Realize {
        #[arg(value_delimiter = ',')]
        chars: Vec<u64>,
    },
    /// Adjoin a closure member and check the sequence is unchanged
    Stability {
        #[arg(value_delimiter = ',')]
        chars: Vec<u64>,
        #[arg(long)]
        extra: u64,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Compare the blow-up closure with the fixed-point oracle
    ClosureOracle {
        #[arg(long, default_value_t = 15)]
        max_gen: u64,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
    /// Compare leading-point characters with the exhaustive search
    CharactersOracle {
        #[arg(long, default_value_t = 16)]
        max_conductor: u64,
    },
    /// Compare ring orders with the monomial span oracle
    RingOracle {
        gens: String,
        #[arg(long, default_value_t = 4)]
        degree: u64,
    },
    /// List all Arf semigroups up to a conductor bound
    Enumerate {
        #[arg(long, default_value_t = 8)]
        max_conductor: u64,
    },
}

/// Validated run configuration shared by every subcommand.
pub struct Config {
    pub field: FieldSpec,
    pub field_token: String,
    pub precision: u64,
    pub max_steps: u64,
    pub json: bool,
}

fn parse_field(token: &str) -> Result<FieldSpec, String> {
    if token == "q" {
        return Ok(FieldSpec::Rationals);
    }
    if let Some(p) = token.strip_prefix('f') {
        let p: u64 = p
            .parse()
            .map_err(|_| format!("invalid field selector '{token}'"))?;
        return FieldSpec::prime_field(p).map_err(|e| e.to_string());
    }
    Err(format!(
        "invalid field selector '{token}' (expected q or f<p>)"
    ))
}

fn main() {
    let cli = Cli::parse();
    let field = match parse_field(&cli.field) {
        Ok(f) => f,
        Err(message) => {
            eprintln!("error: {message}");
            std::process::exit(2);
        }
    };
    if cli.prec < 8 {
        eprintln!("error: precision must be at least 8");
        std::process::exit(2);
    }
    if cli.max_steps == 0 {
        eprintln!("error: max-steps must be positive");
        std::process::exit(2);
    }
    let config = Config {
        field,
        field_token: cli.field.clone(),
        precision: cli.prec,
        max_steps: cli.max_steps,
        json: cli.json,
    };

    let (command_name, outcome) = match &cli.family {
        Family::Semigroup(cmd) => match cmd {
            SemigroupCmd::Closure { gens } => {
                ("semigroup closure", commands::semigroup_closure(gens))
            }
            SemigroupCmd::IsArf { gens } => ("semigroup is-arf", commands::semigroup_is_arf(gens)),
            SemigroupCmd::Characters { gens } => (
                "semigroup characters",
                commands::semigroup_characters(gens),
            ),
        },
        Family::Branch(cmd) => match cmd {
            BranchCmd::Multseq { branch } => {
                ("branch multseq", commands::branch_multseq(branch, &config))
            }
            BranchCmd::Characters { branch } => (
                "branch characters",
                commands::branch_characters(branch, &config),
            ),
            BranchCmd::EmbedDim { branch } => (
                "branch embed-dim",
                commands::branch_embed_dim(branch, &config),
            ),
            BranchCmd::BlowupTrace { branch } => (
                "branch blowup-trace",
                commands::branch_blowup_trace(branch, &config),
            ),
        },
        Family::Ring(cmd) => match cmd {
            RingCmd::Orders { gens } => ("ring orders", commands::ring_orders(gens, &config)),
            RingCmd::Closure { gens } => ("ring closure", commands::ring_closure(gens, &config)),
            RingCmd::Base { gens } => ("ring base", commands::ring_base_cmd(gens, &config)),
        },
        Family::Chars(cmd) => match cmd {
            CharsCmd::ToMultseq { chars } => {
                ("chars to-multseq", commands::chars_to_multseq(chars))
            }
            CharsCmd::Realize { chars } => {
                ("chars realize", commands::chars_realize(chars, &config))
            }
            CharsCmd::Stability { chars, extra } => {
                ("chars stability", commands::chars_stability(chars, *extra))
            }
        },
        Family::Verify(cmd) => match cmd {
            VerifyCmd::ClosureOracle { max_gen, max_size } => (
                "verify closure-oracle",
                commands::verify_closure_oracle(*max_gen, *max_size),
            ),
            VerifyCmd::CharactersOracle { max_conductor } => (
                "verify characters-oracle",
                commands::verify_characters_oracle(*max_conductor),
            ),
            VerifyCmd::RingOracle { gens, degree } => (
                "verify ring-oracle",
                commands::verify_ring_oracle(gens, *degree, &config),
            ),
            VerifyCmd::Enumerate { max_conductor } => (
                "verify enumerate",
                commands::verify_enumerate(*max_conductor),
            ),
        },
    };

    match outcome {
        Ok(rendered) => {
            emit_result(command_name, &config, &rendered);
        }
        Err(error) => {
            emit_error(command_name, &config, &error);
            std::process::exit(1);
        }
    }
}
