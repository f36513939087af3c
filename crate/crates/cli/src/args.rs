use clap::{Args, Parser, Subcommand, ValueEnum};

use gammaseq_core::Field;

/// Certified evaluation of Γ(x+1)^(1/x), its derivatives, and related
/// sequences, constants and inequality checks.
#[derive(Debug, Parser)]
#[command(name = "gammaseq", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,

    /// Prepend a metadata header (version and configuration).
    #[arg(long, global = true)]
    pub meta: bool,

    /// Worker threads for the parallel suites (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Absolute error target for series and kernel evaluations.
    #[arg(long, env = "GAMMASEQ_TARGET_ERR", global = true)]
    pub target_err: Option<f64>,

    /// Cap on the number of series terms per evaluation.
    #[arg(long, env = "GAMMASEQ_MAX_TERMS", global = true)]
    pub max_terms: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate G and related functions at one point.
    Eval {
        /// Evaluation point, x >= 0.01.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Comma-separated field names (default: all).
        #[arg(long, value_delimiter = ',', value_parser = parse_field)]
        fields: Vec<Field>,
    },
    /// Tabulate an integer-indexed sequence over [n_from, n_to].
    Seq {
        #[arg(value_enum)]
        name: SeqName,
        n_from: u64,
        n_to: u64,
    },
    /// Bracket the roots a and c of the threshold function.
    Roots {
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
    /// Smallest n with a^n <= n!.
    Na {
        /// a > 1.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: SuiteName,
        /// Upper index for the integer-indexed harmonic suites.
        #[arg(long, default_value_t = 10_000)]
        m_max: u64,
        /// Upper index for the sigma and S_n suites.
        #[arg(long, default_value_t = 5000)]
        n_max: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeqName {
    Sigma,
    #[value(name = "S")]
    S,
    #[value(name = "C")]
    C,
    #[value(name = "D")]
    D,
    Harmonic,
}

impl SeqName {
    pub fn name(self) -> &'static str {
        match self {
            SeqName::Sigma => "sigma",
            SeqName::S => "S",
            SeqName::C => "C",
            SeqName::D => "D",
            SeqName::Harmonic => "harmonic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteName {
    Euler,
    Polygamma,
    Bounds,
    Limits,
    Monotone,
    All,
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse::<Field>().map_err(|e| e.to_string())
}
