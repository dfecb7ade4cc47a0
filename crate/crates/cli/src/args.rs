//! Command-line surface.

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "resultant",
    about = "Exact Macaulay matrices, resultant vanishing tests, and hardness-reduction compilers",
    after_help = "Exit codes: 0 NONZERO/success, 10 ZERO, 20 UNDECIDED, 64 usage, 65 data format."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compile a CNF, BOOLSYS, or PARTITION instance into a polynomial system
    Compile(CompileArgs),
    /// Print a Macaulay matrix (dense) or one entry of it
    Macaulay(MacaulayArgs),
    /// Print the Macaulay determinant of a system
    Det(DetArgs),
    /// Certified vanishing test for the resultant of a square system
    ResultantTest(ResultantTestArgs),
    /// Re-check a compiled artifact end to end using its provenance header
    Verify(VerifyArgs),
    /// Succinct-matrix demos: forest gadget and configuration graphs
    Succinct(SuccinctArgs),
    /// Monomial of a given rank in the reverse-lex degree slice
    Unrank(UnrankArgs),
    /// Rank of a monomial in the reverse-lex degree slice
    Rank(RankArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SourceKind {
    Cnf,
    Boolsys,
    Partition,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Via {
    /// Homogeneous BOOLSYS encoding (generally not square)
    Lemma1,
    /// PARTITION encoding
    Thm1,
    /// PARTITION encoding with coefficients bounded by 2
    Thm1Bounded,
    /// Square system via a y-chain and fixed lambda
    Thm5,
    /// Square homogeneous system over the ground field
    Thm6,
    /// Random linear combinations (seeded)
    Thm4,
    /// Sparse univariate pair (P, x^M - 1)
    Plaisted,
    /// Affine reduction appending sum x_i y_i - 1
    Prop1,
}

impl Via {
    pub fn name(&self) -> &'static str {
        match self {
            Via::Lemma1 => "lemma1",
            Via::Thm1 => "thm1",
            Via::Thm1Bounded => "thm1-bounded",
            Via::Thm5 => "thm5",
            Via::Thm6 => "thm6",
            Via::Thm4 => "thm4",
            Via::Plaisted => "plaisted",
            Via::Prop1 => "prop1",
        }
    }
}

#[derive(Args, Debug)]
pub struct CompileArgs {
    #[arg(long, value_enum)]
    pub from: SourceKind,
    #[arg(long, value_enum)]
    pub via: Via,
    /// Field characteristic: 0 for Q, otherwise a prime
    #[arg(long = "char", default_value_t = 0)]
    pub characteristic: u64,
    /// Seed for all randomness (thm4)
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Extension degree for the thm4 coefficient field
    #[arg(long = "ext-degree", default_value_t = 1)]
    pub ext_degree: usize,
    /// Input file path, or the instance text itself when no such file exists
    pub input: String,
}

#[derive(Args, Debug)]
pub struct MacaulayArgs {
    /// Index of the cyclic variable ordering (0-based rotation)
    #[arg(long, default_value_t = 0)]
    pub ordering: usize,
    /// Print the full dense matrix
    #[arg(long, conflicts_with = "entry")]
    pub dense: bool,
    /// Print a single entry: row and column indices (big integers)
    #[arg(long, num_args = 2, value_names = ["ROW", "COL"])]
    pub entry: Option<Vec<String>>,
    /// Dense dimension guard
    #[arg(long, default_value_t = 5000)]
    pub guard: usize,
    pub file: String,
}

#[derive(Args, Debug)]
pub struct DetArgs {
    #[arg(long, default_value_t = 0)]
    pub ordering: usize,
    #[arg(long, default_value_t = 5000)]
    pub guard: usize,
    pub file: String,
}

#[derive(Args, Debug)]
pub struct ResultantTestArgs {
    /// Print the certificate (witness root, determinant, or diagnostics)
    #[arg(long)]
    pub witness: bool,
    /// Extension-degree bound for the root search
    #[arg(long = "max-ext")]
    pub max_ext: Option<u32>,
    /// Dense dimension guard for stage 1
    #[arg(long, default_value_t = 5000)]
    pub guard: usize,
    /// Projective-point guard per search level
    #[arg(long = "point-guard", default_value_t = 2_000_000)]
    pub point_guard: u64,
    pub file: String,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long = "max-ext")]
    pub max_ext: Option<u32>,
    #[arg(long, default_value_t = 5000)]
    pub guard: usize,
    #[arg(long = "point-guard", default_value_t = 2_000_000)]
    pub point_guard: u64,
    pub file: String,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DemoKind {
    Forest,
    Machine,
}

#[derive(Args, Debug)]
pub struct SuccinctArgs {
    #[arg(long, value_enum)]
    pub demo: DemoKind,
    /// Seed for the random forest demo
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Vertex count for the random forest demo
    #[arg(long, default_value_t = 6)]
    pub size: u64,
    /// Machine spec file (machine demo)
    pub file: Option<String>,
}

#[derive(Args, Debug)]
pub struct UnrankArgs {
    pub num_vars: usize,
    pub degree: u32,
    pub index: String,
}

#[derive(Args, Debug)]
pub struct RankArgs {
    pub num_vars: usize,
    pub degree: u32,
    /// Exponents of the monomial
    #[arg(required = true)]
    pub exponents: Vec<u32>,
}
