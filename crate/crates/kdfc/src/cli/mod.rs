//! Command-line interface.
//!
//! Exit codes: 0 on success, 1 when a computation fails or a verification
//! does not hold, 2 on usage errors.

mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::tables::TABLE_ENV;

#[derive(Debug, Parser)]
#[command(name = "kdfc", version, about = "Key-dependent σ-LFSR configurations and KDFC-SNOW")]
pub struct Cli {
    /// Primitive polynomial table file (default: builtin).
    #[arg(long, global = true, env = TABLE_ENV, value_name = "FILE")]
    pub table: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reference SNOW 2.0.
    #[command(subcommand)]
    Snow2(Snow2Cmd),
    /// KDFC-SNOW: SNOW 2.0 with key-derived feedback gains.
    #[command(subcommand)]
    Kdfc(KdfcCmd),
    /// Run the configuration generator at arbitrary (m, b).
    GenConfig(GenConfigArgs),
    /// Characteristic polynomial of a configuration.
    CharPoly(CharPolyArgs),
    /// Attack-complexity arithmetic and the guess-and-determine search.
    #[command(subcommand)]
    Analyze(AnalyzeCmd),
    /// Statistical tests on a file of hex words.
    Randtest(RandtestArgs),
    /// Algebraic and structural checks.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Debug, Args)]
pub struct KeyArgs {
    /// Key: 32 or 64 hex digits, or 4 or 8 comma-separated decimal words.
    #[arg(long)]
    pub key: String,
    /// IV: 32 hex digits or 4 comma-separated decimal words.
    #[arg(long, default_value = "00000000000000000000000000000000")]
    pub iv: String,
}

#[derive(Debug, Subcommand)]
pub enum Snow2Cmd {
    /// Print keystream words.
    Stream {
        #[command(flatten)]
        key: KeyArgs,
        #[arg(short = 'n', long = "words")]
        n: usize,
    },
    /// Check known-answer vectors (default: the shipped file).
    Kat {
        #[arg(long, value_name = "FILE")]
        file: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct KdfcArgs {
    #[command(flatten)]
    pub key: KeyArgs,
    /// Offline iterations in the published Y.
    #[arg(long, default_value_t = 468)]
    pub k: usize,
    /// Published Y file (default: the shipped one for k = 468).
    #[arg(long, value_name = "FILE")]
    pub yinit: Option<PathBuf>,
    /// Keystream words discarded after reconfiguration.
    #[arg(long, default_value_t = 32)]
    pub warmup: usize,
}

#[derive(Debug, Subcommand)]
pub enum KdfcCmd {
    /// Initialize and print a summary of the resulting state as JSON.
    Init(KdfcArgs),
    /// Print keystream words.
    Stream {
        #[command(flatten)]
        args: KdfcArgs,
        #[arg(short = 'n', long = "words")]
        n: usize,
    },
    /// Print the derived configuration as JSON.
    DumpConfig(KdfcArgs),
}

#[derive(Debug, Args)]
pub struct GenConfigArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub b: usize,
    /// Target polynomial as exponents or terms (default: table entry of degree mb).
    #[arg(long)]
    pub poly: Option<String>,
    /// Iterations run offline with fill bits from --seed.
    #[arg(long, default_value_t = 0)]
    pub k: usize,
    /// Seed for the offline fill bits.
    #[arg(long)]
    pub seed: u64,
    /// Seed for the remaining online fill bits.
    #[arg(long)]
    pub online_seed: u64,
    /// Also write the Y after k iterations to this file.
    #[arg(long, value_name = "FILE")]
    pub yinit_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolyFormat {
    /// Comma-separated descending exponents.
    List,
    /// `x^d + ... + 1`.
    Terms,
    Json,
}

#[derive(Debug, Args)]
pub struct CharPolyArgs {
    /// The SNOW 2.0 LFSR configuration.
    #[arg(long, conflicts_with_all = ["config", "matrix"])]
    pub snow2: bool,
    /// A SigmaConfig JSON file.
    #[arg(long, value_name = "FILE", conflicts_with = "matrix")]
    pub config: Option<PathBuf>,
    /// A square BitMatrix JSON file.
    #[arg(long, value_name = "FILE")]
    pub matrix: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = PolyFormat::List)]
    pub format: PolyFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableSet {
    Snow2,
    Kdfc,
}

#[derive(Debug, Subcommand)]
pub enum AnalyzeCmd {
    /// Bias of a sum of approximations and the keystream needed to see it.
    Bias {
        #[arg(long, allow_negative_numbers = true)]
        eps_log2: f64,
        #[arg(long)]
        taps: u32,
    },
    /// Number of monomials of degree at most D in N variables.
    Linearization {
        #[arg(long)]
        vars: u64,
        #[arg(long)]
        degree: u64,
    },
    /// Guess-and-determine basis search.
    Gd {
        #[arg(long, value_enum)]
        tables: TableSet,
        #[arg(long, default_value_t = 12)]
        max_stages: usize,
        /// Print the index tables as JSON instead of searching.
        #[arg(long)]
        dump: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct RandtestArgs {
    /// Hex words, one per line; `-` reads standard input.
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub report: ReportFormat,
    /// Also split the input into this many equal segments and report pass counts.
    #[arg(long)]
    pub segments: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// Degree and vanishing claims on the minors of the permuted Q.
    Lemmas {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        poly: Option<String>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        report: ReportFormat,
    },
    /// Degree of the diagonal entry of the symbolic configuration matrix.
    Theorem1 {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        poly: Option<String>,
    },
    /// Count of configurations with a primitive characteristic polynomial.
    Count {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        b: usize,
        /// Also enumerate every gain tuple (m·m·b <= 24).
        #[arg(long)]
        brute_force: bool,
    },
    /// Cycle structure of a generated configuration (mb <= 24).
    Period {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        poly: Option<String>,
    },
}

/// Errors that should exit with status 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    run_cli(cli)
}

pub fn run_cli(cli: Cli) -> ExitCode {
    let mut out = std::io::stdout().lock();
    match run::dispatch(&cli, &mut out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
