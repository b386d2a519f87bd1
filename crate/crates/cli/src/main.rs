mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "arglue", version, about = "Construct and verify n-cluster tilting and fractured subcategories of bound quiver algebras")]
pub struct Cli {
    #[command(flatten)]
    pub opts: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Write a DOT rendering (AR quivers only).
    #[arg(long, global = true, value_name = "PATH")]
    pub dot: Option<PathBuf>,
    /// Write the produced algebra or modules in the dump format.
    #[arg(long, global = true, value_name = "PATH")]
    pub dump: Option<PathBuf>,
    /// Write the command report.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Upper bound on the number of indecomposables enumerated.
    #[arg(long, global = true, default_value_t = arglue_core::ar::DEFAULT_CAP)]
    pub cap: usize,
    /// Upper bound on the length of projective resolutions.
    #[arg(long = "ext-cap", global = true, default_value_t = arglue_core::homology::DEFAULT_RESOLUTION_CAP)]
    pub ext_cap: usize,
    /// Seed for randomized isomorphism and splitting searches.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Inspect an algebra file.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Verify a subcategory given as a file.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Same as `check nct`.
    #[command(name = "check-nct")]
    CheckNct(CheckArgs),
    /// Same as `check fractured`.
    #[command(name = "check-fractured")]
    CheckFractured(CheckArgs),
    #[command(subcommand)]
    Glue(GlueCmd),
    /// Self-glue an algebra and verify the pushed-down subcategory on the orbit algebra.
    Selfglue(CheckArgs),
    /// Nakayama algebra from a Kupisch series.
    Nakayama {
        #[arg(long, value_delimiter = ',', required = true)]
        kupisch: Vec<usize>,
        #[arg(long)]
        cyclic: bool,
        #[command(subcommand)]
        action: BuiltAction,
    },
    /// Radical square zero starlike algebra, arms written LEN:in or LEN:out.
    Starlike {
        #[arg(long, value_delimiter = ',', required = true)]
        arms: Vec<String>,
        #[command(subcommand)]
        action: StarlikeAction,
    },
    /// Algebra with prescribed numbers of sources and sinks admitting an n-cluster tilting subcategory.
    Generate {
        #[arg(long)]
        sources: usize,
        #[arg(long)]
        sinks: usize,
        #[arg(short = 'n')]
        n: usize,
    },
    /// Run every worked example in the fixture catalog.
    #[command(alias = "paper-suite")]
    Examples,
}

#[derive(Subcommand, Debug)]
pub enum AlgebraCmd {
    /// Parse, normalize and summarize.
    Validate { file: PathBuf },
    /// List the indecomposable modules.
    Indec { file: PathBuf },
    /// Compute the Auslander-Reiten quiver.
    Ar { file: PathBuf },
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// JSON with "algebra" and optionally "modules", "fracturing" and "pairs".
    pub file: PathBuf,
    #[arg(short = 'n')]
    pub n: usize,
}

#[derive(Subcommand, Debug)]
pub enum CheckCmd {
    /// n-cluster tilting.
    Nct(CheckArgs),
    /// (T^L, T^R, n)-fractured.
    Fractured(CheckArgs),
}

#[derive(Subcommand, Debug)]
pub enum GlueCmd {
    /// B ⊳ A along I_B(i) and P_A(p).
    Pair {
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        i: String,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        p: String,
    },
    /// Glue a system file in both orders.
    System { file: PathBuf },
    /// Identify several pairs of A and B at once, each written P_VERTEX:I_VERTEX.
    Simultaneous {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long = "pair", required = true)]
        pairs: Vec<String>,
        #[arg(long, value_enum, default_value_t = Mode::Parallel)]
        mode: Mode,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Mode {
    Parallel,
    Antiparallel,
}

#[derive(Subcommand, Debug)]
pub enum BuiltAction {
    /// Print the algebra.
    Show,
    /// Check the τ_n⁻-orbit candidate.
    CheckNct {
        #[arg(short = 'n')]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum StarlikeAction {
    Show,
    CheckNct {
        #[arg(short = 'n')]
        n: usize,
    },
    /// Closed-form verdict, cross-checked against check_nct.
    Classify {
        #[arg(short = 'n')]
        n: usize,
    },
}

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 2;
pub const EXIT_INPUT: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    ExitCode::from(commands::run(cli))
}
