//! `zzc`: colimits of diagrams of finite categories and mapping spaces of rigidified simplicial sets.

mod commands;
mod dot;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{CliError, Outcome};

#[derive(Parser, Debug)]
#[command(name = "zzc", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Object classes and hom classes of a colimit, with the oracle comparison.
    Colim,
    /// Hom classes of the rigidification of a simplicial set.
    Rigidify,
    /// Flag counts of the rigidified simplex.
    Flagcat,
    /// Well-definedness, round-trip and comparison checks.
    Check,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// A `diagram/v1` or `sset/v1` document.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// A built-in fixture: roof, loop, pushout, delta:n, boundary:n, horn:n:k, circle, spine:n.
    #[arg(long, global = true)]
    pub corpus: Option<String>,
    /// Simplicial degree of the hom sets.
    #[arg(long, global = true)]
    pub p: Option<usize>,
    /// Source object class, element `i:a`, or vertex.
    #[arg(long, global = true)]
    pub from: Option<String>,
    /// Target object class, element `i:a`, or vertex.
    #[arg(long, global = true)]
    pub to: Option<String>,
    /// Bound on zig-zag length.
    #[arg(long, global = true)]
    pub max_zz_len: Option<usize>,
    /// Bound on the number of beads of a necklace.
    #[arg(long, global = true, default_value_t = 4)]
    pub max_beads: usize,
    /// Bound on the dimension of a bead.
    #[arg(long, global = true, default_value_t = 3)]
    pub max_bead_dim: usize,
    /// flagcat: the dimension n. check: the zig-zag length of the sweeps.
    #[arg(long, global = true)]
    pub max_len: Option<usize>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Seed for random diagrams.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Compare against the independent oracle.
    #[arg(long, global = true, overrides_with = "no_oracle")]
    pub oracle: bool,
    /// Skip the oracle comparison.
    #[arg(long, global = true, overrides_with = "oracle")]
    pub no_oracle: bool,
    /// check: also run the exhaustive small sweep.
    #[arg(long, global = true)]
    pub exhaustive: bool,
    /// Node budget per enumeration.
    #[arg(long, global = true, env = "ZZC_BUDGET", default_value_t = zzc_core::DEFAULT_BUDGET)]
    pub budget: usize,
}

impl Common {
    /// `--oracle`/`--no-oracle`, falling back to `default`.
    pub fn oracle_or(&self, default: bool) -> bool {
        if self.oracle {
            true
        } else if self.no_oracle {
            false
        } else {
            default
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = cli.common.clone();
    let run = || match cli.command {
        Command::Colim => commands::colim(&common),
        Command::Rigidify => commands::rigidify(&common),
        Command::Flagcat => commands::flagcat(&common),
        Command::Check => commands::check(&common),
    };
    match zzc_core::par::with_jobs(common.jobs, run) {
        Ok(Outcome { text, passed }) => {
            print!("{text}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

impl CliError {
    /// 2 is taken by argument errors.
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
            CliError::Schema(_) => 4,
            CliError::Budget(_) => 5,
            CliError::Engine(_) => 6,
        }
    }
}
