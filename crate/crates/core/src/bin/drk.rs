use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dr_ktheory::cli::{render_human, render_machine, run_command, AssumptionKey, Command, RunOptions};
use dr_ktheory::finiteness::DEFAULT_MAX_K_BOUND;
use dr_ktheory::models::DEFAULT_ENUMERATION_CAP;
use dr_ktheory::parallel::Exec;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Parser, Debug)]
#[command(name = "drk", version, about = "Exact K₀ and stable-finiteness analysis of rank-2 models")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,

    /// Largest model for exhaustive invariant-subset enumeration.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP, global = true)]
    max_enum: usize,

    /// Largest default exponent bound for the coboundary enumeration.
    #[arg(long, default_value_t = DEFAULT_MAX_K_BOUND, global = true)]
    max_k_bound: usize,

    /// Invariant subset as comma-separated labels; overrides the file.
    #[arg(long, value_delimiter = ',', global = true)]
    subset: Option<Vec<String>>,

    /// Run enumerations on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// K₀ as a split extension of the kernel by the cokernel.
    K0 { file: PathBuf },
    /// Morphism of K₀ sequences induced by an invariant subset.
    Ideal { file: PathBuf },
    /// Decide the matrix condition (M).
    ConditionM {
        file: PathBuf,
        /// Cross-check by exhaustive search with coefficients in [−N, N].
        #[arg(long, value_name = "N", num_args = 0..=1, default_missing_value = "3")]
        brute_force: Option<u32>,
    },
    /// Coboundary subgroup and its comparison with the matrix image.
    Coboundary {
        file: PathBuf,
        #[arg(long)]
        k_bound: Option<usize>,
    },
    /// Stable-finiteness verdict.
    Verdict {
        file: PathBuf,
        /// Hypotheses to assume: P, ideal_sf, quotient_sf.
        #[arg(long, value_delimiter = ',')]
        assume: Vec<AssumptionKey>,
        /// Hypotheses to deny.
        #[arg(long, value_delimiter = ',')]
        deny: Vec<AssumptionKey>,
    },
    /// All invariant subsets.
    Invariants { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (file, command) = match cli.command {
        Cmd::K0 { file } => (file, Command::K0),
        Cmd::Ideal { file } => (file, Command::Ideal),
        Cmd::ConditionM { file, brute_force } => (file, Command::ConditionM { brute_force }),
        Cmd::Coboundary { file, k_bound } => (file, Command::Coboundary { k_bound }),
        Cmd::Verdict { file, assume, deny } => (file, Command::Verdict { assume, deny }),
        Cmd::Invariants { file } => (file, Command::Invariants),
    };
    let text = match std::fs::read_to_string(&file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return ExitCode::from(1);
        }
    };
    let opts = RunOptions {
        max_enum: cli.max_enum,
        max_k_bound: cli.max_k_bound,
        subset: cli.subset,
        exec: if cli.sequential { Exec::Sequential } else { Exec::Parallel },
        ..RunOptions::default()
    };
    match run_command(&text, &command, &opts) {
        Ok(doc) => {
            let out = match cli.format {
                Format::Human => render_human(&doc),
                Format::Machine => render_machine(&doc),
            };
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}: {e}", file.display());
            ExitCode::from(if e.is_internal() { 2 } else { 1 })
        }
    }
}
