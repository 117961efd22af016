//! `ppsort`: command-line front end.
//!
//! Exit codes: 0 success, 2 unparsable input, 3 mathematical error
//! (sort mismatch, bounds, unsupported algebra), 4 cache problems.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ppsort_core::{Error, FieldSpec};

use report::Context;

#[derive(Parser, Debug)]
#[command(
    name = "ppsort",
    version,
    about = "Representations, pp-pairs and functor categories of bound quivers"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Override the project's field: `Q`, `F2`, `GF(3)`, ...
    #[arg(long, global = true)]
    field: Option<String>,
    /// Largest total dimension explored when building catalogues.
    #[arg(long, global = true)]
    max_dim: Option<usize>,
    /// Largest number of catalogue entries.
    #[arg(long, global = true)]
    max_entries: Option<usize>,
    /// Seed for randomised isomorphism searches.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    /// Directory of catalogue caches, one `<project>.json` per project.
    #[arg(long, global = true, env = "PPSORT_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decompose a named representation into indecomposables.
    Decompose { project: PathBuf, rep: String },
    /// Print the Auslander-Reiten quiver as DOT, then a summary line.
    ArQuiver {
        project: PathBuf,
        /// Use the Auslander algebra (the category of functors) instead.
        #[arg(long)]
        auslander: bool,
    },
    /// Evaluate a formula or pair (by name or as text) on a representation.
    PpEval {
        project: PathBuf,
        formula: String,
        rep: String,
    },
    /// List the indecomposable finitely presented functors.
    Functors { project: PathBuf },
    /// Localise at the definable subcategory given by catalogue entries.
    Localize {
        project: PathBuf,
        /// Entries to keep (node names like `(0,1,1)` or representation names).
        #[arg(long, num_args = 1.., conflicts_with = "exclude", required_unless_present = "exclude")]
        keep: Vec<String>,
        /// Entries to leave out; all others are kept.
        #[arg(long, num_args = 1..)]
        exclude: Vec<String>,
    },
    /// Tensor table of the indecomposable functors as TSV.
    TensorTable {
        project: PathBuf,
        /// `over-r` or `diagonal`; defaults to the project's choice.
        #[arg(long)]
        structure: Option<String>,
    },
    /// Save or inspect catalogue caches.
    #[command(subcommand)]
    Cache(CacheCommand),
}

#[derive(Subcommand, Debug)]
enum CacheCommand {
    /// Build the catalogues of a project and write them.
    Save {
        project: PathBuf,
        /// Output path; defaults to `<cache-dir>/<project>.json`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Skip the functor catalogue.
        #[arg(long)]
        no_functors: bool,
    },
    /// Read a cache file and report its contents.
    Load { path: PathBuf },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Io(_) | Error::Field(_) | Error::UnknownVertex(_) => 2,
        Error::Cache(_) | Error::CacheVersion { .. } => 4,
        _ => 3,
    }
}

fn run(cli: Cli) -> ppsort_core::Result<String> {
    let g = cli.global;
    let field = g.field.as_deref().map(FieldSpec::parse).transpose()?;
    let ctx = |project: &PathBuf| {
        Context::open(
            project,
            field,
            g.max_dim,
            g.max_entries,
            g.seed,
            g.cache_dir.clone(),
        )
    };
    match cli.command {
        Command::Decompose { project, rep } => ctx(&project)?.decompose(&rep),
        Command::ArQuiver { project, auslander } => ctx(&project)?.ar_quiver(auslander),
        Command::PpEval {
            project,
            formula,
            rep,
        } => ctx(&project)?.pp_eval(&formula, &rep),
        Command::Functors { project } => ctx(&project)?.functors(),
        Command::Localize {
            project,
            keep,
            exclude,
        } => ctx(&project)?.localize(&keep, &exclude),
        Command::TensorTable { project, structure } => {
            ctx(&project)?.tensor_table(structure.as_deref())
        }
        Command::Cache(CacheCommand::Save {
            project,
            out,
            no_functors,
        }) => ctx(&project)?.cache_save(out, !no_functors),
        Command::Cache(CacheCommand::Load { path }) => report::cache_load(&path),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
