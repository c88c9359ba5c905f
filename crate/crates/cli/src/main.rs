//! `tiltrep` command-line front end. Every command prints one JSON document
//! (or a TSV table where offered) to stdout; failures print an error
//! document and exit with 2 (precondition), 3 (cap or budget) or 4
//! (falsified check).

mod commands;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::path::PathBuf;
use tiltrep::module::DEFAULT_SEED;

/// Environment variable naming the workspace root.
pub const WORKSPACE_ENV: &str = "TILTREP_WORKSPACE";

#[derive(Parser)]
#[command(
    name = "tiltrep",
    version,
    about = "Exact computations with special tilting modules and intermediate extensions"
)]
pub struct Cli {
    /// Worker threads for exhaustive sweeps; never changes the output.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,
    /// Seed for randomised decomposition and isomorphism search.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Write the report into the workspace under this name (recorded in the
    /// manifest) instead of printing it.
    #[arg(long, global = true)]
    pub out: Option<String>,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum Side {
    /// Cogenerator completion, closure under quotients.
    Cogenerator,
    /// Generator completion, closure under submodules.
    Generator,
}

#[derive(Args)]
pub struct TwoModules {
    pub x: PathBuf,
    pub y: PathBuf,
}

#[derive(Subcommand)]
pub enum Cmd {
    /// dim Hom(X, Y).
    Hom(TwoModules),
    /// dim Ext^i(X, Y).
    Ext {
        #[command(flatten)]
        pair: TwoModules,
        #[arg(long, default_value_t = 1)]
        degree: usize,
    },
    /// Indecomposable summands with multiplicities.
    Decompose { x: PathBuf },
    /// Auslander-Reiten translate, printed as a module file.
    Tau {
        x: PathBuf,
        #[arg(long)]
        inverse: bool,
    },
    /// Indecomposables generated (or cogenerated) by X.
    GenClosure {
        x: PathBuf,
        #[arg(long)]
        cogen: bool,
    },
    /// The algebra B built from the completion of M, as a structure-constant
    /// artifact.
    #[command(name = "build-B")]
    BuildB {
        m: PathBuf,
        #[arg(long, value_enum, default_value_t = Side::Cogenerator)]
        side: Side,
    },
    /// The intermediate extension c(N) over B = B(M).
    Intext {
        m: PathBuf,
        /// Module to extend (defaults to M).
        #[arg(long)]
        of: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Side::Cogenerator)]
        side: Side,
    },
    /// Builds the special tilting (or cotilting) module over End(E) and
    /// checks its axioms and End(T)^op = B.
    VerifyTilting {
        m: PathBuf,
        #[arg(long, value_enum, default_value_t = Side::Cogenerator)]
        side: Side,
    },
    /// Identities satisfied by the intermediate extension on the closure of M.
    CheckTheorems {
        m: PathBuf,
        #[arg(long, value_enum, default_value_t = Side::Cogenerator)]
        side: Side,
    },
    /// Membership of N in the orbit closure of M and the dimension vector of
    /// its desingularisation.
    Rankvar { m: PathBuf, n: PathBuf },
    /// Points, strata and tangent dimensions of Gr(X, d) over a finite field.
    Grassmannian {
        x: PathBuf,
        #[arg(long, value_delimiter = ',')]
        d: Vec<usize>,
        /// Stratify by the isomorphism class of the submodule instead of the
        /// quotient.
        #[arg(long)]
        by_submodule: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Desingularisation of Gr(M, d) by quiver Grassmannians of c(M).
    DesingGr {
        m: PathBuf,
        #[arg(long, value_delimiter = ',')]
        d: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Side::Cogenerator)]
        side: Side,
    },
    /// Exhaustive point-level desingularisation of the orbit closure of M.
    DesingOrbit {
        m: PathBuf,
        /// Largest number of points swept in one representation space.
        #[arg(long, default_value_t = 1 << 20)]
        budget: u64,
    },
    /// Writes a named example into the workspace.
    Example {
        #[command(subcommand)]
        which: Example,
    },
}

#[derive(Subcommand)]
pub enum Example {
    /// The n-subspace quiver with M = DA + S(0), the simples and Q(0).
    NSubspace {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        q: u64,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match commands::run(&cli) {
        Ok(code) => code,
        Err(e) => {
            let doc = json!({
                "schema": tiltrep::io::SCHEMA_VERSION,
                "error": {"kind": e.kind(), "message": e.to_string(), "exit_code": e.exit_code()},
            });
            print!("{}", tiltrep::io::to_text(&doc));
            e.exit_code()
        }
    };
    std::process::exit(code);
}
