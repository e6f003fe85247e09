mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Component groups, orientation posets, compactified-Jacobian strata,
/// tropical Picard complexes and stable-graph posets of weighted graphs.
#[derive(Debug, Parser)]
#[command(name = "jacstrata", version)]
pub struct Cli {
    /// Emit the structured JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrientKind {
    /// Totally cyclic orientations.
    Tc,
    /// Rooted 1-orientations.
    Rooted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PosetKind {
    /// Edge sets S with G - S connected, by reverse inclusion.
    C,
    Op0,
    Op1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Neron,
    Picg1,
    Picg,
    Tropical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Cycle,
    Banana,
    Path,
    Complete,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// First Betti number, genus, bridges and stability.
    Info { file: PathBuf },
    /// Invariant factors of the component group.
    Phi { file: PathBuf },
    /// Number of spanning trees.
    Trees { file: PathBuf },
    /// Classes of totally cyclic orientations or rooted 1-orientations.
    Orient {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: OrientKind,
        /// Comma-separated edge ids to delete first.
        #[arg(long, value_delimiter = ',')]
        removed: Vec<String>,
    },
    /// One of the posets C(G), OP0(G), OP1(G).
    Poset {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: PosetKind,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// A graded stratification together with its verification report.
    Strata {
        file: PathBuf,
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// f-vector, Euler characteristic and face poset of the Pic^g cell complex.
    Tropical {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// The contraction poset of stable graphs of genus g with n legs.
    Modspace {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        legs: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Exhaustive identity suites over generated graphs.
    Verify {
        /// Run every suite.
        #[arg(long, conflicts_with = "suite", required_unless_present = "suite")]
        all: bool,
        /// Run only the named suites.
        #[arg(long)]
        suite: Vec<String>,
        #[arg(long, default_value_t = 8)]
        max_edges: usize,
        #[arg(long, default_value_t = 5)]
        max_vertices: usize,
    },
    /// Print a graph document for a named family.
    Generate {
        #[arg(value_enum)]
        family: Family,
        size: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(commands::Output::Report(report)) => {
            if cli.json {
                print!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Ok(commands::Output::Raw(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
