use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "nci",
    version,
    about = "Intersection lattices, Möbius values and dot-algebra witnesses"
)]
pub struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Intersection lattices of families, or abstract lattices.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Möbius values of a lattice or generalised Möbius values of a configuration.
    Mobius {
        #[arg(short, long)]
        input: PathBuf,
        /// Values from the bottom of the union lattice instead.
        #[arg(long)]
        union: bool,
    },
    /// Nodes `U` of the intersection lattice with `μ(U, top) ≠ 0`.
    Nci(FamilyArg),
    /// Nodes `U` of the union lattice with `μ(bottom, U) ≠ 0`.
    Ncu(FamilyArg),
    /// Sets `X` with nonzero generalised Möbius value.
    Ncpd {
        /// A configuration file.
        #[arg(short, long)]
        input: PathBuf,
    },
    #[command(subcommand)]
    Witness(WitnessCmd),
    /// Constructive witnesses.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Move instances and witnesses between formulations.
    #[command(subcommand)]
    Translate(TranslateCmd),
    /// Check every antichain of `B_n` up to relabelling.
    Scan(ScanArgs),
}

#[derive(Debug, Args)]
pub struct FamilyArg {
    /// A family file.
    #[arg(short, long)]
    pub input: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum LatticeCmd {
    /// List the nodes, top first.
    Build {
        #[arg(short, long)]
        input: PathBuf,
        /// Annotate each node with `μ(U, top)`.
        #[arg(long)]
        mobius: bool,
    },
    /// Size and fullness or tightness properties.
    Info {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Graphviz Hasse diagram with nonzero-μ nodes highlighted.
    Dot {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        mobius: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum WitnessCmd {
    /// Evaluate a tree over a base and report multiplicities.
    Verify {
        /// Tree in s-expression form.
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        base: PathBuf,
    },
    /// Search for a witnessing tree.
    Search(SearchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Exhaustive,
    Sat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    Nci,
    Ncu,
    Ncpd,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Family file (nci, ncu) or configuration file (ncpd).
    #[arg(short, long)]
    pub input: Option<PathBuf>,
    #[arg(short, long, value_enum, requires = "input")]
    pub problem: Option<Problem>,
    /// Explicit base file, instead of an instance.
    #[arg(short, long, conflicts_with_all = ["input", "problem"])]
    pub base: Option<PathBuf>,
    /// Target subset, with a base of sets.
    #[arg(long, requires = "base")]
    pub target: Option<String>,
    /// Target configuration file, with a base of configurations.
    #[arg(long, requires = "base", conflicts_with = "target")]
    pub target_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "exhaustive")]
    pub engine: EngineArg,
    /// Use each entry exactly as often as its forced multiplicity says.
    #[arg(long)]
    pub strong: bool,
    /// Fall back to general trees when no left-linear one exists.
    #[arg(long)]
    pub general: bool,
    #[arg(long)]
    pub max_steps: Option<usize>,
    #[arg(long)]
    pub max_states: Option<usize>,
    /// Write the left-linear encoding as DIMACS CNF.
    #[arg(long)]
    pub emit_cnf: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum ConstructCmd {
    /// Tree over principal downsets for any configuration.
    Allreach {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Tree for a downset avoiding the principal downsets above a zero.
    AvoidZero {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        zero: String,
    },
    /// Tree over the non-top nodes of a tight lattice.
    NtiExpress {
        #[arg(short, long)]
        input: PathBuf,
        /// Defaults to the top.
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        left_linear: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum TranslateCmd {
    /// Downset instance of a family, with a witness found by search.
    NciToNcpd {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Pull a principal-downset witness back to the family's lattice.
    NcpdToNci {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        base: PathBuf,
        #[arg(short, long)]
        tree: PathBuf,
    },
    /// Complementary union instance and witness.
    NciToNcu {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        base: PathBuf,
        #[arg(short, long)]
        tree: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(short, value_parser = clap::value_parser!(u8).range(0..=6))]
    pub n: u8,
    /// JSON-lines log of every check.
    #[arg(long)]
    pub log: Option<PathBuf>,
    /// Skip the polarity-constrained runs.
    #[arg(long)]
    pub no_strong: bool,
    #[arg(long, value_enum, default_value = "exhaustive")]
    pub engine: EngineArg,
}
