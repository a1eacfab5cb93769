use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use canram_cli::commands::{
    cmd_analyze_fn, cmd_atoms, cmd_cascade, cmd_find, cmd_selftest, cmd_verify, parse_members,
    parse_schedule, CommandOutput, FindMode,
};
use canram_cli::input::{load_source, InputError};
use canram_cli::report::{render_json, render_table};

/// Analyze colorings of n-subsets: atoms of the derived partition,
/// homogeneous and canonical sets, residue decompositions, and cascades.
#[derive(Parser)]
#[command(name = "canram", version, max_term_width = 100)]
struct Cli {
    /// Emit the report as JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

/// Where the coloring comes from: a file in the line format ("n N" header,
/// then one "a_1 ... a_n c" line per subset), or a named generator.
#[derive(Args)]
struct Source {
    /// Read the coloring from this file.
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
    /// Generate the coloring: constant | min | max | injective | sidon-sum
    /// | projection:<i> | sum-mod:<k> | random:<seed>:<colors>.
    #[arg(long, short = 'g', value_name = "SPEC", conflicts_with = "file")]
    generator: Option<String>,
    /// Subset size n (generator input only; files carry their own).
    #[arg(long, short = 'n', value_name = "N", requires = "generator")]
    arity: Option<usize>,
    /// Universe size N: subsets are drawn from 0..N (generator input only).
    #[arg(long, short = 'N', value_name = "SIZE", requires = "generator")]
    universe: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Homogeneous,
    Canonical,
}

#[derive(Subcommand)]
enum Command {
    /// List the atoms of the derived partition with signatures and pinned
    /// index sets.
    Atoms {
        #[command(flatten)]
        source: Source,
    },
    /// For every atom, find a homogeneous set and verify that some residue
    /// decomposition makes every upper class canonical.
    Verify {
        #[command(flatten)]
        source: Source,
        /// Size of the homogeneous set searched per atom (at least 2n).
        #[arg(long)]
        size: usize,
        /// Largest residue gap to try.
        #[arg(long = "max-gap", value_name = "G")]
        max_gap: usize,
    },
    /// Search for the least homogeneous or canonical set of a given size.
    Find {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        size: usize,
    },
    /// Drive a cascade for one atom from a start set and print the full
    /// transcript with every verified inequality.
    Cascade {
        #[command(flatten)]
        source: Source,
        /// Atom index as listed by `atoms`.
        #[arg(long)]
        atom: usize,
        /// Start set, comma-separated, e.g. 16,32.
        #[arg(long, value_name = "MEMBERS")]
        start: String,
        /// `full`, `none`, or steps `p/q` joined by `;`, e.g. 0,1/2,3;0,2/1,3.
        #[arg(long, value_name = "STEPS")]
        schedule: String,
    },
    /// Classify the coloring as a function of increasing n-tuples: upward
    /// constant or selectively upward injective.
    AnalyzeFn {
        #[command(flatten)]
        source: Source,
        /// Largest witness size to try (default: the universe size).
        #[arg(long = "size-cap", value_name = "S")]
        size_cap: Option<usize>,
    },
    /// Run the oracle cross-check suites at pinned sizes.
    Selftest,
}

fn run(cli: &Cli) -> Result<CommandOutput, InputError> {
    let load = |s: &Source| {
        load_source(
            s.file.as_deref(),
            s.generator.as_deref(),
            s.arity,
            s.universe,
        )
    };
    match &cli.command {
        Command::Atoms { source } => {
            let (c, desc) = load(source)?;
            cmd_atoms(&c, &desc)
        }
        Command::Verify {
            source,
            size,
            max_gap,
        } => {
            let (c, desc) = load(source)?;
            cmd_verify(&c, &desc, *size, *max_gap)
        }
        Command::Find { source, mode, size } => {
            let (c, desc) = load(source)?;
            let mode = match mode {
                Mode::Homogeneous => FindMode::Homogeneous,
                Mode::Canonical => FindMode::Canonical,
            };
            cmd_find(&c, &desc, mode, *size)
        }
        Command::Cascade {
            source,
            atom,
            start,
            schedule,
        } => {
            let (c, desc) = load(source)?;
            let start = parse_members(start)?;
            let schedule = parse_schedule(c.arity(), schedule)?;
            cmd_cascade(&c, &desc, *atom, &start, schedule)
        }
        Command::AnalyzeFn { source, size_cap } => {
            let (c, desc) = load(source)?;
            cmd_analyze_fn(&c, &desc, *size_cap)
        }
        Command::Selftest => Ok(cmd_selftest()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            let text = if cli.json {
                render_json(&output.report)
            } else {
                render_table(&output.report)
            };
            print!("{text}");
            if output.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
