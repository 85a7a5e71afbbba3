use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use matchstick_core::criteria::{BoundMode, CriterionKind, EvaluateOptions};
use matchstick_core::fixtures::emit_fixtures;
use matchstick_core::lattice::{lattice_corpus_text, LatticeKind, LatticeSpec};
use matchstick_core::pipeline::{run_filter, FilterError, FilterOptions, InputFormat};

/// Necessary-condition filter for matchstick graphs (planar unit-distance
/// graphs with non-crossing unit edges).
#[derive(Parser)]
#[command(name = "matchstick", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a graph stream and write one JSON line per graph.
    Filter(FilterArgs),
    /// Print built-in fixtures as rotation text.
    Fixtures {
        /// Fixture names; all fixtures when omitted.
        names: Vec<String>,
        #[arg(long, conflicts_with = "names")]
        all: bool,
    },
    /// Print random lattice matchstick graphs as rotation text.
    GenLattice {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Cells per shape.
        #[arg(long, default_value_t = 4)]
        size: usize,
        /// `square`, `triangular` or `mixed` (random per shape).
        #[arg(long, default_value = "mixed")]
        kind: String,
    },
}

#[derive(Args)]
struct FilterArgs {
    /// Input file, or `-` for stdin.
    #[arg(long, default_value = "-")]
    input: String,
    #[arg(long, default_value_t = InputFormat::Auto)]
    format: InputFormat,
    /// Comma-separated subset of area, chain, local, lp.
    #[arg(long, value_delimiter = ',', default_value = "area,chain,local,lp")]
    criteria: Vec<CriterionKind>,
    /// Lower bound for neighbouring angles of large faces: lemma (pi/2) or paper (pi).
    #[arg(long = "lp-bound", default_value_t = BoundMode::Lemma)]
    lp_bound: BoundMode,
    /// Stop evaluating a candidate outer face at its first rejection.
    #[arg(long)]
    short_circuit: bool,
    /// Worker threads; 0 means one per available core.
    #[arg(long, env = "MATCHSTICK_JOBS", default_value_t = 0)]
    jobs: usize,
    /// Write error records for malformed graphs and keep going.
    #[arg(long)]
    lenient: bool,
    /// Write run statistics here instead of stderr.
    #[arg(long)]
    stats: Option<PathBuf>,
    /// Omit witnesses from the verdicts.
    #[arg(long)]
    compact: bool,
    /// Add per-graph evaluation time (output is then not reproducible).
    #[arg(long)]
    timing: bool,
}

fn filter(args: FilterArgs) -> Result<ExitCode> {
    let input: Box<dyn Read + Send> = if args.input == "-" {
        Box::new(io::stdin())
    } else {
        match File::open(&args.input) {
            Ok(f) => Box::new(f),
            Err(e) => {
                eprintln!("error: cannot open {}: {e}", args.input);
                return Ok(ExitCode::from(1));
            }
        }
    };
    let options = FilterOptions {
        evaluate: EvaluateOptions {
            criteria: args.criteria.into_iter().collect(),
            bound_mode: args.lp_bound,
            short_circuit: args.short_circuit,
            stop_at_survivor: false,
        },
        format: args.format,
        jobs: args.jobs,
        lenient: args.lenient,
        compact: args.compact,
        timing: args.timing,
    };
    let stdout = io::stdout().lock();
    let outcome = match run_filter(input, BufWriter::new(stdout), &options) {
        Ok(o) => o,
        Err(e @ FilterError::Input(_)) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(1));
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(e) = &outcome.aborted {
        eprintln!("error: {e} (use --lenient to skip malformed graphs)");
    }
    let stats = serde_json::to_string(&outcome.stats)?;
    match &args.stats {
        Some(path) => std::fs::write(path, stats + "\n")
            .with_context(|| format!("writing {}", path.display()))?,
        None => eprintln!("{stats}"),
    }
    Ok(ExitCode::from(outcome.exit_code() as u8))
}

fn main() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Filter(args) => filter(args),
        Command::Fixtures { names, all: _ } => {
            let names: Vec<&str> = names.iter().map(String::as_str).collect();
            match emit_fixtures(&names) {
                Ok(text) => {
                    io::stdout().write_all(text.as_bytes())?;
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::GenLattice {
            seed,
            count,
            size,
            kind,
        } => {
            let kind = match kind.as_str() {
                "mixed" => None,
                other => Some(other.parse::<LatticeKind>().map_err(anyhow::Error::msg)?),
            };
            let spec = LatticeSpec {
                seed,
                count,
                cells: size.max(1)..=size.max(1),
                kind,
            };
            io::stdout().write_all(lattice_corpus_text(&spec).as_bytes())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
