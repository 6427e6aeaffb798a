use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use tunnel_atlas::bridge::SeedPair;
use tunnel_atlas::cabling::PathEncoding;
use tunnel_atlas::cli::{self, BoundsRequest, CliError, OutputDocument, SearchRequest};
use tunnel_atlas::torus::ShortcutConvention;

/// Invariants of tunnel-number-one knot tunnels: depth, Fibonacci
/// bridge-number functions, extremal bounds, torus-knot middle-tunnel
/// tables, and exhaustive certification searches.
#[derive(Parser)]
#[command(name = "tunnel-atlas", version)]
struct Cli {
    /// Output format; json emits exactly one document on stdout
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct PathArgs {
    /// Binary word (over 0/1) or step sequence (over D/L/R); detected by alphabet
    #[arg(value_name = "WORD-OR-STEPS", required_unless_present = "empty")]
    input: Option<String>,

    /// Use the empty word (two cablings, depth 1)
    #[arg(long, conflicts_with_all = ["input", "binary", "steps"])]
    empty: bool,

    /// Force the input to be read as a binary word
    #[arg(long, conflicts_with = "steps")]
    binary: bool,

    /// Force the input to be read as a step sequence
    #[arg(long)]
    steps: bool,
}

impl PathArgs {
    fn forced_encoding(&self) -> Option<PathEncoding> {
        match (self.binary, self.steps) {
            (true, _) => Some(PathEncoding::Binary),
            (_, true) => Some(PathEncoding::Steps),
            _ => None,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Depth and cabling profile of a principal path
    Depth(PathArgs),
    /// Convert between the binary word and step sequence encodings
    Convert(PathArgs),
    /// Evaluate the Fibonacci function F(a, b) of a regular word
    Fib {
        /// Binary word or step sequence
        #[arg(value_name = "WORD-OR-STEPS")]
        input: String,
        /// First seed bridge number
        a: String,
        /// Second seed bridge number
        b: String,
        /// Include the full iteration sequence
        #[arg(long)]
        trace: bool,
    },
    /// The 2m-2 candidate bridge numbers of a regular word
    #[command(name = "bridge-set")]
    BridgeSet {
        /// Binary word or step sequence
        #[arg(value_name = "WORD-OR-STEPS")]
        input: String,
    },
    /// Extremal bridge-number bounds
    #[command(group = ArgGroup::new("bound").required(true).args(["min_depth", "torus_min_depth", "max", "semisimple"]))]
    Bounds {
        /// Minimum bridge number of a knot with a tunnel of depth D
        #[arg(long, value_name = "D")]
        min_depth: Option<u64>,
        /// Minimum bridge number of a torus knot with a middle tunnel of depth D
        #[arg(long, value_name = "D")]
        torus_min_depth: Option<u64>,
        /// Maximum bridge number after N cablings, optionally with semisimple count M
        #[arg(long, num_args = 1..=2, value_names = ["N", "M"])]
        max: Option<Vec<u64>>,
        /// Bridge-number range [2, N+1] of simple/semisimple tunnels after N cablings
        #[arg(long, value_name = "N")]
        semisimple: Option<u64>,
    },
    /// Invariants of the middle tunnel of the (P,Q) torus knot
    Torus {
        p: i64,
        q: i64,
        /// Include the per-cabling rows (matrix, slope, intermediate knot)
        #[arg(long)]
        table: bool,
        /// Also evaluate the diagnostic block-count depth shortcut
        #[arg(long, value_enum, value_name = "CONVENTION")]
        shortcut_convention: Option<Convention>,
    },
    /// Exhaustive extremal searches over bounded word lengths
    #[command(group = ArgGroup::new("target").required(true).args(["min_depth", "max"]))]
    Search {
        /// Certify the minimum bridge number at depth D by exhaustion
        #[arg(long, value_name = "D", requires = "max_length")]
        min_depth: Option<u64>,
        /// Length horizon for the --min-depth enumeration
        #[arg(long, value_name = "L")]
        max_length: Option<usize>,
        /// Certify the maximum bridge number for N cablings with semisimple count M
        #[arg(long, num_args = 2, value_names = ["N", "M"])]
        max: Option<Vec<u64>>,
        /// Override the seed pair (defaults: 2 2 for minima, M M+1 for maxima)
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        seed: Option<Vec<String>>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    Literal,
    Offset,
}

impl From<Convention> for ShortcutConvention {
    fn from(convention: Convention) -> Self {
        match convention {
            Convention::Literal => ShortcutConvention::Literal,
            Convention::Offset => ShortcutConvention::Offset,
        }
    }
}

fn parse_seed(seed: Option<Vec<String>>) -> Result<Option<SeedPair>, CliError> {
    let Some(parts) = seed else {
        return Ok(None);
    };
    let parse = |label: &str, text: &String| {
        text.parse().map_err(|_| {
            CliError::usage(format!(
                "seed {label} must be a nonnegative decimal integer (got {text:?})"
            ))
        })
    };
    let a = parse("A", &parts[0])?;
    let b = parse("B", &parts[1])?;
    Ok(Some(SeedPair::new(a, b)?))
}

fn run(command: Command) -> Result<OutputDocument, CliError> {
    match command {
        Command::Depth(args) => {
            cli::cmd_depth(args.input.as_deref(), args.empty, args.forced_encoding())
        }
        Command::Convert(args) => {
            cli::cmd_convert(args.input.as_deref(), args.empty, args.forced_encoding())
        }
        Command::Fib { input, a, b, trace } => cli::cmd_fib(&input, &a, &b, trace),
        Command::BridgeSet { input } => cli::cmd_bridge_set(&input),
        Command::Bounds {
            min_depth,
            torus_min_depth,
            max,
            semisimple,
        } => {
            let request = if let Some(depth) = min_depth {
                BoundsRequest::MinDepth(depth)
            } else if let Some(depth) = torus_min_depth {
                BoundsRequest::TorusMinDepth(depth)
            } else if let Some(values) = max {
                BoundsRequest::Max {
                    cabling_count: values[0],
                    semisimple_count: values.get(1).copied(),
                }
            } else {
                BoundsRequest::Semisimple(semisimple.expect("clap enforces the bound group"))
            };
            cli::cmd_bounds(request)
        }
        Command::Torus {
            p,
            q,
            table,
            shortcut_convention,
        } => cli::cmd_torus(p, q, table, shortcut_convention.map(Into::into)),
        Command::Search {
            min_depth,
            max_length,
            max,
            seed,
        } => {
            let request = if let Some(depth) = min_depth {
                SearchRequest::MinDepth {
                    depth,
                    max_length: max_length.expect("clap enforces the requires rule"),
                }
            } else {
                let values = max.expect("clap enforces the target group");
                SearchRequest::Max {
                    cabling_count: values[0],
                    semisimple_count: values[1],
                }
            };
            let seed = parse_seed(seed)?;
            let cap = cli::resolve_enum_cap()?;
            cli::cmd_search(request, seed, cap)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(doc) => match cli.format {
            Format::Text => print!("{}", doc.render_text()),
            Format::Json => println!("{}", doc.render_json()),
        },
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit_code);
        }
    }
}
