use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

const AFTER_HELP: &str = "\
Bit strings (--init, --target, --necklace, printed states) list one character
per node in declaration order: the leftmost character is node 0, the first
entry of `nodes` in the network file.

Exit status: 0 success, 1 negative verdict, 2 usage or parse error,
3 budget exceeded.";

/// Analysis and control of conjunctive Boolean networks.
#[derive(Debug, Parser)]
#[command(name = "cbn", version, after_help = AFTER_HELP)]
pub struct Cli {
    /// Network file (TOML, or JSON if it starts with '{'); '-' reads stdin.
    #[arg(long, global = true, value_name = "FILE")]
    pub net: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Size limit, in nodes, for exhaustive state-space and subset searches.
    #[arg(long, global = true, env = "CBN_BUDGET", value_name = "N")]
    pub budget: Option<usize>,

    /// Seed for `gen`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the uncontrolled dynamics from an initial state.
    Simulate {
        #[arg(long, value_name = "BITS")]
        init: String,
        #[arg(long, default_value_t = 10)]
        steps: usize,
    },
    /// List the periodic orbits, one per binary necklace.
    Orbits,
    /// Print the loop number of a strongly connected network.
    LoopNumber,
    /// Print the loop-number classes and their irreducible components.
    Components,
    /// Decide whether a control set is orbit- or state-controlling.
    Check(CheckArgs),
    /// Build a schedule steering an initial state into a target orbit.
    SynthesizeOrbit {
        /// Comma-separated control labels; defaults to the file's `controls`.
        #[arg(long, value_name = "LIST")]
        controls: Option<String>,
        #[arg(long, value_name = "BITS")]
        necklace: String,
        #[arg(long, value_name = "BITS")]
        init: String,
        /// Control node that carries the target sequence.
        #[arg(long, value_name = "LABEL")]
        designated: Option<String>,
    },
    /// Build a schedule steering every initial state to a target state.
    SynthesizeState {
        #[arg(long, value_name = "LIST")]
        controls: Option<String>,
        #[arg(long, value_name = "BITS")]
        target: String,
    },
    /// Smallest control set of each kind (exhaustive subset search).
    MinSet {
        #[command(flatten)]
        mode: Mode,
    },
    /// Replay a schedule written by `--format json synthesize-*` and check its claim.
    Verify {
        #[arg(value_name = "SCHEDULE")]
        file: PathBuf,
    },
    /// Write the network (or its derived graph) in Graphviz DOT.
    ExportDot {
        /// Drop the in-edges of the control nodes.
        #[arg(long)]
        derived: bool,
        #[arg(long, value_name = "LIST")]
        controls: Option<String>,
    },
    /// Brute-force state-space versions of `check` and `orbits`.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Print a random network file.
    Gen {
        #[arg(long)]
        nodes: usize,
        /// Independent edge probability; without it the network is strongly connected.
        #[arg(long)]
        density: Option<f64>,
        /// Control labels to include in the file.
        #[arg(long, value_name = "LIST")]
        controls: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    Check(CheckArgs),
    Orbits,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub mode: Mode,
    #[arg(long, value_name = "LIST")]
    pub controls: Option<String>,
}

#[derive(Debug, Clone, Copy, Args)]
#[group(required = true, multiple = false)]
pub struct Mode {
    #[arg(long)]
    pub orbit: bool,
    #[arg(long)]
    pub state: bool,
}

impl Mode {
    pub fn name(self) -> &'static str {
        if self.orbit {
            "orbit"
        } else {
            "state"
        }
    }
}
