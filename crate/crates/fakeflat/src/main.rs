//! Thin command-line wrapper over [`fakeflat::cli`].

use clap::{Args, Parser, Subcommand};

use fakeflat::cli::{Command, Mode, OutputFormat, RunConfig};
use fakeflat::invariant::Limits;

#[derive(Parser)]
#[command(
    name = "fakeflat",
    version,
    about = "Exact invariants and TQFT matrices for cut cellular surfaces coloured by finite 2-groups"
)]
struct CliArgs {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// Built-in crossed module (X1..X5) or a JSON file path.
    #[arg(long)]
    module: Option<String>,
    /// Counting mode: fast, oracle, or both (asserts agreement).
    #[arg(long, default_value = "fast")]
    mode: String,
    /// Output format: text, json, or csv.
    #[arg(long, default_value = "text")]
    output: String,
    /// Append decimal approximations to exact values.
    #[arg(long)]
    float: bool,
    /// Cap on |G|^edges states for fast counting
    /// (default 100000000, env FAKEFLAT_FAST_CAP).
    #[arg(long)]
    fast_cap: Option<u128>,
    /// Cap on |G|^edges · |H|^faces states for oracle counting
    /// (default 10000000, env FAKEFLAT_ORACLE_CAP).
    #[arg(long)]
    oracle_cap: Option<u128>,
    /// Randomized move sequences per surface in verification.
    #[arg(long, default_value_t = 20)]
    move_sequences: usize,
    /// Maximum moves per randomized sequence.
    #[arg(long, default_value_t = 6)]
    move_depth: usize,
    /// Seed for the randomized move sequences.
    #[arg(long, default_value_t = 0x5eed_2f1a_7c3e_9b01)]
    seed: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the full verification suite (all fixtures, or one --module).
    Verify {
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate one invariant for a surface and boundary colours.
    Invariant {
        /// Built-in surface name or a JSON file path.
        #[arg(long)]
        surface: String,
        /// Comma-separated in-boundary colours (element indices).
        #[arg(long = "in", value_delimiter = ',', num_args = 0..)]
        g_in: Vec<usize>,
        /// Comma-separated out-boundary colours (element indices).
        #[arg(long = "out", value_delimiter = ',', num_args = 0..)]
        g_out: Vec<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Emit the matrix of a surface on the tuple bases.
    Matrix {
        /// Built-in surface name or a JSON file path.
        #[arg(long)]
        surface: String,
        #[command(flatten)]
        common: Common,
    },
    /// Report 2-conjugacy classes and the generalized commuting fraction.
    Classes {
        #[command(flatten)]
        common: Common,
    },
    /// Full document: invariants, matrices, classes and all checks.
    Report {
        #[command(flatten)]
        common: Common,
    },
}

fn env_cap(name: &str) -> Option<u128> {
    std::env::var(name).ok().and_then(|v| v.parse().ok())
}

fn build_config(command: Command, common: &Common) -> Result<RunConfig, fakeflat::Error> {
    let defaults = Limits::default();
    let limits = Limits {
        fast_states: common
            .fast_cap
            .or_else(|| env_cap("FAKEFLAT_FAST_CAP"))
            .unwrap_or(defaults.fast_states),
        oracle_states: common
            .oracle_cap
            .or_else(|| env_cap("FAKEFLAT_ORACLE_CAP"))
            .unwrap_or(defaults.oracle_states),
    };
    Ok(RunConfig {
        command,
        module: common.module.clone(),
        surface: None,
        g_in: Vec::new(),
        g_out: Vec::new(),
        mode: common.mode.parse::<Mode>()?,
        output: common.output.parse::<OutputFormat>()?,
        float: common.float,
        limits,
        move_sequences: common.move_sequences,
        move_depth: common.move_depth,
        seed: common.seed,
    })
}

fn main() {
    let args = CliArgs::parse();
    let config = match &args.command {
        Cmd::Verify { common } => build_config(Command::Verify, common),
        Cmd::Invariant {
            surface,
            g_in,
            g_out,
            common,
        } => build_config(Command::Invariant, common).map(|mut c| {
            c.surface = Some(surface.clone());
            c.g_in = g_in.clone();
            c.g_out = g_out.clone();
            c
        }),
        Cmd::Matrix { surface, common } => build_config(Command::Matrix, common).map(|mut c| {
            c.surface = Some(surface.clone());
            c
        }),
        Cmd::Classes { common } => build_config(Command::Classes, common),
        Cmd::Report { common } => build_config(Command::Report, common),
    };
    let config = match config {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    };
    match fakeflat::cli::run(&config, &mut std::io::stdout()) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
