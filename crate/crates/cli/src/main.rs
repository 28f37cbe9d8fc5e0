//! `eqbound`: analyze utility-system games from scenario files — structural
//! checks, equilibrium search, curvature, and performance-bound margins.

mod commands;
mod report;
mod scenario;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use commands::{
    cmd_bounds, cmd_check, cmd_gen, cmd_solve, cmd_sweep, exit_code, CliError, Family, GenOptions,
    KindArg, SweepOptions,
};

#[derive(Parser)]
#[command(
    name = "eqbound",
    about = "Equilibrium performance-bound analysis for submodular utility-system games",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the structural verifiers (monotonicity, submodularity, validity).
    Check {
        /// Scenario file (JSON).
        path: PathBuf,
    },
    /// Find or certify equilibria.
    Solve {
        path: PathBuf,
        /// Which deviation notion to use.
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Exhaustively enumerate certified pure equilibria (default).
        #[arg(long)]
        enumerate: bool,
        /// Run round-robin best-response dynamics instead.
        #[arg(long, conflicts_with = "enumerate")]
        dynamics: bool,
        /// Start profile for --dynamics as comma-separated action indices.
        #[arg(long)]
        start: Option<String>,
        /// Pass budget for --dynamics.
        #[arg(long, default_value_t = 100)]
        max_rounds: usize,
    },
    /// Compute the optimum, curvatures, and every applicable bound margin.
    Bounds {
        path: PathBuf,
        /// Restrict the analysis to one equilibrium kind.
        #[arg(long, value_enum, default_value_t = KindArg::All)]
        kind: KindArg,
    },
    /// Write a deterministic seeded scenario file.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        users: usize,
        /// Channels (spectrum family only).
        #[arg(long, default_value_t = 3)]
        channels: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Family::Spectrum)]
        family: Family,
        /// Draw an independent power per user instead of one shared value.
        #[arg(long)]
        unequal_powers: bool,
        /// Give each user a random nonempty vacant set instead of all channels.
        #[arg(long)]
        random_vacant: bool,
        /// Universe size (coverage family).
        #[arg(long, default_value_t = 8)]
        universe: usize,
        /// Acts per user (coverage family).
        #[arg(long, default_value_t = 3)]
        acts: usize,
        /// Feasible actions per user (coverage family).
        #[arg(long, default_value_t = 3)]
        actions: usize,
    },
    /// Analyze a seed range and emit one CSV row per (seed, partition).
    Sweep {
        /// Seed range `a..b` (end exclusive).
        #[arg(long)]
        seeds: String,
        #[arg(long)]
        users: usize,
        #[arg(long, default_value_t = 3)]
        channels: usize,
        #[arg(long, value_enum, default_value_t = Family::Spectrum)]
        family: Family,
        /// Group-size lists like `1,1,2;2,2` (one sweep per partition).
        #[arg(long)]
        partitions: Option<String>,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        unequal_powers: bool,
        #[arg(long)]
        random_vacant: bool,
        #[arg(long, default_value_t = 8)]
        universe: usize,
        #[arg(long, default_value_t = 3)]
        acts: usize,
        #[arg(long, default_value_t = 3)]
        actions: usize,
    },
}

fn parse_seed_range(text: &str) -> Result<std::ops::Range<u64>, CliError> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| CliError::Usage(format!("--seeds expects a..b, got {text:?}")))?;
    let start: u64 = a
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("bad seed {a:?}")))?;
    let end: u64 = b
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("bad seed {b:?}")))?;
    Ok(start..end)
}

fn parse_partitions(text: &Option<String>) -> Result<Vec<Option<Vec<usize>>>, CliError> {
    match text {
        None => Ok(vec![None]),
        Some(t) => {
            let mut out = Vec::new();
            for part in t.split(';') {
                let sizes: Vec<usize> = part
                    .split(',')
                    .map(|s| s.trim().parse::<usize>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| CliError::Usage(format!("bad partition {part:?}")))?;
                out.push(Some(sizes));
            }
            Ok(out)
        }
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Check { path } => cmd_check(&path),
        Command::Solve {
            path,
            kind,
            enumerate: _,
            dynamics,
            start,
            max_rounds,
        } => cmd_solve(&path, kind, dynamics, &start, max_rounds),
        Command::Bounds { path, kind } => cmd_bounds(&path, kind),
        Command::Gen {
            seed,
            users,
            channels,
            out,
            family,
            unequal_powers,
            random_vacant,
            universe,
            acts,
            actions,
        } => {
            let opts = GenOptions {
                seed,
                users,
                channels,
                family,
                unequal_powers,
                random_vacant,
                universe,
                acts,
                actions,
            };
            cmd_gen(&opts, &out)
        }
        Command::Sweep {
            seeds,
            users,
            channels,
            family,
            partitions,
            out,
            unequal_powers,
            random_vacant,
            universe,
            acts,
            actions,
        } => {
            let opts = SweepOptions {
                seeds: parse_seed_range(&seeds)?,
                gen: GenOptions {
                    seed: 0,
                    users,
                    channels,
                    family,
                    unequal_powers,
                    random_vacant,
                    universe,
                    acts,
                    actions,
                },
                partitions: parse_partitions(&partitions)?,
                out,
            };
            cmd_sweep(&opts)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(exit_code(&err));
        }
    }
}
