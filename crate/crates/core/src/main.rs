use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use subset_currents::cli::{self, Format, Outcome, RunConfig};
use subset_currents::Error;

#[derive(Parser)]
#[command(name = "scurr", version, about = "Subgroups, fiber products and rational subset currents of free groups")]
struct Args {
    #[command(subcommand)]
    command: Command,
    /// Rank N of the free group.
    #[arg(long, global = true, default_value_t = 2)]
    rank: usize,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 100)]
    samples: usize,
    #[arg(long, global = true, default_value_t = 6)]
    max_gen_len: usize,
    #[arg(long, global = true, default_value_t = 3)]
    max_gens: usize,
    /// Round-graph grade cap.
    #[arg(long, global = true, default_value_t = 1)]
    grade: usize,
    /// tsv or json.
    #[arg(long, global = true, default_value = "tsv")]
    format: String,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Core graph of the subgroup generated by a file of words.
    Core {
        file: PathBuf,
        /// Also write the graph in Graphviz format.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// N(H, K) by three routes, with double cosets.
    Product { h: PathBuf, k: PathBuf },
    /// Random pairs checked against the rank-product bound.
    ShncScan,
    /// Cylinder values of (1/n) eta_<a^n b> against their limit.
    Converge {
        #[arg(long, default_value_t = 10)]
        n_max: usize,
    },
    /// The pushforward current of (eta_H, eta_K).
    Intersect { h: PathBuf, k: PathBuf },
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))
}

fn run(args: Args) -> Result<Outcome, Error> {
    let mut config = RunConfig {
        rank: args.rank,
        seed: args.seed,
        samples: args.samples,
        max_gen_len: args.max_gen_len,
        max_gens: args.max_gens,
        grade: args.grade,
        format: args.format.parse::<Format>()?,
        ..RunConfig::default()
    };
    let outcome = match args.command {
        Command::Core { file, dot } => {
            let (outcome, graph) = cli::cmd_core(&read(&file)?, &config)?;
            if let Some(path) = dot {
                write(&path, &graph)?;
            }
            outcome
        }
        Command::Product { h, k } => cli::cmd_product(&read(&h)?, &read(&k)?, &config)?,
        Command::ShncScan => cli::cmd_shnc_scan(&config)?,
        Command::Converge { n_max } => {
            config.n_max = n_max;
            cli::cmd_converge(&config)?
        }
        Command::Intersect { h, k } => cli::cmd_intersect(&read(&h)?, &read(&k)?, &config)?,
    };
    match &args.out {
        Some(path) => write(path, &outcome.report)?,
        None => print!("{}", outcome.report),
    }
    Ok(outcome)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(args) {
        Ok(outcome) => {
            for d in &outcome.diagnostics {
                eprintln!("assertion failed: {d}");
            }
            ExitCode::from(outcome.status.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
