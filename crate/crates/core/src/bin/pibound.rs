use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pibound::bounds::BoundKind;
use pibound::cache;
use pibound::scan::{self, Grid};
use pibound::{PrimeTable, TableConfig};

#[derive(Parser)]
#[command(name = "pibound", about = "Check explicit bounds on the prime counting function")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    /// Sieve limit (at most 10^8).
    #[arg(long, global = true, default_value_t = 1_000_000)]
    limit: u64,
    /// Evaluation grid: integers, log:N or prime-adjacent. Repeatable.
    #[arg(long, global = true)]
    grid: Vec<Grid>,
    #[arg(long, global = true)]
    from: Option<f64>,
    #[arg(long, global = true)]
    to: Option<f64>,
    #[arg(long, global = true)]
    step: Option<f64>,
    /// Write CSV output here instead of stdout.
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    /// Bound kind (e.g. theorem1_ceiling, geometric:32). Repeatable; default all.
    #[arg(long, global = true)]
    bound: Vec<BoundKind>,
}

#[derive(Subcommand)]
enum Command {
    /// Scan bounds over a range and report violations.
    Verify,
    /// Emit a CSV table of π, θ, bound values and margins.
    Table,
    /// Estimate the smallest x from which each bound holds on the grid.
    Threshold,
    /// Replay the even-integer counting chain at an odd x.
    Chain { x: u64 },
}

const MAX_LIMIT: u64 = 100_000_000;

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("pibound: {msg}");
    ExitCode::from(2)
}

fn emit(csv: &Option<PathBuf>, text: &str) -> std::io::Result<()> {
    match csv {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn kinds(opts: &Opts) -> Vec<BoundKind> {
    if opts.bound.is_empty() {
        BoundKind::ALL.to_vec()
    } else {
        opts.bound.clone()
    }
}

fn grids(opts: &Opts) -> Vec<Grid> {
    if opts.grid.is_empty() {
        vec![Grid::Integers]
    } else {
        opts.grid.clone()
    }
}

fn run(cli: &Cli, table: &PrimeTable) -> pibound::Result<u8> {
    let o = &cli.opts;
    let hi = o.to.unwrap_or(table.limit() as f64);
    match &cli.command {
        Command::Verify => {
            let mut code = 0;
            let mut csv = String::from(
                "kind,lo,hi,grid,points,skipped,min_margin,argmin_x,violations,asserted_violations,near_ties\n",
            );
            for kind in kinds(o) {
                let lo = o.from.unwrap_or(kind.domain_min());
                let r = scan::verify(kind, table, lo, hi, &grids(o))?;
                println!("{r}");
                for v in r.violations.iter().take(10) {
                    println!(
                        "  x = {} margin {}{}",
                        v.x,
                        v.margin,
                        if v.asserted { "" } else { " (not asserted)" }
                    );
                }
                csv.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{},{}\n",
                    r.kind,
                    r.lo,
                    r.hi,
                    r.grid,
                    r.points_evaluated,
                    r.points_skipped,
                    r.min_margin,
                    r.argmin_x,
                    r.violations.len(),
                    r.asserted_violations().count(),
                    r.near_ties.len()
                ));
                code = code.max(r.exit_code());
            }
            if o.csv.is_some() {
                emit(&o.csv, &csv)?;
            }
            Ok(code as u8)
        }
        Command::Table => {
            let lo = o.from.unwrap_or(2.0);
            let hi = o.to.unwrap_or(100.0);
            let csv = scan::table_csv(table, lo, hi, o.step.unwrap_or(1.0), &kinds(o))?;
            emit(&o.csv, &csv)?;
            Ok(0)
        }
        Command::Threshold => {
            for kind in kinds(o) {
                let lo = o.from.unwrap_or(2.0);
                println!("{}", scan::threshold(kind, table, lo, hi, &grids(o))?);
            }
            Ok(0)
        }
        Command::Chain { x } => {
            let (text, ok) = scan::chain_report(*x, table)?;
            print!("{text}");
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.opts.limit > MAX_LIMIT {
        return usage(format!("--limit may not exceed {MAX_LIMIT}"));
    }
    let limit = match cli.command {
        // A chain only needs primes up to x.
        Command::Chain { x } => x.max(2),
        _ => cli.opts.limit,
    };
    let table = match cache::table_from_env(limit, &TableConfig::default()) {
        Ok(t) => t,
        Err(e) => return usage(e),
    };
    match run(&cli, &table) {
        Ok(code) => ExitCode::from(code),
        Err(pibound::Error::Io(e)) => {
            eprintln!("pibound: {e}");
            ExitCode::from(1)
        }
        Err(e) => usage(e),
    }
}
