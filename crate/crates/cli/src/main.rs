use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use ramanujan_tau::arith::Budget;
use ramanujan_tau::Parallelism;

use tau_cli::commands::{self, CongrRule, LucasQuery, Suite};
use tau_cli::{cache, Context, Report, DEFAULT_SEED, DEFAULT_TABLE_N};

#[derive(Debug, Parser)]
#[command(
    name = "tau",
    version,
    about = "Exact Ramanujan tau computations and checks"
)]
struct Cli {
    /// Emit the report as JSON
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit the report as CSV
    #[arg(long, global = true)]
    csv: bool,
    /// Seed for randomized checks
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads for table sweeps
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    threads: u16,
    /// Rho iterations allowed per factored integer
    #[arg(long, global = true, default_value_t = Budget::DEFAULT.0)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build or extend the cached coefficient table
    Table {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Compare the cached prefix with the direct product expansion
        #[arg(long)]
        selfcheck: bool,
    },
    /// Evaluate tau(n)
    Tau {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Iterate tau starting from n for k steps
    Orbit {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        k: usize,
    },
    /// Lucas sequence attached to the prime p
    #[command(group(ArgGroup::new("query").required(true).args(["m", "rank", "primitive"])))]
    Lucas {
        p: u64,
        /// Index of the term u_p(m)
        m: Option<u64>,
        /// Rank of apparition of the prime l
        #[arg(long, value_name = "L")]
        rank: Option<u64>,
        /// Primitive prime factors of u_p(M)
        #[arg(long, value_name = "M", value_parser = clap::value_parser!(u64).range(2..))]
        primitive: Option<u64>,
    },
    /// Coefficients of the degree-11 Thue form for the unit exponent r
    Thue {
        #[arg(allow_negative_numbers = true, value_parser = clap::value_parser!(i64).range(0..=10))]
        r: i64,
    },
    /// Sweep a congruence over 1..=max
    Congr {
        #[arg(long, value_parser = parse_rule)]
        rule: CongrRule,
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        max: u64,
    },
    /// Run verification suites
    Verify {
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
        /// Table size used by the sweeps
        #[arg(long, default_value_t = DEFAULT_TABLE_N as u64, value_parser = clap::value_parser!(u64).range(1..))]
        max: u64,
    },
}

fn parse_rule(s: &str) -> Result<CongrRule, String> {
    CongrRule::parse(s)
        .ok_or_else(|| format!("unknown rule {s:?}; expected i, ii, iii, 64000 or two-adic"))
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    Suite::parse(s).ok_or_else(|| {
        format!("unknown suite {s:?}; expected all, series, lucas, orbit, congruence, symforms or prop5")
    })
}

fn render(report: &Report, cli: &Cli) -> std::io::Result<String> {
    if cli.json {
        Ok(report.to_json())
    } else if cli.csv {
        report.to_csv()
    } else {
        Ok(report.to_text())
    }
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    let mode = if cli.threads > 1 {
        #[cfg(feature = "parallel")]
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads as usize)
            .build_global()?;
        Parallelism::Parallel
    } else {
        Parallelism::Sequential
    };
    let ctx = Context {
        cache_dir: cache::cache_dir(),
        budget: Budget(cli.budget),
        mode,
        seed: cli.seed,
    };
    match &cli.command {
        Command::Table { n, selfcheck } => commands::cmd_table(&ctx, *n as usize, *selfcheck),
        Command::Tau { n } => commands::cmd_tau(&ctx, *n),
        Command::Orbit { n, k } => commands::cmd_orbit(&ctx, *n, *k),
        Command::Lucas {
            p,
            m,
            rank,
            primitive,
        } => {
            let query = match (m, rank, primitive) {
                (Some(m), _, _) => LucasQuery::Term(*m),
                (_, Some(l), _) => LucasQuery::Rank(*l),
                (_, _, Some(m)) => LucasQuery::Primitive(*m),
                _ => unreachable!("clap enforces the query group"),
            };
            commands::cmd_lucas(&ctx, *p, query)
        }
        Command::Thue { r } => commands::cmd_thue(*r),
        Command::Congr { rule, max } => commands::cmd_congr(&ctx, *rule, *max),
        Command::Verify { suite, max } => commands::cmd_verify(&ctx, *suite, *max as usize),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    match render(&report, &cli) {
        Ok(text) => print!("{text}"),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    if report.failed() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
