use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use jacktop::analysis::Report;
use jacktop::cache::Cache;
use jacktop::exact::Laurent;
use jacktop::functionals::{free_cumulant, s_functional, t_functional};
use jacktop::jackref::{configure_global, JackOracle, DEFAULT_BOUND};
use jacktop::maps::{census_json, orbit_census, Perm};
use jacktop::topdegree::{cumulant_k, moment_m, TopDegree, DEFAULT_BUDGET};
use jacktop::verify::{self, Suite};
use jacktop::young::Partition;
use jacktop::Error;

/// Top-degree Jack characters: Kerov-Lassalle polynomials, character
/// values and verification suites, all in exact arithmetic.
#[derive(Parser, Debug)]
#[command(name = "jacktop", version)]
struct Cli {
    /// Directory for cached kl_top and Jack polynomial artifacts
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Largest n accepted by map-based computations
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET, value_parser = positive)]
    budget: usize,
    /// Largest diagram size handed to the Jack polynomial oracle
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND, value_parser = positive)]
    jack_bound: usize,
    /// Worker threads (defaults to the number of cores)
    #[arg(long, global = true, value_parser = positive)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    /// Jack character Ch_π, index is the partition π
    Ch,
    /// top-degree part Ch^top_n
    Chtop,
    /// free cumulant R_k
    #[value(name = "R")]
    R,
    /// functional T_k
    #[value(name = "T")]
    T,
    /// functional S_k
    #[value(name = "S")]
    S,
    /// moment M_π, index is a permutation in one-line form
    #[value(name = "M")]
    M,
    /// cumulant K_π, index is a permutation in one-line form
    #[value(name = "K")]
    K,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Kerov-Lassalle polynomial of the top-degree part of Ch_n
    KlTop { n: usize },
    /// Evaluate a functional on a Young diagram such as "4,2,1"
    Eval {
        #[arg(value_enum)]
        kind: Kind,
        index: String,
        lambda: String,
    },
    /// Run a verification suite
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        n: usize,
    },
    /// Orbit representatives of transitive pairs in S_n with their orbit sizes
    Census { n: usize },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v),
        _ => Err(format!("expected a positive integer, got `{s}`")),
    }
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Budget(String),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } | Error::BoundExceeded { .. } => Failure::Budget(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn parse<T: std::str::FromStr<Err = Error>>(s: &str) -> Result<T, Failure> {
    s.parse().map_err(Failure::from)
}

fn print_laurent(v: &Laurent, format: Format) {
    match format {
        Format::Json => println!("{}", v.to_json()),
        Format::Text => println!("{v}"),
    }
}

fn print_reports(reports: &[Report], format: Format) {
    match format {
        Format::Json => {
            let body: Vec<String> = reports.iter().map(Report::to_json).collect();
            println!("[{}]", body.join(","));
        }
        Format::Text => {
            for r in reports {
                println!("{} {} {}", if r.pass { "PASS" } else { "FAIL" }, r.check, r.params);
                for w in &r.witnesses {
                    println!("  {w}");
                }
            }
            let failed = reports.iter().filter(|r| !r.pass).count();
            println!("{} checks, {failed} failed", reports.len());
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let cache = cli.cache_dir.map(Cache::new);
    configure_global(cli.jack_bound, cache.clone());
    let mut td = TopDegree::new(cli.budget);
    if let Some(c) = cache {
        td = td.with_cache(c);
    }
    match cli.command {
        Command::KlTop { n } => {
            let p = td.kl_top(n)?;
            match cli.format {
                Format::Json => println!("{}", p.to_json()),
                Format::Text => println!("{p}"),
            }
        }
        Command::Eval { kind, index, lambda } => {
            let lam: Partition = parse(&lambda)?;
            let idx = || -> Result<usize, Failure> {
                index.parse().map_err(|_| Failure::Usage(format!("invalid index `{index}`")))
            };
            let v = match kind {
                Kind::Ch => JackOracle::global().jack_character(&parse(&index)?, &lam)?,
                Kind::Chtop => td.ch_top_eval(idx()?, &lam)?,
                Kind::R => free_cumulant(idx()?, &lam)?,
                Kind::T => t_functional(idx()?, &lam)?,
                Kind::S => s_functional(idx()?, &lam)?,
                Kind::M | Kind::K => {
                    let pi: Perm = parse(&index)?;
                    td.check_budget(pi.n())?;
                    if matches!(kind, Kind::M) {
                        moment_m(&pi, &lam)?
                    } else {
                        cumulant_k(&pi, &lam)?
                    }
                }
            };
            print_laurent(&v, cli.format);
        }
        Command::Verify { suite, n } => {
            let reports = verify::run(suite, n, &td)?;
            print_reports(&reports, cli.format);
            if reports.iter().any(|r| !r.pass) {
                return Err(Failure::Verify);
            }
        }
        Command::Census { n } => {
            td.check_budget(n)?;
            let census = orbit_census(n)?;
            match cli.format {
                Format::Json => println!("{}", census_json(&census)),
                Format::Text => {
                    for o in &census {
                        println!("{} | {} | {}", o.sigma1, o.sigma2, o.size);
                    }
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Budget(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Verify) => ExitCode::from(3),
    }
}
