use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclrc::bounds::{lp_bound, shortening_bound, singleton_report, BoundReport};
use cyclrc::cyclic::SymbolField;
use cyclrc::lrc_rs::Theorem1Params;
use cyclrc::oracle::DEFAULT_CEILING;
use cyclrc::report::{
    analyze, construct_rs_lrc, construct_theorem1, search, verify_paper, AnalyzeOptions, CodeSpecFile, SearchConstraints,
    Status,
};
use cyclrc::{Error, Exec};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "cyclrc", version, about = "Cyclic locally recoverable codes")]
struct Cli {
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV where the output is tabular.
    #[arg(long, global = true)]
    csv: bool,
    /// Largest number of codewords the oracle may enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_CEILING)]
    max_enum: u128,
    /// Worker threads (1 runs sequentially).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Include wall-clock timings in reports.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a code from construction parameters.
    #[command(subcommand)]
    Construct(Construct),
    /// Certify and (when feasible) enumerate a cyclic code given by a spec file.
    Analyze {
        /// Spec file; use `--spec -` for standard input.
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "file")]
        spec: Option<String>,
        /// Skip exhaustive enumeration.
        #[arg(long)]
        certificates_only: bool,
    },
    /// Upper bounds on the dimension of an LRC.
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value = "2")]
        q: String,
        #[arg(long, value_enum, default_value_t = Which::All)]
        which: Which,
    },
    /// Reproduce published examples.
    #[command(subcommand)]
    Verify(Verify),
    /// Search unions of cyclotomic cosets.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "2")]
        q: String,
        #[arg(long)]
        min_k: Option<usize>,
        #[arg(long)]
        max_k: Option<usize>,
        #[arg(long)]
        max_r: Option<usize>,
        #[arg(long)]
        min_d: Option<usize>,
        /// Require two disjoint partition-type recovery sets per coordinate.
        #[arg(long)]
        disjoint_recovery: bool,
        /// Compute exact locality by enumerating duals up to this many words.
        #[arg(long)]
        exact: Option<u128>,
        /// Print at most this many hits.
        #[arg(long)]
        limit: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// Optimal cyclic LRC from its zero set.
    Theorem1 {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long)]
        j: Option<usize>,
        /// Write the spec of the constructed code here.
        #[arg(long)]
        save: Option<PathBuf>,
        #[arg(long)]
        certificates_only: bool,
    },
    /// Evaluation code with good polynomial x^(r+1).
    RsLrc {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        certificates_only: bool,
    },
}

#[derive(Args, Debug)]
struct Shape {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    r: usize,
    /// Field order p^m.
    #[arg(long)]
    q: String,
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// Run every published check and print the table.
    Paper,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Which {
    Singleton,
    Shortening,
    Lp,
    All,
}

fn parse_field(text: &str) -> anyhow::Result<SymbolField> {
    let q: u64 = text.parse().with_context(|| format!("field order {text:?} is not an integer"))?;
    let factors = cyclrc::arith::factorize(q);
    match factors.as_slice() {
        [(p, m)] => Ok(SymbolField::new(*p as u32, *m)),
        _ => Err(anyhow!(Error::InvalidParameters(format!("{q} is not a prime power")))),
    }
}

fn read_spec(file: Option<PathBuf>, spec: Option<String>) -> anyhow::Result<CodeSpecFile> {
    let text = match (file, spec) {
        (_, Some(s)) if s == "-" => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            buf
        }
        (_, Some(path)) => std::fs::read_to_string(&path).with_context(|| format!("reading {path}"))?,
        (Some(path), None) => std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?,
        (None, None) => bail!("a spec file or --spec - is required"),
    };
    Ok(CodeSpecFile::from_json(&text)?)
}

fn emit<T: Serialize>(value: &T) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{}", serde_json::to_string_pretty(value)?) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn bound_csv(reports: &[BoundReport]) {
    println!("name,n,d,r,q,k_bound,log2_size");
    for b in reports {
        println!("{},{},{},{},{},{},{}", b.name, b.n, b.d, b.r, b.q, b.k_bound, b.log2_size.map_or(String::new(), |v| format!("{v:.4}")));
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let exec = if cli.threads == Some(1) { Exec::Sequential } else { Exec::Parallel };
    if let Some(t) = cli.threads.filter(|&t| t > 1) {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global()?;
    }
    let opts = |certificates_only| AnalyzeOptions { ceiling: cli.max_enum, exec, certificates_only, include_runtime: cli.timings };
    match cli.command {
        Command::Construct(Construct::Theorem1 { shape, l, b, j, save, certificates_only }) => {
            let mut params = Theorem1Params::new(shape.n, shape.k, shape.r, parse_field(&shape.q)?);
            if let Some(l) = l {
                params = params.with_l(l);
            }
            if let Some(b) = b {
                params = params.with_b(b);
            }
            if let Some(j) = j {
                params = params.with_j(j);
            }
            let report = construct_theorem1(&params, &opts(certificates_only))?;
            if let Some(path) = save {
                std::fs::write(&path, report.spec.to_json()).with_context(|| format!("writing {}", path.display()))?;
            }
            emit(&report)?;
        }
        Command::Construct(Construct::RsLrc { shape, certificates_only }) => {
            let q = parse_field(&shape.q)?;
            emit(&construct_rs_lrc(q, shape.n, shape.k, shape.r, &opts(certificates_only))?)?;
        }
        Command::Analyze { file, spec, certificates_only } => {
            let spec = read_spec(file, spec)?;
            emit(&analyze(&spec, &opts(certificates_only))?)?;
        }
        Command::Bound { n, d, r, q, which } => {
            let q = parse_field(&q)?.order();
            let mut reports = Vec::new();
            if matches!(which, Which::Singleton | Which::All) {
                reports.push(singleton_report(n, d, r, q)?);
            }
            if matches!(which, Which::Shortening | Which::All) {
                reports.push(shortening_bound(n, d, r, q)?);
            }
            if matches!(which, Which::Lp | Which::All) {
                reports.push(lp_bound(n, d, r, q)?);
            }
            if cli.csv {
                bound_csv(&reports);
            } else {
                emit(&reports)?;
            }
        }
        Command::Verify(Verify::Paper) => {
            let report = verify_paper(&opts(false));
            if cli.json {
                emit(&report)?;
            } else if cli.csv {
                println!("id,quantity,status,expected,observed");
                for c in &report.checks {
                    println!("{},{},{},{:?},{:?}", c.id, c.quantity, c.status, c.expected, c.observed);
                }
            } else {
                print!("{}", report.render());
                let diverged = report.checks.iter().filter(|c| c.status == Status::ExpectedDivergence).count();
                println!("\n{} checks, {} failed, {} expected divergences", report.checks.len(), report.failures(), diverged);
            }
            if report.failures() > 0 {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Search { n, q, min_k, max_k, max_r, min_d, disjoint_recovery, exact, limit } => {
            let constraints = SearchConstraints { min_k, max_k, max_r, min_d, disjoint_recovery, exact_ceiling: exact };
            let mut hits = search(n, parse_field(&q)?, &constraints, exec)?;
            if let Some(limit) = limit {
                hits.truncate(limit);
            }
            if cli.csv {
                println!("k,r,r_method,d_lower,zeros");
                for h in &hits {
                    let zeros: Vec<String> = h.zeros.iter().map(|z| z.to_string()).collect();
                    println!("{},{},{},{},{}", h.k, h.r.map_or(String::new(), |r| r.to_string()), h.r_method, h.d_lower, zeros.join(" "));
                }
            } else {
                emit(&hits)?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(e) if e.is_verification_failure() => 2,
        Some(e) if e.is_resource_limit() => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
