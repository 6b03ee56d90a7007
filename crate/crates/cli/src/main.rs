use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use longchord::corpus::{random_regular, read_lines};
use longchord::cycles::DEFAULT_BUDGET;
use longchord::graph6;
use longchord::verify::{parse_set_spec, run_lines, CheckId, Outcome, RunConfig, Summary};

/// Verify chord theorems and hunt conjecture counterexamples over graph6 corpora.
#[derive(Parser)]
#[command(name = "longchord", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a theorem check (T1.7, C1.8, C1.9, T4.1, T5.1, C1.12, T6.1, TUTTE).
    Check(RunArgs),
    /// Hunt for counterexamples to a conjecture (C1.1, C1.6, C6.2).
    Hunt(RunArgs),
    /// Write seeded random cubic or quartic graphs in graph6.
    Generate(GenArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    id: String,
    /// graph6 file, optionally gzipped.
    #[arg(long)]
    input: PathBuf,
    /// Required-set spec; defaults per check.
    #[arg(long)]
    set: Option<String>,
    /// Node expansions per instantiation.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// JSON report path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    /// 3 or 4.
    #[arg(long, default_value_t = 3)]
    degree: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(args: &RunArgs, hunt: bool) -> Result<Summary> {
    let check: CheckId = args.id.parse().map_err(anyhow::Error::msg)?;
    if check.is_hunt() != hunt {
        let (want, other) = if hunt { ("hunt", "check") } else { ("check", "hunt") };
        bail!("{check} is not a {want} id; use `{other}`");
    }
    let mut cfg = RunConfig::new(check);
    if let Some(text) = &args.set {
        cfg.set = parse_set_spec(text).map_err(|e| anyhow::anyhow!("--set: {e}"))?;
    }
    cfg.budget = args.budget;
    cfg.jobs = args.jobs;
    let lines = read_lines(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    let mut out = output(&args.out)?;
    let mut first = true;
    out.write_all(b"[")?;
    let summary = run_lines(&lines, &cfg, |r| {
        out.write_all(if first { b"\n" } else { b",\n" })?;
        first = false;
        serde_json::to_writer(&mut out, r).map_err(io::Error::other)
    })?;
    out.write_all(b"\n]\n")?;
    out.flush()?;
    eprintln!(
        "{check}: {} graphs, {} reports; {}; hash {}",
        summary.graphs,
        summary.reports,
        summary
            .counts
            .iter()
            .map(|(o, c)| format!("{} {c}", outcome_name(*o)))
            .collect::<Vec<_>>()
            .join(", "),
        summary.hash
    );
    Ok(summary)
}

fn outcome_name(o: Outcome) -> String {
    serde_json::to_value(o)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn generate(args: &GenArgs) -> Result<()> {
    if args.degree != 3 && args.degree != 4 {
        bail!("--degree must be 3 or 4");
    }
    if args.n * args.degree % 2 != 0 || args.degree >= args.n {
        bail!("no {}-regular graph on {} vertices", args.degree, args.n);
    }
    let mut out = output(&args.out)?;
    for i in 0..args.count {
        let seed = args.seed.wrapping_add(i as u64);
        let g = random_regular(args.n, args.degree, seed)
            .with_context(|| format!("generator gave up at seed {seed}"))?;
        writeln!(out, "{}", graph6::encode(&g)?)?;
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Check(a) => run(a, false).map(|s| s.exit_code()),
        Command::Hunt(a) => run(a, true).map(|s| s.exit_code()),
        Command::Generate(a) => generate(a).map(|_| 0),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
