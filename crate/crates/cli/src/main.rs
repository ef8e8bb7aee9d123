use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use permzhu::report::{self, Check, RunConfig};
use permzhu::vosa::Weight;

#[derive(Parser)]
#[command(name = "permzhu", version, about = "Twisted Zhu algebras of cyclic permutation orbifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute quotient algebras, their dimensions and structure constants.
    Compute(RunArgs),
    /// Check that the cycle map is a well-defined algebra isomorphism.
    Verify(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Base algebra.
    #[arg(long, default_value = "fermion")]
    algebra: String,
    /// Number of tensor factors; the permutation is the k-cycle unless --cycles is given.
    #[arg(long)]
    k: Option<usize>,
    /// Cycle type of the permutation, e.g. 2,1.
    #[arg(long, value_delimiter = ',')]
    cycles: Option<Vec<usize>>,
    /// Weight cutoff N of the quotient (e.g. 2, 3/2, 1.5).
    #[arg(long, value_parser = parse_weight)]
    cutoff: Option<Weight>,
    /// Weight bound on generating pairs of the relation span.
    #[arg(long, value_parser = parse_weight)]
    gen_cutoff: Option<Weight>,
    /// Checks to run: well-defined, homomorphism, iso, cycles, reductions, conjugation.
    #[arg(long, value_delimiter = ',', value_parser = parse_check)]
    checks: Vec<Check>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for cached relation spans.
    #[arg(long, env = "PERMZHU_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
}

fn parse_weight(s: &str) -> Result<Weight, String> {
    Weight::parse(s).map_err(|e| e.to_string())
}

fn parse_check(s: &str) -> Result<Check, String> {
    Check::parse(s).map_err(|e| e.to_string())
}

fn emit(json: &serde_json::Value, out: Option<&Path>) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(json).expect("report serializes");
    text.push('\n');
    match out {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (verify, args) = match cli.command {
        Command::Compute(a) => (false, a),
        Command::Verify(a) => (true, a),
    };
    let checks: BTreeSet<Check> = args.checks.iter().copied().collect();
    let cfg = match RunConfig::new(&args.algebra, args.k, args.cycles.clone(), args.cutoff, args.gen_cutoff, checks) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cache = args.cache_dir.as_deref();
    let result = if verify {
        report::verify(&cfg, cache).map(|r| (r.report.all_passed, serde_json::to_value(&r)))
    } else {
        report::compute(&cfg, cache).map(|r| (true, serde_json::to_value(&r)))
    };
    let (ok, json) = match result {
        Ok((ok, Ok(json))) => (ok, json),
        Ok((_, Err(e))) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    for w in json["report"]["warnings"].as_array().into_iter().flatten() {
        eprintln!("warning: {}", w.as_str().unwrap_or_default());
    }
    if let Err(e) = emit(&json, args.out.as_deref()) {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(1);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
