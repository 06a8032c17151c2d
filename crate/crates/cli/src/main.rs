//! `rigidity <experiment> [options]` runs a seeded experiment and writes a CSV
//! plus a JSON summary. `rigidity graph <load|store>` checks and
//! canonicalizes the JSON file formats.
//!
//! Exit codes: 0 success, 1 i/o failure, 2 usage, 3 validation, 4 resource cap.
//! A run whose trials failed still writes all of its output, then exits with
//! the largest code among the trial errors.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use linerig::experiments::{run_experiment, write_outputs, ExperimentConfig, ExperimentKind};
use linerig::io;
use linerig::par::Execution;
use linerig::ratio::parse_rational64;
use linerig::Error;

const VERSION: &str = env!("RIGIDITY_VERSION");

#[derive(Parser)]
#[command(name = "rigidity", version = VERSION, about = "Line rigidity experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load or store graph, embedding and model-L JSON files.
    Graph {
        #[command(subcommand)]
        action: GraphAction,
    },
    /// Largest reconstructible set of the giant 2-core of G(n, lambda/n), relative to the kernel size.
    #[command(name = "theorem1-desk")]
    RatioDesk(RunArgs),
    /// Random 17-regular graphs: rigid-map classes, reconstructibility and second eigenvalue.
    Toy17(RunArgs),
    /// Fraction of kernel vertices at which every small connected set is sparse with a large boundary.
    #[command(name = "eventd-census")]
    EventdCensus(RunArgs),
    /// How often a random path of s edges extends a mismatched pair of ambient points.
    #[command(name = "claim34")]
    PathExtension(RunArgs),
    /// Structural and distributional checks on model L samples.
    #[command(name = "validate-models")]
    ValidateModels(RunArgs),
    /// Vertex expansion of pruned kernels, exact on small kernels and sampled otherwise.
    #[command(name = "expansion-audit")]
    ExpansionAudit(RunArgs),
    /// Core and kernel sizes before and after pruning to a subcubic kernel.
    #[command(name = "prune-stats")]
    PruneStats(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Read the whole config (or a previous run's summary) from this file;
    /// only --out and --sequential may be combined with it.
    #[arg(long, conflicts_with_all = ["n", "lambda", "beta", "c", "trials", "seed", "cap", "param"])]
    config: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    #[arg(long)]
    c: Option<String>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// `--cap.<name> <value>`, repeatable.
    #[arg(long = "cap", value_name = "NAME=VALUE")]
    cap: Vec<String>,
    /// `--param.<name> <value>`, repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    param: Vec<String>,
    /// CSV path; the summary goes to the same stem with `.summary.json`.
    #[arg(long)]
    out: Option<String>,
    /// Run trials on the calling thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Graph,
    Embedding,
    ModelL,
}

#[derive(Subcommand)]
enum GraphAction {
    /// Parse and validate a file, printing its canonical form.
    Load {
        #[arg(long, value_enum, default_value = "graph")]
        format: Format,
        path: PathBuf,
    },
    /// Read JSON from stdin, validate it and write the canonical form.
    Store {
        #[arg(long, value_enum, default_value = "graph")]
        format: Format,
        path: PathBuf,
    },
}

/// Rewrites `--cap.size 6` and `--cap.size=6` into `--cap size=6`, likewise
/// for `--param.`.
fn expand_dotted(args: impl IntoIterator<Item = String>) -> Vec<String> {
    let mut out = Vec::new();
    let mut it = args.into_iter();
    while let Some(a) = it.next() {
        let dotted = ["--cap.", "--param."].into_iter().find(|p| a.starts_with(p));
        match dotted {
            Some(prefix) => {
                let rest = &a[prefix.len()..];
                out.push(prefix.trim_end_matches('.').to_string());
                if rest.contains('=') {
                    out.push(rest.to_string());
                } else {
                    let value = it.next().unwrap_or_default();
                    out.push(format!("{rest}={value}"));
                }
            }
            None => out.push(a),
        }
    }
    out
}

fn key_value(s: &str) -> Result<(String, String), Error> {
    match s.split_once('=') {
        Some((k, v)) if !k.is_empty() && !v.is_empty() => Ok((k.to_string(), v.to_string())),
        _ => Err(Error::Usage(format!("expected NAME=VALUE, got {s:?}"))),
    }
}

fn usage_rational(flag: &str, s: &str) -> Result<num_rational::Rational64, Error> {
    parse_rational64(s).map_err(|_| Error::Usage(format!("--{flag}: cannot parse {s:?}")))
}

fn build_config(kind: ExperimentKind, a: &RunArgs) -> Result<ExperimentConfig, Error> {
    let mut cfg = match &a.config {
        Some(path) => {
            let cfg = ExperimentConfig::from_json(&io::read_file(path)?)?;
            if cfg.experiment != kind {
                return Err(Error::Usage(format!("config is for {}, not {kind}", cfg.experiment)));
            }
            cfg
        }
        None => {
            let mut cfg = ExperimentConfig::new(kind);
            if let Some(n) = a.n {
                cfg.n = n;
            }
            if let Some(l) = &a.lambda {
                cfg.lambda = usage_rational("lambda", l)?;
            }
            cfg.beta = a.beta.as_deref().map(|b| usage_rational("beta", b)).transpose()?;
            cfg.c = a.c.as_deref().map(|c| usage_rational("c", c)).transpose()?;
            if let Some(t) = a.trials {
                cfg.trials = t;
            }
            if let Some(s) = a.seed {
                cfg.master_seed = s;
            }
            for c in &a.cap {
                let (k, v) = key_value(c)?;
                let v: u64 = v.parse().map_err(|_| Error::Usage(format!("cap {k}: {v:?} is not an integer")))?;
                cfg.caps.insert(k, v);
            }
            for p in &a.param {
                let (k, v) = key_value(p)?;
                cfg.params.insert(k, v);
            }
            cfg
        }
    };
    if let Some(out) = &a.out {
        cfg.output_path = out.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(kind: ExperimentKind, a: &RunArgs) -> Result<(), Error> {
    let cfg = build_config(kind, a)?;
    let exec = if a.sequential { Execution::Sequential } else { Execution::Parallel };
    let start = Instant::now();
    let result = run_experiment(&cfg, exec)?;
    let (csv, summary) = write_outputs(&result, VERSION, start.elapsed().as_secs_f64())?;
    println!("{}", csv.display());
    println!("{}", summary.display());
    let worst = result.records.iter().filter_map(|r| r.outcome.as_ref().err()).max_by_key(|e| e.exit_code());
    match worst {
        Some(e) => {
            eprintln!("{} of {} trials failed", result.failures(), result.records.len());
            Err(e.clone())
        }
        None => Ok(()),
    }
}

fn graph(action: &GraphAction) -> Result<(), Error> {
    let canonical = |format: Format, text: &str| -> Result<String, Error> {
        Ok(match format {
            Format::Graph => io::graph_to_string(&io::graph_from_str(text)?),
            Format::Embedding => io::embedding_to_string(&io::embedding_from_str(text)?),
            Format::ModelL => io::model_l_to_string(&io::model_l_from_str(text)?),
        })
    };
    match action {
        GraphAction::Load { format, path } => println!("{}", canonical(*format, &io::read_file(path)?)?),
        GraphAction::Store { format, path } => {
            let mut text = String::new();
            std::io::stdin().read_to_string(&mut text)?;
            io::write_file(path, &canonical(*format, &text)?)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse_from(expand_dotted(std::env::args())) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Graph { action } => graph(action),
        Command::RatioDesk(a) => run(ExperimentKind::RatioDesk, a),
        Command::Toy17(a) => run(ExperimentKind::Toy17, a),
        Command::EventdCensus(a) => run(ExperimentKind::EventdCensus, a),
        Command::PathExtension(a) => run(ExperimentKind::PathExtension, a),
        Command::ValidateModels(a) => run(ExperimentKind::ValidateModels, a),
        Command::ExpansionAudit(a) => run(ExperimentKind::ExpansionAudit, a),
        Command::PruneStats(a) => run(ExperimentKind::PruneStats, a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rigidity: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn dotted_flags_are_expanded() {
        assert_eq!(
            expand_dotted(strings(&["rigidity", "toy17", "--cap.swaps", "10", "--param.d=3", "--n", "8"])),
            strings(&["rigidity", "toy17", "--cap", "swaps=10", "--param", "d=3", "--n", "8"])
        );
    }

    #[test]
    fn key_value_requires_both_sides() {
        assert!(key_value("a=1").is_ok());
        assert!(key_value("=1").is_err());
        assert!(key_value("a=").is_err());
    }
}
