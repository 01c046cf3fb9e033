//! `hgsi`: infer hypergraphs from node features, generate synthetic
//! benchmarks, score predictions, and run parameter sweeps.
//!
//! Exit codes: 0 success, 2 input or I/O error, 3 domain or feasibility error.

mod io;
mod sweep;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use hgsi::{
    f1_exact, hgmse, make_dataset, probability_separation, run_hgsi, GaussianModelConfig,
    SelectionSpec, SmoothnessVariant, SynthConfig,
};
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}

impl From<hgsi::Error> for CliError {
    fn from(e: hgsi::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

#[derive(Parser)]
#[command(name = "hgsi", version, about = "Hypergraph structure inference from node features")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Infer hyperedges from a features CSV.
    Infer(InferArgs),
    /// Generate a synthetic dataset with planted hyperedges.
    Synth(SynthArgs),
    /// Compare a predicted hypergraph against ground truth.
    Eval(EvalArgs),
    /// Repeat synth, infer and eval over a grid of one parameter.
    Sweep(sweep::SweepArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Max,
    Mean,
    Min,
    Random,
}

impl VariantArg {
    pub fn with_seed(self, seed: u64) -> SmoothnessVariant {
        match self {
            VariantArg::Max => SmoothnessVariant::Max,
            VariantArg::Mean => SmoothnessVariant::Mean,
            VariantArg::Min => SmoothnessVariant::Min,
            VariantArg::Random => SmoothnessVariant::Random { seed },
        }
    }
}

/// Parses `k=c[,k=c...]`.
pub fn parse_size_counts(s: &str) -> Result<BTreeMap<usize, usize>, String> {
    let mut out = BTreeMap::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, c) = part
            .split_once('=')
            .ok_or_else(|| format!("expected size=count, got {part:?}"))?;
        let k: usize = k.trim().parse().map_err(|_| format!("bad size in {part:?}"))?;
        let c: usize = c.trim().parse().map_err(|_| format!("bad count in {part:?}"))?;
        if out.insert(k, c).is_some() {
            return Err(format!("size {k} given twice"));
        }
    }
    if out.is_empty() {
        return Err("empty size=count list".into());
    }
    Ok(out)
}

#[derive(Args)]
#[command(group(ArgGroup::new("selection").required(true).args(["top_m", "per_size"])))]
struct InferArgs {
    /// Node features, headerless CSV with one row per node.
    #[arg(long)]
    features: PathBuf,
    /// Candidate hyperedge sizes. Defaults to the sizes named by --per-size.
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    /// Keep the M most probable candidates overall.
    #[arg(long)]
    top_m: Option<usize>,
    /// Keep the c most probable candidates of each size k.
    #[arg(long, value_name = "K=C,...", value_parser = parse_size_counts)]
    per_size: Option<BTreeMap<usize, usize>>,
    #[arg(long, value_enum, default_value_t = VariantArg::Max)]
    variant: VariantArg,
    /// Seed for the random variant.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Divide features by the square root of their dimension first.
    #[arg(long)]
    normalize: bool,
    /// Selected hypergraph (JSON).
    #[arg(long)]
    out: PathBuf,
    /// Every scored candidate (CSV).
    #[arg(long)]
    candidates: Option<PathBuf>,
}

fn cmd_infer(args: InferArgs) -> Result<(), CliError> {
    let spec = match (args.top_m, args.per_size) {
        (Some(m), None) => SelectionSpec::top_m(m)?,
        (None, Some(counts)) => SelectionSpec::per_size(counts)?,
        _ => unreachable!("clap enforces exactly one selection flag"),
    };
    let sizes = match (&spec, args.sizes.is_empty()) {
        (_, false) => args.sizes,
        (SelectionSpec::PerSize(counts), true) => counts.keys().copied().collect(),
        (SelectionSpec::TopM(_), true) => {
            return Err(CliError::Input("--sizes is required with --top-m".into()))
        }
    };
    if let Some(&k) = sizes.iter().find(|&&k| k < 2) {
        return Err(hgsi::Error::SizeTooSmall(k).into());
    }

    let mut xv = io::read_features(&args.features)?;
    if args.normalize {
        xv = xv.per_dimension_scaled();
    }
    let result = run_hgsi(&xv, &sizes, &spec, args.variant.with_seed(args.seed))?;

    io::write_json(&args.out, &result.selected)?;
    if let Some(path) = &args.candidates {
        io::write_candidates(path, &result.candidates)?;
    }
    let mut distinct = sizes.clone();
    distinct.sort_unstable();
    distinct.dedup();
    println!(
        "selected {} of ≤{} candidates",
        result.selected.edge_count(),
        distinct.len() * xv.rows()
    );
    Ok(())
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long)]
    nodes: usize,
    /// Planted hyperedges as size=count pairs.
    #[arg(long, value_name = "K=C,...", value_parser = parse_size_counts)]
    edges: BTreeMap<usize, usize>,
    /// Target mean overlap rate in [0, 1).
    #[arg(long, default_value_t = 0.0)]
    overlap: f64,
    #[arg(long, default_value_t = GaussianModelConfig::FULL_DIM)]
    dim: usize,
    #[arg(long, default_value_t = GaussianModelConfig::DEFAULT_SIGMA)]
    sigma: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output directory, created if missing.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Manifest<'a> {
    n: usize,
    edge_spec: &'a BTreeMap<usize, usize>,
    target_overlap: f64,
    achieved_overlap: f64,
    sigma: f64,
    dim: usize,
    seed: u64,
    tool_version: &'static str,
}

fn cmd_synth(args: SynthArgs) -> Result<(), CliError> {
    let cfg = SynthConfig {
        n: args.nodes,
        edge_spec: args.edges,
        target_overlap: args.overlap,
        sigma: args.sigma,
        dim: args.dim,
        seed: args.seed,
    };
    let ds = make_dataset(&cfg)?;
    std::fs::create_dir_all(&args.out)
        .map_err(|e| CliError::Input(format!("{}: {e}", args.out.display())))?;

    let dir = args.out.as_path();
    io::write_features(&dir.join("node_features.csv"), &ds.xv)?;
    io::write_features(&dir.join("edge_features.csv"), &ds.xe)?;
    io::write_json(&dir.join("truth.json"), &ds.truth)?;
    io::write_json(
        &dir.join("manifest.json"),
        &Manifest {
            n: cfg.n,
            edge_spec: &cfg.edge_spec,
            target_overlap: cfg.target_overlap,
            achieved_overlap: ds.achieved_overlap,
            sigma: cfg.sigma,
            dim: cfg.dim,
            seed: cfg.seed,
            tool_version: env!("CARGO_PKG_VERSION"),
        },
    )?;
    println!(
        "wrote {} hyperedges on {} nodes to {} (overlap {:.4})",
        ds.truth.edge_count(),
        cfg.n,
        dir.display(),
        ds.achieved_overlap
    );
    Ok(())
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    pred: PathBuf,
    #[arg(long)]
    truth: PathBuf,
    /// Scored candidates, for the probability separation report.
    #[arg(long)]
    candidates: Option<PathBuf>,
    /// Metrics JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct Separation {
    truth_mean: Option<f64>,
    other_mean: Option<f64>,
    gap: Option<f64>,
}

#[derive(Serialize)]
struct Metrics {
    precision: f64,
    recall: f64,
    f1: f64,
    hgmse: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    separation: Option<Separation>,
}

fn cmd_eval(args: EvalArgs) -> Result<(), CliError> {
    let pred = io::read_hypergraph(&args.pred)?;
    let truth = io::read_hypergraph(&args.truth)?;
    if pred.node_count() != truth.node_count() {
        return Err(CliError::Input(format!(
            "node counts differ: prediction has {}, truth has {}",
            pred.node_count(),
            truth.node_count()
        )));
    }
    let m = f1_exact(&pred, &truth)?;
    let separation = match &args.candidates {
        Some(path) => {
            let cs = io::read_candidates(path, truth.node_count())?;
            let r = probability_separation(&cs, &truth)?;
            Some(Separation { truth_mean: r.mean_truth_prob, other_mean: r.mean_other_prob, gap: r.gap() })
        }
        None => None,
    };
    let metrics = Metrics {
        precision: m.precision,
        recall: m.recall,
        f1: m.f1,
        hgmse: hgmse(&pred, &truth)?,
        separation,
    };

    let mut line = format!(
        "precision {:.4} | recall {:.4} | f1 {:.4} | hgmse {:.4}",
        metrics.precision, metrics.recall, metrics.f1, metrics.hgmse
    );
    if let Some(gap) = metrics.separation.as_ref().and_then(|s| s.gap) {
        line.push_str(&format!(" | gap {gap:.4}"));
    }
    println!("{line}");
    if let Some(out) = &args.out {
        io::write_json(out, &metrics)?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Infer(a) => cmd_infer(a),
        Command::Synth(a) => cmd_synth(a),
        Command::Eval(a) => cmd_eval(a),
        Command::Sweep(a) => sweep::cmd_sweep(a),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hgsi: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
