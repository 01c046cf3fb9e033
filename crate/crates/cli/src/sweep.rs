//! One-axis parameter sweeps over synthetic datasets.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use hgsi::{f1_exact, hgmse, make_dataset, run_hgsi, GaussianModelConfig, SelectionSpec, SynthConfig};
use rayon::prelude::*;

use crate::{CliError, VariantArg};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Axis {
    Nodes,
    EdgeSize,
    Overlap,
    Variant,
}

impl Axis {
    fn name(self) -> &'static str {
        match self {
            Axis::Nodes => "nodes",
            Axis::EdgeSize => "edge-size",
            Axis::Overlap => "overlap",
            Axis::Variant => "variant",
        }
    }
}

#[derive(Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    axis: Axis,
    /// Comma-separated grid values for the chosen axis.
    #[arg(long, value_delimiter = ',', required = true)]
    values: Vec<String>,
    /// Repetitions per grid point; repetition r uses seed + r.
    #[arg(long, default_value_t = 10)]
    reps: u64,
    #[arg(long, default_value_t = 100)]
    nodes: usize,
    #[arg(long, default_value_t = 8)]
    edge_size: usize,
    /// Number of planted hyperedges.
    #[arg(long, default_value_t = 12)]
    edges: usize,
    #[arg(long, default_value_t = 0.3)]
    overlap: f64,
    #[arg(long, default_value_t = GaussianModelConfig::FULL_DIM)]
    dim: usize,
    #[arg(long, default_value_t = GaussianModelConfig::DEFAULT_SIGMA)]
    sigma: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = VariantArg::Max)]
    variant: VariantArg,
    /// Long-format results CSV.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone)]
struct Point {
    label: String,
    nodes: usize,
    edge_size: usize,
    overlap: f64,
    variant: VariantArg,
}

struct Outcome {
    seed: u64,
    result: Result<(f64, f64), String>,
}

fn grid(args: &SweepArgs) -> Result<Vec<Point>, CliError> {
    let base = Point {
        label: String::new(),
        nodes: args.nodes,
        edge_size: args.edge_size,
        overlap: args.overlap,
        variant: args.variant,
    };
    let bad = |v: &str| CliError::Input(format!("bad {} value {v:?}", args.axis.name()));
    args.values
        .iter()
        .map(|raw| {
            let v = raw.trim();
            let mut p = Point { label: v.to_string(), ..base.clone() };
            match args.axis {
                Axis::Nodes => p.nodes = v.parse().map_err(|_| bad(v))?,
                Axis::EdgeSize => p.edge_size = v.parse().map_err(|_| bad(v))?,
                Axis::Overlap => p.overlap = v.parse().map_err(|_| bad(v))?,
                Axis::Variant => p.variant = VariantArg::from_str(v, true).map_err(|_| bad(v))?,
            }
            Ok(p)
        })
        .collect()
}

fn run_point(p: &Point, args: &SweepArgs, seed: u64) -> Result<(f64, f64), String> {
    let cfg = SynthConfig {
        n: p.nodes,
        edge_spec: [(p.edge_size, args.edges)].into(),
        target_overlap: p.overlap,
        sigma: args.sigma,
        dim: args.dim,
        seed,
    };
    let ds = make_dataset(&cfg).map_err(|e| e.to_string())?;
    let spec = SelectionSpec::PerSize(cfg.edge_spec.clone());
    let r = run_hgsi(&ds.xv, &[p.edge_size], &spec, p.variant.with_seed(seed)).map_err(|e| e.to_string())?;
    let f1 = f1_exact(&r.selected, &ds.truth).map_err(|e| e.to_string())?.f1;
    let err = hgmse(&r.selected, &ds.truth).map_err(|e| e.to_string())?;
    Ok((f1, err))
}

/// Mean and sample standard deviation.
fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

pub fn cmd_sweep(args: SweepArgs) -> Result<(), CliError> {
    let points = grid(&args)?;
    if args.reps == 0 {
        return Err(CliError::Input("--reps must be at least 1".into()));
    }
    let jobs: Vec<(usize, u64)> = (0..points.len())
        .flat_map(|i| (0..args.reps).map(move |r| (i, r)))
        .collect();
    // Parallel evaluation; collect() keeps grid order.
    let outcomes: Vec<Outcome> = jobs
        .par_iter()
        .map(|&(i, r)| {
            let seed = args.seed.wrapping_add(r);
            Outcome { seed, result: run_point(&points[i], &args, seed) }
        })
        .collect();

    let file = std::fs::File::create(&args.out)
        .map_err(|e| CliError::Input(format!("{}: {e}", args.out.display())))?;
    let mut out = csv::Writer::from_writer(file);
    let io_err = |e: csv::Error| CliError::Input(format!("{}: {e}", args.out.display()));
    out.write_record(["kind", "axis", "value", "seed", "status", "f1", "hgmse", "f1_std", "hgmse_std"])
        .map_err(io_err)?;
    let axis = args.axis.name();
    let per_point: Vec<&[Outcome]> = outcomes.chunks(args.reps as usize).collect();

    for (p, runs) in points.iter().zip(&per_point) {
        for o in runs.iter() {
            let row = match &o.result {
                Ok((f1, err)) => ["ok".to_string(), f1.to_string(), err.to_string()],
                Err(msg) => [format!("error: {msg}"), String::new(), String::new()],
            };
            out.write_record([
                "run", axis, &p.label, &o.seed.to_string(), &row[0], &row[1], &row[2], "", "",
            ])
            .map_err(io_err)?;
        }
    }

    println!("{:<10} {:>10} {:>18} {:>18} {:>6}", axis, "value", "f1", "hgmse", "ok");
    for (p, runs) in points.iter().zip(&per_point) {
        let ok: Vec<(f64, f64)> = runs.iter().filter_map(|o| o.result.clone().ok()).collect();
        let status = match ok.len() {
            0 => "failed".to_string(),
            k if k == runs.len() => "ok".to_string(),
            k => format!("partial {k}/{}", runs.len()),
        };
        let f1s: Vec<f64> = ok.iter().map(|r| r.0).collect();
        let errs: Vec<f64> = ok.iter().map(|r| r.1).collect();
        let cells = if ok.is_empty() {
            [String::new(), String::new(), String::new(), String::new()]
        } else {
            let (f, fs) = mean_std(&f1s);
            let (h, hs) = mean_std(&errs);
            [f.to_string(), h.to_string(), fs.to_string(), hs.to_string()]
        };
        out.write_record([
            "aggregate", axis, &p.label, "", &status, &cells[0], &cells[1], &cells[2], &cells[3],
        ])
        .map_err(io_err)?;

        let show = |mean: &str, std: &str| match (mean.parse::<f64>(), std.parse::<f64>()) {
            (Ok(m), Ok(s)) => format!("{m:.4} ± {s:.4}"),
            _ => "-".to_string(),
        };
        println!(
            "{:<10} {:>10} {:>18} {:>18} {:>6}",
            "",
            p.label,
            show(&cells[0], &cells[2]),
            show(&cells[1], &cells[3]),
            format!("{}/{}", ok.len(), runs.len())
        );
    }
    out.flush().map_err(|e| CliError::Input(format!("{}: {e}", args.out.display())))
}
