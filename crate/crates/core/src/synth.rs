//! Synthetic benchmark hypergraphs with a controlled overlap rate, and
//! datasets whose features are sampled from the incidence-graph Gaussian.
//!
//! The overlap rate of a hyperedge is the fraction of its nodes that belong
//! to two or more hyperedges; the hypergraph's rate is the mean over edges.
//!
//! Generation plants edges one at a time. After the first edge, each new
//! `k`-edge takes about `p·k` of its nodes from one earlier edge, preferring
//! nodes not yet shared, and the rest from fresh nodes. The share `p` is bisected against the measured
//! overlap rate; a run that misses the target restarts with a new stream.

use std::collections::{BTreeMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::features::FeatureMatrix;
use crate::hypergraph::Hypergraph;
use crate::probmodel::{incidence_laplacian, sample_features, GaussianModelConfig};
use crate::splitmix64;

/// Largest allowed distance between achieved and requested overlap.
pub const OVERLAP_TOLERANCE: f64 = 0.05;
/// Restarts with fresh random streams before giving up.
pub const MAX_ATTEMPTS: u64 = 50;
const BISECTION_STEPS: usize = 30;
/// Stop searching once this close to the target.
const GOOD_ENOUGH: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SynthConfig {
    pub n: usize,
    /// Hyperedge size → number of hyperedges of that size.
    pub edge_spec: BTreeMap<usize, usize>,
    pub target_overlap: f64,
    pub sigma: f64,
    pub dim: usize,
    pub seed: u64,
}

impl SynthConfig {
    /// `n` nodes, `count` hyperedges of size `size`, default σ and desk-scale `d`.
    pub fn uniform(n: usize, size: usize, count: usize, target_overlap: f64, seed: u64) -> Self {
        Self {
            n,
            edge_spec: [(size, count)].into(),
            target_overlap,
            sigma: GaussianModelConfig::DEFAULT_SIGMA,
            dim: GaussianModelConfig::DESK_DIM,
            seed,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edge_spec.values().sum()
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InfeasibleConfig(msg));
        if self.n == 0 {
            return Err(Error::NoNodes);
        }
        if !(0.0..1.0).contains(&self.target_overlap) {
            return bad(format!("target overlap {} outside [0, 1)", self.target_overlap));
        }
        if self.edge_count() == 0 {
            return bad("no hyperedges requested".into());
        }
        for &k in self.edge_spec.keys() {
            if k < 2 {
                return Err(Error::SizeTooSmall(k));
            }
            if k > self.n {
                return Err(Error::SizeTooLarge { size: k, n: self.n });
            }
        }
        GaussianModelConfig::new(self.sigma, self.dim, self.seed)?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticDataset {
    pub truth: Hypergraph,
    pub xv: FeatureMatrix,
    pub xe: FeatureMatrix,
    pub config: SynthConfig,
    pub achieved_overlap: f64,
}

/// Per-edge overlap rates and their mean.
pub fn overlap_rate(h: &Hypergraph) -> Result<(Vec<f64>, f64)> {
    if h.edge_count() == 0 {
        return Err(Error::EmptyHypergraph);
    }
    let deg = h.node_degrees();
    let per_edge: Vec<f64> = h
        .edges()
        .iter()
        .map(|e| e.iter().filter(|&&v| deg[v] >= 2).count() as f64 / e.len() as f64)
        .collect();
    let avg = per_edge.iter().sum::<f64>() / per_edge.len() as f64;
    Ok((per_edge, avg))
}

/// Picks `count` distinct covered nodes for a new edge. Nodes come from one
/// earlier edge that still has unshared members, unshared members first;
/// any shortfall is topped up from other covered nodes, again unshared first.
/// Preferring unshared nodes keeps degrees low instead of growing hubs.
fn draw_shared(
    rng: &mut ChaCha8Rng,
    edges: &[Vec<usize>],
    degree: &[usize],
    covered: &[usize],
    count: usize,
) -> Vec<usize> {
    if count == 0 {
        return Vec::new();
    }
    let open: Vec<&Vec<usize>> = edges
        .iter()
        .filter(|e| e.iter().any(|&v| degree[v] == 1))
        .collect();
    let source: &[usize] = if open.is_empty() {
        &edges[rng.random_range(0..edges.len())]
    } else {
        open[rng.random_range(0..open.len())]
    };

    let mut nodes = Vec::with_capacity(count);
    let take_from = |pool: Vec<usize>, nodes: &mut Vec<usize>, rng: &mut ChaCha8Rng| {
        let (mut single, mut multi): (Vec<usize>, Vec<usize>) = pool
            .into_iter()
            .filter(|v| !nodes.contains(v))
            .partition(|&v| degree[v] == 1);
        single.shuffle(rng);
        multi.shuffle(rng);
        let need = count - nodes.len();
        nodes.extend(single.into_iter().chain(multi).take(need));
    };
    take_from(source.to_vec(), &mut nodes, rng);
    if nodes.len() < count {
        take_from(covered.to_vec(), &mut nodes, rng);
    }
    nodes
}

/// Plants every edge with shared-node share `p`. Returns `None` when the
/// stream produced an unavoidable duplicate edge.
fn plant(cfg: &SynthConfig, p: f64, stream: u64) -> Option<Hypergraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(stream);
    let mut sizes: Vec<usize> = cfg
        .edge_spec
        .iter()
        .flat_map(|(&k, &c)| std::iter::repeat_n(k, c))
        .collect();
    sizes.shuffle(&mut rng);
    let mut fresh: Vec<usize> = (0..cfg.n).collect();
    fresh.shuffle(&mut rng);

    let mut covered: Vec<usize> = Vec::new();
    let mut degree = vec![0usize; cfg.n];
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut edges = Vec::with_capacity(sizes.len());

    for (i, &k) in sizes.iter().enumerate() {
        // Independent stream per edge keeps later edges stable as `p` moves.
        let mut erng = ChaCha8Rng::seed_from_u64(splitmix64(stream ^ splitmix64(i as u64 + 1)));
        let want = (p * k as f64 + erng.random::<f64>()).floor() as usize;
        let mut shared = want.min(k).min(covered.len());
        if k - shared > fresh.len() {
            shared = k - fresh.len();
        }
        if shared > covered.len() {
            return None;
        }
        let new_count = k - shared;

        let mut edge = None;
        for _ in 0..16 {
            let mut nodes = draw_shared(&mut erng, &edges, &degree, &covered, shared);
            nodes.extend_from_slice(&fresh[fresh.len() - new_count..]);
            nodes.sort_unstable();
            if !seen.contains(&nodes) {
                edge = Some(nodes);
                break;
            }
            if new_count > 0 {
                break;
            }
        }
        let nodes = edge?;
        let new_nodes = fresh.split_off(fresh.len() - new_count);
        covered.extend(new_nodes);
        for &v in &nodes {
            degree[v] += 1;
        }
        seen.insert(nodes.clone());
        edges.push(nodes);
    }
    Hypergraph::unweighted(cfg.n, edges).ok()
}

/// Generates a hypergraph with exactly the requested per-size edge counts
/// and mean overlap rate within [`OVERLAP_TOLERANCE`] of the target.
pub fn generate_ground_truth(cfg: &SynthConfig) -> Result<Hypergraph> {
    cfg.validate()?;
    let target = cfg.target_overlap;
    let mut best: Option<(f64, Hypergraph)> = None;

    let consider = |h: Option<Hypergraph>, best: &mut Option<(f64, Hypergraph)>| -> Option<f64> {
        let h = h?;
        let (_, avg) = overlap_rate(&h).ok()?;
        let diff = (avg - target).abs();
        if best.as_ref().is_none_or(|(d, _)| diff < *d) {
            *best = Some((diff, h));
        }
        Some(avg)
    };

    for attempt in 0..MAX_ATTEMPTS {
        let stream = splitmix64(cfg.seed ^ splitmix64(attempt.wrapping_add(0x5eed)));
        let (mut lo, mut hi) = (0.0, 1.0);
        consider(plant(cfg, 0.0, stream), &mut best);
        for _ in 0..BISECTION_STEPS {
            if best.as_ref().is_some_and(|(d, _)| *d <= GOOD_ENOUGH) {
                break;
            }
            let mid = 0.5 * (lo + hi);
            match consider(plant(cfg, mid, stream), &mut best) {
                Some(avg) if avg < target => lo = mid,
                // Too much overlap, or a failed plant (which only happens
                // with heavy sharing).
                _ => hi = mid,
            }
        }
        if best.as_ref().is_some_and(|(d, _)| *d <= GOOD_ENOUGH) {
            break;
        }
    }

    match best {
        Some((diff, h)) if diff <= OVERLAP_TOLERANCE => Ok(h),
        Some((diff, _)) => Err(Error::InfeasibleConfig(format!(
            "closest overlap rate was {:.3} away from the target {target}",
            diff
        ))),
        None => Err(Error::InfeasibleConfig(format!(
            "could not place {} hyperedges on {} nodes",
            cfg.edge_count(),
            cfg.n
        ))),
    }
}

/// Ground truth plus node and hyperedge features drawn from
/// `N(0, (L_H + σ²I)⁻¹)`.
pub fn make_dataset(cfg: &SynthConfig) -> Result<SyntheticDataset> {
    let truth = generate_ground_truth(cfg)?;
    let (_, achieved_overlap) = overlap_rate(&truth)?;
    let l = incidence_laplacian(&truth);
    let model = GaussianModelConfig::new(cfg.sigma, cfg.dim, splitmix64(cfg.seed ^ 0xfea7))?;
    let (xv, xe) = sample_features(&l, &model)?;
    let xe = xe.ok_or(Error::EmptyHypergraph)?;
    Ok(SyntheticDataset {
        truth,
        xv,
        xe,
        config: cfg.clone(),
        achieved_overlap,
    })
}
