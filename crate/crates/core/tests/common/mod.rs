#![allow(dead_code)]

use hgsi::{FeatureMatrix, Hypergraph};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_matrix(rng: &mut ChaCha8Rng, rows: usize, dim: usize) -> FeatureMatrix {
    let data = (0..rows * dim)
        .map(|_| -> f64 { StandardNormal.sample(rng) })
        .collect();
    FeatureMatrix::new(rows, dim, data).unwrap()
}

pub fn gaussian_row(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| StandardNormal.sample(rng)).collect()
}

/// Random hypergraph with `2 ≤ n ≤ max_n` and up to `max_m` distinct edges.
pub fn random_hypergraph(rng: &mut ChaCha8Rng, max_n: usize, max_m: usize, weighted: bool) -> Hypergraph {
    let n = rng.random_range(2..=max_n);
    let target = rng.random_range(0..=max_m);
    let mut edges: Vec<Vec<usize>> = Vec::new();
    for _ in 0..target * 4 {
        if edges.len() == target {
            break;
        }
        let k = rng.random_range(2..=n);
        let mut e: Vec<usize> = index::sample(rng, n, k).into_vec();
        e.sort_unstable();
        if !edges.contains(&e) {
            edges.push(e);
        }
    }
    let weights = weighted.then(|| {
        edges
            .iter()
            .map(|_| rng.random_range(0.01..=1.0))
            .collect()
    });
    Hypergraph::new(n, edges, weights).unwrap()
}

/// Random nonempty hypergraph.
pub fn random_nonempty(rng: &mut ChaCha8Rng, max_n: usize, max_m: usize) -> Hypergraph {
    loop {
        let h = random_hypergraph(rng, max_n, max_m, false);
        if h.edge_count() > 0 {
            return h;
        }
    }
}

/// Max pairwise squared distance by plain enumeration of ordered pairs.
pub fn brute_max_pair(edge: &[usize], xv: &FeatureMatrix) -> f64 {
    let mut best = 0.0f64;
    for &a in edge {
        for &b in edge {
            let mut d = 0.0;
            for c in 0..xv.dim() {
                let t = xv.row(a)[c] - xv.row(b)[c];
                d += t * t;
            }
            best = best.max(d);
        }
    }
    best
}

/// `Σ_i w_i Σ_{v ∈ e_i} ‖x_e_i − x_v‖²` by explicit loops.
pub fn weighted_sum_oracle(h: &Hypergraph, xv: &FeatureMatrix, xe: &FeatureMatrix) -> f64 {
    let mut total = 0.0;
    for (i, e) in h.edges().iter().enumerate() {
        let w = h.weight(i);
        for &v in e {
            for c in 0..xv.dim() {
                let t = xe.row(i)[c] - xv.row(v)[c];
                total += w * t * t;
            }
        }
    }
    total
}

/// Per-coordinate minimiser of `w s − ln w + w` over (0, 1] by nested grid
/// search: a 1e-4 grid, then successively finer grids around the best point.
pub fn grid_minimiser(s: f64) -> f64 {
    let f = |w: f64| w * s - w.ln() + w;
    let mut best = 1.0;
    let mut best_val = f(1.0);
    for i in 1..=10_000 {
        let w = i as f64 * 1e-4;
        let v = f(w);
        if v < best_val {
            best_val = v;
            best = w;
        }
    }
    let mut step = 1e-4;
    while step > 1e-8 {
        let lo = (best - step).max(step / 100.0);
        let hi = (best + step).min(1.0);
        let fine = step / 100.0;
        let mut w = lo;
        while w <= hi {
            let v = f(w);
            if v < best_val {
                best_val = v;
                best = w;
            }
            w += fine;
        }
        step = fine;
    }
    best
}

/// Exact-match count with nested loops.
pub fn brute_true_positives(pred: &Hypergraph, truth: &Hypergraph) -> usize {
    pred.edges()
        .iter()
        .filter(|p| truth.edges().iter().any(|t| t == *p))
        .count()
}
