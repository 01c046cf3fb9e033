//! Smoothness of node features over hyperedges.
//!
//! Two per-edge measures are provided:
//!
//! * the *edge–vertex* measure `s_e = Σ_{v∈e} ‖x_e − x_v‖²`, which needs a
//!   feature vector for the hyperedge itself;
//! * the *vertex-only* measure `s′_e = max_{j,k∈e} ‖x_j − x_k‖²`, which only
//!   needs node features.
//!
//! Both use squared Euclidean distances. The vertex-only measure also comes in
//! Mean / Min / Random flavours for ablation runs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::features::{sq_dist, FeatureMatrix};
use crate::hypergraph::Hypergraph;
use crate::splitmix64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmoothnessKind {
    /// Distances to hyperedge features.
    EdgeVertex,
    /// Pairwise node distances only.
    Vertex,
}

/// Per-hyperedge smoothness values, aligned with the hypergraph's edge order.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothnessVector {
    values: Vec<f64>,
    kind: SmoothnessKind,
}

impl SmoothnessVector {
    pub fn new(values: Vec<f64>, kind: SmoothnessKind) -> Result<Self> {
        if let Some(&bad) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::NegativeScore(bad));
        }
        Ok(Self { values, kind })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn kind(&self) -> SmoothnessKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// ℓ1 norm; the values are nonnegative so this is their sum.
    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }
}

/// How pairwise squared distances inside a hyperedge are reduced to one score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SmoothnessVariant {
    #[default]
    Max,
    Mean,
    Min,
    /// One pair drawn uniformly; the draw depends only on the seed and the
    /// node set, so it is stable under reordering of candidates.
    Random { seed: u64 },
}

impl SmoothnessVariant {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Max => "max",
            Self::Mean => "mean",
            Self::Min => "min",
            Self::Random { .. } => "random",
        }
    }
}

fn check_rows(edge: &[usize], xv: &FeatureMatrix) -> Result<()> {
    match edge.iter().find(|&&v| v >= xv.rows()) {
        Some(&index) => Err(Error::IndexOutOfRange {
            index,
            n: xv.rows(),
        }),
        None => Ok(()),
    }
}

/// `Σ_{v∈edge} ‖x_e − x_v‖²`.
pub fn edge_smoothness_ev(edge: &[usize], xv: &FeatureMatrix, xe: &[f64]) -> Result<f64> {
    if edge.is_empty() {
        return Err(Error::EdgeTooSmall { size: 0 });
    }
    if xe.len() != xv.dim() {
        return Err(Error::DimensionMismatch {
            expected: xv.dim(),
            got: xe.len(),
        });
    }
    check_rows(edge, xv)?;
    Ok(edge.iter().map(|&v| sq_dist(xe, xv.row(v))).sum())
}

fn check_node_rows(h: &Hypergraph, xv: &FeatureMatrix) -> Result<()> {
    if xv.rows() != h.node_count() {
        return Err(Error::RowCountMismatch {
            expected: h.node_count(),
            got: xv.rows(),
        });
    }
    Ok(())
}

/// Edge–vertex smoothness of every edge of `h`; `xe` row `i` holds the
/// features of edge `i`. Returns the total (ℓ1 norm) and the per-edge vector.
pub fn smoothness_ev(
    h: &Hypergraph,
    xv: &FeatureMatrix,
    xe: &FeatureMatrix,
) -> Result<(f64, SmoothnessVector)> {
    check_node_rows(h, xv)?;
    if xe.rows() != h.edge_count() {
        return Err(Error::RowCountMismatch {
            expected: h.edge_count(),
            got: xe.rows(),
        });
    }
    let values = h
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| edge_smoothness_ev(e, xv, xe.row(i)))
        .collect::<Result<Vec<_>>>()?;
    let s = SmoothnessVector::new(values, SmoothnessKind::EdgeVertex)?;
    Ok((s.total(), s))
}

/// Largest pairwise squared distance inside `edge`.
pub fn edge_smoothness_v(edge: &[usize], xv: &FeatureMatrix) -> Result<f64> {
    variant_edge_smoothness(edge, xv, SmoothnessVariant::Max)
}

/// Vertex-only smoothness of every edge of `h`.
pub fn smoothness_v(h: &Hypergraph, xv: &FeatureMatrix) -> Result<(f64, SmoothnessVector)> {
    check_node_rows(h, xv)?;
    let values = h
        .edges()
        .iter()
        .map(|e| edge_smoothness_v(e, xv))
        .collect::<Result<Vec<_>>>()?;
    let s = SmoothnessVector::new(values, SmoothnessKind::Vertex)?;
    Ok((s.total(), s))
}

/// `wᵀ s` where `s` is the edge–vertex smoothness of `candidates`.
pub fn weighted_smoothness_ev(
    w: &[f64],
    candidates: &Hypergraph,
    xv: &FeatureMatrix,
    xe: &FeatureMatrix,
) -> Result<f64> {
    if w.len() != candidates.edge_count() {
        return Err(Error::LengthMismatch {
            expected: candidates.edge_count(),
            got: w.len(),
        });
    }
    if let Some(&bad) = w.iter().find(|&&x| !(0.0..=1.0).contains(&x)) {
        return Err(Error::BadWeight(bad));
    }
    let (_, s) = smoothness_ev(candidates, xv, xe)?;
    Ok(w.iter().zip(s.values()).map(|(w, s)| w * s).sum())
}

/// `wᵀs′ − Σ ln wᵢ + ‖w‖₁`, the objective whose coordinatewise minimiser is
/// `wᵢ = 1 / (s′ᵢ + 1)`.
pub fn objective_fwv(w: &[f64], s_prime: &SmoothnessVector) -> Result<f64> {
    if s_prime.kind() != SmoothnessKind::Vertex {
        return Err(Error::WrongSmoothnessKind { expected: "vertex" });
    }
    if w.len() != s_prime.len() {
        return Err(Error::LengthMismatch {
            expected: s_prime.len(),
            got: w.len(),
        });
    }
    let mut total = 0.0;
    for (&wi, &si) in w.iter().zip(s_prime.values()) {
        if wi.is_nan() || wi <= 0.0 {
            return Err(Error::NonPositiveWeight(wi));
        }
        if wi > 1.0 {
            return Err(Error::BadWeight(wi));
        }
        total += coordinate_objective(wi, si);
    }
    Ok(total)
}

/// One term of [`objective_fwv`]: `w s′ − ln w + w`.
pub fn coordinate_objective(w: f64, s_prime: f64) -> f64 {
    w * s_prime - w.ln() + w
}

/// Reduces the pairwise squared distances inside `edge` according to `variant`.
pub fn variant_edge_smoothness(
    edge: &[usize],
    xv: &FeatureMatrix,
    variant: SmoothnessVariant,
) -> Result<f64> {
    let k = edge.len();
    if k < 2 {
        return Err(Error::EdgeTooSmall { size: k });
    }
    check_rows(edge, xv)?;

    if let SmoothnessVariant::Random { seed } = variant {
        let mut rng = ChaCha8Rng::seed_from_u64(edge_seed(seed, edge));
        let pairs = k * (k - 1) / 2;
        let (a, b) = unrank_pair(rng.random_range(0..pairs), k);
        return Ok(xv.sq_dist(edge[a], edge[b]));
    }

    let mut max = f64::NEG_INFINITY;
    let mut min = f64::INFINITY;
    let mut sum = 0.0;
    for a in 0..k {
        for b in a + 1..k {
            let d = xv.sq_dist(edge[a], edge[b]);
            max = max.max(d);
            min = min.min(d);
            sum += d;
        }
    }
    Ok(match variant {
        SmoothnessVariant::Max => max,
        SmoothnessVariant::Min => min,
        SmoothnessVariant::Mean => sum / (k * (k - 1) / 2) as f64,
        SmoothnessVariant::Random { .. } => unreachable!(),
    })
}

/// Maps `r ∈ [0, k(k−1)/2)` to the `r`-th pair `(a, b)`, `a < b`, in
/// row-major order.
fn unrank_pair(mut r: usize, k: usize) -> (usize, usize) {
    for a in 0..k {
        let row = k - a - 1;
        if r < row {
            return (a, a + 1 + r);
        }
        r -= row;
    }
    unreachable!("pair rank out of range")
}

/// Seed for the Random variant, derived from the variant seed and node set.
fn edge_seed(seed: u64, edge: &[usize]) -> u64 {
    edge.iter()
        .fold(splitmix64(seed), |acc, &v| splitmix64(acc ^ v as u64))
}
