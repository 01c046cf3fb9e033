//! Unsupervised hyperedge inference.
//!
//! The pipeline has four steps:
//!
//! 1. For every requested size `k` and every node `v`, propose `{v}` plus the
//!    `k−1` nearest neighbours of `v` (squared Euclidean, ties to the smaller
//!    index). Identical node sets are merged, so there are at most `L·n`
//!    candidates for `L` sizes.
//! 2. Score each candidate by its largest pairwise squared distance `s′`.
//! 3. Assign probability `w = 1 / (s′ + 1)`, the exact minimiser of
//!    `w s′ − ln w + w` over `(0, 1]`.
//! 4. Keep the most probable candidates, either overall or per size.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::features::FeatureMatrix;
use crate::hypergraph::Hypergraph;
use crate::smoothness::{variant_edge_smoothness, SmoothnessVariant};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub nodes: Vec<usize>,
    pub anchor: usize,
}

impl Candidate {
    pub fn size(&self) -> usize {
        self.nodes.len()
    }
}

/// Candidate hyperedges with optional scores and probabilities, all aligned.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateSet {
    n: usize,
    candidates: Vec<Candidate>,
    sizes: Vec<usize>,
    scores: Option<Vec<f64>>,
    probs: Option<Vec<f64>>,
}

impl CandidateSet {
    /// Assembles a candidate set from parts (e.g. when reading one back from
    /// disk). Node sets are canonicalised and checked for duplicates.
    pub fn from_parts(
        n: usize,
        candidates: Vec<Candidate>,
        scores: Option<Vec<f64>>,
        probs: Option<Vec<f64>>,
    ) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut canonical = Vec::with_capacity(candidates.len());
        for mut c in candidates {
            c.nodes.sort_unstable();
            c.nodes.dedup();
            if c.nodes.len() < 2 {
                return Err(Error::EdgeTooSmall { size: c.nodes.len() });
            }
            if let Some(&index) = c.nodes.iter().find(|&&v| v >= n) {
                return Err(Error::IndexOutOfRange { index, n });
            }
            if !seen.insert(c.nodes.clone()) {
                return Err(Error::DuplicateEdge(c.nodes));
            }
            canonical.push(c);
        }
        for v in [&scores, &probs].into_iter().flatten() {
            if v.len() != canonical.len() {
                return Err(Error::LengthMismatch {
                    expected: canonical.len(),
                    got: v.len(),
                });
            }
        }
        if let Some(&bad) = scores.iter().flatten().find(|s| s.is_nan() || **s < 0.0) {
            return Err(Error::NegativeScore(bad));
        }
        if let Some(&bad) = probs.iter().flatten().find(|p| !(**p > 0.0 && **p <= 1.0)) {
            return Err(Error::BadWeight(bad));
        }
        let mut sizes: Vec<usize> = canonical.iter().map(Candidate::size).collect();
        sizes.sort_unstable();
        sizes.dedup();
        Ok(Self {
            n,
            candidates: canonical,
            sizes,
            scores,
            probs,
        })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn candidates(&self) -> &[Candidate] {
        &self.candidates
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    /// The distinct sizes that were requested, ascending.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn scores(&self) -> Option<&[f64]> {
        self.scores.as_deref()
    }

    pub fn probs(&self) -> Option<&[f64]> {
        self.probs.as_deref()
    }

    /// Number of candidates of each size.
    pub fn counts_by_size(&self) -> BTreeMap<usize, usize> {
        let mut counts: BTreeMap<usize, usize> = self.sizes.iter().map(|&k| (k, 0)).collect();
        for c in &self.candidates {
            *counts.entry(c.size()).or_default() += 1;
        }
        counts
    }

    /// The candidates as an unweighted hypergraph (column order preserved).
    pub fn to_hypergraph(&self) -> Result<Hypergraph> {
        Hypergraph::unweighted(
            self.n,
            self.candidates.iter().map(|c| c.nodes.clone()).collect(),
        )
    }

    /// Candidate indices ordered by probability descending, then score
    /// ascending, then node set lexicographically.
    pub fn ranking(&self) -> Result<Vec<usize>> {
        let probs = self.probs.as_ref().ok_or(Error::MissingProbabilities)?;
        let scores = self.scores.as_ref();
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| {
            probs[b]
                .total_cmp(&probs[a])
                .then_with(|| match scores {
                    Some(s) => s[a].total_cmp(&s[b]),
                    None => Ordering::Equal,
                })
                .then_with(|| self.candidates[a].nodes.cmp(&self.candidates[b].nodes))
        });
        Ok(order)
    }
}

/// How many hyperedges to keep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SelectionSpec {
    /// The `m` most probable candidates overall.
    TopM(usize),
    /// For each size, the requested number of most probable candidates of that size.
    PerSize(BTreeMap<usize, usize>),
}

impl SelectionSpec {
    pub fn top_m(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::BadSelection("top-m must be at least 1".into()));
        }
        Ok(Self::TopM(m))
    }

    pub fn per_size(counts: BTreeMap<usize, usize>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::BadSelection("per-size map is empty".into()));
        }
        for (&k, &c) in &counts {
            if k < 2 {
                return Err(Error::SizeTooSmall(k));
            }
            if c == 0 {
                return Err(Error::BadSelection(format!("count for size {k} must be at least 1")));
            }
        }
        Ok(Self::PerSize(counts))
    }

    /// Total number of hyperedges this selection returns.
    pub fn total(&self) -> usize {
        match self {
            Self::TopM(m) => *m,
            Self::PerSize(c) => c.values().sum(),
        }
    }
}

fn check_sizes(sizes: &[usize], n: usize) -> Result<Vec<usize>> {
    let mut sorted = sizes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.is_empty() {
        return Err(Error::BadSelection("no hyperedge sizes given".into()));
    }
    for &k in &sorted {
        if k < 2 {
            return Err(Error::SizeTooSmall(k));
        }
        if k > n {
            return Err(Error::SizeTooLarge { size: k, n });
        }
    }
    Ok(sorted)
}

/// Node indices ordered by squared distance from each anchor, nearest first,
/// ties to the smaller index. The anchor itself is excluded.
fn neighbour_orders(xv: &FeatureMatrix) -> Vec<Vec<usize>> {
    let n = xv.rows();
    let mut dist = vec![0.0; n * n];
    for a in 0..n {
        for b in a + 1..n {
            let d = xv.sq_dist(a, b);
            dist[a * n + b] = d;
            dist[b * n + a] = d;
        }
    }
    (0..n)
        .map(|a| {
            let row = &dist[a * n..(a + 1) * n];
            let mut order: Vec<usize> = (0..n).filter(|&b| b != a).collect();
            order.sort_by(|&x, &y| row[x].total_cmp(&row[y]).then(x.cmp(&y)));
            order
        })
        .collect()
}

/// Proposes `{v} ∪ kNN(v, k−1)` for every size `k` and anchor `v`,
/// deduplicated, ordered by (size, anchor).
pub fn generate_candidates(xv: &FeatureMatrix, sizes: &[usize]) -> Result<CandidateSet> {
    let n = xv.rows();
    let sizes = check_sizes(sizes, n)?;
    let orders = neighbour_orders(xv);

    let mut seen = HashSet::new();
    let mut candidates = Vec::new();
    for &k in &sizes {
        for (anchor, order) in orders.iter().enumerate() {
            let mut nodes: Vec<usize> = order[..k - 1].to_vec();
            nodes.push(anchor);
            nodes.sort_unstable();
            if seen.insert(nodes.clone()) {
                candidates.push(Candidate { nodes, anchor });
            }
        }
    }
    Ok(CandidateSet {
        n,
        candidates,
        sizes,
        scores: None,
        probs: None,
    })
}

/// Attaches `s′` scores computed with `variant` (the default `Max` is the
/// largest pairwise squared distance).
pub fn score_candidates(
    cs: &CandidateSet,
    xv: &FeatureMatrix,
    variant: SmoothnessVariant,
) -> Result<CandidateSet> {
    if cs.is_empty() {
        return Err(Error::BadSelection("candidate set is empty".into()));
    }
    if xv.rows() != cs.n {
        return Err(Error::RowCountMismatch {
            expected: cs.n,
            got: xv.rows(),
        });
    }
    let scores = cs
        .candidates
        .iter()
        .map(|c| variant_edge_smoothness(&c.nodes, xv, variant))
        .collect::<Result<Vec<_>>>()?;
    Ok(CandidateSet {
        scores: Some(scores),
        probs: None,
        ..cs.clone()
    })
}

/// `wᵢ = 1 / (s′ᵢ + 1)`.
pub fn infer_probabilities(scores: &[f64]) -> Result<Vec<f64>> {
    scores
        .iter()
        .map(|&s| {
            if s >= 0.0 {
                Ok(1.0 / (s + 1.0))
            } else {
                Err(Error::NegativeScore(s))
            }
        })
        .collect()
}

/// Fills in probabilities from the scores already attached to `cs`.
pub fn with_probabilities(cs: &CandidateSet) -> Result<CandidateSet> {
    let scores = cs.scores.as_ref().ok_or(Error::MissingScores)?;
    let probs = infer_probabilities(scores)?;
    Ok(CandidateSet {
        probs: Some(probs),
        ..cs.clone()
    })
}

/// Picks the most probable candidates according to `spec`. Edges of the
/// returned hypergraph appear in rank order (per size ascending for `PerSize`).
pub fn select_edges(cs: &CandidateSet, spec: &SelectionSpec) -> Result<Hypergraph> {
    let ranking = cs.ranking()?;
    let chosen: Vec<usize> = match spec {
        SelectionSpec::TopM(m) => {
            if *m == 0 {
                return Err(Error::BadSelection("top-m must be at least 1".into()));
            }
            if *m > cs.len() {
                return Err(Error::NotEnoughCandidates {
                    size: None,
                    requested: *m,
                    available: cs.len(),
                });
            }
            ranking[..*m].to_vec()
        }
        SelectionSpec::PerSize(counts) => {
            let mut chosen = Vec::new();
            for (&k, &want) in counts {
                let of_size: Vec<usize> = ranking
                    .iter()
                    .copied()
                    .filter(|&i| cs.candidates[i].size() == k)
                    .collect();
                if want > of_size.len() {
                    return Err(Error::NotEnoughCandidates {
                        size: Some(k),
                        requested: want,
                        available: of_size.len(),
                    });
                }
                chosen.extend_from_slice(&of_size[..want]);
            }
            chosen
        }
    };
    Hypergraph::unweighted(
        cs.n,
        chosen.iter().map(|&i| cs.candidates[i].nodes.clone()).collect(),
    )
}

/// Output of [`run_hgsi`].
#[derive(Debug, Clone, PartialEq)]
pub struct InferenceResult {
    /// Every candidate with its score and probability.
    pub candidates: CandidateSet,
    pub selected: Hypergraph,
}

/// Runs the full pipeline: candidates → scores → probabilities → selection.
pub fn run_hgsi(
    xv: &FeatureMatrix,
    sizes: &[usize],
    spec: &SelectionSpec,
    variant: SmoothnessVariant,
) -> Result<InferenceResult> {
    let cs = generate_candidates(xv, sizes)?;
    let cs = score_candidates(&cs, xv, variant)?;
    let cs = with_probabilities(&cs)?;
    let selected = select_edges(&cs, spec)?;
    Ok(InferenceResult {
        candidates: cs,
        selected,
    })
}

/// Approximate number of target hyperedges, `Σ_k m^p_k · ρ_k`. Sizes that
/// have a count but no `ρ` contribute nothing.
pub fn estimate_edge_count(
    counts: &BTreeMap<usize, usize>,
    rho: &BTreeMap<usize, f64>,
) -> Result<f64> {
    let mut total = 0.0;
    for (&k, &r) in rho {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::BadRho(r));
        }
        let count = counts.get(&k).ok_or(Error::UnknownSize(k))?;
        total += *count as f64 * r;
    }
    Ok(total)
}
