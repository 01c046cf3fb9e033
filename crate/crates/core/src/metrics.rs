//! Agreement between an inferred hypergraph and the ground truth.

use std::collections::HashSet;

use serde::Serialize;

use crate::assignment::min_cost_assignment;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::inference::CandidateSet;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MatchReport {
    pub true_positives: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeparationReport {
    #[serde(rename = "truth_mean", skip_serializing_if = "Option::is_none")]
    pub mean_truth_prob: Option<f64>,
    #[serde(rename = "other_mean", skip_serializing_if = "Option::is_none")]
    pub mean_other_prob: Option<f64>,
}

impl SeparationReport {
    /// `mean_truth_prob − mean_other_prob`, when both groups are nonempty.
    pub fn gap(&self) -> Option<f64> {
        Some(self.mean_truth_prob? - self.mean_other_prob?)
    }
}

fn same_nodes(pred: &Hypergraph, truth: &Hypergraph) -> Result<()> {
    if pred.node_count() != truth.node_count() {
        return Err(Error::NodeCountMismatch {
            left: pred.node_count(),
            right: truth.node_count(),
        });
    }
    Ok(())
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Exact-set F1: a predicted edge counts only if its node set equals a
/// ground-truth edge. Both hypergraphs hold distinct edges, so each truth
/// edge is matched at most once.
pub fn f1_exact(pred: &Hypergraph, truth: &Hypergraph) -> Result<MatchReport> {
    same_nodes(pred, truth)?;
    let truth_set: HashSet<&[usize]> = truth.edges().iter().map(Vec::as_slice).collect();
    let tp = pred
        .edges()
        .iter()
        .filter(|e| truth_set.contains(e.as_slice()))
        .count();
    let precision = ratio(tp, pred.edge_count());
    let recall = ratio(tp, truth.edge_count());
    let f1 = if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    };
    Ok(MatchReport {
        true_positives: tp,
        precision,
        recall,
        f1,
    })
}

fn intersection(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Largest total node overlap over one-to-one pairings of predicted and
/// true edges (unpaired edges contribute nothing).
pub fn max_matched_overlap(pred: &Hypergraph, truth: &Hypergraph) -> usize {
    let size = pred.edge_count().max(truth.edge_count());
    if size == 0 {
        return 0;
    }
    let overlap = |i: usize, j: usize| -> usize {
        match (pred.edges().get(i), truth.edges().get(j)) {
            (Some(p), Some(t)) => intersection(p, t),
            _ => 0,
        }
    };
    let cost: Vec<Vec<f64>> = (0..size)
        .map(|i| (0..size).map(|j| -(overlap(i, j) as f64)).collect())
        .collect();
    min_cost_assignment(&cost)
        .into_iter()
        .enumerate()
        .map(|(i, j)| overlap(i, j))
        .sum()
}

/// Normalised squared error between binary incidence matrices after aligning
/// columns by a maximum-overlap assignment:
/// `‖H_pred,aligned − H_truth‖_F² / ‖H_truth‖_F²`.
///
/// A matched pair `(p, t)` contributes `|p Δ t| = |p| + |t| − 2|p ∩ t|` and an
/// unmatched column its own size, so the numerator is
/// `Σ|p| + Σ|t| − 2·(max matched overlap)` and does not depend on how ties in
/// the assignment are broken.
pub fn hgmse(pred: &Hypergraph, truth: &Hypergraph) -> Result<f64> {
    same_nodes(pred, truth)?;
    if pred.edge_count() == 0 || truth.edge_count() == 0 {
        return Err(Error::EmptyHypergraph);
    }
    let pred_inc = pred.incidence_count();
    let truth_inc = truth.incidence_count();
    let err = pred_inc + truth_inc - 2 * max_matched_overlap(pred, truth);
    Ok(err as f64 / truth_inc as f64)
}

/// Mean probability of candidates that are ground-truth edges versus the rest.
pub fn probability_separation(cs: &CandidateSet, truth: &Hypergraph) -> Result<SeparationReport> {
    let probs = cs.probs().ok_or(Error::MissingProbabilities)?;
    let truth_set: HashSet<&[usize]> = truth.edges().iter().map(Vec::as_slice).collect();
    let (mut ts, mut tn, mut os, mut on) = (0.0, 0usize, 0.0, 0usize);
    for (c, &p) in cs.candidates().iter().zip(probs) {
        if truth_set.contains(c.nodes.as_slice()) {
            ts += p;
            tn += 1;
        } else {
            os += p;
            on += 1;
        }
    }
    let mean = |s: f64, k: usize| (k > 0).then(|| s / k as f64);
    Ok(SeparationReport {
        mean_truth_prob: mean(ts, tn),
        mean_other_prob: mean(os, on),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inference::{infer_probabilities, Candidate};

    fn hg(n: usize, edges: &[&[usize]]) -> Hypergraph {
        Hypergraph::unweighted(n, edges.iter().map(|e| e.to_vec()).collect()).unwrap()
    }

    #[test]
    fn f1_examples() {
        let truth = hg(6, &[&[0, 1, 2], &[3, 4, 5]]);
        let r = f1_exact(&truth, &truth).unwrap();
        assert_eq!((r.precision, r.recall, r.f1), (1.0, 1.0, 1.0));

        let pred = hg(6, &[&[0, 1, 2], &[2, 3, 4]]);
        let r = f1_exact(&pred, &truth).unwrap();
        assert_eq!((r.true_positives, r.precision, r.recall, r.f1), (1, 0.5, 0.5, 0.5));

        let pred = hg(6, &[&[0, 3], &[1, 4]]);
        assert_eq!(f1_exact(&pred, &truth).unwrap().f1, 0.0);

        assert!(matches!(
            f1_exact(&hg(7, &[&[0, 1]]), &truth),
            Err(Error::NodeCountMismatch { left: 7, right: 6 })
        ));
    }

    #[test]
    fn hgmse_examples() {
        let truth = hg(9, &[&[0, 1, 2], &[3, 4, 5]]);
        assert_eq!(hgmse(&truth, &truth).unwrap(), 0.0);
        assert_eq!(hgmse(&hg(9, &[&[0, 1, 2]]), &truth).unwrap(), 0.5);
        assert_eq!(hgmse(&hg(9, &[&[0, 1, 2], &[3, 4, 5], &[6, 7, 8]]), &truth).unwrap(), 0.5);
        // Partial overlap: {0,1,3} best pairs with {0,1,2} (Δ = 2), {3,4,5} exact.
        assert_eq!(hgmse(&hg(9, &[&[0, 1, 3], &[3, 4, 5]]), &truth).unwrap(), 2.0 / 6.0);
        assert_eq!(
            hgmse(&hg(9, &[]), &truth).unwrap_err(),
            Error::EmptyHypergraph
        );
    }

    #[test]
    fn hgmse_can_exceed_one() {
        let truth = hg(10, &[&[0, 1]]);
        let pred = hg(10, &[&[2, 3, 4], &[5, 6, 7], &[0, 8, 9]]);
        assert!(hgmse(&pred, &truth).unwrap() > 1.0);
    }

    #[test]
    fn separation_examples() {
        let truth = hg(6, &[&[0, 1, 2]]);
        let make = |nodes: Vec<Vec<usize>>, scores: Vec<f64>| {
            let probs = infer_probabilities(&scores).unwrap();
            let cands = nodes
                .into_iter()
                .map(|nodes| Candidate { anchor: nodes[0], nodes })
                .collect();
            CandidateSet::from_parts(6, cands, Some(scores), Some(probs)).unwrap()
        };

        let only_truth = make(vec![vec![0, 1, 2]], vec![0.0]);
        let r = probability_separation(&only_truth, &truth).unwrap();
        assert_eq!(r.mean_truth_prob, Some(1.0));
        assert_eq!(r.mean_other_prob, None);
        assert_eq!(r.gap(), None);

        let mixed = make(vec![vec![0, 1, 2], vec![3, 4, 5], vec![1, 2, 3]], vec![0.0, 3.0, 3.0]);
        let r = probability_separation(&mixed, &truth).unwrap();
        assert_eq!(r.gap(), Some(0.75));
    }
}
