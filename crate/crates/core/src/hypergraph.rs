//! Hypergraphs over `n` nodes and their incidence matrices.
//!
//! Node indices are 0-based. Each hyperedge is stored as a sorted list of
//! distinct node indices; the edge order defines the column order of the
//! incidence matrix.

use std::collections::HashSet;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A validated, immutable hypergraph with optional per-edge weights in `(0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<f64>>,
}

impl Hypergraph {
    /// Validates and canonicalises the input. Each edge list is turned into a
    /// sorted set; repeated indices inside one list collapse.
    pub fn new(n: usize, edges: Vec<Vec<usize>>, weights: Option<Vec<f64>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoNodes);
        }
        if let Some(w) = &weights {
            if w.len() != edges.len() {
                return Err(Error::LengthMismatch {
                    expected: edges.len(),
                    got: w.len(),
                });
            }
            if let Some(&bad) = w.iter().find(|&&x| !(x > 0.0 && x <= 1.0)) {
                return Err(Error::BadWeight(bad));
            }
        }

        let mut seen = HashSet::with_capacity(edges.len());
        let mut canonical = Vec::with_capacity(edges.len());
        for mut edge in edges {
            if let Some(&index) = edge.iter().find(|&&v| v >= n) {
                return Err(Error::IndexOutOfRange { index, n });
            }
            edge.sort_unstable();
            edge.dedup();
            if edge.len() < 2 {
                return Err(Error::EdgeTooSmall { size: edge.len() });
            }
            if !seen.insert(edge.clone()) {
                return Err(Error::DuplicateEdge(edge));
            }
            canonical.push(edge);
        }

        Ok(Self {
            n,
            edges: canonical,
            weights,
        })
    }

    pub fn unweighted(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(n, edges, None)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &[usize] {
        &self.edges[i]
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    /// Weight of edge `i`, or 1 for unweighted hypergraphs.
    pub fn weight(&self, i: usize) -> f64 {
        self.weights.as_ref().map_or(1.0, |w| w[i])
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    /// Copy of this hypergraph with the weights dropped.
    pub fn to_unweighted(&self) -> Self {
        Self {
            n: self.n,
            edges: self.edges.clone(),
            weights: None,
        }
    }

    /// Number of edges each node belongs to.
    pub fn node_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for edge in &self.edges {
            for &v in edge {
                deg[v] += 1;
            }
        }
        deg
    }

    /// Total number of (node, edge) incidences, i.e. `‖H‖_F²` for binary `H`.
    pub fn incidence_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    /// `n × m` incidence matrix; entry `(j, i)` is the weight of edge `i`
    /// (1 when unweighted) if edge `i` contains node `j`, else 0.
    pub fn incidence_matrix(&self) -> DMatrix<f64> {
        let mut h = DMatrix::zeros(self.n, self.edges.len());
        for (i, edge) in self.edges.iter().enumerate() {
            let w = self.weight(i);
            for &j in edge {
                h[(j, i)] = w;
            }
        }
        h
    }

    /// Rebuilds a hypergraph from the nonzero pattern of an incidence matrix.
    pub fn from_incidence(h: &DMatrix<f64>) -> Result<Self> {
        let edges = (0..h.ncols())
            .map(|i| (0..h.nrows()).filter(|&j| h[(j, i)] != 0.0).collect())
            .collect();
        Self::unweighted(h.nrows(), edges)
    }
}

/// Free-function form of [`Hypergraph::new`].
pub fn build_hypergraph(
    n: usize,
    edges: Vec<Vec<usize>>,
    weights: Option<Vec<f64>>,
) -> Result<Hypergraph> {
    Hypergraph::new(n, edges, weights)
}

#[derive(Deserialize)]
struct RawHypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
    #[serde(default)]
    weights: Option<Vec<f64>>,
}

impl<'de> Deserialize<'de> for Hypergraph {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = RawHypergraph::deserialize(de)?;
        Hypergraph::new(raw.n, raw.edges, raw.weights).map_err(serde::de::Error::custom)
    }
}
