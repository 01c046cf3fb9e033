//! Gaussian model of node and hyperedge features on the incidence graph.
//!
//! The incidence graph has one vertex per node and one per hyperedge, with a
//! link between node `j` and hyperedge `i` of weight `H[j, i]`. Its Laplacian
//!
//! ```text
//! L = [ diag(H 1_m)   −H            ]
//!     [ −Hᵀ           diag(Hᵀ 1_n)  ]
//! ```
//!
//! serves as the precision matrix of the stacked features `[X_V; X_E]`.
//! Sampling regularises it to `L + σ²I`, which is positive definite for any
//! `σ > 0`.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::features::FeatureMatrix;
use crate::hypergraph::Hypergraph;

/// Dense `(n+m) × (n+m)` incidence-graph Laplacian. Rows `0..n` are nodes,
/// rows `n..n+m` are hyperedges.
#[derive(Debug, Clone, PartialEq)]
pub struct IncidenceLaplacian {
    n: usize,
    m: usize,
    matrix: DMatrix<f64>,
}

impl IncidenceLaplacian {
    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn size(&self) -> usize {
        self.n + self.m
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// `L + σ²I`.
    pub fn regularised(&self, sigma: f64) -> DMatrix<f64> {
        let mut p = self.matrix.clone();
        let s2 = sigma * sigma;
        for i in 0..self.size() {
            p[(i, i)] += s2;
        }
        p
    }
}

/// Builds the incidence-graph Laplacian. For weighted hypergraphs the
/// incidence block is `H·diag(w)` and both degree blocks are recomputed from it.
pub fn incidence_laplacian(h: &Hypergraph) -> IncidenceLaplacian {
    let n = h.node_count();
    let m = h.edge_count();
    let mut l = DMatrix::zeros(n + m, n + m);
    for (i, edge) in h.edges().iter().enumerate() {
        let w = h.weight(i);
        let e = n + i;
        for &j in edge {
            l[(j, e)] = -w;
            l[(e, j)] = -w;
            l[(j, j)] += w;
            l[(e, e)] += w;
        }
    }
    IncidenceLaplacian { n, m, matrix: l }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianModelConfig {
    pub sigma: f64,
    pub dim: usize,
    pub seed: u64,
}

impl GaussianModelConfig {
    pub const DEFAULT_SIGMA: f64 = 1e-3;
    /// Feature dimension used by fidelity runs.
    pub const FULL_DIM: usize = 1000;
    /// Feature dimension for fast desk-scale runs and tests.
    pub const DESK_DIM: usize = 64;

    pub fn new(sigma: f64, dim: usize, seed: u64) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::BadSigma(sigma));
        }
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        Ok(Self { sigma, dim, seed })
    }
}

impl Default for GaussianModelConfig {
    fn default() -> Self {
        Self {
            sigma: Self::DEFAULT_SIGMA,
            dim: Self::DESK_DIM,
            seed: 0,
        }
    }
}

/// Draws `dim` independent columns from `N(0, (L + σ²I)⁻¹)`.
///
/// With the precision factored as `L + σ²I = RᵀR` (`R` upper triangular),
/// `x = R⁻¹z` for standard-normal `z` has covariance `(RᵀR)⁻¹`. The dense
/// inverse is never formed. Rows `0..n` of the result are node features and
/// rows `n..n+m` hyperedge features; when `m = 0` only node features exist.
pub fn sample_features(
    l: &IncidenceLaplacian,
    cfg: &GaussianModelConfig,
) -> Result<(FeatureMatrix, Option<FeatureMatrix>)> {
    let cfg = GaussianModelConfig::new(cfg.sigma, cfg.dim, cfg.seed)?;
    let size = l.size();
    let chol = l
        .regularised(cfg.sigma)
        .cholesky()
        .ok_or(Error::FactorizationFailure)?;

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    // Column-major fill: column c is the c-th independent draw.
    let z = DMatrix::from_fn(size, cfg.dim, |_, _| -> f64 { StandardNormal.sample(&mut rng) });
    // Lower factor K with P = K Kᵀ, so R = Kᵀ and R x = z is Kᵀ x = z.
    let x = chol
        .l_dirty()
        .tr_solve_lower_triangular(&z)
        .ok_or(Error::FactorizationFailure)?;

    let xv = FeatureMatrix::from_dmatrix(&x.rows(0, l.n).into_owned())?;
    let xe = if l.m > 0 {
        Some(FeatureMatrix::from_dmatrix(&x.rows(l.n, l.m).into_owned())?)
    } else {
        None
    };
    Ok((xv, xe))
}

/// `trace(Xᵀ L X)` for `X = [X_V; X_E]`. For a weighted hypergraph this
/// equals `Σᵢ wᵢ Σ_{v∈eᵢ} ‖x_eᵢ − x_v‖²`.
pub fn negative_log_likelihood(
    l: &IncidenceLaplacian,
    xv: &FeatureMatrix,
    xe: Option<&FeatureMatrix>,
) -> Result<f64> {
    if xv.rows() != l.n {
        return Err(Error::RowCountMismatch {
            expected: l.n,
            got: xv.rows(),
        });
    }
    let xe_rows = xe.map_or(0, FeatureMatrix::rows);
    if xe_rows != l.m {
        return Err(Error::RowCountMismatch {
            expected: l.m,
            got: xe_rows,
        });
    }
    let dim = xv.dim();
    if let Some(xe) = xe {
        if xe.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: xe.dim(),
            });
        }
    }

    let x = DMatrix::from_fn(l.size(), dim, |r, c| {
        if r < l.n {
            xv.row(r)[c]
        } else {
            xe.expect("row count checked").row(r - l.n)[c]
        }
    });
    let lx = &l.matrix * &x;
    Ok(x.component_mul(&lx).sum())
}
