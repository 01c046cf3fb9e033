//! Hypergraph structure inference from node features under a smoothness prior.
//!
//! Nodes that share a hyperedge are assumed to lie close to that hyperedge's
//! own (usually unobserved) feature vector. Stacking node and hyperedge
//! features, this is a Gaussian model whose precision is the Laplacian of the
//! node–hyperedge incidence graph. Dropping the hyperedge features leaves a
//! per-candidate objective `w s′ − ln w + w` with closed-form minimiser
//! `w = 1 / (s′ + 1)`, where `s′` is the largest pairwise squared distance
//! among the candidate's nodes.
//!
//! Modules:
//!
//! * [`hypergraph`], [`features`]: validated domain types.
//! * [`smoothness`]: per-edge smoothness measures and the inference objective.
//! * [`probmodel`]: incidence-graph Laplacian, feature sampler, likelihood.
//! * [`inference`]: candidate generation, scoring, probabilities, selection.
//! * [`synth`]: overlap-controlled benchmark generator.
//! * [`metrics`]: exact-match F1, HGMSE, probability separation.

pub mod assignment;
pub mod error;
pub mod features;
pub mod hypergraph;
pub mod inference;
pub mod metrics;
pub mod probmodel;
pub mod smoothness;
pub mod synth;

pub use error::{Error, Result};
pub use features::FeatureMatrix;
pub use hypergraph::{build_hypergraph, Hypergraph};
pub use inference::{
    estimate_edge_count, generate_candidates, infer_probabilities, run_hgsi, score_candidates,
    select_edges, Candidate, CandidateSet, InferenceResult, SelectionSpec,
};
pub use metrics::{f1_exact, hgmse, probability_separation, MatchReport, SeparationReport};
pub use probmodel::{
    incidence_laplacian, negative_log_likelihood, sample_features, GaussianModelConfig,
    IncidenceLaplacian,
};
pub use smoothness::{SmoothnessKind, SmoothnessVariant, SmoothnessVector};
pub use synth::{generate_ground_truth, make_dataset, overlap_rate, SynthConfig, SyntheticDataset};

/// splitmix64 finaliser, used to derive independent seeds.
pub(crate) fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
