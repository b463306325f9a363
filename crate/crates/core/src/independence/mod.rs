//! Independence number, edge probability, Steiner packings, the union bound
//! and lower-bound certificates.

mod alpha;
mod bound;
mod certificate;
mod probability;
mod steiner;

pub use alpha::{alpha_exact, alpha_with_budget, AlphaOutcome, AlphaResult};
pub use bound::{log_binomial_ln, max_feasible_log2_n, union_bound, union_bound_ln, UnionBound};
pub use certificate::{
    evaluate, search_colorings, sha256_hex, verify_certificate, CertificateError, ColoringStrategy,
    Evaluation, LowerBoundCertificate, SearchOutcome,
};
pub use probability::{
    edge_probability_exact, edge_probability_exhaustive, edge_probability_monte_carlo, EdgeProbability,
    ProbabilityMethod, EXHAUSTIVE_LIMIT,
};
pub use steiner::{greedy_steiner_packing, shuffled_steiner_packing, SteinerPacking};

use crate::error::Result;

/// Edge probability, packing size and largest feasible `N` for one `(k, n)`.
#[derive(Clone, Debug)]
pub struct ProbBound {
    pub k: usize,
    pub n: usize,
    pub probability: EdgeProbability,
    pub packing_size: usize,
    /// Bound at `N = n`.
    pub at_n: UnionBound<f64>,
    pub max_log2_n: Option<f64>,
}

/// Combines [`edge_probability_exact`], [`greedy_steiner_packing`] and the
/// union bound. The Monte Carlo parameters only apply when `k` is too large
/// for exhaustive enumeration.
pub fn prob_bound(k: usize, n: usize, mc_samples: u64, mc_seed: u64) -> Result<ProbBound> {
    let probability = edge_probability_exact(k, mc_samples, mc_seed)?;
    let packing = greedy_steiner_packing(n, k)?;
    let p = probability.value();
    let m = packing.len() as u64;
    Ok(ProbBound {
        k,
        n,
        at_n: union_bound(n as u64, n as f64, p, m)?,
        max_log2_n: max_feasible_log2_n(n as u64, p, m)?,
        packing_size: packing.len(),
        probability,
    })
}
