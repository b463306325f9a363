//! Probability that a fixed `k`-set is an edge of `H`.
//!
//! Whether `e` is an edge depends only on the colors of the `C(k, 3)`
//! `(k-3)`-subsets of `e`, so the probability is a finite count over
//! `C(k-1, 2)^C(k, 3)` equally likely local colorings.

use std::fmt;

use num_rational::Ratio;

use crate::construction::PairColor;
use crate::error::{Error, Result};
use crate::hypergraph::{binomial, colex_rank, VertexSet};
use crate::rng;

/// Largest local coloring space enumerated exhaustively.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbabilityMethod {
    Exhaustive,
    MonteCarlo { samples: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeProbability {
    pub k: usize,
    pub method: ProbabilityMethod,
    /// Local colorings (or samples) in which `|G[e]|` is odd.
    pub successes: u64,
    /// Size of the enumerated space, or the sample count.
    pub trials: u64,
}

impl EdgeProbability {
    /// Exact value, available for exhaustive results.
    pub fn exact(&self) -> Option<Ratio<u64>> {
        matches!(self.method, ProbabilityMethod::Exhaustive).then(|| Ratio::new(self.successes, self.trials))
    }

    pub fn value(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }

    /// Binomial standard error of a Monte Carlo estimate (zero when exact).
    pub fn std_error(&self) -> f64 {
        match self.method {
            ProbabilityMethod::Exhaustive => 0.0,
            ProbabilityMethod::MonteCarlo { .. } => {
                let p = self.value();
                (p * (1.0 - p) / self.trials as f64).sqrt()
            }
        }
    }

    /// Whether `other` lies within `z` standard errors of this estimate's value
    /// (using the Monte Carlo side's error).
    pub fn agrees_with(&self, other: &EdgeProbability, z: f64) -> bool {
        let se = self.std_error().max(other.std_error());
        (self.value() - other.value()).abs() <= z * se
    }
}

impl fmt::Display for EdgeProbability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.method, self.exact()) {
            (ProbabilityMethod::Exhaustive, Some(r)) => write!(
                f,
                "p = {}/{} ~ {:.6e} (exhaustive over {} colorings)",
                r.numer(),
                r.denom(),
                self.value(),
                self.trials
            ),
            (ProbabilityMethod::MonteCarlo { samples, seed }, _) => write!(
                f,
                "p ~ {:.6e} +- {:.2e} (monte-carlo, {samples} samples, seed {seed})",
                self.value(),
                self.std_error()
            ),
            _ => unreachable!(),
        }
    }
}

/// Constraint tables for the local problem on `e = {1..k}`.
struct LocalModel {
    palette: u64,
    /// Number of `(k-3)`-subsets of `e`; each one is a digit.
    digits: usize,
    /// For each digit, the `(link edge index, required color)` pairs it feeds.
    watchers: Vec<Vec<(usize, u8)>>,
    link_edges: usize,
}

impl LocalModel {
    fn new(k: usize) -> Self {
        let e = VertexSet::full(k);
        let digits = binomial(k as u64, 3) as usize;
        let mut watchers = vec![Vec::new(); digits];
        for (fi, f) in e.subsets(k - 1).enumerate() {
            let members: Vec<u32> = f.iter().collect();
            for a in 0..members.len() {
                for b in a + 1..members.len() {
                    let t = f.without(members[a]).without(members[b]);
                    let color = PairColor::new(a + 1, b + 1).expect("distinct positions");
                    watchers[colex_rank(t) as usize].push((fi, color.index() as u8));
                }
            }
        }
        LocalModel {
            palette: PairColor::palette_size(k) as u64,
            digits,
            watchers,
            link_edges: k,
        }
    }

    fn space(&self) -> Option<u64> {
        self.palette.checked_pow(self.digits as u32)
    }
}

fn check_k(k: usize) -> Result<()> {
    if !(4..=12).contains(&k) {
        return Err(Error::Domain(format!("edge probability supports 4 <= k <= 12, got {k}")));
    }
    Ok(())
}

/// Exhaustive count over every local coloring. Errors if the space exceeds
/// [`EXHAUSTIVE_LIMIT`].
pub fn edge_probability_exhaustive(k: usize) -> Result<EdgeProbability> {
    check_k(k)?;
    let model = LocalModel::new(k);
    let total = model
        .space()
        .filter(|&t| t <= EXHAUSTIVE_LIMIT)
        .ok_or_else(|| Error::Domain(format!("local coloring space for k = {k} is too large to enumerate")))?;

    // Odometer over the digits; `mismatches[f]` counts unmet demands of link
    // edge f, and `present` counts link edges with none.
    let mut digits = vec![0u8; model.digits];
    let mut mismatches = vec![0u32; model.link_edges];
    for (d, watch) in model.watchers.iter().enumerate() {
        for &(f, want) in watch {
            if digits[d] != want {
                mismatches[f] += 1;
            }
        }
    }
    let mut present = mismatches.iter().filter(|&&m| m == 0).count();
    let mut odd = 0u64;
    let palette = model.palette as u8;
    'outer: loop {
        odd += (present & 1) as u64;
        let mut d = 0;
        loop {
            if d == model.digits {
                break 'outer;
            }
            let old = digits[d];
            let new = if old + 1 == palette { 0 } else { old + 1 };
            digits[d] = new;
            for &(f, want) in &model.watchers[d] {
                let before = mismatches[f];
                let after = before + (new != want) as u32 - (old != want) as u32;
                mismatches[f] = after;
                if before == 0 && after != 0 {
                    present -= 1;
                } else if before != 0 && after == 0 {
                    present += 1;
                }
            }
            if new != 0 {
                break;
            }
            d += 1;
        }
    }
    Ok(EdgeProbability {
        k,
        method: ProbabilityMethod::Exhaustive,
        successes: odd,
        trials: total,
    })
}

/// Monte Carlo estimate from `samples` uniformly drawn local colorings.
pub fn edge_probability_monte_carlo(k: usize, samples: u64, seed: u64) -> Result<EdgeProbability> {
    check_k(k)?;
    if samples == 0 {
        return Err(Error::Domain("monte-carlo estimate needs at least one sample".into()));
    }
    let model = LocalModel::new(k);
    let mut r = rng::stream(seed, 0);
    let mut colors = vec![0u8; model.digits];
    let mut mismatches = vec![0u32; model.link_edges];
    let mut odd = 0u64;
    for _ in 0..samples {
        for c in colors.iter_mut() {
            *c = rng::below(&mut r, model.palette) as u8;
        }
        mismatches.iter_mut().for_each(|m| *m = 0);
        for (d, watch) in model.watchers.iter().enumerate() {
            for &(f, want) in watch {
                if colors[d] != want {
                    mismatches[f] += 1;
                }
            }
        }
        let present = mismatches.iter().filter(|&&m| m == 0).count();
        odd += (present & 1) as u64;
    }
    Ok(EdgeProbability {
        k,
        method: ProbabilityMethod::MonteCarlo { samples, seed },
        successes: odd,
        trials: samples,
    })
}

/// Exhaustive when the local space is small enough, Monte Carlo otherwise.
pub fn edge_probability_exact(k: usize, fallback_samples: u64, fallback_seed: u64) -> Result<EdgeProbability> {
    check_k(k)?;
    match LocalModel::new(k).space() {
        Some(t) if t <= EXHAUSTIVE_LIMIT => edge_probability_exhaustive(k),
        _ => edge_probability_monte_carlo(k, fallback_samples, fallback_seed),
    }
}
