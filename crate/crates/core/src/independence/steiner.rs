//! Greedy partial Steiner `(n, k, k-3)` packings.
//!
//! Inside a candidate independent `n`-set, blocks whose `(k-3)`-subsets are
//! pairwise disjoint see disjoint parts of the coloring, so their edge events
//! are independent. A packing therefore turns "no block is an edge" into a
//! product of `m` independent events.

use crate::error::{Error, Result};
use crate::hypergraph::{binomial, check_capacity, colex_rank, enumerate_subsets, VertexSet};
use crate::rng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinerPacking {
    pub n: usize,
    pub k: usize,
    /// Subset parameter, always `k - 3`.
    pub t: usize,
    pub blocks: Vec<VertexSet>,
}

impl SteinerPacking {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Every `t`-subset of `[n]` lies in at most one block.
    pub fn is_valid(&self) -> bool {
        let mut used = vec![false; binomial(self.n as u64, self.t as u64) as usize];
        for b in &self.blocks {
            if b.len() != self.k || !b.is_subset(VertexSet::full(self.n)) {
                return false;
            }
            for t in b.subsets(self.t) {
                let slot = &mut used[colex_rank(t) as usize];
                if *slot {
                    return false;
                }
                *slot = true;
            }
        }
        true
    }

    /// No further `k`-set can be added without reusing a `t`-subset, i.e. every
    /// `k`-set meets some block in at least `t` vertices.
    pub fn is_maximal(&self) -> bool {
        enumerate_subsets(self.n, self.k)
            .expect("validated at construction")
            .all(|c| self.blocks.iter().any(|b| b.intersection(c).len() >= self.t))
    }
}

fn check(n: usize, k: usize) -> Result<()> {
    check_capacity(n)?;
    if k < 4 || n < k {
        return Err(Error::Domain(format!("packing needs 4 <= k <= n, got n = {n}, k = {k}")));
    }
    Ok(())
}

fn greedy(n: usize, k: usize, candidates: impl Iterator<Item = VertexSet>) -> SteinerPacking {
    let t = k - 3;
    let mut used = vec![false; binomial(n as u64, t as u64) as usize];
    let mut blocks = Vec::new();
    for c in candidates {
        if c.subsets(t).all(|s| !used[colex_rank(s) as usize]) {
            for s in c.subsets(t) {
                used[colex_rank(s) as usize] = true;
            }
            blocks.push(c);
        }
    }
    SteinerPacking { n, k, t, blocks }
}

/// Scans `k`-subsets of `[n]` in colex order and keeps each one whose
/// `(k-3)`-subsets are all still unused.
pub fn greedy_steiner_packing(n: usize, k: usize) -> Result<SteinerPacking> {
    check(n, k)?;
    Ok(greedy(n, k, enumerate_subsets(n, k)?))
}

/// The same greedy rule over a seeded random permutation of the candidates.
pub fn shuffled_steiner_packing(n: usize, k: usize, seed: u64) -> Result<SteinerPacking> {
    check(n, k)?;
    let mut candidates: Vec<VertexSet> = enumerate_subsets(n, k)?.collect();
    let mut r = rng::stream(seed, 0);
    for i in (1..candidates.len()).rev() {
        let j = rng::below(&mut r, i as u64 + 1) as usize;
        candidates.swap(i, j);
    }
    Ok(greedy(n, k, candidates.into_iter()))
}
