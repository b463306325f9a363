//! Exact independence number of a uniform hypergraph on at most 64 vertices.
//!
//! Include/exclude branch and bound. Vertices are branched in order of
//! decreasing degree; a candidate set is maintained such that every candidate
//! can be added to the current independent set on its own. Pruning uses
//! `|current| + |candidates| <= best`, and a node whose current set plus all
//! candidates spans no edge is closed immediately.

use crate::hypergraph::{EdgeSet, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AlphaResult {
    pub alpha: usize,
    pub witness: VertexSet,
    pub nodes: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphaOutcome {
    Exact(AlphaResult),
    /// The node budget ran out; `lower` is realized by `witness`, `upper` is a
    /// valid (possibly loose) bound.
    BudgetExceeded {
        lower: usize,
        upper: usize,
        witness: VertexSet,
        nodes: u64,
    },
}

impl AlphaOutcome {
    pub fn exact(self) -> Option<AlphaResult> {
        match self {
            AlphaOutcome::Exact(r) => Some(r),
            AlphaOutcome::BudgetExceeded { .. } => None,
        }
    }
}

struct Search<'a> {
    edges: &'a [VertexSet],
    // per vertex (0-based): bitmasks of e \ {v} for the edges e containing v
    incident: Vec<Vec<u64>>,
    order: Vec<u32>,
    best: u64,
    nodes: u64,
    budget: Option<u64>,
    exhausted: bool,
}

impl Search<'_> {
    fn spans_edge(&self, set: u64) -> bool {
        self.edges.iter().any(|e| e.bits() & !set == 0)
    }

    fn run(&mut self, current: u64, candidates: u64) {
        if self.exhausted {
            return;
        }
        if let Some(b) = self.budget {
            if self.nodes >= b {
                self.exhausted = true;
                return;
            }
        }
        self.nodes += 1;
        let reach = current.count_ones() + candidates.count_ones();
        if reach <= self.best.count_ones() {
            return;
        }
        if candidates == 0 || !self.spans_edge(current | candidates) {
            self.best = current | candidates;
            return;
        }
        let v = *self
            .order
            .iter()
            .find(|&&v| candidates >> v & 1 == 1)
            .expect("candidates nonempty");
        let bit = 1u64 << v;

        let with = current | bit;
        let mut narrowed = candidates & !bit;
        for &rest in &self.incident[v as usize] {
            let missing = rest & !with;
            if missing.count_ones() == 1 {
                narrowed &= !missing;
            }
        }
        self.run(with, narrowed);
        self.run(current, candidates & !bit);
    }
}

/// Maximum independent set with an optional node budget.
pub fn alpha_with_budget(h: &EdgeSet, budget: Option<u64>) -> AlphaOutcome {
    let n = h.ground();
    let mut incident = vec![Vec::new(); n];
    for e in h.edges() {
        for v in e.iter() {
            incident[v as usize - 1].push(e.without(v).bits());
        }
    }
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(incident[v as usize].len()));

    // Edges of size <= 1 rule vertices out before the search starts.
    let mut candidates = VertexSet::full(n).bits();
    for e in h.edges() {
        if e.len() == 1 {
            candidates &= !e.bits();
        }
    }
    let mut search = Search {
        edges: h.edges(),
        incident,
        order,
        best: 0,
        nodes: 0,
        budget,
        exhausted: false,
    };
    if h.uniformity() == 0 && !h.is_empty() {
        // the empty edge is contained in every set
        return AlphaOutcome::Exact(AlphaResult {
            alpha: 0,
            witness: VertexSet::EMPTY,
            nodes: 0,
        });
    }
    search.run(0, candidates);
    let witness = VertexSet::from_bits(search.best);
    if search.exhausted {
        AlphaOutcome::BudgetExceeded {
            lower: witness.len(),
            upper: candidates.count_ones() as usize,
            witness,
            nodes: search.nodes,
        }
    } else {
        AlphaOutcome::Exact(AlphaResult {
            alpha: witness.len(),
            witness,
            nodes: search.nodes,
        })
    }
}

/// Exact `alpha(H)` with a maximum independent set as witness.
pub fn alpha_exact(h: &EdgeSet) -> AlphaResult {
    alpha_with_budget(h, None)
        .exact()
        .expect("unbounded search always finishes")
}
