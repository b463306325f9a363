//! Random-coloring construction of `k`-uniform hypergraphs in which every
//! `(k+1)`-set induces 0, 2 or 4 edges, with exhaustive verification,
//! independence-number search, certificates and the analogous geometric
//! hypergraph of non-convex `(d+2)`-tuples.

pub mod construction;
pub mod error;
pub mod geometry;
pub mod hypergraph;
pub mod independence;
pub mod rng;
pub mod verifier;

pub use construction::{
    build_g, build_h, chi, membership_in_g, sample_coloring, sample_planted_coloring, Coloring, LinkHypergraph,
    PairColor, ParityHypergraph, Params,
};
pub use error::{Error, Result};
pub use geometry::{build_geometric_hypergraph, ExactScalar, GeometricHypergraph, PointConfiguration};
pub use hypergraph::{EdgeSet, OrderedTuple, ShardSpec, Vertex, VertexSet};
pub use independence::{
    alpha_exact, edge_probability_exact, greedy_steiner_packing, search_colorings, union_bound, verify_certificate,
    LowerBoundCertificate, UnionBound,
};
pub use verifier::{full_sweep, SweepReport, Verdict};

/// Point configuration with machine-integer coordinates.
pub type IntPointConfiguration = PointConfiguration<i64>;
/// Point configuration with 128-bit integer coordinates.
pub type WidePointConfiguration = PointConfiguration<i128>;
/// Point configuration with arbitrary-precision integer coordinates.
pub type BigPointConfiguration = PointConfiguration<num_bigint::BigInt>;
/// Point configuration with arbitrary-precision rational coordinates.
pub type RationalPointConfiguration = PointConfiguration<num_rational::BigRational>;
/// Union bound evaluated in double precision.
pub type UnionBoundF64 = UnionBound<f64>;
