//! Vertex sets, colex subset enumeration and uniform edge sets.
//!
//! Vertices are labelled `1..=N` and a [`VertexSet`] stores vertex `v` in bit
//! `v - 1` of a single `u64`, so the ground set is capped at [`CAPACITY`].
//! Because of that bit layout, ordering fixed-size sets by their integer
//! value is exactly colexicographic order, which is the enumeration order
//! every sweep in this crate uses.

use std::collections::HashSet;
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Vertex = u32;

/// Largest ground set supported by the single-word profile.
pub const CAPACITY: usize = 64;

/// Environment variable selecting the capacity profile. Only `baseline` exists.
pub const PROFILE_ENV: &str = "INDUCED_RAMSEY_PROFILE";

/// Resolves the capacity of the profile named in [`PROFILE_ENV`].
pub fn profile_capacity() -> Result<usize> {
    match std::env::var(PROFILE_ENV) {
        Err(_) => Ok(CAPACITY),
        Ok(name) if name.is_empty() || name == "baseline" => Ok(CAPACITY),
        Ok(name) => Err(Error::Config(format!(
            "capacity profile {name:?} is not available (only \"baseline\", {CAPACITY} vertices)"
        ))),
    }
}

pub(crate) fn check_capacity(n: usize) -> Result<()> {
    if n > CAPACITY {
        return Err(Error::Config(format!(
            "ground set of {n} vertices exceeds profile capacity {CAPACITY}"
        )));
    }
    Ok(())
}

/// `C(n, r)`; panics on overflow of `u64`, which cannot happen for `n <= 64`.
pub fn binomial(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The full ground set `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= CAPACITY);
        if n == CAPACITY {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn from_vertices<I: IntoIterator<Item = Vertex>>(vertices: I) -> Result<Self> {
        let mut bits = 0u64;
        for v in vertices {
            if v == 0 || v as usize > CAPACITY {
                return Err(Error::Domain(format!(
                    "vertex {v} outside 1..={CAPACITY}"
                )));
            }
            bits |= 1u64 << (v - 1);
        }
        Ok(VertexSet(bits))
    }

    pub fn singleton(v: Vertex) -> Self {
        debug_assert!(v >= 1 && v as usize <= CAPACITY);
        VertexSet(1u64 << (v - 1))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: Vertex) -> bool {
        v >= 1 && v as usize <= CAPACITY && self.0 >> (v - 1) & 1 == 1
    }

    pub fn with(self, v: Vertex) -> Self {
        VertexSet(self.0 | Self::singleton(v).0)
    }

    pub fn without(self, v: Vertex) -> Self {
        VertexSet(self.0 & !Self::singleton(v).0)
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest vertex label, or 0 for the empty set.
    pub fn max_vertex(self) -> Vertex {
        64 - self.0.leading_zeros()
    }

    pub fn min_vertex(self) -> Option<Vertex> {
        (self.0 != 0).then(|| self.0.trailing_zeros() + 1)
    }

    /// Members in increasing order.
    pub fn iter(self) -> Members {
        Members(self.0)
    }

    pub fn to_tuple(self) -> OrderedTuple {
        OrderedTuple(self.iter().collect())
    }

    /// Picks members of `self` by position: bit `i` of `positions` selects the
    /// `(i+1)`-th smallest member.
    pub fn select(self, positions: u64) -> VertexSet {
        let mut out = 0u64;
        let mut rest = self.0;
        let mut pos = positions;
        while pos != 0 && rest != 0 {
            let low = rest & rest.wrapping_neg();
            if pos & 1 == 1 {
                out |= low;
            }
            rest ^= low;
            pos >>= 1;
        }
        VertexSet(out)
    }

    /// All `r`-subsets of `self`, in colex order (none when `r` exceeds the size).
    pub fn subsets(self, r: usize) -> impl Iterator<Item = VertexSet> {
        let members = self.len();
        SubsetIter::new(members, r).map(move |positions| self.select(positions.0))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

pub struct Members(u64);

impl Iterator for Members {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() + 1;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

/// Colex rank of `set` among all sets of the same cardinality.
pub fn colex_rank(set: VertexSet) -> u64 {
    set.iter()
        .enumerate()
        .map(|(i, v)| binomial((v - 1) as u64, i as u64 + 1))
        .sum()
}

/// Inverse of [`colex_rank`] for `r`-subsets.
pub fn colex_unrank(mut rank: u64, r: usize) -> VertexSet {
    let mut bits = 0u64;
    let mut hint = CAPACITY as u64;
    for i in (1..=r as u64).rev() {
        // Largest c < hint with C(c, i) <= rank.
        let mut c = i - 1;
        while c + 1 < hint && binomial(c + 1, i) <= rank {
            c += 1;
        }
        rank -= binomial(c, i);
        bits |= 1u64 << c;
        hint = c;
    }
    VertexSet(bits)
}

/// Colex stream of `r`-subsets of `{1..n}` (Gosper's hack on the bitmask).
#[derive(Clone, Debug)]
pub struct SubsetIter {
    next: u64,
    remaining: u64,
}

impl SubsetIter {
    fn new(n: usize, r: usize) -> Self {
        debug_assert!(n <= CAPACITY);
        SubsetIter {
            next: if r <= n { VertexSet::full(r).0 } else { 0 },
            remaining: binomial(n as u64, r as u64),
        }
    }

    fn starting_at(n: usize, r: usize, start: u64, end: u64) -> Self {
        let total = binomial(n as u64, r as u64);
        let end = end.min(total);
        let start = start.min(end);
        SubsetIter {
            next: colex_unrank(start, r).0,
            remaining: end - start,
        }
    }
}

impl Iterator for SubsetIter {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let x = self.next;
        if self.remaining > 0 {
            let c = x & x.wrapping_neg();
            let r = x + c;
            self.next = (((r ^ x) >> 2) / c) | r;
        }
        Some(VertexSet(x))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.remaining as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for SubsetIter {}

/// All `r`-subsets of `{1..n}` in colex order.
pub fn enumerate_subsets(n: usize, r: usize) -> Result<SubsetIter> {
    check_capacity(n)?;
    if r > n {
        return Err(Error::Domain(format!("subset size {r} exceeds ground set {n}")));
    }
    Ok(SubsetIter::new(n, r))
}

/// The colex index range `[start, end)` of the `r`-subsets of `{1..n}`.
pub fn enumerate_subset_range(n: usize, r: usize, start: u64, end: u64) -> Result<SubsetIter> {
    check_capacity(n)?;
    if r > n {
        return Err(Error::Domain(format!("subset size {r} exceeds ground set {n}")));
    }
    Ok(SubsetIter::starting_at(n, r, start, end))
}

/// Shard `index` of `count` equal colex-index slices of a subset stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShardSpec {
    pub index: u64,
    pub count: u64,
}

impl ShardSpec {
    pub const WHOLE: ShardSpec = ShardSpec { index: 0, count: 1 };

    pub fn new(index: u64, count: u64) -> Result<Self> {
        if count == 0 || index >= count {
            return Err(Error::Config(format!("invalid shard {index}/{count}")));
        }
        Ok(ShardSpec { index, count })
    }

    /// `[start, end)` within a stream of `total` items.
    pub fn range(self, total: u64) -> (u64, u64) {
        let at = |i: u64| (total as u128 * i as u128 / self.count as u128) as u64;
        (at(self.index), at(self.index + 1))
    }
}

impl FromStr for ShardSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (i, m) = s
            .split_once('/')
            .ok_or_else(|| Error::Config(format!("shard spec {s:?} is not of the form i/m")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::Config(format!("shard spec {s:?} is not of the form i/m")))
        };
        ShardSpec::new(parse(i)?, parse(m)?)
    }
}

impl fmt::Display for ShardSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.index, self.count)
    }
}

/// A strictly increasing vertex list with 1-based positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderedTuple(Vec<Vertex>);

impl OrderedTuple {
    pub fn new(vertices: Vec<Vertex>) -> Result<Self> {
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain(format!(
                "tuple {vertices:?} is not strictly increasing"
            )));
        }
        Ok(OrderedTuple(vertices))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_set(&self) -> VertexSet {
        VertexSet::from_vertices(self.0.iter().copied())
            .expect("tuple vertices are within capacity")
    }

    /// 1-based position of `v`.
    pub fn rank_of_vertex(&self, v: Vertex) -> Result<usize> {
        self.0
            .binary_search(&v)
            .map(|i| i + 1)
            .map_err(|_| Error::Domain(format!("vertex {v} is not in tuple {:?}", self.0)))
    }
}

/// An `r`-uniform hypergraph on `{1..N}` with a hashed membership index.
#[derive(Clone, Debug)]
pub struct EdgeSet {
    uniformity: usize,
    ground: usize,
    edges: Vec<VertexSet>,
    index: HashSet<u64>,
}

impl PartialEq for EdgeSet {
    fn eq(&self, other: &Self) -> bool {
        self.uniformity == other.uniformity
            && self.ground == other.ground
            && self.edges == other.edges
    }
}

impl Eq for EdgeSet {}

impl EdgeSet {
    pub fn empty(uniformity: usize, ground: usize) -> Result<Self> {
        Self::new(uniformity, ground, Vec::new())
    }

    /// Validates cardinalities, ranges and uniqueness; stores edges in colex order.
    pub fn new(uniformity: usize, ground: usize, mut edges: Vec<VertexSet>) -> Result<Self> {
        check_capacity(ground)?;
        let universe = VertexSet::full(ground);
        for e in &edges {
            if e.len() != uniformity {
                return Err(Error::Domain(format!(
                    "edge {e} has {} vertices, expected {uniformity}",
                    e.len()
                )));
            }
            if !e.is_subset(universe) {
                return Err(Error::Domain(format!("edge {e} leaves ground set 1..={ground}")));
            }
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Domain(format!("duplicate edge {}", w[0])));
        }
        let index = edges.iter().map(|e| e.bits()).collect();
        Ok(EdgeSet {
            uniformity,
            ground,
            edges,
            index,
        })
    }

    /// Builds from a colex-ordered, duplicate-free stream of valid edges.
    pub(crate) fn from_sorted_unchecked(uniformity: usize, ground: usize, edges: Vec<VertexSet>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        let index = edges.iter().map(|e| e.bits()).collect();
        EdgeSet {
            uniformity,
            ground,
            edges,
            index,
        }
    }

    pub fn uniformity(&self) -> usize {
        self.uniformity
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn contains(&self, e: VertexSet) -> bool {
        self.index.contains(&e.bits())
    }

    /// `|{e in E : e ⊆ s}|`.
    pub fn induced_count(&self, s: VertexSet) -> usize {
        if s.len() < self.uniformity {
            return 0;
        }
        let probes = binomial(s.len() as u64, self.uniformity as u64);
        if probes < self.edges.len() as u64 {
            s.subsets(self.uniformity).filter(|e| self.contains(*e)).count()
        } else {
            self.edges.iter().filter(|e| e.is_subset(s)).count()
        }
    }

    /// Edges contained in `s`, in colex order.
    pub fn induced_edges(&self, s: VertexSet) -> Vec<VertexSet> {
        self.edges.iter().copied().filter(|e| e.is_subset(s)).collect()
    }

    /// Writes the edge-list text format: `r N m`, then one edge per line.
    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{} {} {}", self.uniformity, self.ground, self.edges.len())?;
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            writeln!(w, "{}", line.join(" "))?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("edge list is ASCII")
    }

    pub fn read_from<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing `r N m` header"))?;
        let header = header?;
        let nums = parse_numbers(&header, 1)?;
        let [r, n, m] = nums[..] else {
            return Err(Error::parse(1, "header must be `r N m`"));
        };
        let (r, n, m) = (r as usize, n as usize, m as usize);
        check_capacity(n)?;
        let mut edges = Vec::with_capacity(m);
        for (i, line) in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let lineno = i + 1;
            let vs = parse_numbers(&line, lineno)?;
            if vs.len() != r {
                return Err(Error::parse(lineno, format!("expected {r} vertices")));
            }
            if vs.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::parse(lineno, "vertices must be strictly increasing"));
            }
            if vs.iter().any(|&v| v == 0 || v as usize > n) {
                return Err(Error::parse(lineno, format!("vertex outside 1..={n}")));
            }
            edges.push(VertexSet::from_vertices(vs.iter().map(|&v| v as Vertex))?);
        }
        if edges.len() != m {
            return Err(Error::parse(1, format!("header announces {m} edges, found {}", edges.len())));
        }
        EdgeSet::new(r, n, edges)
    }
}

pub(crate) fn parse_numbers(line: &str, lineno: usize) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| Error::parse(lineno, format!("not a nonnegative integer: {t:?}")))
        })
        .collect()
}
