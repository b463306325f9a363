//! The random pair-coloring of `(k-3)`-sets and the two hypergraphs it induces.
//!
//! A [`Coloring`] assigns every `(k-3)`-subset of `[N]` an unordered pair
//! `{i, j}` from `[k-1]`. An ordered `(k-1)`-set `f` belongs to the link
//! hypergraph `G` when, for every pair of positions `{i, j}`, the coloring of
//! `f` minus its `i`-th and `j`-th vertices is exactly `{i, j}`. The parity
//! hypergraph `H` collects the `k`-sets containing an odd number of `G`-edges.

use std::collections::BTreeSet;
use std::fmt;
use std::io::{BufRead, Write};
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::hypergraph::{
    binomial, check_capacity, colex_rank, colex_unrank, enumerate_subsets, parse_numbers, EdgeSet,
    OrderedTuple, Vertex, VertexSet,
};
use crate::rng;

/// Identifier of the per-subset ChaCha8 stream sampler.
pub const UNIFORM_RNG_ID: &str = "chacha8-stream-v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Params {
    pub k: usize,
    pub vertices: usize,
    pub seed: u64,
}

impl Params {
    pub fn new(k: usize, vertices: usize, seed: u64) -> Result<Self> {
        if k < 4 {
            return Err(Error::Config(format!("k = {k} is below the minimum 4")));
        }
        check_capacity(vertices)?;
        if vertices < k + 1 {
            return Err(Error::Config(format!(
                "N = {vertices} must be at least k + 1 = {}",
                k + 1
            )));
        }
        Ok(Params { k, vertices, seed })
    }
}

/// The lower bound holds for `k >= 5`; `k = 4` only illustrates the construction.
pub fn require_supported_k(k: usize, allow_k4: bool) -> Result<()> {
    match k {
        0..=3 => Err(Error::Config(format!("k = {k} is below the minimum 4"))),
        4 if !allow_k4 => Err(Error::Config(
            "k = 4 is outside the supported range (k >= 5); pass the k = 4 override to use it".into(),
        )),
        _ => Ok(()),
    }
}

/// Unordered pair `{lo, hi}` with `1 <= lo < hi`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairColor {
    lo: u8,
    hi: u8,
}

impl PairColor {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        let (lo, hi) = (a.min(b), a.max(b));
        if lo == 0 || lo == hi || hi > u8::MAX as usize {
            return Err(Error::Domain(format!("{{{a},{b}}} is not a pair of positive labels")));
        }
        Ok(PairColor {
            lo: lo as u8,
            hi: hi as u8,
        })
    }

    pub fn lo(self) -> usize {
        self.lo as usize
    }

    pub fn hi(self) -> usize {
        self.hi as usize
    }

    /// Colex index among all pairs of positive labels.
    pub fn index(self) -> usize {
        (self.lo as usize - 1) + (self.hi as usize - 1) * (self.hi as usize - 2) / 2
    }

    pub fn from_index(index: usize) -> Self {
        let mut hi = 2;
        while hi * (hi - 1) / 2 <= index {
            hi += 1;
        }
        let lo = index - (hi - 1) * (hi - 2) / 2 + 1;
        PairColor {
            lo: lo as u8,
            hi: hi as u8,
        }
    }

    /// Number of colors for uniformity `k`, i.e. `C(k-1, 2)`.
    pub fn palette_size(k: usize) -> usize {
        (k - 1) * (k - 2) / 2
    }
}

impl fmt::Debug for PairColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.lo, self.hi)
    }
}

impl fmt::Display for PairColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.lo, self.hi)
    }
}

/// `chi_f(T)`: the 1-based positions in `f` of the two vertices of `f \ T`.
pub fn chi(f: &OrderedTuple, t: VertexSet) -> Result<PairColor> {
    let fs = f.to_set();
    if !t.is_subset(fs) {
        return Err(Error::Domain(format!("{t} is not contained in {fs}")));
    }
    let removed = fs.difference(t);
    if removed.len() != 2 {
        return Err(Error::Domain(format!(
            "{t} must omit exactly two vertices of {fs}, omits {}",
            removed.len()
        )));
    }
    let mut it = removed.iter();
    let (a, b) = (it.next().unwrap(), it.next().unwrap());
    PairColor::new(f.rank_of_vertex(a)?, f.rank_of_vertex(b)?)
}

/// A total map from the `(k-3)`-subsets of `[N]` to pair colors, stored by colex rank.
#[derive(Clone, PartialEq, Eq)]
pub struct Coloring {
    k: usize,
    vertices: usize,
    seed: u64,
    rng_id: String,
    table: Vec<PairColor>,
}

impl fmt::Debug for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Coloring")
            .field("k", &self.k)
            .field("vertices", &self.vertices)
            .field("seed", &self.seed)
            .field("rng_id", &self.rng_id)
            .field("entries", &self.table.len())
            .finish()
    }
}

impl Coloring {
    pub fn from_table(
        k: usize,
        vertices: usize,
        seed: u64,
        rng_id: impl Into<String>,
        table: Vec<PairColor>,
    ) -> Result<Self> {
        Params::new(k, vertices, seed)?;
        let rng_id = rng_id.into();
        if rng_id.is_empty() || rng_id.contains(char::is_whitespace) {
            return Err(Error::Domain(format!("rng id {rng_id:?} must be a single token")));
        }
        let expected = binomial(vertices as u64, k as u64 - 3) as usize;
        if table.len() != expected {
            return Err(Error::Domain(format!(
                "coloring table has {} entries, expected C({vertices}, {}) = {expected}",
                table.len(),
                k - 3
            )));
        }
        if let Some(c) = table.iter().find(|c| c.hi() > k - 1) {
            return Err(Error::Domain(format!("color {c:?} is outside [{}]", k - 1)));
        }
        Ok(Coloring {
            k,
            vertices,
            seed,
            rng_id,
            table,
        })
    }

    pub fn constant(k: usize, vertices: usize, color: PairColor) -> Result<Self> {
        let n = binomial(vertices as u64, k.saturating_sub(3) as u64) as usize;
        Coloring::from_table(k, vertices, 0, "constant", vec![color; n])
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn rng_id(&self) -> &str {
        &self.rng_id
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// `phi(T)` for a `(k-3)`-set `T`.
    pub fn get(&self, t: VertexSet) -> PairColor {
        debug_assert_eq!(t.len(), self.k - 3);
        self.table[colex_rank(t) as usize]
    }

    pub fn set(&mut self, t: VertexSet, color: PairColor) -> Result<()> {
        if t.len() != self.k - 3 || t.max_vertex() as usize > self.vertices {
            return Err(Error::Domain(format!("{t} is not a {}-subset of [{}]", self.k - 3, self.vertices)));
        }
        if color.hi() > self.k - 1 {
            return Err(Error::Domain(format!("color {color:?} is outside [{}]", self.k - 1)));
        }
        self.table[colex_rank(t) as usize] = color;
        Ok(())
    }

    /// `(T, phi(T))` in colex order of `T`.
    pub fn entries(&self) -> impl Iterator<Item = (VertexSet, PairColor)> + '_ {
        enumerate_subsets(self.vertices, self.k - 3)
            .expect("validated at construction")
            .zip(self.table.iter().copied())
    }

    /// Text format: `coloring k N seed rng-id`, then `v1 .. v_{k-3} : i j` per subset.
    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(
            w,
            "coloring {} {} {} {}",
            self.k, self.vertices, self.seed, self.rng_id
        )?;
        for (t, c) in self.entries() {
            for v in t.iter() {
                write!(w, "{v} ")?;
            }
            writeln!(w, ": {c}")?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("coloring text is ASCII")
    }

    /// SHA-256 of [`Coloring::to_text`], lowercase hex.
    pub fn content_hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_text().as_bytes()))
    }

    pub fn read_from<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing coloring header"))??;
        let (coloring, _) = Self::parse_block(&header, &mut lines, 1)?;
        for (i, rest) in lines.enumerate() {
            if !rest?.trim().is_empty() {
                return Err(Error::parse(coloring.len() + 2 + i, "trailing content after coloring"));
            }
        }
        Ok(coloring)
    }

    /// Parses a coloring block whose header line has already been read.
    /// Returns the coloring and the number of the last line consumed.
    pub(crate) fn parse_block<I>(header: &str, lines: &mut I, header_line: usize) -> Result<(Self, usize)>
    where
        I: Iterator<Item = std::io::Result<String>>,
    {
        let fields: Vec<&str> = header.split_whitespace().collect();
        let ["coloring", k, n, seed, rng_id] = fields[..] else {
            return Err(Error::parse(header_line, "header must be `coloring k N seed rng-id`"));
        };
        let num = |s: &str| {
            s.parse::<u64>()
                .map_err(|_| Error::parse(header_line, format!("not a nonnegative integer: {s:?}")))
        };
        let (k, n, seed) = (num(k)? as usize, num(n)? as usize, num(seed)?);
        Params::new(k, n, seed).map_err(|e| Error::parse(header_line, e.to_string()))?;
        let mut table = Vec::new();
        let mut lineno = header_line;
        for expected in enumerate_subsets(n, k - 3)? {
            lineno += 1;
            let line = lines
                .next()
                .ok_or_else(|| Error::parse(lineno, format!("missing entry for {expected}")))??;
            let (lhs, rhs) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(lineno, "entry must be `v1 .. : i j`"))?;
            let subset = parse_numbers(lhs, lineno)?;
            let got = VertexSet::from_vertices(subset.iter().map(|&v| v as Vertex))
                .map_err(|e| Error::parse(lineno, e.to_string()))?;
            if got != expected || subset.len() != k - 3 || subset.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::parse(
                    lineno,
                    format!("expected entry for {expected} (colex order)"),
                ));
            }
            let pair = parse_numbers(rhs, lineno)?;
            let [i, j] = pair[..] else {
                return Err(Error::parse(lineno, "color must be two labels `i j`"));
            };
            if !(1 <= i && i < j && (j as usize) < k) {
                return Err(Error::parse(lineno, format!("invalid color {i} {j} for k = {k}")));
            }
            table.push(PairColor::new(i as usize, j as usize)?);
        }
        let coloring = Coloring::from_table(k, n, seed, rng_id, table)
            .map_err(|e| Error::parse(header_line, e.to_string()))?;
        Ok((coloring, lineno))
    }
}

fn uniform_entry(seed: u64, rank: u64, palette: u64) -> PairColor {
    let mut r = rng::stream(seed, rank);
    PairColor::from_index(rng::below(&mut r, palette) as usize)
}

/// Uniform independent coloring. The color of the `(k-3)`-subset with colex
/// rank `r` is the first draw from ChaCha8 stream `r` under `seed`.
pub fn sample_coloring(p: Params) -> Coloring {
    let palette = PairColor::palette_size(p.k) as u64;
    let count = binomial(p.vertices as u64, p.k as u64 - 3);
    let table = (0..count).map(|r| uniform_entry(p.seed, r, palette)).collect();
    Coloring::from_table(p.k, p.vertices, p.seed, UNIFORM_RNG_ID, table).expect("params validated")
}

/// A coloring that first forces up to `attempts` random `(k-1)`-sets into `G`
/// (skipping any that conflict with earlier forced entries) and then fills the
/// remaining entries exactly as [`sample_coloring`] would.
///
/// Every coloring is admissible for the construction, so planted colorings
/// exercise the verifier on dense link hypergraphs that uniform sampling at
/// small `N` almost never produces.
pub fn sample_planted_coloring(p: Params, attempts: usize) -> Coloring {
    let palette = PairColor::palette_size(p.k) as u64;
    let count = binomial(p.vertices as u64, p.k as u64 - 3);
    let mut forced: Vec<Option<PairColor>> = vec![None; count as usize];
    let mut planter = rng::stream(p.seed, rng::PLANTING_STREAM);
    let candidates = binomial(p.vertices as u64, p.k as u64 - 1);
    for _ in 0..attempts {
        let f = colex_unrank(rng::below(&mut planter, candidates), p.k - 1);
        let demands = link_demands(f);
        let consistent = demands
            .iter()
            .all(|&(t, c)| forced[colex_rank(t) as usize].is_none_or(|have| have == c));
        if consistent {
            for (t, c) in demands {
                forced[colex_rank(t) as usize] = Some(c);
            }
        }
    }
    let table = forced
        .into_iter()
        .enumerate()
        .map(|(r, c)| c.unwrap_or_else(|| uniform_entry(p.seed, r as u64, palette)))
        .collect();
    Coloring::from_table(p.k, p.vertices, p.seed, planted_rng_id(attempts), table)
        .expect("params validated")
}

pub fn planted_rng_id(attempts: usize) -> String {
    format!("chacha8-planted{attempts}-v1")
}

/// The `(T, chi_f(T))` pairs that membership of `f` in `G` requires.
fn link_demands(f: VertexSet) -> Vec<(VertexSet, PairColor)> {
    let members: Vec<Vertex> = f.iter().collect();
    let mut out = Vec::with_capacity(members.len() * (members.len() - 1) / 2);
    for a in 0..members.len() {
        for b in a + 1..members.len() {
            let t = f.without(members[a]).without(members[b]);
            out.push((t, PairColor { lo: a as u8 + 1, hi: b as u8 + 1 }));
        }
    }
    out
}

/// Membership test for `G` on a `(k-1)`-set given as a bitset.
pub fn is_link_edge(phi: &Coloring, f: VertexSet) -> bool {
    debug_assert_eq!(f.len(), phi.k - 1);
    let mut members = [0 as Vertex; 64];
    let len = f.len();
    for (slot, v) in members.iter_mut().zip(f.iter()) {
        *slot = v;
    }
    for (a, &ma) in members[..len].iter().enumerate() {
        let fa = f.without(ma);
        for (b, &mb) in members[..len].iter().enumerate().skip(a + 1) {
            let want = PairColor {
                lo: a as u8 + 1,
                hi: b as u8 + 1,
            };
            if phi.get(fa.without(mb)) != want {
                return false;
            }
        }
    }
    true
}

/// `f in G_phi`: `phi(f \ {u, v}) = chi_f(f \ {u, v})` for every pair in `f`.
pub fn membership_in_g(phi: &Coloring, f: &OrderedTuple) -> Result<bool> {
    if f.len() != phi.k - 1 {
        return Err(Error::Domain(format!(
            "tuple has {} vertices, expected k - 1 = {}",
            f.len(),
            phi.k - 1
        )));
    }
    let fs = f.to_set();
    if fs.max_vertex() as usize > phi.vertices {
        return Err(Error::Domain(format!("{fs} leaves ground set [{}]", phi.vertices)));
    }
    Ok(is_link_edge(phi, fs))
}

/// The materialized `(k-1)`-uniform link hypergraph `G`.
#[derive(Clone, Debug)]
pub struct LinkHypergraph {
    k: usize,
    edges: EdgeSet,
    coloring: Option<Arc<Coloring>>,
}

impl LinkHypergraph {
    /// Wraps an externally supplied edge list (e.g. a loaded or hand-built `G`).
    pub fn from_edges(k: usize, edges: EdgeSet) -> Result<Self> {
        if edges.uniformity() + 1 != k {
            return Err(Error::Domain(format!(
                "link hypergraph for k = {k} must be {}-uniform, got {}",
                k - 1,
                edges.uniformity()
            )));
        }
        Ok(LinkHypergraph {
            k,
            edges,
            coloring: None,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn coloring(&self) -> Option<&Coloring> {
        self.coloring.as_deref()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, f: VertexSet) -> bool {
        self.edges.contains(f)
    }
}

pub fn build_g(phi: impl Into<Arc<Coloring>>) -> LinkHypergraph {
    let phi = phi.into();
    let edges = enumerate_subsets(phi.vertices, phi.k - 1)
        .expect("validated at construction")
        .filter(|f| is_link_edge(&phi, *f))
        .collect();
    LinkHypergraph {
        k: phi.k,
        edges: EdgeSet::from_sorted_unchecked(phi.k - 1, phi.vertices, edges),
        coloring: Some(phi),
    }
}

/// The materialized `k`-uniform parity hypergraph `H`.
#[derive(Clone, Debug)]
pub struct ParityHypergraph {
    k: usize,
    edges: EdgeSet,
}

impl ParityHypergraph {
    pub fn from_edges(k: usize, edges: EdgeSet) -> Result<Self> {
        if edges.uniformity() != k {
            return Err(Error::Domain(format!(
                "parity hypergraph must be {k}-uniform, got {}",
                edges.uniformity()
            )));
        }
        Ok(ParityHypergraph { k, edges })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: VertexSet) -> bool {
        self.edges.contains(e)
    }
}

/// `H = { e : |G[e]| odd }`. Only supersets of `G`-edges can have a nonzero
/// count, so candidates are generated from `G` rather than from all `k`-sets.
pub fn build_h(g: &LinkHypergraph) -> ParityHypergraph {
    let ground = g.edges.ground();
    let universe = VertexSet::full(ground);
    let mut candidates = BTreeSet::new();
    for f in g.edges.edges() {
        for v in universe.difference(*f).iter() {
            candidates.insert(f.with(v));
        }
    }
    let edges = candidates
        .into_iter()
        .filter(|e| g.edges.induced_count(*e) % 2 == 1)
        .collect();
    ParityHypergraph {
        k: g.k,
        edges: EdgeSet::from_sorted_unchecked(g.k, ground, edges),
    }
}
