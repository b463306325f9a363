//! Exhaustive checks of the link/parity hypergraph properties.
//!
//! For a `(k+1)`-set `S` the link graph `G'` has an edge `{x, y}` whenever
//! `S \ {x, y}` is an edge of `G`. Everything here is phrased in terms of that
//! graph: the parity of `|H[S]|`, the bound `|G[e]| <= 2`, the absence of three
//! disjoint link edges, and the component structure that pins `|H[S]|` to
//! 0, 2 or 4.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use crate::construction::{Coloring, LinkHypergraph, ParityHypergraph};
use crate::error::{Error, Result};
use crate::hypergraph::{binomial, enumerate_subset_range, EdgeSet, ShardSpec, Vertex, VertexSet};

/// The graph `G'` on a `(k+1)`-set `S`.
#[derive(Clone, Debug)]
pub struct LinkGraph {
    set: VertexSet,
    members: Vec<Vertex>,
    // adjacency by position in `members`
    adj: Vec<u64>,
}

impl LinkGraph {
    pub fn set(&self) -> VertexSet {
        self.set
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for (i, a) in self.adj.iter().enumerate() {
            for j in (i + 1)..self.members.len() {
                if a >> j & 1 == 1 {
                    out.push((self.members[i], self.members[j]));
                }
            }
        }
        out
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.members
            .iter()
            .position(|&m| m == v)
            .map_or(0, |i| self.adj[i].count_ones() as usize)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).max().unwrap_or(0)
    }

    /// Vertex of largest degree, if that degree exceeds 2.
    fn high_degree_vertex(&self) -> Option<Vertex> {
        self.adj
            .iter()
            .position(|a| a.count_ones() > 2)
            .map(|i| self.members[i])
    }

    pub fn degree_one_count(&self) -> usize {
        self.adj.iter().filter(|a| a.count_ones() == 1).count()
    }

    /// Three pairwise disjoint edges, if any exist.
    pub fn three_matching(&self) -> Option<[(Vertex, Vertex); 3]> {
        let edges = self.edges();
        let mask = |(a, b): (Vertex, Vertex)| VertexSet::singleton(a).with(b);
        for (i, &e1) in edges.iter().enumerate() {
            for (j, &e2) in edges.iter().enumerate().skip(i + 1) {
                if !mask(e1).intersection(mask(e2)).is_empty() {
                    continue;
                }
                let used = mask(e1).union(mask(e2));
                if let Some(&e3) = edges[j + 1..]
                    .iter()
                    .find(|&&e3| mask(e3).intersection(used).is_empty())
                {
                    return Some([e1, e2, e3]);
                }
            }
        }
        None
    }

    /// Component multiset. Only meaningful when every degree is at most 2.
    pub fn structure(&self) -> Result<StructureClass> {
        if let Some(v) = self.high_degree_vertex() {
            return Err(Error::Domain(format!(
                "vertex {v} has degree {} in the link graph of {}",
                self.degree(v),
                self.set
            )));
        }
        let n = self.members.len();
        let mut seen = 0u64;
        let mut class = StructureClass::default();
        for start in 0..n {
            if seen >> start & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let i = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = self.adj[i] & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            seen |= comp;
            let vertices = comp.count_ones() as usize;
            let edges = (0..n)
                .filter(|&i| comp >> i & 1 == 1)
                .map(|i| self.adj[i].count_ones() as usize)
                .sum::<usize>()
                / 2;
            match (vertices, edges) {
                (1, 0) => class.isolated += 1,
                (v, e) if e + 1 == v => class.paths.push(e),
                (v, e) if e == v => class.cycles.push(e),
                (v, e) => {
                    return Err(Error::Inconsistency(format!(
                        "component with {v} vertices and {e} edges under max degree 2"
                    )))
                }
            }
        }
        class.cycles.sort_unstable_by(|a, b| b.cmp(a));
        class.paths.sort_unstable_by(|a, b| b.cmp(a));
        Ok(class)
    }
}

pub fn build_link_graph(g: &LinkHypergraph, s: VertexSet) -> LinkGraph {
    let members: Vec<Vertex> = s.iter().collect();
    let mut adj = vec![0u64; members.len()];
    for a in 0..members.len() {
        let sa = s.without(members[a]);
        for b in a + 1..members.len() {
            if g.contains(sa.without(members[b])) {
                adj[a] |= 1 << b;
                adj[b] |= 1 << a;
            }
        }
    }
    LinkGraph {
        set: s,
        members,
        adj,
    }
}

/// Canonical component multiset of a max-degree-2 graph: cycle lengths and
/// path lengths (in edges), each sorted descending, plus the isolated count.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StructureClass {
    pub cycles: Vec<usize>,
    pub paths: Vec<usize>,
    pub isolated: usize,
}

/// The three configurations of two nontrivial components on six vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedCase {
    TwoTriangles,
    TriangleAndPath,
    TwoPaths,
}

impl NamedCase {
    pub fn expected_h(self) -> usize {
        match self {
            NamedCase::TwoTriangles => 0,
            NamedCase::TriangleAndPath => 2,
            NamedCase::TwoPaths => 4,
        }
    }
}

impl StructureClass {
    /// Which named case the nontrivial components form, ignoring isolated vertices.
    pub fn named_case(&self) -> Option<NamedCase> {
        match (&self.cycles[..], &self.paths[..]) {
            ([3, 3], []) => Some(NamedCase::TwoTriangles),
            ([3], [2]) => Some(NamedCase::TriangleAndPath),
            ([], [2, 2]) => Some(NamedCase::TwoPaths),
            _ => None,
        }
    }

    /// Degree-1 vertices implied by the structure: two per nontrivial path.
    pub fn path_endpoints(&self) -> usize {
        2 * self.paths.len()
    }
}

impl fmt::Display for StructureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.cycles.iter().map(|c| format!("C{c}")).collect();
        parts.extend(self.paths.iter().map(|p| format!("P{p}")));
        if self.isolated > 0 || parts.is_empty() {
            parts.push(format!("I{}", self.isolated));
        }
        f.write_str(&parts.join("+"))
    }
}

impl FromStr for StructureClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut class = StructureClass::default();
        for part in s.split('+') {
            let bad = || Error::Domain(format!("malformed structure class {s:?}"));
            let (tag, num) = part.split_at_checked(1).ok_or_else(bad)?;
            let num: usize = num.parse().map_err(|_| bad())?;
            match tag {
                "C" => class.cycles.push(num),
                "P" => class.paths.push(num),
                "I" => class.isolated = num,
                _ => return Err(bad()),
            }
        }
        Ok(class)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedProfile {
    pub set: VertexSet,
    pub g_count: usize,
    pub h_count: usize,
    pub structure: StructureClass,
    pub pass: bool,
}

/// Three pairwise disjoint pairs of `S` whose complements all lie in `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct T3Witness {
    pub set: VertexSet,
    pub pairs: [(Vertex, Vertex); 3],
}

impl fmt::Display for T3Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pairs")?;
        for (a, b) in self.pairs {
            write!(f, " {a}-{b}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Claim1Outcome {
    pub g_count: usize,
    pub h_count: usize,
    /// `sum over k-subsets e of S of |G[e]|`, which must equal `2 |G[S]|`.
    pub link_sum: usize,
    pub even: bool,
}

fn h_count_direct(h: &ParityHypergraph, s: VertexSet) -> usize {
    s.iter().filter(|&x| h.contains(s.without(x))).count()
}

fn g_count_by_lookup(g: &LinkHypergraph, e: VertexSet) -> usize {
    e.iter().filter(|&x| g.contains(e.without(x))).count()
}

/// Parity of `|H[S]|`, with the double count `sum_e |G[e]| = 2 |G[S]|` confirmed.
pub fn check_claim1(g: &LinkHypergraph, h: &ParityHypergraph, s: VertexSet) -> Result<Claim1Outcome> {
    let g_count = g.edges().induced_edges(s).len();
    let link_sum: usize = s.iter().map(|x| g_count_by_lookup(g, s.without(x))).sum();
    if link_sum != 2 * g_count {
        return Err(Error::Inconsistency(format!(
            "double count on {s}: sum of |G[e]| is {link_sum}, 2|G[S]| is {}",
            2 * g_count
        )));
    }
    let h_count = h_count_direct(h, s);
    Ok(Claim1Outcome {
        g_count,
        h_count,
        link_sum,
        even: h_count.is_multiple_of(2),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Claim2Outcome {
    pub count: usize,
    pub pass: bool,
}

/// `|G[e]| <= 2` for a `k`-set `e`.
pub fn check_claim2(g: &LinkHypergraph, e: VertexSet) -> Claim2Outcome {
    let count = g_count_by_lookup(g, e);
    Claim2Outcome {
        count,
        pass: count <= 2,
    }
}

/// Searches `S` for three disjoint pairs whose complements are all in `G`.
pub fn check_claim3(g: &LinkHypergraph, s: VertexSet) -> Result<Option<T3Witness>> {
    if s.len() < 6 {
        return Err(Error::Domain(format!(
            "three disjoint pairs need at least 6 vertices, {s} has {}",
            s.len()
        )));
    }
    Ok(build_link_graph(g, s)
        .three_matching()
        .map(|pairs| T3Witness { set: s, pairs }))
}

/// Component structure of `G'` and `|H[S]|`, the latter computed both from `H`
/// and as the number of degree-1 vertices of `G'`.
pub fn classify_profile(g: &LinkHypergraph, h: &ParityHypergraph, s: VertexSet) -> Result<InducedProfile> {
    let link = build_link_graph(g, s);
    let structure = link.structure()?;
    let direct = h_count_direct(h, s);
    let by_degree = link.degree_one_count();
    if direct != by_degree || by_degree != structure.path_endpoints() {
        return Err(Error::Inconsistency(format!(
            "|H[S]| on {s}: {direct} from H, {by_degree} degree-1 vertices in G', structure {structure}"
        )));
    }
    Ok(InducedProfile {
        set: s,
        g_count: link.edge_count(),
        h_count: direct,
        pass: matches!(direct, 0 | 2 | 4),
        structure,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FailureKind {
    Claim1,
    Claim2,
    Claim3,
    InducedCount,
    DoubleCount,
    ProfileMismatch,
}

impl FailureKind {
    pub fn is_inconsistency(self) -> bool {
        matches!(self, FailureKind::DoubleCount | FailureKind::ProfileMismatch)
    }

    fn as_str(self) -> &'static str {
        match self {
            FailureKind::Claim1 => "claim1",
            FailureKind::Claim2 => "claim2",
            FailureKind::Claim3 => "claim3",
            FailureKind::InducedCount => "induced-count",
            FailureKind::DoubleCount => "double-count",
            FailureKind::ProfileMismatch => "profile-mismatch",
        }
    }
}

impl FromStr for FailureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "claim1" => FailureKind::Claim1,
            "claim2" => FailureKind::Claim2,
            "claim3" => FailureKind::Claim3,
            "induced-count" => FailureKind::InducedCount,
            "double-count" => FailureKind::DoubleCount,
            "profile-mismatch" => FailureKind::ProfileMismatch,
            _ => return Err(Error::Domain(format!("unknown failure kind {s:?}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepFailure {
    pub kind: FailureKind,
    pub subset: VertexSet,
    pub detail: String,
}

impl fmt::Display for SweepFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "fail {}", self.kind.as_str())?;
        for v in self.subset.iter() {
            write!(f, " {v}")?;
        }
        write!(f, " : {}", self.detail)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Verdict {
    Pass,
    ClaimFailure,
    Inconsistency,
}

impl Verdict {
    /// Process exit status for this verdict.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::ClaimFailure => 2,
            Verdict::Inconsistency => 3,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::ClaimFailure => "claim-failure",
            Verdict::Inconsistency => "inconsistency",
        }
    }
}

/// Result of sweeping one colex range of `k`-sets and `(k+1)`-sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub k: usize,
    pub vertices: usize,
    pub seed: u64,
    pub set_range: (u64, u64),
    pub edge_range: (u64, u64),
    pub sets_checked: u64,
    pub edges_checked: u64,
    /// Number of swept `(k+1)`-sets per value of `|H[S]|`.
    pub h_counts: BTreeMap<usize, u64>,
    /// Number of swept `(k+1)`-sets per (structure class, `|H[S]|`).
    pub classes: BTreeMap<(StructureClass, usize), u64>,
    pub failures: Vec<SweepFailure>,
}

impl SweepReport {
    pub fn verdict(&self) -> Verdict {
        if self.failures.iter().any(|f| f.kind.is_inconsistency()) {
            Verdict::Inconsistency
        } else if self.failures.is_empty() {
            Verdict::Pass
        } else {
            Verdict::ClaimFailure
        }
    }

    pub fn h_count(&self, h: usize) -> u64 {
        self.h_counts.get(&h).copied().unwrap_or(0)
    }

    /// The `sweep k N seed verdict h0 h2 h4` summary line.
    pub fn summary_line(&self) -> String {
        format!(
            "sweep {} {} {} {} {} {} {}",
            self.k,
            self.vertices,
            self.seed,
            self.verdict().as_str(),
            self.h_count(0),
            self.h_count(2),
            self.h_count(4)
        )
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        for f in &self.failures {
            writeln!(w, "{f}")?;
        }
        writeln!(w, "range sets {} {}", self.set_range.0, self.set_range.1)?;
        writeln!(w, "range edges {} {}", self.edge_range.0, self.edge_range.1)?;
        writeln!(w, "checked sets {} edges {}", self.sets_checked, self.edges_checked)?;
        for ((class, h), count) in &self.classes {
            writeln!(w, "class {class} h{h} {count}")?;
        }
        writeln!(w, "{}", self.summary_line())?;
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("report is ASCII")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut report = SweepReport {
            k: 0,
            vertices: 0,
            seed: 0,
            set_range: (0, 0),
            edge_range: (0, 0),
            sets_checked: 0,
            edges_checked: 0,
            h_counts: BTreeMap::new(),
            classes: BTreeMap::new(),
            failures: Vec::new(),
        };
        let mut summary = None;
        for (i, line) in text.lines().enumerate() {
            let lineno = i + 1;
            let bad = |msg: &str| Error::parse(lineno, msg.to_string());
            let num = |t: &str| t.parse::<u64>().map_err(|_| bad("expected an integer"));
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks.first().copied() {
                None => continue,
                Some("fail") => {
                    let (head, detail) = line.split_once(" : ").ok_or_else(|| bad("failure line lacks ` : `"))?;
                    let head: Vec<&str> = head.split_whitespace().collect();
                    let kind = head.get(1).ok_or_else(|| bad("missing failure kind"))?.parse()?;
                    let vs = head[2..].iter().map(|t| num(t).map(|v| v as Vertex)).collect::<Result<Vec<_>>>()?;
                    report.failures.push(SweepFailure {
                        kind,
                        subset: VertexSet::from_vertices(vs)?,
                        detail: detail.to_string(),
                    });
                }
                Some("range") => match toks[..] {
                    [_, "sets", lo, hi] => report.set_range = (num(lo)?, num(hi)?),
                    [_, "edges", lo, hi] => report.edge_range = (num(lo)?, num(hi)?),
                    _ => return Err(bad("malformed range line")),
                },
                Some("checked") => match toks[..] {
                    [_, "sets", s, "edges", e] => {
                        report.sets_checked = num(s)?;
                        report.edges_checked = num(e)?;
                    }
                    _ => return Err(bad("malformed checked line")),
                },
                Some("class") => match toks[..] {
                    [_, class, h, count] => {
                        let h = h.strip_prefix('h').ok_or_else(|| bad("class count must be h<n>"))?;
                        report.classes.insert((class.parse()?, num(h)? as usize), num(count)?);
                    }
                    _ => return Err(bad("malformed class line")),
                },
                Some("sweep") => match toks[..] {
                    [_, k, n, seed, verdict, h0, h2, h4] => {
                        report.k = num(k)? as usize;
                        report.vertices = num(n)? as usize;
                        report.seed = num(seed)?;
                        for (h, c) in [(0, h0), (2, h2), (4, h4)] {
                            let c = num(c)?;
                            if c > 0 {
                                report.h_counts.insert(h, c);
                            }
                        }
                        summary = Some((lineno, verdict.to_string()));
                    }
                    _ => return Err(bad("malformed sweep line")),
                },
                Some(other) => return Err(bad(&format!("unknown line tag {other:?}"))),
            }
        }
        let (lineno, verdict) = summary.ok_or_else(|| Error::parse(0, "missing sweep summary line"))?;
        if report.verdict().as_str() != verdict {
            return Err(Error::parse(lineno, format!("verdict {verdict} disagrees with failure lines")));
        }
        Ok(report)
    }
}

/// Associative merge of shard reports covering adjacent colex ranges.
pub fn merge_reports(mut reports: Vec<SweepReport>) -> Result<SweepReport> {
    reports.sort_by_key(|r| (r.set_range, r.edge_range));
    let mut iter = reports.into_iter();
    let mut acc = iter
        .next()
        .ok_or_else(|| Error::Domain("no reports to merge".into()))?;
    for r in iter {
        if (r.k, r.vertices, r.seed) != (acc.k, acc.vertices, acc.seed) {
            return Err(Error::Domain(format!(
                "reports disagree on (k, N, seed): {:?} vs {:?}",
                (acc.k, acc.vertices, acc.seed),
                (r.k, r.vertices, r.seed)
            )));
        }
        if r.set_range.0 != acc.set_range.1 || r.edge_range.0 != acc.edge_range.1 {
            return Err(Error::Domain(format!(
                "report ranges are not contiguous: sets {:?} after {:?}, edges {:?} after {:?}",
                r.set_range, acc.set_range, r.edge_range, acc.edge_range
            )));
        }
        acc.set_range.1 = r.set_range.1;
        acc.edge_range.1 = r.edge_range.1;
        acc.sets_checked += r.sets_checked;
        acc.edges_checked += r.edges_checked;
        for (h, c) in r.h_counts {
            *acc.h_counts.entry(h).or_default() += c;
        }
        for (key, c) in r.classes {
            *acc.classes.entry(key).or_default() += c;
        }
        acc.failures.extend(r.failures);
    }
    Ok(acc)
}

/// Runs every check over one shard of the `k`-sets (link bound) and the
/// `(k+1)`-sets (parity, disjoint pairs, structure, 0/2/4). Stops at the first
/// failure, which is recorded in the report.
pub fn full_sweep(g: &LinkHypergraph, h: &ParityHypergraph, shard: ShardSpec) -> Result<SweepReport> {
    let k = g.k();
    let n = g.edges().ground();
    if h.k() != k || h.edges().ground() != n {
        return Err(Error::Domain(format!(
            "G (k = {k}, N = {n}) and H (k = {}, N = {}) do not match",
            h.k(),
            h.edges().ground()
        )));
    }
    if n < k + 1 {
        return Err(Error::Domain(format!("N = {n} has no (k+1)-subsets for k = {k}")));
    }
    let set_range = shard.range(binomial(n as u64, k as u64 + 1));
    let edge_range = shard.range(binomial(n as u64, k as u64));
    let mut report = SweepReport {
        k,
        vertices: n,
        seed: g.coloring().map_or(0, Coloring::seed),
        set_range,
        edge_range,
        sets_checked: 0,
        edges_checked: 0,
        h_counts: BTreeMap::new(),
        classes: BTreeMap::new(),
        failures: Vec::new(),
    };
    let fail = |report: &mut SweepReport, kind, subset, detail: String| {
        report.failures.push(SweepFailure { kind, subset, detail });
    };

    for e in enumerate_subset_range(n, k, edge_range.0, edge_range.1)? {
        report.edges_checked += 1;
        let c2 = check_claim2(g, e);
        if !c2.pass {
            fail(&mut report, FailureKind::Claim2, e, format!("|G[e]| = {}", c2.count));
            return Ok(report);
        }
    }

    for s in enumerate_subset_range(n, k + 1, set_range.0, set_range.1)? {
        report.sets_checked += 1;
        let c1 = match check_claim1(g, h, s) {
            Ok(c1) => c1,
            Err(Error::Inconsistency(msg)) => {
                fail(&mut report, FailureKind::DoubleCount, s, msg);
                return Ok(report);
            }
            Err(e) => return Err(e),
        };
        if !c1.even {
            fail(&mut report, FailureKind::Claim1, s, format!("|H[S]| = {}", c1.h_count));
            return Ok(report);
        }
        if s.len() >= 6 {
            if let Some(w) = check_claim3(g, s)? {
                fail(&mut report, FailureKind::Claim3, s, w.to_string());
                return Ok(report);
            }
        }
        let profile = match classify_profile(g, h, s) {
            Ok(p) => p,
            Err(Error::Domain(msg)) => {
                fail(&mut report, FailureKind::Claim2, s, msg);
                return Ok(report);
            }
            Err(Error::Inconsistency(msg)) => {
                fail(&mut report, FailureKind::ProfileMismatch, s, msg);
                return Ok(report);
            }
            Err(e) => return Err(e),
        };
        if !profile.pass {
            fail(
                &mut report,
                FailureKind::InducedCount,
                s,
                format!("|H[S]| = {}", profile.h_count),
            );
            return Ok(report);
        }
        *report.h_counts.entry(profile.h_count).or_default() += 1;
        *report
            .classes
            .entry((profile.structure, profile.h_count))
            .or_default() += 1;
    }
    Ok(report)
}

/// Writes the failing subset together with the coloring that produced it.
pub fn write_repro_bundle<W: Write>(mut w: W, failure: &SweepFailure, coloring: Option<&Coloring>) -> Result<()> {
    writeln!(w, "repro v1")?;
    writeln!(w, "{failure}")?;
    match coloring {
        Some(c) => c.write_to(&mut w)?,
        None => writeln!(w, "coloring unavailable")?,
    }
    Ok(())
}

/// Histogram of `|E[S]|` over a shard of the `(r+1)`-subsets for an
/// `r`-uniform `E`, with every subset whose count is not 0, 2 or 4.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CountProfile {
    pub histogram: BTreeMap<usize, u64>,
    pub violations: Vec<(VertexSet, usize)>,
}

impl CountProfile {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.histogram.values().sum()
    }
}

pub fn count_profile(edges: &EdgeSet, shard: ShardSpec) -> Result<CountProfile> {
    let r = edges.uniformity();
    let n = edges.ground();
    let mut out = CountProfile::default();
    if n < r + 1 {
        return Ok(out);
    }
    let (lo, hi) = shard.range(binomial(n as u64, r as u64 + 1));
    for s in enumerate_subset_range(n, r + 1, lo, hi)? {
        let c = s.iter().filter(|&x| edges.contains(s.without(x))).count();
        *out.histogram.entry(c).or_default() += 1;
        if !matches!(c, 0 | 2 | 4) {
            out.violations.push((s, c));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{build_h, LinkHypergraph};

    fn set(vs: &[Vertex]) -> VertexSet {
        VertexSet::from_vertices(vs.iter().copied()).unwrap()
    }

    /// `G` on `[6]` (k = 5) whose link graph on `[6]` has exactly the given edges.
    fn from_link_edges(pairs: &[(Vertex, Vertex)]) -> (LinkHypergraph, ParityHypergraph) {
        let s = VertexSet::full(6);
        let edges = pairs.iter().map(|&(a, b)| s.without(a).without(b)).collect();
        let g = LinkHypergraph::from_edges(5, EdgeSet::new(4, 6, edges).unwrap()).unwrap();
        let h = build_h(&g);
        (g, h)
    }

    #[test]
    fn empty_g_passes_everything() {
        let (g, h) = from_link_edges(&[]);
        let s = VertexSet::full(6);
        let c1 = check_claim1(&g, &h, s).unwrap();
        assert_eq!((c1.link_sum, c1.g_count, c1.h_count, c1.even), (0, 0, 0, true));
        assert!(check_claim2(&g, set(&[1, 2, 3, 4, 5])).pass);
        assert_eq!(check_claim3(&g, s).unwrap(), None);
        let link = build_link_graph(&g, s);
        assert_eq!(link.edge_count(), 0);
        let p = classify_profile(&g, &h, s).unwrap();
        assert_eq!(p.structure.to_string(), "I6");
        assert_eq!(p.h_count, 0);
    }

    #[test]
    fn single_link_edge() {
        let (g, _) = from_link_edges(&[(2, 5)]);
        let link = build_link_graph(&g, VertexSet::full(6));
        assert_eq!(link.edges(), vec![(2, 5)]);
        for e in VertexSet::full(6).subsets(5) {
            assert!(check_claim2(&g, e).count <= 1);
        }
    }

    #[test]
    fn two_paths_give_four() {
        // paths a-b-c = 1-2-3 and u-v-w = 4-5-6
        let (g, h) = from_link_edges(&[(1, 2), (2, 3), (4, 5), (5, 6)]);
        let s = VertexSet::full(6);
        let c1 = check_claim1(&g, &h, s).unwrap();
        assert_eq!((c1.h_count, c1.even, c1.link_sum), (4, true, 8));
        let p = classify_profile(&g, &h, s).unwrap();
        assert_eq!(p.structure.named_case(), Some(NamedCase::TwoPaths));
        assert_eq!(p.h_count, 4);
        // abcuv, abcvw, uvwab, uvwbc: S minus each path endpoint
        let want: Vec<_> = [6, 4, 3, 1].iter().map(|&x| s.without(x)).collect();
        let mut got = h.edges().induced_edges(s);
        got.sort();
        let mut want = want;
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn two_triangles_give_zero() {
        let (g, h) = from_link_edges(&[(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]);
        let p = classify_profile(&g, &h, VertexSet::full(6)).unwrap();
        assert_eq!(p.structure.named_case(), Some(NamedCase::TwoTriangles));
        assert_eq!(p.structure.to_string(), "C3+C3");
        assert_eq!(p.h_count, 0);
        assert!(p.pass);
    }

    #[test]
    fn triangle_and_path_give_two() {
        let (g, h) = from_link_edges(&[(1, 2), (2, 3), (1, 3), (4, 5), (5, 6)]);
        let p = classify_profile(&g, &h, VertexSet::full(6)).unwrap();
        assert_eq!(p.structure.to_string(), "C3+P2");
        assert_eq!(p.structure.named_case(), Some(NamedCase::TriangleAndPath));
        assert_eq!(p.h_count, 2);
    }

    #[test]
    fn planted_t3_is_detected() {
        let (g, h) = from_link_edges(&[(1, 4), (2, 5), (3, 6)]);
        let s = VertexSet::full(6);
        let w = check_claim3(&g, s).unwrap().expect("witness");
        assert_eq!(w.pairs, [(1, 4), (2, 5), (3, 6)]);
        let report = full_sweep(&g, &h, ShardSpec::WHOLE).unwrap();
        assert_eq!(report.verdict(), Verdict::ClaimFailure);
        assert_eq!(report.failures[0].kind, FailureKind::Claim3);
        assert!(check_claim3(&g, set(&[1, 2, 3, 4, 5])).is_err());
    }

    #[test]
    fn degree_three_is_a_claim2_failure() {
        let (g, h) = from_link_edges(&[(1, 2), (1, 3), (1, 4)]);
        assert!(!check_claim2(&g, VertexSet::full(6).without(1)).pass);
        assert!(matches!(classify_profile(&g, &h, VertexSet::full(6)), Err(Error::Domain(_))));
        let report = full_sweep(&g, &h, ShardSpec::WHOLE).unwrap();
        assert_eq!(report.failures[0].kind, FailureKind::Claim2);
        assert_eq!(report.verdict().exit_code(), 2);
    }

    #[test]
    fn inconsistent_h_is_an_internal_error() {
        let (g, _) = from_link_edges(&[(1, 2)]);
        let h = ParityHypergraph::from_edges(5, EdgeSet::empty(5, 6).unwrap()).unwrap();
        // |H[S]| = 0 is even, so only the degree-1 cross-check can notice.
        let report = full_sweep(&g, &h, ShardSpec::WHOLE).unwrap();
        assert_eq!(report.verdict(), Verdict::Inconsistency);
        assert_eq!(report.verdict().exit_code(), 3);
    }

    #[test]
    fn structure_class_text_round_trip() {
        for text in ["I6", "C3+C3", "C3+P2", "P2+P2", "P1+I4", "C4+P1+I2"] {
            let c: StructureClass = text.parse().unwrap();
            assert_eq!(c.to_string(), text);
        }
        assert!("X3".parse::<StructureClass>().is_err());
    }

    #[test]
    fn report_text_round_trip_and_merge() {
        let (g, h) = from_link_edges(&[(1, 2), (2, 3), (4, 5)]);
        let whole = full_sweep(&g, &h, ShardSpec::WHOLE).unwrap();
        assert_eq!(whole.verdict(), Verdict::Pass);
        assert_eq!(SweepReport::parse(&whole.to_text()).unwrap(), whole);
        let shards: Vec<_> = (0..3)
            .map(|i| full_sweep(&g, &h, ShardSpec::new(i, 3).unwrap()).unwrap())
            .collect();
        let merged = merge_reports(shards.into_iter().rev().collect()).unwrap();
        assert_eq!(merged.to_text(), whole.to_text());
    }

    #[test]
    fn count_profile_on_complete_hypergraph() {
        let e = EdgeSet::new(2, 5, VertexSet::full(5).subsets(2).collect()).unwrap();
        let p = count_profile(&e, ShardSpec::WHOLE).unwrap();
        // every triple of K5 spans three edges
        assert_eq!(p.histogram.get(&3), Some(&10));
        assert!(!p.pass());
    }
}
