//! Exact point-configuration predicates: general position, convex position,
//! the 0/2/4 count of non-convex `(d+2)`-tuples inside `(d+3)`-sets, and the
//! hypergraph of non-convex `(d+2)`-tuples.
//!
//! Coordinates are exact scalars. Orientation signs are Bareiss determinants
//! of the lifted `(d+1) x (d+1)` matrix whose rows are `(1, x_1, .., x_d)`.
//! Labels run over `1..=P`, matching [`VertexSet`] vertices.

use std::fmt;
use std::io::{BufRead, Write};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Num, Signed};

use crate::error::{Error, Result};
use crate::hypergraph::{binomial, check_capacity, colex_rank, EdgeSet, ShardSpec, Vertex, VertexSet};
use crate::rng;
use crate::verifier::{count_profile, CountProfile};

/// Largest supported dimension.
pub const MAX_DIMENSION: usize = 3;

mod sealed {
    pub trait Sealed {}
    impl Sealed for i64 {}
    impl Sealed for i128 {}
    impl Sealed for num_bigint::BigInt {}
    impl Sealed for num_rational::BigRational {}
}

/// Exact ring (or field) arithmetic for geometric predicates. Fixed-width
/// integers report overflow as a domain error instead of wrapping.
pub trait ExactScalar:
    sealed::Sealed
    + Num
    + Signed
    + Clone
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
{
}

impl ExactScalar for i64 {}
impl ExactScalar for i128 {}
impl ExactScalar for BigInt {}
impl ExactScalar for BigRational {}

fn overflow() -> Error {
    Error::Domain("exact arithmetic overflowed; use a wider scalar type".into())
}

fn sign_of<T: ExactScalar>(x: &T) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Determinant by fraction-free Gaussian elimination. All divisions are exact.
pub fn bareiss_determinant<T: ExactScalar>(mut m: Vec<Vec<T>>) -> Result<T> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::Domain("determinant of a non-square matrix".into()));
    }
    if n == 0 {
        return Ok(T::one());
    }
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(T::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[i][j].checked_mul(&m[k][k]).ok_or_else(overflow)?;
                let b = m[i][k].checked_mul(&m[k][j]).ok_or_else(overflow)?;
                m[i][j] = a.checked_sub(&b).ok_or_else(overflow)? / prev.clone();
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Reports the flat `(d+1)`-tuple that breaks general position.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneralPosition {
    pub holds: bool,
    pub witness: Option<VertexSet>,
}

/// Outcome of a convex-position test; `witness` is a point of the subset
/// lying inside the convex hull of the others.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConvexPosition {
    pub convex: bool,
    pub witness: Option<Vertex>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MotzkinCount {
    pub set: VertexSet,
    pub count: usize,
}

impl MotzkinCount {
    pub fn verdict(&self) -> bool {
        matches!(self.count, 0 | 2 | 4)
    }
}

/// Finite point set in `R^d` with exact coordinates. Integer configurations
/// may carry a common positive denominator; it scales every orientation
/// determinant by the same positive factor, so predicates ignore it.
pub struct PointConfiguration<T: ExactScalar> {
    dim: usize,
    points: Vec<Vec<T>>,
    denom: u64,
    signs: OnceLock<std::result::Result<Vec<i8>, String>>,
}

impl<T: ExactScalar> Clone for PointConfiguration<T> {
    fn clone(&self) -> Self {
        PointConfiguration {
            dim: self.dim,
            points: self.points.clone(),
            denom: self.denom,
            signs: self.signs.clone(),
        }
    }
}

impl<T: ExactScalar> fmt::Debug for PointConfiguration<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PointConfiguration")
            .field("dim", &self.dim)
            .field("points", &self.points)
            .field("denom", &self.denom)
            .finish()
    }
}

impl<T: ExactScalar> PartialEq for PointConfiguration<T> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.denom == other.denom && self.points == other.points
    }
}

impl<T: ExactScalar> PointConfiguration<T> {
    pub fn new(dim: usize, points: Vec<Vec<T>>) -> Result<Self> {
        Self::with_denominator(dim, points, 1)
    }

    pub fn with_denominator(dim: usize, points: Vec<Vec<T>>, denom: u64) -> Result<Self> {
        if !(1..=MAX_DIMENSION).contains(&dim) {
            return Err(Error::Domain(format!("dimension must lie in 1..={MAX_DIMENSION}, got {dim}")));
        }
        if denom == 0 {
            return Err(Error::Domain("denominator must be positive".into()));
        }
        check_capacity(points.len())?;
        if let Some(i) = points.iter().position(|p| p.len() != dim) {
            return Err(Error::Domain(format!(
                "point {} has {} coordinates, expected {dim}",
                i + 1,
                points[i].len()
            )));
        }
        Ok(PointConfiguration {
            dim,
            points,
            denom,
            signs: OnceLock::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn denom(&self) -> u64 {
        self.denom
    }

    pub fn points(&self) -> &[Vec<T>] {
        &self.points
    }

    /// Coordinates of label `v` (1-based).
    pub fn point(&self, v: Vertex) -> &[T] {
        &self.points[v as usize - 1]
    }

    pub fn labels(&self) -> VertexSet {
        VertexSet::full(self.points.len())
    }

    fn check_labels(&self, s: VertexSet) -> Result<()> {
        if !s.is_subset(self.labels()) {
            return Err(Error::Domain(format!("labels {s} outside 1..={}", self.len())));
        }
        Ok(())
    }

    /// Orientation determinant of the given labels in the given order.
    pub fn orientation(&self, labels: &[Vertex]) -> Result<T> {
        if labels.len() != self.dim + 1 {
            return Err(Error::Domain(format!(
                "orientation needs {} points in dimension {}",
                self.dim + 1,
                self.dim
            )));
        }
        if let Some(&v) = labels.iter().find(|&&v| v == 0 || v as usize > self.len()) {
            return Err(Error::Domain(format!("label {v} outside 1..={}", self.len())));
        }
        let matrix = labels
            .iter()
            .map(|&v| std::iter::once(T::one()).chain(self.point(v).iter().cloned()).collect())
            .collect();
        bareiss_determinant(matrix)
    }

    fn sign_table(&self) -> Result<&[i8]> {
        let table = self.signs.get_or_init(|| {
            VertexSet::full(self.len())
                .subsets(self.dim + 1)
                .map(|s| {
                    let labels: Vec<Vertex> = s.iter().collect();
                    self.orientation(&labels).map(|d| sign_of(&d)).map_err(|e| e.to_string())
                })
                .collect()
        });
        table.as_deref().map_err(|e| Error::Domain(e.clone()))
    }

    /// Sign of the orientation of `labels` in the given order, from the
    /// cached table of sorted `(d+1)`-subsets.
    pub fn orientation_sign(&self, labels: &[Vertex]) -> Result<i8> {
        if labels.len() != self.dim + 1 {
            return Err(Error::Domain(format!("orientation needs {} points", self.dim + 1)));
        }
        let mut sorted = labels.to_vec();
        let mut odd = false;
        for i in 1..sorted.len() {
            let mut j = i;
            while j > 0 && sorted[j - 1] > sorted[j] {
                sorted.swap(j - 1, j);
                odd = !odd;
                j -= 1;
            }
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Ok(0);
        }
        let set = VertexSet::from_vertices(sorted.iter().copied())?;
        self.check_labels(set)?;
        let s = self.sign_table()?[colex_rank(set) as usize];
        Ok(if odd { -s } else { s })
    }

    /// General position of the labels in `s`: no `d+1` of them on a common
    /// hyperplane.
    pub fn general_position_of(&self, s: VertexSet) -> Result<GeneralPosition> {
        self.check_labels(s)?;
        let table = self.sign_table()?;
        let witness = s.subsets(self.dim + 1).find(|t| table[colex_rank(*t) as usize] == 0);
        Ok(GeneralPosition {
            holds: witness.is_none(),
            witness,
        })
    }

    /// General position of the whole configuration. The verdict is cached.
    pub fn is_general_position(&self) -> Result<GeneralPosition> {
        if self.len() < self.dim + 1 {
            return Err(Error::Domain(format!(
                "general position needs at least {} points, got {}",
                self.dim + 1,
                self.len()
            )));
        }
        self.general_position_of(self.labels())
    }

    fn require_general_position(&self, s: VertexSet) -> Result<()> {
        if let Some(w) = self.general_position_of(s)?.witness {
            return Err(Error::Domain(format!("points {w} lie on a common hyperplane")));
        }
        Ok(())
    }

    /// Whether `p` lies strictly inside the simplex spanned by `simplex`
    /// (`d+1` labels). Every orientation with one vertex replaced by `p` must
    /// match the simplex's own orientation.
    fn in_simplex(&self, p: Vertex, simplex: &[Vertex]) -> Result<bool> {
        let base = self.orientation_sign(simplex)?;
        let mut swapped = simplex.to_vec();
        for i in 0..simplex.len() {
            swapped[i] = p;
            if self.orientation_sign(&swapped)? != base {
                return Ok(false);
            }
            swapped[i] = simplex[i];
        }
        Ok(true)
    }

    /// Whether `p` lies in the convex hull of `others`. With general position
    /// this holds iff `p` is interior to a simplex on `d+1` of the others.
    fn in_hull(&self, p: Vertex, others: VertexSet) -> Result<bool> {
        for simplex in others.subsets(self.dim + 1) {
            let labels: Vec<Vertex> = simplex.iter().collect();
            if self.in_simplex(p, &labels)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Convex position of the labels in `s`: no point lies in the convex hull
    /// of the rest. Errors if `s` is not in general position.
    pub fn is_convex_position(&self, s: VertexSet) -> Result<ConvexPosition> {
        self.check_labels(s)?;
        self.require_general_position(s)?;
        for p in s.iter() {
            if self.in_hull(p, s.without(p))? {
                return Ok(ConvexPosition {
                    convex: false,
                    witness: Some(p),
                });
            }
        }
        Ok(ConvexPosition {
            convex: true,
            witness: None,
        })
    }

    /// Points of `s` lying inside the hull of the remaining points of `s`.
    pub fn interior_points(&self, s: VertexSet) -> Result<VertexSet> {
        self.check_labels(s)?;
        self.require_general_position(s)?;
        let mut out = VertexSet::EMPTY;
        for p in s.iter() {
            if self.in_hull(p, s.without(p))? {
                out = out.with(p);
            }
        }
        Ok(out)
    }

    /// Number of `(d+2)`-subsets of the `(d+3)`-set `s` not in convex position.
    pub fn motzkin_count(&self, s: VertexSet) -> Result<MotzkinCount> {
        if s.len() != self.dim + 3 {
            return Err(Error::Domain(format!(
                "motzkin count needs {} points, got {}",
                self.dim + 3,
                s.len()
            )));
        }
        self.check_labels(s)?;
        self.require_general_position(s)?;
        let mut count = 0;
        for t in s.subsets(self.dim + 2) {
            if !self.is_convex_position(t)?.convex {
                count += 1;
            }
        }
        Ok(MotzkinCount { set: s, count })
    }
}

/// The `(d+2)`-uniform hypergraph on point labels whose edges are the tuples
/// not in convex position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricHypergraph {
    pub dim: usize,
    pub edges: EdgeSet,
}

impl GeometricHypergraph {
    /// Induced edge counts over every `(d+3)`-subset (or one shard of them).
    pub fn count_profile(&self, shard: ShardSpec) -> Result<CountProfile> {
        count_profile(&self.edges, shard)
    }
}

/// Materializes every non-convex `(d+2)`-tuple of a configuration in general
/// position.
pub fn build_geometric_hypergraph<T: ExactScalar>(c: &PointConfiguration<T>) -> Result<GeometricHypergraph> {
    if let Some(w) = c.is_general_position()?.witness {
        return Err(Error::Domain(format!("configuration is not in general position: {w}")));
    }
    let mut edges = Vec::new();
    for t in c.labels().subsets(c.dim() + 2) {
        if !c.is_convex_position(t)?.convex {
            edges.push(t);
        }
    }
    Ok(GeometricHypergraph {
        dim: c.dim(),
        edges: EdgeSet::new(c.dim() + 2, c.len(), edges)?,
    })
}

/// A seeded random configuration together with the number of rejected draws.
#[derive(Clone, Debug, PartialEq)]
pub struct RandomConfiguration {
    pub config: PointConfiguration<i64>,
    pub rejections: u64,
}

/// Upper bound on rejected draws before giving up on a too-small grid.
pub const MAX_REJECTIONS: u64 = 1_000_000;

/// Largest coordinate magnitude accepted for `i64` sampling, small enough
/// that every Bareiss intermediate for `d <= 3` fits.
pub const MAX_GRID_RANGE: u64 = 1 << 12;

/// Samples `count` integer points uniformly from `[-range, range]^dim`, one at
/// a time, redrawing any point that would break general position with the
/// points already accepted.
pub fn random_general_position(dim: usize, count: usize, range: u64, seed: u64) -> Result<RandomConfiguration> {
    if range == 0 || range > MAX_GRID_RANGE {
        return Err(Error::Domain(format!("grid range must lie in 1..={MAX_GRID_RANGE}, got {range}")));
    }
    if count < dim + 1 {
        return Err(Error::Domain(format!("need at least {} points in dimension {dim}", dim + 1)));
    }
    let mut config = PointConfiguration::<i64>::new(dim, Vec::with_capacity(count))?;
    check_capacity(count)?;
    let mut r = rng::stream(seed, 0);
    let mut rejections = 0u64;
    while config.points.len() < count {
        let candidate: Vec<i64> = (0..dim).map(|_| rng::symmetric(&mut r, range)).collect();
        config.points.push(candidate);
        let new = config.points.len() as Vertex;
        let ok = if config.points.len() <= dim {
            // fewer than d+1 points: only reject exact duplicates
            config.points[..config.points.len() - 1]
                .iter()
                .all(|p| p != config.points.last().expect("just pushed"))
        } else {
            let mut ok = true;
            for rest in VertexSet::full(new as usize - 1).subsets(dim) {
                let labels: Vec<Vertex> = rest.iter().chain(std::iter::once(new)).collect();
                if config.orientation(&labels)? == 0 {
                    ok = false;
                    break;
                }
            }
            ok
        };
        if !ok {
            config.points.pop();
            rejections += 1;
            if rejections > MAX_REJECTIONS {
                return Err(Error::Domain(format!(
                    "no general-position configuration of {count} points found on the grid of range {range}"
                )));
            }
        }
    }
    log::debug!("random_general_position d={dim} count={count} range={range} seed={seed}: {rejections} rejections");
    Ok(RandomConfiguration { config, rejections })
}

/// Points on the moment curve `(t, t^2, .., t^d)` for `t = 1..=count`, a
/// configuration in convex and general position.
pub fn moment_curve(dim: usize, count: usize) -> Result<PointConfiguration<i64>> {
    let points = (1..=count as i64)
        .map(|t| (1..=dim as u32).map(|e| t.pow(e)).collect())
        .collect();
    PointConfiguration::new(dim, points)
}

impl PointConfiguration<i64> {
    /// Writes `points d P denom D`, then one line of `d` integers per point.
    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "points {} {} denom {}", self.dim, self.len(), self.denom)?;
        for p in &self.points {
            let line: Vec<String> = p.iter().map(|x| x.to_string()).collect();
            writeln!(w, "{}", line.join(" "))?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("points file is ASCII")
    }

    pub fn read_from<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "missing `points d P denom D` header"))?;
        let header = header?;
        let tokens: Vec<&str> = header.split_whitespace().collect();
        let (dim, count, denom) = match tokens[..] {
            ["points", d, p, "denom", den] => {
                let num = |t: &str| t.parse::<u64>().map_err(|_| Error::parse(1, format!("not a nonnegative integer: {t:?}")));
                (num(d)? as usize, num(p)? as usize, num(den)?)
            }
            _ => return Err(Error::parse(1, "header must be `points d P denom D`")),
        };
        let mut points = Vec::with_capacity(count.min(crate::hypergraph::CAPACITY));
        for (i, line) in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let lineno = i + 1;
            let coords = line
                .split_whitespace()
                .map(|t| t.parse::<i64>().map_err(|_| Error::parse(lineno, format!("not an integer: {t:?}"))))
                .collect::<Result<Vec<i64>>>()?;
            if coords.len() != dim {
                return Err(Error::parse(lineno, format!("expected {dim} coordinates")));
            }
            if coords.iter().any(|c| c.unsigned_abs() > MAX_GRID_RANGE) {
                return Err(Error::parse(lineno, format!("coordinate magnitude exceeds {MAX_GRID_RANGE}")));
            }
            points.push(coords);
        }
        if points.len() != count {
            return Err(Error::parse(1, format!("header announces {count} points, found {}", points.len())));
        }
        PointConfiguration::with_denominator(dim, points, denom).map_err(|e| Error::parse(1, e.to_string()))
    }

    /// The same points with arbitrary-precision rational coordinates
    /// (denominator applied).
    pub fn to_rational(&self) -> PointConfiguration<BigRational> {
        let d = BigInt::from(self.denom);
        let points = self
            .points
            .iter()
            .map(|p| p.iter().map(|&x| BigRational::new(BigInt::from(x), d.clone())).collect())
            .collect();
        PointConfiguration::new(self.dim, points).expect("same shape as a valid configuration")
    }
}

/// Number of `(d+1)`-subsets whose orientation is cached for `P` points.
pub fn orientation_table_size(dim: usize, points: usize) -> u64 {
    binomial(points as u64, dim as u64 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(dim: usize, pts: &[&[i64]]) -> PointConfiguration<i64> {
        PointConfiguration::new(dim, pts.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    fn set(vs: &[Vertex]) -> VertexSet {
        VertexSet::from_vertices(vs.iter().copied()).unwrap()
    }

    #[test]
    fn bareiss_small_matrices() {
        assert_eq!(bareiss_determinant(vec![vec![2i64, 3], vec![4, 5]]).unwrap(), -2);
        assert_eq!(
            bareiss_determinant(vec![vec![0i64, 1, 2], vec![1, 0, 3], vec![4, -3, 8]]).unwrap(),
            -2
        );
        assert_eq!(bareiss_determinant(vec![vec![1i64, 2], vec![2, 4]]).unwrap(), 0);
        assert!(bareiss_determinant(vec![vec![1i64, 2]]).is_err());
    }

    #[test]
    fn bareiss_reports_overflow() {
        let big = i64::MAX / 2;
        assert!(bareiss_determinant(vec![vec![big, 1], vec![1, big]]).is_err());
        let wide = bareiss_determinant(vec![vec![big as i128, 1], vec![1, big as i128]]).unwrap();
        assert_eq!(wide, (big as i128) * (big as i128) - 1);
    }

    #[test]
    fn triangle_is_general_and_collinear_is_not() {
        let t = cfg(2, &[&[0, 0], &[1, 0], &[0, 1]]);
        assert!(t.is_general_position().unwrap().holds);
        let c = cfg(2, &[&[0, 0], &[1, 1], &[2, 2]]);
        let gp = c.is_general_position().unwrap();
        assert!(!gp.holds);
        assert_eq!(gp.witness, Some(set(&[1, 2, 3])));
    }

    #[test]
    fn dimension_mismatch_is_a_domain_error() {
        assert!(PointConfiguration::new(2, vec![vec![0i64, 0], vec![1, 0, 0]]).is_err());
        assert!(PointConfiguration::<i64>::new(4, vec![]).is_err());
        assert!(cfg(2, &[&[0, 0], &[1, 0]]).is_general_position().is_err());
    }

    #[test]
    fn orientation_flips_under_transposition() {
        let c = cfg(2, &[&[0, 0], &[4, 1], &[1, 3]]);
        let a = c.orientation_sign(&[1, 2, 3]).unwrap();
        assert_eq!(c.orientation_sign(&[2, 1, 3]).unwrap(), -a);
        assert_eq!(c.orientation_sign(&[3, 1, 2]).unwrap(), a);
        assert_eq!(sign_of(&c.orientation(&[2, 1, 3]).unwrap()), -a);
    }

    #[test]
    fn square_is_convex_and_centroid_is_not() {
        let sq = cfg(2, &[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]);
        assert!(sq.is_convex_position(sq.labels()).unwrap().convex);
        let tri = cfg(2, &[&[0, 0], &[3, 0], &[0, 3], &[1, 1]]);
        assert_eq!(
            tri.is_convex_position(tri.labels()).unwrap(),
            ConvexPosition {
                convex: false,
                witness: Some(4)
            }
        );
    }

    #[test]
    fn degenerate_subset_is_rejected() {
        let c = cfg(2, &[&[0, 0], &[1, 1], &[2, 2], &[0, 5]]);
        assert!(c.is_convex_position(c.labels()).is_err());
        assert!(c.is_convex_position(set(&[1, 2, 4])).unwrap().convex);
    }

    #[test]
    fn pentagon_and_quadrilateral_with_interior_point() {
        let pent = cfg(2, &[&[0, 2], &[2, 0], &[1, -2], &[-1, -2], &[-2, 0]]);
        assert_eq!(pent.motzkin_count(pent.labels()).unwrap().count, 0);
        let quad = cfg(2, &[&[0, 0], &[6, 0], &[6, 6], &[0, 6], &[2, 3]]);
        let m = quad.motzkin_count(quad.labels()).unwrap();
        assert_eq!(m.count, 2);
        assert!(m.verdict());
    }

    #[test]
    fn tetrahedron_with_interior_point_in_3d() {
        let c = cfg(3, &[&[0, 0, 0], &[4, 0, 0], &[0, 4, 0], &[0, 0, 4], &[1, 1, 1]]);
        assert_eq!(c.interior_points(c.labels()).unwrap(), set(&[5]));
    }

    #[test]
    fn moment_curve_is_convex() {
        for d in 2..=3 {
            let c = moment_curve(d, 7).unwrap();
            assert!(c.is_general_position().unwrap().holds);
            assert!(c.is_convex_position(c.labels()).unwrap().convex);
            assert!(build_geometric_hypergraph(&c).unwrap().edges.is_empty());
        }
    }

    #[test]
    fn scalar_types_agree() {
        let r = random_general_position(3, 8, 50, 9).unwrap().config;
        let rat = r.to_rational();
        let wide = PointConfiguration::<i128>::new(3, r.points().iter().map(|p| p.iter().map(|&x| x as i128).collect()).collect()).unwrap();
        let big = PointConfiguration::<BigInt>::new(3, r.points().iter().map(|p| p.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap();
        for s in r.labels().subsets(5) {
            let a = r.is_convex_position(s).unwrap();
            assert_eq!(a, rat.is_convex_position(s).unwrap());
            assert_eq!(a, wide.is_convex_position(s).unwrap());
            assert_eq!(a, big.is_convex_position(s).unwrap());
        }
    }

    #[test]
    fn random_configurations_are_deterministic_and_general() {
        let a = random_general_position(2, 9, 3, 1).unwrap();
        let b = random_general_position(2, 9, 3, 1).unwrap();
        assert_eq!(a, b);
        assert!(a.config.is_general_position().unwrap().holds);
        assert!(random_general_position(2, 9, 0, 1).is_err());
        assert!(random_general_position(2, 2, 10, 1).is_err());
    }

    #[test]
    fn impossible_grid_gives_up() {
        // a 3x3 grid holds at most 6 points with no three collinear
        assert!(random_general_position(2, 7, 1, 0).is_err());
    }

    #[test]
    fn geometric_hypergraph_profile_passes() {
        let c = random_general_position(2, 9, 20, 4).unwrap().config;
        let h = build_geometric_hypergraph(&c).unwrap();
        assert_eq!(h.edges.uniformity(), 4);
        let p = h.count_profile(ShardSpec::WHOLE).unwrap();
        assert!(p.pass());
        assert_eq!(p.total(), binomial(9, 5));
    }

    #[test]
    fn points_file_round_trip() {
        let c = PointConfiguration::with_denominator(2, vec![vec![1, -2], vec![3, 4], vec![-5, 0]], 7).unwrap();
        let text = c.to_text();
        assert!(text.starts_with("points 2 3 denom 7\n"));
        assert_eq!(PointConfiguration::read_from(text.as_bytes()).unwrap(), c);
        for bad in ["points 2 2 denom 1\n1 2\n", "points 2 1\n1 2\n", "points 2 1 denom 1\n1 x\n", "points 2 1 denom 1\n1 2 3\n"] {
            assert!(PointConfiguration::read_from(bad.as_bytes()).is_err(), "{bad:?}");
        }
    }
}
