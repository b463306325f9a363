//! Naive reference implementations used to cross-check the library. Each one
//! recomputes its quantity from definitions with no shared code paths beyond
//! plain data types.

#![allow(dead_code)]

use std::collections::BTreeSet;

use induced_ramsey::construction::{Coloring, PairColor};
use induced_ramsey::hypergraph::{EdgeSet, VertexSet};
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};

/// All `r`-subsets of `items`, as sorted vectors, in lexicographic order.
pub fn combinations(items: &[u32], r: usize) -> Vec<Vec<u32>> {
    fn go(items: &[u32], r: usize, start: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, r, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r <= items.len() {
        go(items, r, 0, &mut Vec::new(), &mut out);
    }
    out
}

pub fn range(n: usize) -> Vec<u32> {
    (1..=n as u32).collect()
}

pub fn to_set(vs: &[u32]) -> VertexSet {
    VertexSet::from_vertices(vs.iter().copied()).unwrap()
}

fn minus(vs: &[u32], drop: &[u32]) -> Vec<u32> {
    vs.iter().copied().filter(|v| !drop.contains(v)).collect()
}

/// `G` straight from the definition: `f` is an edge iff every pair of
/// positions `i < j` of `f` has `phi(f - {f_i, f_j}) = {i, j}`.
pub fn naive_g(phi: &Coloring) -> BTreeSet<Vec<u32>> {
    let k = phi.k();
    combinations(&range(phi.vertices()), k - 1)
        .into_iter()
        .filter(|f| {
            (0..f.len()).all(|i| {
                (i + 1..f.len()).all(|j| phi.get(to_set(&minus(f, &[f[i], f[j]]))) == PairColor::new(i + 1, j + 1).unwrap())
            })
        })
        .collect()
}

/// `H` from the definition: `k`-sets containing an odd number of `G`-edges.
pub fn naive_h(g: &BTreeSet<Vec<u32>>, vertices: usize, k: usize) -> BTreeSet<Vec<u32>> {
    combinations(&range(vertices), k)
        .into_iter()
        .filter(|e| combinations(e, k - 1).iter().filter(|f| g.contains(*f)).count() % 2 == 1)
        .collect()
}

pub fn edge_vecs(e: &EdgeSet) -> BTreeSet<Vec<u32>> {
    e.edges().iter().map(|s| s.iter().collect()).collect()
}

/// Edges of `family` contained in `s`.
pub fn induced(family: &BTreeSet<Vec<u32>>, s: &[u32]) -> usize {
    family.iter().filter(|f| f.iter().all(|v| s.contains(v))).count()
}

/// Vertices of degree one in the link graph of `s`: pairs `{x, y}` with
/// `s - {x, y}` in `G`.
pub fn naive_degree_one(g: &BTreeSet<Vec<u32>>, s: &[u32]) -> usize {
    s.iter()
        .filter(|&&x| {
            s.iter()
                .filter(|&&y| y != x && g.contains(&minus(s, &[x, y])))
                .count()
                == 1
        })
        .count()
}

/// Largest independent set by trying every subset, largest size first.
pub fn brute_force_alpha(h: &EdgeSet) -> usize {
    let n = h.ground();
    let edges: Vec<u64> = h.edges().iter().map(|e| e.bits()).collect();
    (0u64..1 << n)
        .filter(|&s| edges.iter().all(|&e| e & !s != 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// `P(|G[e]| odd)` by inclusion-exclusion over the `k` link-edge events:
/// `P(odd) = (1 - sum_F (-2)^|F| P(all of F present)) / 2`.
pub fn inclusion_exclusion_p(k: usize) -> Ratio<i128> {
    let e = range(k);
    let fs = combinations(&e, k - 1);
    let palette = ((k - 1) * (k - 2) / 2) as i128;
    let mut signed = Ratio::<i128>::zero();
    for mask in 0u32..1 << fs.len() {
        let mut demands: Vec<(Vec<u32>, (usize, usize))> = Vec::new();
        let mut consistent = true;
        for (fi, f) in fs.iter().enumerate() {
            if mask >> fi & 1 == 0 {
                continue;
            }
            for i in 0..f.len() {
                for j in i + 1..f.len() {
                    let t = minus(f, &[f[i], f[j]]);
                    match demands.iter().find(|(u, _)| *u == t) {
                        Some((_, c)) if *c != (i + 1, j + 1) => consistent = false,
                        Some(_) => {}
                        None => demands.push((t, (i + 1, j + 1))),
                    }
                }
            }
        }
        if !consistent {
            continue;
        }
        let prob = Ratio::new(1, palette.pow(demands.len() as u32));
        let weight = (-2i128).pow(mask.count_ones());
        signed += prob * weight;
    }
    (Ratio::one() - signed) / 2
}

/// Number of hull vertices of a planar point set (strictly convex corners),
/// by Andrew's monotone chain with exact integer cross products.
pub fn hull_vertex_count(points: &[(i64, i64)]) -> usize {
    let mut p = points.to_vec();
    p.sort_unstable();
    p.dedup();
    if p.len() < 3 {
        return p.len();
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let chain = |pts: &mut dyn Iterator<Item = &(i64, i64)>| {
        let mut h: Vec<(i64, i64)> = Vec::new();
        for &q in pts {
            while h.len() >= 2 && cross(h[h.len() - 2], h[h.len() - 1], q) <= 0 {
                h.pop();
            }
            h.push(q);
        }
        h.len() - 1
    };
    chain(&mut p.iter()) + chain(&mut p.iter().rev())
}

/// General position via exact rank: every `d+1` points must have affinely
/// independent difference vectors (rank `d`).
pub fn rank_general_position(dim: usize, points: &[Vec<BigRational>]) -> bool {
    let labels: Vec<u32> = (0..points.len() as u32).collect();
    combinations(&labels, dim + 1).iter().all(|c| {
        let base = &points[c[0] as usize];
        let rows: Vec<Vec<BigRational>> = c[1..]
            .iter()
            .map(|&i| points[i as usize].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        rational_rank(rows) == dim
    })
}

fn rational_rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let factor = &row[col] / &pivot_row[col];
                for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= &factor * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn rational_points(points: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    points
        .iter()
        .map(|p| p.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect()
}

/// Whether no point of the planar subset is inside or on the hull of the rest.
pub fn planar_convex_by_hull(points: &[(i64, i64)]) -> bool {
    hull_vertex_count(points) == points.len()
}

/// `C(N, n) (1 - p)^m` by direct multiplication for real `N`.
pub fn direct_union_bound(n: u64, big_n: f64, p: f64, m: u64) -> f64 {
    let mut c = 1.0;
    for i in 0..n {
        c *= (big_n - i as f64) / (i as f64 + 1.0);
    }
    c * (1.0 - p).powi(m as i32)
}

/// The largest real `N` with [`direct_union_bound`] below one, by bisection
/// on `N` itself.
pub fn direct_max_feasible_n(n: u64, p: f64, m: u64) -> Option<f64> {
    if direct_union_bound(n, n as f64, p, m) >= 1.0 {
        return None;
    }
    let (mut lo, mut hi) = (n as f64, n as f64 + 1.0);
    while direct_union_bound(n, hi, p, m) < 1.0 {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if direct_union_bound(n, mid, p, m) < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(lo)
}

/// Whether every pair of blocks meets in fewer than `t` vertices.
pub fn pairwise_packing_ok(blocks: &[VertexSet], t: usize) -> bool {
    blocks
        .iter()
        .enumerate()
        .all(|(i, a)| blocks[i + 1..].iter().all(|b| a.intersection(*b).len() < t))
}

/// Sign of a `BigRational`, for tests that compare predicate outputs.
pub fn rational_sign(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}
