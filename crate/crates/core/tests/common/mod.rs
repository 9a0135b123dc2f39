//! Reference implementations for integration tests. Nothing here calls the
//! predicates under test; everything is recomputed from coordinates.
#![allow(dead_code)]

use avoidkit::geometry::general_position;
use avoidkit::{Point, PointSeq, Rational};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Determinant by cofactor expansion along the first row.
pub fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = Rational::zero();
    for col in 0..n {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != col)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][col] * det(&minor);
        if col % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Sign of the determinant with a row of ones on top and one point per
/// column.
pub fn orient_sign(pts: &[&[Rational]]) -> i8 {
    let d = pts.len() - 1;
    let mut m = vec![vec![Rational::from_integer(1.into()); d + 1]];
    for r in 0..d {
        m.push(pts.iter().map(|p| p[r].clone()).collect());
    }
    let v = det(&m);
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

pub fn orient_of(p: &PointSeq, idx: &[usize]) -> i8 {
    let pts: Vec<&[Rational]> = idx.iter().map(|&i| p.point(i).coords()).collect();
    orient_sign(&pts)
}

/// All `r`-subsets of `items`, in lexicographic order.
pub fn subsets(items: &[usize], r: usize) -> Vec<Vec<usize>> {
    fn go(items: &[usize], r: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
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
    go(items, r, 0, &mut Vec::new(), &mut out);
    out
}

/// No hyperplane through `d` points of `a` meets `conv(b)`: every such
/// hyperplane has all of `b` strictly on one side.
pub fn avoids(p: &PointSeq, a: &[usize], b: &[usize]) -> bool {
    subsets(a, p.dim()).iter().all(|h| {
        let signs: Vec<i8> = b
            .iter()
            .map(|&x| {
                let mut t = h.clone();
                t.push(x);
                orient_of(p, &t)
            })
            .collect();
        signs.iter().all(|&s| s != 0 && s == signs[0])
    })
}

pub fn mutually_avoid(p: &PointSeq, a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| !b.contains(x)) && avoids(p, a, b) && avoids(p, b, a)
}

/// Planar segments with four distinct endpoints crossing at interior points.
pub fn segments_cross(p: &PointSeq, s: [usize; 2], t: [usize; 2]) -> bool {
    if s.iter().any(|v| t.contains(v)) {
        return false;
    }
    let o = |a, b, c| orient_of(p, &[a, b, c]);
    o(s[0], s[1], t[0]) * o(s[0], s[1], t[1]) < 0 && o(t[0], t[1], s[0]) * o(t[0], t[1], s[1]) < 0
}

// Segment pq meets the open triangle abc, for points in general position.
fn pierces(p: &PointSeq, [s, t]: [usize; 2], [a, b, c]: [usize; 3]) -> bool {
    let o = |w: [usize; 4]| orient_of(p, &w);
    if o([a, b, c, s]) * o([a, b, c, t]) >= 0 {
        return false;
    }
    let e = [o([s, t, a, b]), o([s, t, b, c]), o([s, t, c, a])];
    e.iter().all(|&x| x != 0 && x == e[0])
}

/// Vertex-disjoint triangles in R^3 in general position whose relative
/// interiors meet: some edge of one passes through the interior of the
/// other.
pub fn triangles_cross(p: &PointSeq, s: [usize; 3], t: [usize; 3]) -> bool {
    if s.iter().any(|v| t.contains(v)) {
        return false;
    }
    let edges = |x: [usize; 3]| [[x[0], x[1]], [x[1], x[2]], [x[2], x[0]]];
    edges(s).into_iter().any(|e| pierces(p, e, t)) || edges(t).into_iter().any(|e| pierces(p, e, s))
}

/// Largest set of pairwise crossing segments, by exhaustive clique search.
pub fn max_crossing_segments(p: &PointSeq) -> usize {
    let n = p.len();
    let segs: Vec<[usize; 2]> = (0..n).flat_map(|i| (i + 1..n).map(move |j| [i, j])).collect();
    let m = segs.len();
    let adj: Vec<Vec<bool>> = (0..m)
        .map(|i| (0..m).map(|j| segments_cross(p, segs[i], segs[j])).collect())
        .collect();
    fn grow(adj: &[Vec<bool>], cand: Vec<usize>, size: usize, best: &mut usize) {
        *best = (*best).max(size);
        if size + cand.len() <= *best {
            return;
        }
        for (pos, &v) in cand.iter().enumerate() {
            if size + cand.len() - pos <= *best {
                return;
            }
            let next: Vec<usize> = cand[pos + 1..].iter().copied().filter(|&u| adj[v][u]).collect();
            grow(adj, next, size + 1, best);
        }
    }
    let mut best = usize::from(m > 0);
    grow(&adj, (0..m).collect(), 0, &mut best);
    best
}

fn from_rows(rows: &[Vec<i64>]) -> Option<PointSeq> {
    PointSeq::new(rows[0].len(), rows.iter().map(|r| Point::from_ints(r)).collect()).ok()
}

/// `sizes[j]` integer points within `spread` of `centres[j]`, redrawn until
/// they are distinct and in general position.
pub fn clusters(centres: &[Vec<i64>], sizes: &[usize], spread: i64, seed: u64) -> PointSeq {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let rows: Vec<Vec<i64>> = centres
            .iter()
            .zip(sizes)
            .flat_map(|(c, &s)| {
                (0..s)
                    .map(|_| c.iter().map(|x| x + rng.random_range(0..spread)).collect())
                    .collect::<Vec<_>>()
            })
            .collect();
        if let Some(p) = from_rows(&rows).filter(general_position) {
            return p;
        }
    }
}

/// Two clusters of `n / 2` and `n - n / 2` points, far apart along a
/// generic direction.
pub fn two_clusters(n: usize, d: usize, seed: u64) -> PointSeq {
    let far: Vec<i64> = (0..d as i64).map(|j| 1_000_000 + 137_911 * j).collect();
    clusters(&[vec![0; d], far], &[n / 2, n - n / 2], 10_000, seed)
}

/// `k` clusters whose centres lie on the moment curve.
pub fn k_clusters(k: usize, d: usize, n: usize, seed: u64) -> PointSeq {
    let centres: Vec<Vec<i64>> = (1..=k as i64)
        .map(|t| (1..=d as u32).map(|e| t.pow(e) * 100_000).collect())
        .collect();
    let sizes: Vec<usize> = (0..k).map(|j| n / k + usize::from(j < n % k)).collect();
    clusters(&centres, &sizes, 1000, seed)
}
