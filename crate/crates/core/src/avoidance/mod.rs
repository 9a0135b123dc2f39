//! Avoidance and crossing predicates, radial orders, and the searches for
//! mutually avoiding pairs and crossing families.
//!
//! `A` avoids `B` when no hyperplane spanned by `d` points of `A` meets
//! `conv(B)`. Under general position that is the same as every such
//! hyperplane leaving all of `B` strictly on one side, which is what the
//! predicates test; no hull is ever built.

mod bruteforce;
mod heuristic;

use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

use crate::combin::for_each_subset;
use crate::error::{Error, Result};
use crate::geometry::{Orientation, Point, PointSeq, Rational};
use crate::lp::hull_intersection_slack;

pub use bruteforce::{
    max_avoiding_bruteforce, max_crossing_family_bruteforce, DEFAULT_AVOIDING_CAP, DEFAULT_AVOIDING_CAP_RD,
    DEFAULT_CROSSING_CAP,
};
pub use heuristic::find_avoiding_heuristic;

/// A sorted set of distinct indices into a [`PointSeq`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        IndexSet(indices)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn is_disjoint(&self, other: &IndexSet) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return false,
            }
        }
        true
    }

    pub fn check_bounds(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&last) if last >= n => Err(Error::Input(format!("index {last} out of bounds for {n} points"))),
            _ => Ok(()),
        }
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl From<Vec<usize>> for IndexSet {
    fn from(v: Vec<usize>) -> Self {
        IndexSet::new(v)
    }
}

impl FromIterator<usize> for IndexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        IndexSet::new(iter.into_iter().collect())
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Two disjoint index sets; `verified` records that mutual avoidance was
/// checked and holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AvoidingPair {
    pub a: IndexSet,
    pub b: IndexSet,
    pub verified: bool,
}

impl AvoidingPair {
    /// Checks mutual avoidance and records the outcome.
    pub fn certify(p: &PointSeq, a: IndexSet, b: IndexSet) -> Result<Self> {
        let verified = mutually_avoiding(p, &a, &b)?;
        Ok(AvoidingPair { a, b, verified })
    }

    pub fn min_size(&self) -> usize {
        self.a.len().min(self.b.len())
    }
}

/// A `(d-1)`-simplex given by `d` vertex indices. In the plane, a segment.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Simplex {
    pub vertices: Vec<usize>,
}

impl Simplex {
    pub fn new(vertices: Vec<usize>) -> Self {
        Simplex { vertices }
    }

    pub fn shares_vertex(&self, other: &Simplex) -> bool {
        self.vertices.iter().any(|v| other.vertices.contains(v))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", parts.join("-"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingFamily {
    pub simplices: Vec<Simplex>,
    pub verified: bool,
}

impl CrossingFamily {
    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Clockwise,
    Counterclockwise,
}

/// Index-level avoidance test without input validation.
pub(crate) fn avoids_idx(p: &PointSeq, a: &[usize], b: &[usize]) -> bool {
    let d = p.dim();
    if a.len() < d || b.is_empty() {
        return true;
    }
    let mut t = vec![0usize; d + 1];
    for_each_subset(a, d, |h| {
        t[..d].copy_from_slice(h);
        one_sided(p, &mut t, b).is_some()
    })
}

/// Side shared by every point of `q` relative to the hyperplane in
/// `t[..d]`, or `None` if they are not all strictly on the same side.
/// `t` must have length `d + 1`; its last slot is scratch.
pub(crate) fn one_sided(p: &PointSeq, t: &mut [usize], q: &[usize]) -> Option<Orientation> {
    let d = t.len() - 1;
    let mut side = Orientation::Zero;
    for &x in q {
        t[d] = x;
        let s = p.orient_idx(t);
        if s.is_zero() || (!side.is_zero() && s != side) {
            return None;
        }
        side = s;
    }
    Some(side)
}

pub(crate) fn mutually_avoiding_idx(p: &PointSeq, a: &[usize], b: &[usize]) -> bool {
    avoids_idx(p, a, b) && avoids_idx(p, b, a)
}

fn check_pair(p: &PointSeq, a: &IndexSet, b: &IndexSet) -> Result<()> {
    a.check_bounds(p.len())?;
    b.check_bounds(p.len())?;
    if !a.is_disjoint(b) {
        return Err(Error::Input("index sets overlap".into()));
    }
    Ok(())
}

/// Whether no hyperplane spanned by `d` points of `a` meets `conv(b)`.
/// With fewer than `d` points in `a` no hyperplane is spanned and the
/// answer is `true`.
pub fn avoids(p: &PointSeq, a: &IndexSet, b: &IndexSet) -> Result<bool> {
    check_pair(p, a, b)?;
    Ok(avoids_idx(p, a.as_slice(), b.as_slice()))
}

pub fn mutually_avoiding(p: &PointSeq, a: &IndexSet, b: &IndexSet) -> Result<bool> {
    check_pair(p, a, b)?;
    Ok(mutually_avoiding_idx(p, a.as_slice(), b.as_slice()))
}

fn cross2(u: &[Rational], v: &[Rational]) -> Rational {
    &u[0] * &v[1] - &u[1] * &v[0]
}

fn dot2(u: &[Rational], v: &[Rational]) -> Rational {
    &u[0] * &v[0] + &u[1] * &v[1]
}

/// Indices of `a` sorted by angle around `pivot`.
///
/// The sweep starts at the ray from `pivot` pointing away from the
/// centroid of `a` (the positive x direction if the pivot is the
/// centroid). When `a` lies in an open half-plane seen from the pivot, as
/// it does for mutually avoiding sets, this ray falls in the angular gap
/// and the result is the natural linear order. Clockwise is the reverse of
/// counterclockwise.
pub fn radial_order(p: &PointSeq, a: &IndexSet, pivot: &Point, sense: Sense) -> Result<Vec<usize>> {
    if p.dim() != 2 || pivot.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: if p.dim() != 2 { p.dim() } else { pivot.dim() },
        });
    }
    a.check_bounds(p.len())?;
    if a.iter().any(|i| p.point(i) == pivot) {
        return Err(Error::Input("pivot coincides with a point of the set".into()));
    }
    let centroid = Point::centroid(a.iter().map(|i| p.point(i))).ok_or_else(|| Error::Input("empty set".into()))?;
    let mut reference = pivot.sub(&centroid);
    if reference.iter().all(|c| c.is_zero()) {
        reference = vec![Rational::from_integer(1.into()), Rational::zero()];
    }
    let vecs: Vec<(usize, Vec<Rational>)> = a.iter().map(|i| (i, p.point(i).sub(pivot))).collect();
    // half 0: angle in [0, pi) measured counterclockwise from the reference
    let half = |v: &[Rational]| -> u8 {
        let c = cross2(&reference, v);
        if c.is_positive() || (c.is_zero() && dot2(&reference, v).is_positive()) {
            0
        } else {
            1
        }
    };
    let mut keyed: Vec<(u8, usize, Vec<Rational>)> = vecs.into_iter().map(|(i, v)| (half(&v), i, v)).collect();
    keyed.sort_by(|x, y| {
        x.0.cmp(&y.0).then_with(|| {
            let c = cross2(&x.2, &y.2);
            if c.is_positive() {
                Ordering::Less
            } else if c.is_negative() {
                Ordering::Greater
            } else {
                x.1.cmp(&y.1)
            }
        })
    });
    let mut out: Vec<usize> = keyed.into_iter().map(|k| k.1).collect();
    if sense == Sense::Clockwise {
        out.reverse();
    }
    Ok(out)
}

/// Whether two segments cross at a point interior to both, by orientation
/// signs. `None` when some triple is collinear.
fn segments_cross_2d(p: &PointSeq, s: &[usize], t: &[usize]) -> Option<bool> {
    let o1 = p.orient_idx(&[s[0], s[1], t[0]]);
    let o2 = p.orient_idx(&[s[0], s[1], t[1]]);
    let o3 = p.orient_idx(&[t[0], t[1], s[0]]);
    let o4 = p.orient_idx(&[t[0], t[1], s[1]]);
    if [o1, o2, o3, o4].iter().any(|o| o.is_zero()) {
        return None;
    }
    Some(o1 != o2 && o3 != o4)
}

/// Vertex-disjoint simplices whose relative interiors intersect.
///
/// The interior test maximizes the smallest barycentric weight `t` over
/// common points of both hulls; the simplices strongly cross iff the
/// optimum is positive.
pub fn strongly_cross(p: &PointSeq, s1: &Simplex, s2: &Simplex) -> bool {
    if s1.shares_vertex(s2) {
        return false;
    }
    if p.dim() == 2 && s1.vertices.len() == 2 && s2.vertices.len() == 2 {
        if let Some(c) = segments_cross_2d(p, &s1.vertices, &s2.vertices) {
            return c;
        }
    }
    relative_interiors_meet(p, &s1.vertices, &s2.vertices)
}

pub(crate) fn relative_interiors_meet(p: &PointSeq, u: &[usize], v: &[usize]) -> bool {
    let pu: Vec<&Point> = u.iter().map(|&i| p.point(i)).collect();
    let pv: Vec<&Point> = v.iter().map(|&i| p.point(i)).collect();
    hull_intersection_slack(&pu, &pv).is_some_and(|t| t.is_positive())
}

pub fn is_crossing_family(p: &PointSeq, fam: &[Simplex]) -> bool {
    fam.iter()
        .enumerate()
        .all(|(i, s)| fam[i + 1..].iter().all(|t| strongly_cross(p, s, t)))
}

/// Segments joining the two sides of a verified planar avoiding pair with
/// `|A| = |B|`, pairwise crossing.
///
/// `A` is read clockwise around a point of `B` and `B` counterclockwise
/// around a point of `A`. The `i`-th with `i`-th matching is tried first,
/// then the `i` with `k + 1 - i` one; whichever verifies is returned.
pub fn crossing_family_from_avoiding(p: &PointSeq, pair: &AvoidingPair) -> Result<CrossingFamily> {
    if p.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: p.dim(),
        });
    }
    if !pair.verified {
        return Err(Error::Input("avoiding pair is not verified".into()));
    }
    let k = pair.a.len();
    if k != pair.b.len() || k == 0 {
        return Err(Error::Input(format!(
            "pair sizes must be equal and positive, got {} and {}",
            pair.a.len(),
            pair.b.len()
        )));
    }
    let b0 = pair.b.as_slice()[0];
    let a0 = pair.a.as_slice()[0];
    let a_order = radial_order(p, &pair.a, p.point(b0), Sense::Clockwise)?;
    let b_order = radial_order(p, &pair.b, p.point(a0), Sense::Counterclockwise)?;
    let direct: Vec<Simplex> = (0..k).map(|i| Simplex::new(vec![a_order[i], b_order[i]])).collect();
    if is_crossing_family(p, &direct) {
        return Ok(CrossingFamily {
            simplices: direct,
            verified: true,
        });
    }
    let flipped: Vec<Simplex> = (0..k)
        .map(|i| Simplex::new(vec![a_order[i], b_order[k - 1 - i]]))
        .collect();
    if is_crossing_family(p, &flipped) {
        return Ok(CrossingFamily {
            simplices: flipped,
            verified: true,
        });
    }
    Err(Error::Internal(format!(
        "no radial matching of A={} and B={} is pairwise crossing",
        pair.a, pair.b
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> IndexSet {
        IndexSet::new(v.to_vec())
    }

    #[test]
    fn avoids_examples() {
        let p = PointSeq::from_ints(&[[0, 0], [1, 0], [0, 100], [1, 101]]).unwrap();
        assert!(avoids(&p, &set(&[0, 1]), &set(&[2, 3])).unwrap());
        assert!(mutually_avoiding(&p, &set(&[0, 1]), &set(&[2, 3])).unwrap());
        assert!(avoids(&p, &set(&[0]), &set(&[1, 2, 3])).unwrap());

        let sq = PointSeq::from_ints(&[[0, 0], [1, 1], [1, 0], [0, 1]]).unwrap();
        assert!(!avoids(&sq, &set(&[0, 1]), &set(&[2, 3])).unwrap());
        assert!(!mutually_avoiding(&sq, &set(&[0, 1]), &set(&[2, 3])).unwrap());
        assert!(mutually_avoiding(&sq, &set(&[0]), &set(&[1])).unwrap());
    }

    #[test]
    fn overlapping_or_out_of_range_sets_are_rejected() {
        let p = PointSeq::from_ints(&[[0, 0], [1, 0], [0, 1]]).unwrap();
        assert!(mutually_avoiding(&p, &set(&[0, 1]), &set(&[1, 2])).is_err());
        assert!(avoids(&p, &set(&[0, 7]), &set(&[1])).is_err());
    }

    #[test]
    fn radial_order_example() {
        let p = PointSeq::from_ints(&[[1, 0], [0, 1], [-1, 0]]).unwrap();
        let pivot = Point::from_ints(&[0, -5]);
        let all = set(&[0, 1, 2]);
        assert_eq!(
            radial_order(&p, &all, &pivot, Sense::Counterclockwise).unwrap(),
            vec![0, 1, 2]
        );
        assert_eq!(radial_order(&p, &all, &pivot, Sense::Clockwise).unwrap(), vec![2, 1, 0]);
        assert_eq!(radial_order(&p, &set(&[1]), &pivot, Sense::Clockwise).unwrap(), vec![1]);
        assert!(radial_order(&p, &all, &Point::from_ints(&[1, 0]), Sense::Clockwise).is_err());
    }

    #[test]
    fn radial_order_around_enclosed_pivot() {
        // pivot at the centroid: the sweep starts along +x
        let p = PointSeq::from_ints(&[[0, 3], [3, 0], [-3, -3]]).unwrap();
        let order = radial_order(
            &p,
            &set(&[0, 1, 2]),
            &Point::from_ints(&[0, 0]),
            Sense::Counterclockwise,
        )
        .unwrap();
        assert_eq!(order, vec![1, 0, 2]);
    }

    #[test]
    fn strong_crossing_in_the_plane() {
        let p = PointSeq::from_ints(&[[0, 0], [1, 1], [1, 0], [0, 1], [5, 5]]).unwrap();
        let s = Simplex::new(vec![0, 1]);
        let t = Simplex::new(vec![2, 3]);
        assert!(strongly_cross(&p, &s, &t));
        assert!(strongly_cross(&p, &t, &s));
        assert!(!strongly_cross(&p, &s, &Simplex::new(vec![1, 2])));
        assert!(!strongly_cross(&p, &t, &Simplex::new(vec![1, 4])));
        assert!(is_crossing_family(&p, &[s.clone(), t.clone()]));
        assert!(!is_crossing_family(&p, &[s.clone(), t, Simplex::new(vec![4, 2])]));
        assert!(is_crossing_family(&p, &[]));
        assert!(is_crossing_family(&p, &[s]));
    }

    #[test]
    fn strong_crossing_of_triangles() {
        // the edge 3-4 of the second triangle passes through (1/4, 1/4, 0),
        // interior to the first triangle and to that edge
        let p = PointSeq::from_ints(&[[0, 0, 0], [4, 0, 0], [0, 4, 0], [1, 1, -1], [1, 1, 3], [9, 9, 9]]).unwrap();
        let t1 = Simplex::new(vec![0, 1, 2]);
        let t2 = Simplex::new(vec![3, 4, 5]);
        assert!(strongly_cross(&p, &t1, &t2));
        let far =
            PointSeq::from_ints(&[[0, 0, 0], [4, 0, 0], [0, 4, 0], [10, 10, 1], [11, 10, 3], [10, 12, 2]]).unwrap();
        assert!(!strongly_cross(&far, &t1, &t2));
    }

    #[test]
    fn crossing_family_from_two_clusters() {
        let p = PointSeq::from_ints(&[[0, 0], [1, 0], [0, 100], [1, 101]]).unwrap();
        let pair = AvoidingPair::certify(&p, set(&[0, 1]), set(&[2, 3])).unwrap();
        assert!(pair.verified);
        let fam = crossing_family_from_avoiding(&p, &pair).unwrap();
        assert_eq!(fam.len(), 2);
        assert!(fam.verified && is_crossing_family(&p, &fam.simplices));

        let single = AvoidingPair::certify(&p, set(&[0]), set(&[3])).unwrap();
        let fam = crossing_family_from_avoiding(&p, &single).unwrap();
        assert_eq!(fam.simplices, vec![Simplex::new(vec![0, 3])]);
    }

    #[test]
    fn crossing_family_rejects_unverified_pairs() {
        let sq = PointSeq::from_ints(&[[0, 0], [1, 1], [1, 0], [0, 1]]).unwrap();
        let pair = AvoidingPair::certify(&sq, set(&[0, 1]), set(&[2, 3])).unwrap();
        assert!(!pair.verified);
        assert!(crossing_family_from_avoiding(&sq, &pair).is_err());
    }

    #[test]
    fn index_set_basics() {
        let s = IndexSet::new(vec![5, 1, 3, 1]);
        assert_eq!(s.as_slice(), &[1, 3, 5]);
        assert!(s.contains(3) && !s.contains(2));
        assert!(s.is_disjoint(&set(&[0, 2, 4])));
        assert!(!s.is_disjoint(&set(&[5])));
        assert_eq!(s.to_string(), "1,3,5");
    }
}
