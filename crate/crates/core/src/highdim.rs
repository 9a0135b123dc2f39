//! Crossing families in R^d by separation, central projection and lifting.
//!
//! For mutually avoiding `A`, `B` separated by a hyperplane `H`, the rays
//! from `a_1` through `B` meet `H` in a point set of one dimension less. A
//! crossing family found there pulls back to simplices of `B`, and coning
//! the `i`-th of them from `a_i` gives full-dimensional-minus-one simplices
//! that pairwise strongly cross.

use num_traits::Signed;

use crate::avoidance::{
    crossing_family_from_avoiding, find_avoiding_heuristic, is_crossing_family, max_avoiding_bruteforce,
    strongly_cross, AvoidingPair, CrossingFamily, IndexSet, Simplex, DEFAULT_AVOIDING_CAP, DEFAULT_AVOIDING_CAP_RD,
};
use crate::error::{Error, Result};
use crate::geometry::{line_hyperplane_intersection, Hyperplane, Point, PointSeq};
use crate::lp::max_slack_separator;
use crate::sametype::{order_type, OrderType};

/// A strict separator of `A` and `B` of maximum margin, in canonical form.
pub fn separating_hyperplane(p: &PointSeq, a: &IndexSet, b: &IndexSet) -> Result<Hyperplane> {
    a.check_bounds(p.len())?;
    b.check_bounds(p.len())?;
    if a.is_empty() || b.is_empty() {
        return Err(Error::Input("both sides need at least one point".into()));
    }
    let pa: Vec<&Point> = a.iter().map(|i| p.point(i)).collect();
    let pb: Vec<&Point> = b.iter().map(|i| p.point(i)).collect();
    max_slack_separator(&pa, &pb)
        .map(|(h, _)| h.canonical())
        .ok_or(Error::NotSeparable)
}

/// Images of `B` on a hyperplane, seen from one apex.
#[derive(Clone, Debug)]
pub struct ProjectionFrame {
    pub apex_index: usize,
    pub plane: Hyperplane,
    /// `images[j]` is the chart image of the `j`-th point of `B`.
    pub images: PointSeq,
    /// Coordinate removed by the chart.
    pub dropped_coord: usize,
    pub sources: Vec<usize>,
}

impl ProjectionFrame {
    pub fn order_type(&self) -> Result<OrderType> {
        order_type(&self.images)
    }
}

/// Chart of `h`: drop the coordinate with the largest `|normal|` entry.
pub fn chart_coordinate(h: &Hyperplane) -> usize {
    let mut best = 0;
    for (i, c) in h.normal().iter().enumerate() {
        if c.abs() > h.normal()[best].abs() {
            best = i;
        }
    }
    best
}

/// One frame per point of `A`, in index order.
pub fn project_through(p: &PointSeq, a: &IndexSet, b: &IndexSet, h: &Hyperplane) -> Result<Vec<ProjectionFrame>> {
    let d = p.dim();
    if d < 2 {
        return Err(Error::Input("projection needs dimension at least 2".into()));
    }
    let drop = chart_coordinate(h);
    a.iter()
        .map(|apex| {
            let images = b
                .iter()
                .map(|q| {
                    let x = line_hyperplane_intersection(p.point(apex), p.point(q), h)
                        .map_err(|e| Error::Internal(format!("projection from {apex} through {q}: {e}")))?;
                    let coords = x
                        .into_coords()
                        .into_iter()
                        .enumerate()
                        .filter(|(i, _)| *i != drop)
                        .map(|(_, c)| c)
                        .collect();
                    Ok(Point::new(coords))
                })
                .collect::<Result<Vec<_>>>()?;
            let images =
                PointSeq::new(d - 1, images).map_err(|e| Error::Internal(format!("images from apex {apex}: {e}")))?;
            Ok(ProjectionFrame {
                apex_index: apex,
                plane: h.clone(),
                images,
                dropped_coord: drop,
                sources: b.as_slice().to_vec(),
            })
        })
        .collect()
}

/// Whether every frame has literally the same order type.
pub fn frames_agree(frames: &[ProjectionFrame]) -> Result<bool> {
    let Some(first) = frames.first() else {
        return Ok(true);
    };
    let t = first.order_type()?;
    for f in &frames[1..] {
        if f.order_type()? != t {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exponent `1 / (2 * prod_{i=3}^{d} (i^2 - i + 1))` of the size bound.
pub fn crossing_bound_exponent(d: usize) -> f64 {
    let prod: f64 = (3..=d).map(|i| (i * i - i + 1) as f64).product();
    1.0 / (2.0 * prod)
}

#[derive(Clone, Debug)]
pub struct CrossingRun {
    pub family: CrossingFamily,
    pub pair: Option<AvoidingPair>,
    /// `n` raised to [`crossing_bound_exponent`], without constants.
    pub bound: f64,
    pub frames_agree: Option<bool>,
    pub warnings: Vec<String>,
}

/// Largest pair by brute force below the cap, else by the heuristic.
fn best_pair(p: &PointSeq) -> Result<AvoidingPair> {
    let cap = if p.dim() == 2 {
        DEFAULT_AVOIDING_CAP
    } else {
        DEFAULT_AVOIDING_CAP_RD
    };
    if p.len() <= cap {
        max_avoiding_bruteforce(p, cap)
    } else {
        find_avoiding_heuristic(p, p.len() / 2)
    }
}

/// A verified crossing family of `(d-1)`-simplices.
pub fn crossing_family_rd(p: &PointSeq) -> Result<CrossingRun> {
    let d = p.dim();
    if d < 2 {
        return Err(Error::Input("crossing families need dimension at least 2".into()));
    }
    if p.len() < d {
        return Err(Error::Input(format!("need at least {d} points")));
    }
    let bound = (p.len() as f64).powf(crossing_bound_exponent(d));
    let single = |why: String| CrossingRun {
        family: CrossingFamily {
            simplices: vec![Simplex::new((0..d).collect())],
            verified: true,
        },
        pair: None,
        bound,
        frames_agree: None,
        warnings: vec![why],
    };
    let pair = best_pair(p)?;
    if pair.min_size() < 2 {
        return Ok(single(format!(
            "largest avoiding pair found has size {}",
            pair.min_size()
        )));
    }
    if d == 2 {
        let family = crossing_family_from_avoiding(p, &pair)?;
        return Ok(CrossingRun {
            family,
            pair: Some(pair),
            bound,
            frames_agree: None,
            warnings: vec![],
        });
    }
    let h = separating_hyperplane(p, &pair.a, &pair.b)?;
    let frames = project_through(p, &pair.a, &pair.b, &h)?;
    let agree = frames_agree(&frames)?;
    let base = crossing_family_rd(&frames[0].images)?;
    let sources = &frames[0].sources;
    let lifted_base: Vec<Vec<usize>> = base
        .family
        .simplices
        .iter()
        .map(|s| s.vertices.iter().map(|&j| sources[j]).collect())
        .collect();
    let apexes = pair.a.as_slice();
    let k = lifted_base.len().min(apexes.len());
    let lift = |order: &mut dyn Iterator<Item = usize>| -> Vec<Simplex> {
        order
            .zip(&lifted_base[..k])
            .map(|(apex, s)| {
                let mut v = vec![apex];
                v.extend_from_slice(s);
                Simplex::new(v)
            })
            .collect()
    };
    let mut warnings = base.warnings;
    let mut family = lift(&mut apexes[..k].iter().copied());
    if !is_crossing_family(p, &family) {
        family = lift(&mut apexes[..k].iter().rev().copied());
    }
    if !is_crossing_family(p, &family) {
        // keep a pairwise crossing subfamily, greedily in index order
        let all = lift(&mut apexes[..k].iter().copied());
        let mut kept: Vec<Simplex> = Vec::new();
        for s in all {
            if kept.iter().all(|t| strongly_cross(p, &s, t)) {
                kept.push(s);
            }
        }
        warnings.push(format!("lifted family reduced from {k} to {} simplices", kept.len()));
        family = kept;
    }
    if family.is_empty() {
        return Ok(single("lifting produced no simplices".into()));
    }
    Ok(CrossingRun {
        family: CrossingFamily {
            simplices: family,
            verified: true,
        },
        pair: Some(pair),
        bound,
        frames_agree: Some(agree),
        warnings,
    })
}

/// Exhaustive maximum avoiding pair in R^d with the R^d cap.
pub fn max_avoiding_bruteforce_rd(p: &PointSeq) -> Result<AvoidingPair> {
    max_avoiding_bruteforce(p, DEFAULT_AVOIDING_CAP_RD)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{general_position, Orientation};
    use crate::lp::hull_intersection_slack;
    use rand::{Rng, SeedableRng};

    fn r(n: i64) -> crate::geometry::Rational {
        crate::geometry::Rational::from_integer(n.into())
    }

    fn set(v: &[usize]) -> IndexSet {
        IndexSet::new(v.to_vec())
    }

    /// Two flat clusters in parallel horizontal slabs, far apart in z.
    fn slabs(per_side: usize, seed: u64) -> PointSeq {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        loop {
            let mut rows = Vec::new();
            for z in [0i64, 100_000] {
                for _ in 0..per_side {
                    rows.push([
                        rng.random_range(0..1000),
                        rng.random_range(0..1000),
                        z + rng.random_range(0..10),
                    ]);
                }
            }
            if let Ok(p) = PointSeq::from_ints(&rows) {
                if general_position(&p) {
                    return p;
                }
            }
        }
    }

    #[test]
    fn singleton_separator_is_the_bisector() {
        let p = PointSeq::from_ints(&[[0, 0], [2, 0]]).unwrap();
        let h = separating_hyperplane(&p, &set(&[0]), &set(&[1])).unwrap();
        assert_eq!(h, Hyperplane::new(vec![r(1), r(0)], r(1)).unwrap());
        assert_eq!(h.to_string(), "[1, 0] . x = 1");
    }

    #[test]
    fn crossing_diagonals_are_not_separable() {
        let p = PointSeq::from_ints(&[[0, 0], [1, 1], [1, 0], [0, 1]]).unwrap();
        assert!(matches!(
            separating_hyperplane(&p, &set(&[0, 1]), &set(&[2, 3])),
            Err(Error::NotSeparable)
        ));
    }

    #[test]
    fn spatial_clusters_are_strictly_separated() {
        let p = slabs(6, 1);
        let (a, b) = (set(&[0, 1, 2, 3, 4, 5]), set(&[6, 7, 8, 9, 10, 11]));
        let h = separating_hyperplane(&p, &a, &b).unwrap();
        let sa: Vec<Orientation> = a.iter().map(|i| h.side(p.point(i))).collect();
        let sb: Vec<Orientation> = b.iter().map(|i| h.side(p.point(i))).collect();
        assert!(sa.iter().all(|s| *s == sa[0] && !s.is_zero()));
        assert!(sb.iter().all(|s| *s == sa[0].reversed()));
    }

    #[test]
    fn projection_examples() {
        let p = PointSeq::from_ints(&[[0, 0, 1], [0, 0, -1]]).unwrap();
        let h = Hyperplane::new(vec![r(0), r(0), r(1)], r(0)).unwrap();
        let frames = project_through(&p, &set(&[0]), &set(&[1]), &h).unwrap();
        assert_eq!(frames.len(), 1);
        assert_eq!(frames[0].dropped_coord, 2);
        assert_eq!(frames[0].images.point(0), &Point::from_ints(&[0, 0]));
    }

    #[test]
    fn frames_share_an_order_type() {
        for seed in 0..4 {
            let p = slabs(7, seed);
            let pair = AvoidingPair::certify(&p, (0..7).collect(), (7..14).collect()).unwrap();
            assert!(pair.verified);
            let h = separating_hyperplane(&p, &pair.a, &pair.b).unwrap();
            let frames = project_through(&p, &pair.a, &pair.b, &h).unwrap();
            assert_eq!(frames.len(), 7);
            assert!(frames_agree(&frames).unwrap());
            // |B| = d: one tuple, same sign in every frame
            let small = project_through(&p, &pair.a, &set(&[7, 8, 9]), &h).unwrap();
            let signs: Vec<Orientation> = small.iter().map(|f| f.images.orient_idx(&[0, 1, 2])).collect();
            assert!(signs.iter().all(|s| *s == signs[0]));
        }
    }

    #[test]
    fn lifted_triangles_cross_although_bases_are_disjoint() {
        let p = slabs(8, 9);
        let run = crossing_family_rd(&p).unwrap();
        assert!(run.family.len() >= 2, "{:?}", run.warnings);
        assert!(is_crossing_family(&p, &run.family.simplices));
        assert_eq!(run.frames_agree, Some(true));
        let fam = &run.family.simplices;
        let base = |s: &Simplex| -> Vec<&Point> { s.vertices[1..].iter().map(|&i| p.point(i)).collect() };
        assert!(hull_intersection_slack(&base(&fam[0]), &base(&fam[1])).is_none());
        let tri = |s: &Simplex| -> Vec<&Point> { s.vertices.iter().map(|&i| p.point(i)).collect() };
        assert!(hull_intersection_slack(&tri(&fam[0]), &tri(&fam[1]))
            .unwrap()
            .is_positive());
    }

    #[test]
    fn planar_case_matches_the_planar_pipeline() {
        let p = PointSeq::from_ints(&[[0, 0], [10, 1], [20, 4], [3, 500], [13, 499], [23, 496]]).unwrap();
        let run = crossing_family_rd(&p).unwrap();
        let pair = run.pair.clone().unwrap();
        assert_eq!(run.family, crossing_family_from_avoiding(&p, &pair).unwrap());
        assert_eq!(run.family.len(), 3);
    }

    #[test]
    fn bruteforce_rd_cases() {
        let p = slabs(3, 2);
        assert_eq!(max_avoiding_bruteforce_rd(&p).unwrap().min_size(), 3);
        let few = PointSeq::from_ints(&[[0, 0, 0], [1, 0, 0], [0, 1, 0]]).unwrap();
        assert_eq!(max_avoiding_bruteforce_rd(&few).unwrap().min_size(), 1);
        assert!((crossing_bound_exponent(3) - 1.0 / 14.0).abs() < 1e-12);
        assert!((crossing_bound_exponent(2) - 0.5).abs() < 1e-12);
    }
}
