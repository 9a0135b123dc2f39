//! Exhaustive oracles: the largest mutually avoiding pair and the largest
//! planar crossing family.

use rayon::prelude::*;
use std::collections::BTreeMap;

use super::{strongly_cross, AvoidingPair, CrossingFamily, IndexSet, Simplex};
use crate::avoidance::one_sided;
use crate::combin::{combinations, for_each_subset};
use crate::error::{Error, Result};
use crate::geometry::{Orientation, PointSeq};

pub const DEFAULT_AVOIDING_CAP: usize = 14;
pub const DEFAULT_AVOIDING_CAP_RD: usize = 12;
pub const DEFAULT_CROSSING_CAP: usize = 12;

/// A pair maximizing `min(|A|, |B|)`, with `|A| = |B|`.
///
/// Among optimal pairs the one with lexicographically smallest `A`, then
/// smallest `B`, is returned, so the result does not depend on thread
/// scheduling. Works in any dimension; sets with fewer than `d` points span
/// no hyperplane and avoid everything.
pub fn max_avoiding_bruteforce(p: &PointSeq, cap: usize) -> Result<AvoidingPair> {
    let n = p.len();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "max_avoiding_bruteforce",
            n,
            cap,
        });
    }
    if n < 2 {
        return Err(Error::Input("need at least two points".into()));
    }
    let mut best = (vec![0], vec![1]);
    for m in 2..=n / 2 {
        match pair_of_size(p, m) {
            Some(found) => best = found,
            None => break,
        }
    }
    let pair = AvoidingPair {
        a: IndexSet::new(best.0),
        b: IndexSet::new(best.1),
        verified: true,
    };
    debug_assert!(super::mutually_avoiding_idx(p, pair.a.as_slice(), pair.b.as_slice()));
    Ok(pair)
}

/// Lexicographically first `(A, B)` with `|A| = |B| = m`, if any.
fn pair_of_size(p: &PointSeq, m: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = p.len();
    let candidates = combinations(n, m);
    candidates
        .par_iter()
        .find_map_first(|a| partner_for(p, a, m).map(|b| (a.clone(), b)))
}

/// Lexicographically smallest `B` of size `m` mutually avoiding `a`.
fn partner_for(p: &PointSeq, a: &[usize], m: usize) -> Option<Vec<usize>> {
    let d = p.dim();
    let n = p.len();
    let mut a_planes: Vec<Vec<usize>> = Vec::new();
    if a.len() >= d {
        for_each_subset(a, d, |h| {
            a_planes.push(h.to_vec());
            true
        });
    }
    // B must lie on one side of every hyperplane of A, so candidates are
    // grouped by their sign vector.
    let mut groups: BTreeMap<Vec<Orientation>, Vec<usize>> = BTreeMap::new();
    let mut t = vec![0usize; d + 1];
    'cand: for q in 0..n {
        if a.contains(&q) {
            continue;
        }
        let mut signs = Vec::with_capacity(a_planes.len());
        for h in &a_planes {
            t[..d].copy_from_slice(h);
            t[d] = q;
            let s = p.orient_idx(&t);
            if s.is_zero() {
                continue 'cand;
            }
            signs.push(s);
        }
        groups.entry(signs).or_default().push(q);
    }
    let mut best: Option<Vec<usize>> = None;
    for members in groups.values() {
        if members.len() < m {
            continue;
        }
        let mut chosen = Vec::with_capacity(m);
        if extend(p, a, members, 0, m, &mut chosen) && best.as_ref().is_none_or(|b| chosen < *b) {
            best = Some(chosen);
        }
    }
    best
}

// Depth-first in index order, so the first completion is the smallest.
fn extend(p: &PointSeq, a: &[usize], members: &[usize], from: usize, m: usize, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == m {
        return true;
    }
    let d = p.dim();
    for i in from..members.len() {
        if chosen.len() + (members.len() - i) < m {
            return false;
        }
        let q = members[i];
        if compatible(p, a, chosen, q, d) {
            chosen.push(q);
            if extend(p, a, members, i + 1, m, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

// New hyperplanes of B through q must leave A strictly on one side.
fn compatible(p: &PointSeq, a: &[usize], chosen: &[usize], q: usize, d: usize) -> bool {
    if chosen.len() + 1 < d {
        return true;
    }
    let mut t = vec![0usize; d + 1];
    for_each_subset(chosen, d - 1, |s| {
        t[..d - 1].copy_from_slice(s);
        t[d - 1] = q;
        one_sided(p, &mut t, a).is_some()
    })
}

/// A maximum family of pairwise crossing segments, by branch and bound over
/// the crossing graph of all segments. Planar only.
pub fn max_crossing_family_bruteforce(p: &PointSeq, cap: usize) -> Result<CrossingFamily> {
    if p.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: p.dim(),
        });
    }
    let n = p.len();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "max_crossing_family_bruteforce",
            n,
            cap,
        });
    }
    let segs: Vec<Simplex> = combinations(n, 2).into_iter().map(Simplex::new).collect();
    let adj: Vec<Vec<bool>> = segs
        .iter()
        .map(|s| segs.iter().map(|t| strongly_cross(p, s, t)).collect())
        .collect();
    let mut best: Vec<usize> = Vec::new();
    let limit = n / 2;
    let mut current = Vec::new();
    let cand: Vec<usize> = (0..segs.len()).collect();
    grow_clique(&adj, &mut current, &cand, &mut best, limit);
    Ok(CrossingFamily {
        simplices: best.into_iter().map(|i| segs[i].clone()).collect(),
        verified: true,
    })
}

fn grow_clique(adj: &[Vec<bool>], current: &mut Vec<usize>, cand: &[usize], best: &mut Vec<usize>, limit: usize) {
    if current.len() > best.len() {
        *best = current.clone();
    }
    for (pos, &v) in cand.iter().enumerate() {
        if best.len() >= limit || current.len() + (cand.len() - pos) <= best.len() {
            return;
        }
        let next: Vec<usize> = cand[pos + 1..].iter().copied().filter(|&w| adj[v][w]).collect();
        current.push(v);
        grow_clique(adj, current, &next, best, limit);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::avoidance::{is_crossing_family, mutually_avoiding_idx};

    #[test]
    fn unit_square_has_pairs_of_two() {
        let p = PointSeq::from_ints(&[[0, 0], [1, 0], [1, 1], [0, 1]]).unwrap();
        let pair = max_avoiding_bruteforce(&p, DEFAULT_AVOIDING_CAP).unwrap();
        assert_eq!(pair.min_size(), 2);
        // bottom edge against top edge would also do; lexicographic choice
        // puts point 0 with its first valid partner
        assert_eq!(pair.a.as_slice(), &[0, 1]);
        assert_eq!(pair.b.as_slice(), &[2, 3]);
    }

    #[test]
    fn triangle_gives_singletons() {
        let p = PointSeq::from_ints(&[[0, 0], [1, 0], [0, 1]]).unwrap();
        let pair = max_avoiding_bruteforce(&p, DEFAULT_AVOIDING_CAP).unwrap();
        assert_eq!(pair.min_size(), 1);
        assert_eq!((pair.a.as_slice(), pair.b.as_slice()), (&[0usize][..], &[1usize][..]));
    }

    #[test]
    fn cap_is_enforced() {
        let rows: Vec<[i64; 2]> = (0..15).map(|t| [t, t * t]).collect();
        let p = PointSeq::from_ints(&rows).unwrap();
        assert!(matches!(
            max_avoiding_bruteforce(&p, DEFAULT_AVOIDING_CAP),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(
            max_crossing_family_bruteforce(&p, DEFAULT_CROSSING_CAP),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn crossing_oracle_examples() {
        let sq = PointSeq::from_ints(&[[0, 0], [1, 0], [1, 1], [0, 1]]).unwrap();
        let fam = max_crossing_family_bruteforce(&sq, DEFAULT_CROSSING_CAP).unwrap();
        assert_eq!(fam.len(), 2);
        assert!(is_crossing_family(&sq, &fam.simplices));

        let tri = PointSeq::from_ints(&[[0, 0], [1, 0], [0, 1]]).unwrap();
        assert_eq!(
            max_crossing_family_bruteforce(&tri, DEFAULT_CROSSING_CAP)
                .unwrap()
                .len(),
            1
        );

        let hex = PointSeq::from_ints(&[[2, 0], [1, 2], [-1, 2], [-2, 0], [-1, -2], [1, -2]]).unwrap();
        let fam = max_crossing_family_bruteforce(&hex, DEFAULT_CROSSING_CAP).unwrap();
        assert_eq!(fam.len(), 3);
        assert!(is_crossing_family(&hex, &fam.simplices));
    }

    #[test]
    fn two_clusters_in_space() {
        let p = PointSeq::from_ints(&[
            [0, 0, 0],
            [1, 0, 0],
            [0, 1, 0],
            [100, 100, 100],
            [101, 100, 101],
            [100, 102, 101],
        ])
        .unwrap();
        let pair = max_avoiding_bruteforce(&p, DEFAULT_AVOIDING_CAP_RD).unwrap();
        assert_eq!(pair.min_size(), 3);
        assert!(mutually_avoiding_idx(&p, pair.a.as_slice(), pair.b.as_slice()));
    }
}
