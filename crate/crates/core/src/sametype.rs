//! Order types, same-type transversals and a desk-scale same-type
//! partition, plus the positive-fraction pipeline in R^d built on them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::fmt;

use crate::avoidance::{
    find_avoiding_heuristic, max_avoiding_bruteforce, AvoidingPair, IndexSet, DEFAULT_AVOIDING_CAP,
    DEFAULT_AVOIDING_CAP_RD,
};
use crate::combin::{combinations, for_each_combination};
use crate::error::{Error, Result};
use crate::fractional::{verify_fractional, FractionalFamily, Verdict, DEFAULT_EXHAUSTIVE_CAP, DEFAULT_TRIALS};
use crate::geometry::{convex_hull_2d, Orientation, Point, PointSeq, Rational};
use crate::lp::in_convex_hull;

/// Orientation budget for deciding same-type transversals exactly.
pub const DEFAULT_ORIENT_CAP: u64 = 200_000;
const FALSIFIER_SAMPLES: u64 = 2000;

/// Orientation of every `(d+1)`-subset, in lexicographic order of subsets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderType {
    pub dim: usize,
    pub n: usize,
    pub signs: Vec<Orientation>,
}

impl OrderType {
    /// Sign of the sorted tuple `t`.
    pub fn sign(&self, t: &[usize]) -> Option<Orientation> {
        let mut rank = 0usize;
        let mut found = None;
        for_each_combination(self.n, self.dim + 1, |c| {
            if c == t {
                found = Some(rank);
                return false;
            }
            rank += 1;
            true
        });
        found.map(|r| self.signs[r])
    }

    pub fn negated(&self) -> OrderType {
        OrderType {
            signs: self.signs.iter().map(|s| s.reversed()).collect(),
            ..self.clone()
        }
    }
}

/// The order type of `p`. Fails on the first degenerate tuple.
pub fn order_type(p: &PointSeq) -> Result<OrderType> {
    let d = p.dim();
    let mut signs = Vec::new();
    let mut bad = None;
    for_each_combination(p.len(), d + 1, |t| {
        let s = p.orient_idx(t);
        if s.is_zero() {
            bad = Some(t.to_vec());
            return false;
        }
        signs.push(s);
        true
    });
    if let Some(t) = bad {
        return Err(Error::Degenerate(format!("tuple {t:?} is not in general position")));
    }
    Ok(OrderType {
        dim: d,
        n: p.len(),
        signs,
    })
}

/// Disjoint nonempty index sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionParts {
    pub parts: Vec<IndexSet>,
}

impl PartitionParts {
    pub fn new(parts: Vec<IndexSet>, n: usize) -> Result<Self> {
        let mut seen = vec![false; n];
        for (j, s) in parts.iter().enumerate() {
            s.check_bounds(n)?;
            if s.is_empty() {
                return Err(Error::Input(format!("part {j} is empty")));
            }
            for i in s.iter() {
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::Input(format!("point {i} lies in two parts")));
                }
            }
        }
        Ok(PartitionParts { parts })
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn min_size(&self) -> usize {
        self.parts.iter().map(IndexSet::len).min().unwrap_or(0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransversalMethod {
    /// Every point of every part.
    Exhaustive,
    /// Hull vertices of each part; exact because orientation is affine in
    /// each argument.
    ExtremePoints,
    /// Random transversals only; a pass is not a proof.
    Sampled,
}

impl fmt::Display for TransversalMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TransversalMethod::Exhaustive => "exhaustive",
            TransversalMethod::ExtremePoints => "extreme_points",
            TransversalMethod::Sampled => "sampled",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SameTypeCheck {
    pub same: bool,
    pub method: TransversalMethod,
    pub evaluations: u64,
    /// A `(d+1)`-tuple of part indices whose transversals disagree.
    pub witness: Option<Vec<usize>>,
}

/// Whether all transversals of `parts` share one order type, within the
/// default orientation budget.
pub fn same_type_transversals(p: &PointSeq, parts: &PartitionParts) -> Result<SameTypeCheck> {
    same_type_transversals_with(p, parts, DEFAULT_ORIENT_CAP, 0)
}

/// All transversals share an order type iff, for every `(d+1)`-tuple of
/// parts, the orientation is constant over the product of those parts.
/// That product is scanned in full when it fits in `cap`; otherwise the
/// parts are replaced by their extreme points, and only if that is still
/// too large does the check fall back to seeded sampling.
pub fn same_type_transversals_with(p: &PointSeq, parts: &PartitionParts, cap: u64, seed: u64) -> Result<SameTypeCheck> {
    let checked = PartitionParts::new(parts.parts.clone(), p.len())?;
    let d = p.dim();
    let sets: Vec<Vec<usize>> = checked.parts.iter().map(|s| s.as_slice().to_vec()).collect();
    if sets.len() < d + 1 {
        return Ok(SameTypeCheck {
            same: true,
            method: TransversalMethod::Exhaustive,
            evaluations: 0,
            witness: None,
        });
    }
    let tuples = combinations(sets.len(), d + 1);
    let cost = |s: &[Vec<usize>]| -> u64 {
        tuples
            .iter()
            .map(|t| t.iter().fold(1u64, |acc, &j| acc.saturating_mul(s[j].len() as u64)))
            .fold(0u64, u64::saturating_add)
    };
    let full = cost(&sets);
    if full <= cap {
        return Ok(scan(p, &sets, &tuples, TransversalMethod::Exhaustive, full));
    }
    let extreme: Vec<Vec<usize>> = sets.iter().map(|s| extreme_points(p, s)).collect();
    let reduced = cost(&extreme);
    if reduced <= cap {
        return Ok(scan(p, &extreme, &tuples, TransversalMethod::ExtremePoints, reduced));
    }
    let witness = (0..FALSIFIER_SAMPLES).into_par_iter().find_map_first(|trial| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        let first: Vec<usize> = extreme.iter().map(|s| s[rng.random_range(0..s.len())]).collect();
        let second: Vec<usize> = extreme.iter().map(|s| s[rng.random_range(0..s.len())]).collect();
        tuples.iter().find_map(|t| {
            let x: Vec<usize> = t.iter().map(|&j| first[j]).collect();
            let y: Vec<usize> = t.iter().map(|&j| second[j]).collect();
            (p.orient_idx(&x) != p.orient_idx(&y)).then(|| t.clone())
        })
    });
    Ok(SameTypeCheck {
        same: witness.is_none(),
        method: TransversalMethod::Sampled,
        evaluations: FALSIFIER_SAMPLES * 2 * tuples.len() as u64,
        witness,
    })
}

fn scan(
    p: &PointSeq,
    sets: &[Vec<usize>],
    tuples: &[Vec<usize>],
    method: TransversalMethod,
    evaluations: u64,
) -> SameTypeCheck {
    let witness = tuples
        .par_iter()
        .find_map_first(|t| (!constant_sign(p, sets, t)).then(|| t.clone()));
    SameTypeCheck {
        same: witness.is_none(),
        method,
        evaluations,
        witness,
    }
}

// Odometer over the product of the parts named by `t`.
fn constant_sign(p: &PointSeq, sets: &[Vec<usize>], t: &[usize]) -> bool {
    let r = t.len();
    let mut pos = vec![0usize; r];
    let mut idx: Vec<usize> = t.iter().map(|&j| sets[j][0]).collect();
    let first = p.orient_idx(&idx);
    if first.is_zero() {
        return false;
    }
    loop {
        let Some(i) = (0..r).rev().find(|&i| pos[i] + 1 < sets[t[i]].len()) else {
            return true;
        };
        pos[i] += 1;
        idx[i] = sets[t[i]][pos[i]];
        for j in i + 1..r {
            pos[j] = 0;
            idx[j] = sets[t[j]][0];
        }
        if p.orient_idx(&idx) != first {
            return false;
        }
    }
}

/// Vertices of the convex hull of `s`, in index order.
fn extreme_points(p: &PointSeq, s: &[usize]) -> Vec<usize> {
    if s.len() <= p.dim() + 1 {
        return s.to_vec();
    }
    let mut out = if p.dim() == 2 {
        let sub = p.subset(s);
        convex_hull_2d(&sub)
            .map(|h| h.into_iter().map(|i| s[i]).collect())
            .unwrap_or_else(|_| s.to_vec())
    } else {
        s.par_iter()
            .copied()
            .filter(|&x| {
                let others: Vec<&Point> = s.iter().filter(|&&y| y != x).map(|&y| p.point(y)).collect();
                !in_convex_hull(p.point(x), &others)
            })
            .collect()
    };
    out.sort_unstable();
    out
}

/// Result of [`same_type_partition`].
#[derive(Clone, Debug)]
pub struct SameTypeRun {
    pub parts: PartitionParts,
    /// `min |P_i| / n`.
    pub epsilon: Rational,
    /// Shrinking reached singleton parts.
    pub fallback: bool,
    pub rounds: usize,
    pub check: SameTypeCheck,
}

/// `k` disjoint parts with same-type transversals.
///
/// Points are sorted by increasing first coordinate (ties by the remaining
/// coordinates) and cut into `k` contiguous blocks of near-equal size.
/// While verification fails, every block keeps the three quarters of its
/// points nearest to its original centroid.
pub fn same_type_partition(p: &PointSeq, k: usize) -> Result<SameTypeRun> {
    let n = p.len();
    let d = p.dim();
    if k == 0 || n < k * (d + 1) {
        return Err(Error::Input(format!(
            "need n >= k(d+1) = {}, have n = {n}",
            k * (d + 1)
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| p.point(a).cmp(p.point(b)).then(a.cmp(&b)));
    let (base, extra) = (n / k, n % k);
    let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(k);
    let mut start = 0;
    for j in 0..k {
        let len = base + usize::from(j < extra);
        blocks.push(order[start..start + len].to_vec());
        start += len;
    }
    // each block ranked once by distance to its original centroid
    let ranked: Vec<Vec<usize>> = blocks
        .iter()
        .map(|b| {
            let c = Point::centroid(b.iter().map(|&i| p.point(i))).expect("nonempty block");
            let mut r = b.clone();
            r.sort_by(|&x, &y| {
                p.point(x)
                    .squared_distance(&c)
                    .cmp(&p.point(y).squared_distance(&c))
                    .then(x.cmp(&y))
            });
            r
        })
        .collect();
    let mut sizes: Vec<usize> = blocks.iter().map(Vec::len).collect();
    let mut rounds = 0;
    loop {
        let parts = PartitionParts::new(
            ranked
                .iter()
                .zip(&sizes)
                .map(|(r, &s)| IndexSet::new(r[..s].to_vec()))
                .collect(),
            n,
        )?;
        let check = same_type_transversals(p, &parts)?;
        let singletons = sizes.iter().all(|&s| s == 1);
        if check.same || singletons {
            let min = parts.min_size();
            let fallback = singletons && blocks.iter().any(|b| b.len() > 1);
            return Ok(SameTypeRun {
                epsilon: Rational::new((min as i64).into(), (n as i64).into()),
                parts,
                fallback,
                rounds,
                check,
            });
        }
        for s in sizes.iter_mut() {
            *s = (*s * 3 / 4).max(1);
        }
        rounds += 1;
    }
}

/// Part member nearest the part centroid; ties by smallest index.
pub fn representative(p: &PointSeq, part: &IndexSet) -> Option<usize> {
    let c = Point::centroid(part.iter().map(|i| p.point(i)))?;
    part.iter().min_by(|&x, &y| {
        p.point(x)
            .squared_distance(&c)
            .cmp(&p.point(y).squared_distance(&c))
            .then(x.cmp(&y))
    })
}

/// Default number of same-type parts for a target `k`.
pub fn default_parts(k: usize, d: usize) -> usize {
    (2 * k * k).max((d + 2) * k)
}

#[derive(Clone, Debug)]
pub struct FractionalRdRun {
    pub family: FractionalFamily,
    pub partition: SameTypeRun,
    pub representatives: Vec<usize>,
    /// The avoiding pair, as indices into `p`.
    pub pair: AvoidingPair,
    pub verdict: Verdict,
    pub k_prime: usize,
}

/// Positive-fraction family in R^d with the default part count.
pub fn fractional_rd(p: &PointSeq, k: usize, seed: u64) -> Result<FractionalRdRun> {
    fractional_rd_with(
        p,
        k,
        default_parts(k, p.dim()),
        DEFAULT_TRIALS,
        DEFAULT_EXHAUSTIVE_CAP,
        seed,
    )
}

/// Same-type partition into `k_prime` parts, an avoiding pair of size `k`
/// among their representatives, and the parts behind that pair.
pub fn fractional_rd_with(
    p: &PointSeq,
    k: usize,
    k_prime: usize,
    trials: u64,
    exhaustive_cap: u64,
    seed: u64,
) -> Result<FractionalRdRun> {
    if k == 0 || k_prime < 2 * k {
        return Err(Error::Input(format!(
            "need k >= 1 and k' >= 2k, got k={k} k'={k_prime}"
        )));
    }
    let partition = same_type_partition(p, k_prime)?;
    let representatives: Vec<usize> = partition
        .parts
        .parts
        .iter()
        .map(|s| representative(p, s).expect("nonempty part"))
        .collect();
    let reps = p.subset(&representatives);
    let cap = if p.dim() == 2 {
        DEFAULT_AVOIDING_CAP
    } else {
        DEFAULT_AVOIDING_CAP_RD
    };
    let local = if reps.len() <= cap {
        max_avoiding_bruteforce(&reps, cap)?
    } else {
        find_avoiding_heuristic(&reps, k)?
    };
    if local.min_size() < k {
        return Err(Error::NotFound(format!(
            "representatives of {k_prime} parts admit no avoiding pair of size {k}; try more parts"
        )));
    }
    let pick = |s: &IndexSet| -> Vec<usize> { s.iter().take(k).collect() };
    let (ra, rb) = (pick(&local.a), pick(&local.b));
    let family = FractionalFamily {
        a_parts: ra.iter().map(|&j| partition.parts.parts[j].clone()).collect(),
        b_parts: rb.iter().map(|&j| partition.parts.parts[j].clone()).collect(),
        k,
    };
    let pair = AvoidingPair::certify(
        p,
        ra.iter().map(|&j| representatives[j]).collect(),
        rb.iter().map(|&j| representatives[j]).collect(),
    )?;
    let verdict = verify_fractional(p, &family, trials, exhaustive_cap, seed)?;
    Ok(FractionalRdRun {
        family,
        partition,
        representatives,
        pair,
        verdict,
        k_prime,
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn parts(v: &[&[usize]], n: usize) -> PartitionParts {
        PartitionParts::new(v.iter().map(|s| IndexSet::new(s.to_vec())).collect(), n).unwrap()
    }

    /// Tight clusters of `size` points around far-apart centres, redrawn
    /// until the whole set is in general position.
    pub(crate) fn clusters(centres: &[Vec<i64>], size: usize) -> PointSeq {
        use rand::{Rng, SeedableRng};
        let d = centres[0].len();
        let mut rng = ChaCha8Rng::seed_from_u64(centres.len() as u64);
        loop {
            let rows: Vec<Vec<i64>> = centres
                .iter()
                .flat_map(|c| {
                    (0..size)
                        .map(|_| (0..d).map(|j| c[j] + rng.random_range(0..40)).collect::<Vec<_>>())
                        .collect::<Vec<_>>()
                })
                .collect();
            if let Ok(p) = PointSeq::from_ints(&rows) {
                if crate::geometry::general_position(&p) {
                    return p;
                }
            }
        }
    }

    #[test]
    fn order_type_examples() {
        let tri = PointSeq::from_ints(&[[0, 0], [1, 0], [0, 1]]).unwrap();
        assert_eq!(order_type(&tri).unwrap().signs, vec![Orientation::Positive]);
        let quad = PointSeq::from_ints(&[[0, 0], [4, 0], [4, 4], [0, 4]]).unwrap();
        let mirror = PointSeq::from_ints(&[[0, 0], [-4, 0], [-4, 4], [0, 4]]).unwrap();
        assert_eq!(order_type(&mirror).unwrap(), order_type(&quad).unwrap().negated());
        let t = order_type(&quad).unwrap();
        assert_eq!(t.sign(&[0, 2, 3]), Some(Orientation::Positive));
        let inner = PointSeq::from_ints(&[[0, 0], [4, 0], [0, 4], [1, 1]]).unwrap();
        let pos = |o: &OrderType| o.signs.iter().filter(|s| **s == Orientation::Positive).count();
        assert_ne!(pos(&t), pos(&order_type(&inner).unwrap()));
        assert!(order_type(&PointSeq::from_ints(&[[0, 0], [1, 1], [2, 2]]).unwrap()).is_err());
    }

    #[test]
    fn clusters_have_same_type_transversals() {
        let p = clusters(&[vec![0, 0], vec![1000, 30], vec![400, 900]], 5);
        let ps = parts(&[&[0, 1, 2, 3, 4], &[5, 6, 7, 8, 9], &[10, 11, 12, 13, 14]], 15);
        let c = same_type_transversals(&p, &ps).unwrap();
        assert!(c.same);
        assert_eq!(c.method, TransversalMethod::Exhaustive);
        let single = parts(&[&[0], &[5], &[10]], 15);
        assert!(same_type_transversals(&p, &single).unwrap().same);
    }

    #[test]
    fn straddling_part_is_detected() {
        // part 2 has points on both sides of the line through parts 0 and 1
        let p = PointSeq::from_ints(&[[0, 0], [1, 1], [100, 0], [101, 1], [50, 40], [50, -40]]).unwrap();
        let ps = parts(&[&[0, 1], &[2, 3], &[4, 5]], 6);
        let c = same_type_transversals(&p, &ps).unwrap();
        assert!(!c.same);
        assert_eq!(c.witness, Some(vec![0, 1, 2]));
        let overlapping = PartitionParts {
            parts: vec![IndexSet::new(vec![0, 1]), IndexSet::new(vec![1, 2])],
        };
        assert!(same_type_transversals(&p, &overlapping).is_err());
    }

    #[test]
    fn extreme_point_reduction_agrees_with_full_scan() {
        let p = clusters(
            &[vec![0, 0, 0], vec![900, 10, 0], vec![0, 800, 20], vec![30, 40, 700]],
            8,
        );
        let ps = PartitionParts::new((0..4).map(|c| (c * 8..c * 8 + 8).collect()).collect(), 32).unwrap();
        let full = same_type_transversals_with(&p, &ps, u64::MAX, 0).unwrap();
        let reduced = same_type_transversals_with(&p, &ps, 100, 0).unwrap();
        assert_eq!(full.method, TransversalMethod::Exhaustive);
        assert_ne!(reduced.method, TransversalMethod::Exhaustive);
        assert_eq!(full.same, reduced.same);
    }

    #[test]
    fn partition_of_clusters_finds_the_clusters() {
        let p = clusters(&[vec![0, 0], vec![1000, 600], vec![2000, 0], vec![3000, 700]], 6);
        let run = same_type_partition(&p, 4).unwrap();
        assert!(!run.fallback);
        assert_eq!(run.rounds, 0);
        assert_eq!(run.epsilon, Rational::new(1.into(), 4.into()));
        assert!(same_type_transversals_with(&p, &run.parts, u64::MAX, 0).unwrap().same);
    }

    #[test]
    fn moment_curve_blocks_need_no_shrinking() {
        let rows: Vec<[i64; 2]> = (1..=20).map(|t| [t, t * t]).collect();
        let p = PointSeq::from_ints(&rows).unwrap();
        let run = same_type_partition(&p, 4).unwrap();
        assert_eq!(run.rounds, 0);
        assert_eq!(run.parts.min_size(), 5);
    }

    #[test]
    fn representative_is_central() {
        let p = PointSeq::from_ints(&[[0, 0], [10, 0], [4, 1], [5, 9]]).unwrap();
        assert_eq!(representative(&p, &IndexSet::new(vec![0, 1, 2, 3])), Some(2));
    }

    #[test]
    fn fractional_rd_on_spatial_clusters() {
        let centres = vec![
            vec![0, 0, 0],
            vec![1000, 37, 5],
            vec![2000, 900, 400],
            vec![3000, 150, 950],
            vec![4000, 700, 100],
            vec![5000, 20, 600],
            vec![6000, 880, 880],
            vec![7000, 400, 30],
        ];
        let p = clusters(&centres, 5);
        let run = fractional_rd(&p, 2, 3).unwrap();
        assert!(run.verdict.passed);
        assert_eq!(run.family.k, 2);
        assert!(run.family.min_part() >= 1);
    }
}
