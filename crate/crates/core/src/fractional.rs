//! Positive-fraction families in the plane.
//!
//! A mutually avoiding pair is thinned to every fourth point in radial
//! order (the support). Consecutive support points of one side, together
//! with the two extreme support points of the other side, bound a
//! quadrilateral region. The densest regions on each side become the parts
//! of the family.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::avoidance::{find_avoiding_heuristic, mutually_avoiding_idx, radial_order, AvoidingPair, IndexSet, Sense};
use crate::error::{Error, Result};
use crate::geometry::{Orientation, PointSeq};

/// Default number of transversals checked exhaustively before sampling.
pub const DEFAULT_EXHAUSTIVE_CAP: u64 = 200_000;
pub const DEFAULT_TRIALS: u64 = 1000;

/// Every fourth point of each side of an avoiding pair, in radial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportPair {
    pub a_prime: Vec<usize>,
    pub b_prime: Vec<usize>,
    /// Full radial orders the support was taken from.
    pub a_order: Vec<usize>,
    pub b_order: Vec<usize>,
    pub source: AvoidingPair,
}

/// `orient(through.0, through.1, x) == side` for all points `x` inside.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WedgeConstraint {
    pub through: (usize, usize),
    pub side: Orientation,
}

/// An open convex region cut out by oriented lines through point pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wedge {
    pub constraints: Vec<WedgeConstraint>,
}

impl Wedge {
    /// Strict membership of point `x` of `p`.
    pub fn contains(&self, p: &PointSeq, x: usize) -> bool {
        self.constraints
            .iter()
            .all(|c| p.orient_idx(&[c.through.0, c.through.1, x]) == c.side)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionFamily {
    pub a_regions: Vec<Wedge>,
    pub b_regions: Vec<Wedge>,
    pub counts_a: Vec<usize>,
    pub counts_b: Vec<usize>,
}

/// Parts `A_1..A_k`, `B_1..B_k` of a positive-fraction family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalFamily {
    pub a_parts: Vec<IndexSet>,
    pub b_parts: Vec<IndexSet>,
    pub k: usize,
}

impl FractionalFamily {
    pub fn parts(&self) -> impl Iterator<Item = &IndexSet> {
        self.a_parts.iter().chain(&self.b_parts)
    }

    /// Smallest part size.
    pub fn min_part(&self) -> usize {
        self.parts().map(IndexSet::len).min().unwrap_or(0)
    }

    /// Number of transversal pairs, saturating.
    pub fn transversal_count(&self) -> u64 {
        self.parts().fold(1u64, |acc, s| acc.saturating_mul(s.len() as u64))
    }

    fn check(&self, n: usize) -> Result<()> {
        if self.a_parts.len() != self.k || self.b_parts.len() != self.k {
            return Err(Error::Input(format!("family must have {} parts per side", self.k)));
        }
        let mut seen = vec![false; n];
        for s in self.parts() {
            s.check_bounds(n)?;
            for i in s.iter() {
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::Input(format!("point {i} lies in two parts")));
                }
            }
        }
        Ok(())
    }
}

/// The support of a verified planar pair with `|A| = |B| = 4j + 1`.
///
/// `A` is labeled clockwise around the first point of `B`, and `B`
/// counterclockwise around the first point of `A`.
pub fn support_of(p: &PointSeq, pair: &AvoidingPair) -> Result<SupportPair> {
    if p.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: p.dim(),
        });
    }
    if !pair.verified {
        return Err(Error::Input("avoiding pair is not verified".into()));
    }
    let m = pair.a.len();
    if m != pair.b.len() || m % 4 != 1 {
        return Err(Error::Input(format!(
            "support needs |A| = |B| = 1 mod 4, got {} and {}",
            m,
            pair.b.len()
        )));
    }
    let a_order = radial_order(p, &pair.a, p.point(pair.b.as_slice()[0]), Sense::Clockwise)?;
    let b_order = radial_order(p, &pair.b, p.point(pair.a.as_slice()[0]), Sense::Counterclockwise)?;
    Ok(SupportPair {
        a_prime: a_order.iter().step_by(4).copied().collect(),
        b_prime: b_order.iter().step_by(4).copied().collect(),
        a_order,
        b_order,
        source: pair.clone(),
    })
}

// Region between consecutive points u, v of one support, seen from the
// extreme points of the other: each line through u keeps the side of v and
// each line through v keeps the side of u.
fn region(p: &PointSeq, u: usize, v: usize, apexes: [usize; 2]) -> Result<Wedge> {
    let mut constraints = Vec::with_capacity(4);
    for apex in apexes {
        for (on, keep) in [(u, v), (v, u)] {
            let side = p.orient_idx(&[apex, on, keep]);
            if side.is_zero() {
                return Err(Error::Degenerate(format!("points {apex}, {on}, {keep} are collinear")));
            }
            constraints.push(WedgeConstraint {
                through: (apex, on),
                side,
            });
        }
    }
    Ok(Wedge { constraints })
}

/// Regions between consecutive support points and their open counts.
pub fn build_regions(p: &PointSeq, support: &SupportPair) -> Result<RegionFamily> {
    let (a, b) = (&support.a_prime, &support.b_prime);
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::Input("support needs at least two points per side".into()));
    }
    let b_ends = [b[0], b[b.len() - 1]];
    let a_ends = [a[0], a[a.len() - 1]];
    let a_regions = a
        .windows(2)
        .map(|w| region(p, w[0], w[1], b_ends))
        .collect::<Result<Vec<_>>>()?;
    let b_regions = b
        .windows(2)
        .map(|w| region(p, w[0], w[1], a_ends))
        .collect::<Result<Vec<_>>>()?;
    let count = |w: &Wedge| (0..p.len()).filter(|&x| w.contains(p, x)).count();
    Ok(RegionFamily {
        counts_a: a_regions.iter().map(count).collect(),
        counts_b: b_regions.iter().map(count).collect(),
        a_regions,
        b_regions,
    })
}

fn densest(counts: &[usize], k: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..counts.len()).collect();
    idx.sort_by_key(|&i| (std::cmp::Reverse(counts[i]), i));
    idx.truncate(k);
    idx.sort_unstable();
    idx
}

/// Indices of the `k` most populated regions per side, in region order.
/// Equal counts prefer the smaller index.
pub fn select_dense_regions(rf: &RegionFamily, k: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    if rf.counts_a.len() < k || rf.counts_b.len() < k {
        return Err(Error::Input(format!(
            "need {k} regions per side, have {} and {}",
            rf.counts_a.len(),
            rf.counts_b.len()
        )));
    }
    Ok((densest(&rf.counts_a, k), densest(&rf.counts_b, k)))
}

/// Intermediate results of [`fractional_family`], for reports.
#[derive(Clone, Debug)]
pub struct FractionalRun {
    pub family: FractionalFamily,
    pub pair: AvoidingPair,
    pub support: SupportPair,
    pub regions: RegionFamily,
    pub chosen_a: Vec<usize>,
    pub chosen_b: Vec<usize>,
}

impl FractionalRun {
    /// Achieved fraction `min |part| / n`.
    pub fn epsilon(&self, n: usize) -> f64 {
        self.family.min_part() as f64 / n as f64
    }
}

/// Builds `2k` parts from an avoiding pair of size `m` found by the
/// heuristic. Fails rather than returning empty parts.
pub fn fractional_family(p: &PointSeq, k: usize, m: usize) -> Result<FractionalRun> {
    if p.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: p.dim(),
        });
    }
    if k == 0 || m % 4 != 1 || m < 5 {
        return Err(Error::Input(format!(
            "need k >= 1 and m = 1 mod 4 with m >= 5, got k={k} m={m}"
        )));
    }
    if (m - 1) / 4 < k {
        return Err(Error::Input(format!(
            "m={m} gives {} regions per side, fewer than k={k}",
            (m - 1) / 4
        )));
    }
    let found = find_avoiding_heuristic(p, m)?;
    if found.min_size() < m {
        return Err(Error::NotFound(format!(
            "largest avoiding pair found has size {}, below m={m}; try a smaller m",
            found.min_size()
        )));
    }
    let pair = trim(p, &found, m)?;
    let support = support_of(p, &pair)?;
    let regions = build_regions(p, &support)?;
    let (chosen_a, chosen_b) = select_dense_regions(&regions, k)?;
    let collect = |ws: &[Wedge], chosen: &[usize]| -> Vec<IndexSet> {
        chosen
            .iter()
            .map(|&r| (0..p.len()).filter(|&x| ws[r].contains(p, x)).collect())
            .collect()
    };
    let family = FractionalFamily {
        a_parts: collect(&regions.a_regions, &chosen_a),
        b_parts: collect(&regions.b_regions, &chosen_b),
        k,
    };
    if let Some(i) = family.parts().position(IndexSet::is_empty) {
        return Err(Error::NotFound(format!("selected region {i} contains no points")));
    }
    Ok(FractionalRun {
        family,
        pair,
        support,
        regions,
        chosen_a,
        chosen_b,
    })
}

// Keeps m radially consecutive points on each side; subsets of an avoiding
// pair still avoid each other.
fn trim(p: &PointSeq, pair: &AvoidingPair, m: usize) -> Result<AvoidingPair> {
    let a = radial_order(p, &pair.a, p.point(pair.b.as_slice()[0]), Sense::Clockwise)?;
    let b = radial_order(p, &pair.b, p.point(pair.a.as_slice()[0]), Sense::Counterclockwise)?;
    AvoidingPair::certify(p, a[..m].iter().copied().collect(), b[..m].iter().copied().collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMethod {
    Exhaustive,
    Sampled,
}

impl CheckMethod {
    pub fn name(self) -> &'static str {
        match self {
            CheckMethod::Exhaustive => "exhaustive",
            CheckMethod::Sampled => "sampled",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub passed: bool,
    pub method: CheckMethod,
    pub checked: u64,
    pub seed: u64,
    /// First failing transversal, as `(a_1..a_k, b_1..b_k)`.
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
}

// Runs `ok` on every transversal, or on `trials` sampled ones when there
// are more than `exhaustive_cap`. Trial t draws from stream t of `seed`.
fn over_transversals(
    fam: &FractionalFamily,
    trials: u64,
    exhaustive_cap: u64,
    seed: u64,
    ok: impl Fn(&[usize], &[usize]) -> bool + Sync,
) -> Verdict {
    let parts: Vec<&[usize]> = fam.parts().map(IndexSet::as_slice).collect();
    let total = fam.transversal_count();
    let k = fam.k;
    let pick = |choice: &[usize]| -> (Vec<usize>, Vec<usize>) {
        let pts: Vec<usize> = parts.iter().zip(choice).map(|(s, &c)| s[c]).collect();
        (pts[..k].to_vec(), pts[k..].to_vec())
    };
    let (method, checked, witness) = if total <= exhaustive_cap {
        let witness = (0..total).into_par_iter().find_map_first(|mut code| {
            let choice: Vec<usize> = parts
                .iter()
                .map(|s| {
                    let c = (code % s.len() as u64) as usize;
                    code /= s.len() as u64;
                    c
                })
                .collect();
            let (a, b) = pick(&choice);
            (!ok(&a, &b)).then_some((a, b))
        });
        (CheckMethod::Exhaustive, total, witness)
    } else {
        let witness = (0..trials).into_par_iter().find_map_first(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t);
            let choice: Vec<usize> = parts.iter().map(|s| rng.random_range(0..s.len())).collect();
            let (a, b) = pick(&choice);
            (!ok(&a, &b)).then_some((a, b))
        });
        (CheckMethod::Sampled, trials, witness)
    };
    Verdict {
        passed: witness.is_none(),
        method,
        checked,
        seed,
        witness,
    }
}

/// Checks that transversal pairs of the family are mutually avoiding.
pub fn verify_fractional(
    p: &PointSeq,
    fam: &FractionalFamily,
    trials: u64,
    exhaustive_cap: u64,
    seed: u64,
) -> Result<Verdict> {
    fam.check(p.len())?;
    Ok(over_transversals(fam, trials, exhaustive_cap, seed, |a, b| {
        mutually_avoiding_idx(p, a, b)
    }))
}

/// Checks that segment `a_i b_{k+1-i}` crosses segment `a_{k+1-i} b_i` for
/// every transversal and every `i` with `i < k + 1 - i`.
pub fn verify_crossing_variant(
    p: &PointSeq,
    fam: &FractionalFamily,
    trials: u64,
    exhaustive_cap: u64,
    seed: u64,
) -> Result<Verdict> {
    if p.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: p.dim(),
        });
    }
    fam.check(p.len())?;
    let k = fam.k;
    Ok(over_transversals(fam, trials, exhaustive_cap, seed, |a, b| {
        (0..k / 2).all(|i| {
            let j = k - 1 - i;
            let s = [a[i], b[j]];
            let t = [a[j], b[i]];
            let o = |x: usize, y: usize, z: usize| p.orient_idx(&[x, y, z]);
            let (o1, o2) = (o(s[0], s[1], t[0]), o(s[0], s[1], t[1]));
            let (o3, o4) = (o(t[0], t[1], s[0]), o(t[0], t[1], s[1]));
            ![o1, o2, o3, o4].iter().any(|x| x.is_zero()) && o1 != o2 && o3 != o4
        })
    }))
}
