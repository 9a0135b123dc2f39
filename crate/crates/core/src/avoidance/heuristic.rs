//! Best-effort search for large mutually avoiding pairs.
//!
//! Three passes over sweep directions spanned by point tuples: extreme
//! blocks, greedy growth from the two ends of a sweep, and greedy growth
//! along parallel strips. Every candidate is re-verified before it is
//! returned.

use rayon::prelude::*;

use super::{mutually_avoiding_idx, one_sided, AvoidingPair, IndexSet};
use crate::combin::{binomial, for_each_combination, for_each_subset};
use crate::error::{Error, Result};
use crate::geometry::{Orientation, PointSeq};

const BLOCK_DIRECTIONS: usize = 6000;
const GREEDY_DIRECTIONS: usize = 1500;
const BLOCK_CHUNK: usize = 64;

/// Incrementally maintained pair of point sets that stay mutually avoiding.
#[derive(Clone, Debug)]
pub(crate) struct Growth<'a> {
    p: &'a PointSeq,
    halves: [Half; 2],
}

#[derive(Clone, Debug, Default)]
struct Half {
    pts: Vec<usize>,
    // hyperplanes spanned by `pts`, flattened with stride d
    planes: Vec<usize>,
    // side of the other half, Zero while the other half is empty
    sides: Vec<Orientation>,
}

impl<'a> Growth<'a> {
    pub(crate) fn new(p: &'a PointSeq) -> Self {
        Growth {
            p,
            halves: [Half::default(), Half::default()],
        }
    }

    pub(crate) fn len(&self, which: usize) -> usize {
        self.halves[which].pts.len()
    }

    pub(crate) fn min_len(&self) -> usize {
        self.len(0).min(self.len(1))
    }

    pub(crate) fn contains(&self, q: usize) -> bool {
        self.halves.iter().any(|h| h.pts.contains(&q))
    }

    /// Adds `q` to half `which` if the pair stays mutually avoiding.
    pub(crate) fn try_add(&mut self, which: usize, q: usize) -> bool {
        if self.contains(q) {
            return false;
        }
        let d = self.p.dim();
        let (mine, other) = if which == 0 {
            let [a, b] = &mut self.halves;
            (a, b)
        } else {
            let [a, b] = &mut self.halves;
            (b, a)
        };
        let mut t = vec![0usize; d + 1];
        let mut other_sides = Vec::with_capacity(other.sides.len());
        for (j, plane) in other.planes.chunks(d).enumerate() {
            t[..d].copy_from_slice(plane);
            t[d] = q;
            let s = self.p.orient_idx(&t);
            if s.is_zero() || (!other.sides[j].is_zero() && s != other.sides[j]) {
                return false;
            }
            other_sides.push(s);
        }
        let mut new_planes = Vec::new();
        let mut new_sides = Vec::new();
        if d == 1 {
            new_planes.push(q);
        } else if mine.pts.len() + 1 >= d {
            let ok = for_each_subset(&mine.pts, d - 1, |s| {
                t[..d - 1].copy_from_slice(s);
                t[d - 1] = q;
                let side = if other.pts.is_empty() {
                    Some(Orientation::Zero)
                } else {
                    one_sided(self.p, &mut t, &other.pts)
                };
                match side {
                    Some(side) => {
                        new_planes.extend_from_slice(&t[..d]);
                        new_sides.push(side);
                        true
                    }
                    None => false,
                }
            });
            if !ok {
                return false;
            }
        }
        other.sides = other_sides;
        mine.pts.push(q);
        mine.planes.extend(new_planes);
        mine.sides.extend(new_sides);
        true
    }

    /// The pair truncated to equal sizes, keeping the earliest additions.
    pub(crate) fn balanced(&self) -> (Vec<usize>, Vec<usize>) {
        let m = self.min_len();
        (self.halves[0].pts[..m].to_vec(), self.halves[1].pts[..m].to_vec())
    }
}

/// Searches for a mutually avoiding pair with `min(|A|, |B|) >= target`.
///
/// Returns the first pair reaching the target, otherwise the largest pair
/// seen. The result always has `|A| = |B|` and is verified. Deterministic:
/// parallel passes are reduced in direction order.
pub fn find_avoiding_heuristic(p: &PointSeq, target: usize) -> Result<AvoidingPair> {
    let n = p.len();
    let d = p.dim();
    if n < 2 {
        return Err(Error::Input("need at least two points".into()));
    }
    let mut best = (vec![0], vec![1]);
    let goal = target.min(n / 2);
    if n < 2 * d.max(2) || goal <= 1 {
        return finish(p, best);
    }
    let dirs = directions(n, d, BLOCK_DIRECTIONS);

    // Extreme blocks; the prefix property makes feasibility monotone in m.
    // Chunks are scanned in order so the first success is schedule-free.
    for chunk in dirs.chunks(BLOCK_CHUNK) {
        let found: Vec<(Vec<usize>, usize)> = chunk
            .par_iter()
            .map(|b| {
                let order = p.sweep_order(b);
                let m = largest_block(p, &order, goal);
                (order, m)
            })
            .collect();
        for (order, m) in found {
            if m > best.0.len() {
                best = split_block(&order, m);
            }
        }
        if best.0.len() >= goal {
            return finish(p, best);
        }
    }

    let stride = (dirs.len() / GREEDY_DIRECTIONS).max(1);
    let picked: Vec<&Vec<usize>> = dirs.iter().step_by(stride).collect();
    let greedy: Vec<(Vec<usize>, Vec<usize>)> = picked
        .par_iter()
        .map(|b| {
            let order = p.sweep_order(b);
            let ends = grow_from_ends(p, &order, goal);
            let strips = grow_strips(p, &order, goal);
            if strips.0.len() > ends.0.len() {
                strips
            } else {
                ends
            }
        })
        .collect();
    for cand in greedy {
        if cand.0.len() > best.0.len() {
            best = cand;
            if best.0.len() >= goal {
                break;
            }
        }
    }
    finish(p, best)
}

fn finish(p: &PointSeq, (a, b): (Vec<usize>, Vec<usize>)) -> Result<AvoidingPair> {
    if !mutually_avoiding_idx(p, &a, &b) {
        return Err(Error::Internal("heuristic produced an unverified pair".into()));
    }
    Ok(AvoidingPair {
        a: IndexSet::new(a),
        b: IndexSet::new(b),
        verified: true,
    })
}

/// Base tuples for sweeps: every d-subset when few, else an even stride.
fn directions(n: usize, d: usize, budget: usize) -> Vec<Vec<usize>> {
    let total = binomial(n, d);
    let stride = (total / budget as u128).max(1);
    let mut out = Vec::new();
    let mut i: u128 = 0;
    for_each_combination(n, d, |c| {
        if i.is_multiple_of(stride) {
            out.push(c.to_vec());
        }
        i += 1;
        true
    });
    out
}

fn split_block(order: &[usize], m: usize) -> (Vec<usize>, Vec<usize>) {
    (order[..m].to_vec(), order[order.len() - m..].to_vec())
}

fn largest_block(p: &PointSeq, order: &[usize], cap: usize) -> usize {
    let ok = |m: usize| {
        let (a, b) = split_block(order, m);
        mutually_avoiding_idx(p, &a, &b)
    };
    let (mut lo, mut hi) = (1, (order.len() / 2).min(cap));
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

// Alternately adds the next compatible point from each end of the sweep.
fn grow_from_ends(p: &PointSeq, order: &[usize], goal: usize) -> (Vec<usize>, Vec<usize>) {
    let low: Vec<usize> = order.to_vec();
    let high: Vec<usize> = order.iter().rev().copied().collect();
    alternate(p, [&low, &high], goal)
}

// Strips parallel to the sweep hyperplane: A from the points nearest the
// base hyperplane, B from a parallel band further along the sweep.
fn grow_strips(p: &PointSeq, order: &[usize], goal: usize) -> (Vec<usize>, Vec<usize>) {
    let n = order.len();
    let mut best = (Vec::new(), Vec::new());
    for frac in [1usize, 2, 3] {
        let centre_a = n * frac / 8;
        let centre_b = n - 1 - centre_a;
        let a = by_distance(order, centre_a);
        let b = by_distance(order, centre_b);
        let got = alternate(p, [&a, &b], goal);
        if got.0.len() > best.0.len() {
            best = got;
        }
    }
    best
}

fn by_distance(order: &[usize], centre: usize) -> Vec<usize> {
    let mut pos: Vec<usize> = (0..order.len()).collect();
    pos.sort_by_key(|&i| (i.abs_diff(centre), i));
    pos.into_iter().map(|i| order[i]).collect()
}

fn alternate(p: &PointSeq, cands: [&[usize]; 2], goal: usize) -> (Vec<usize>, Vec<usize>) {
    let mut g = Growth::new(p);
    let mut cursor = [0usize; 2];
    let mut stuck = [false; 2];
    while !(stuck[0] && stuck[1]) && g.min_len() < goal {
        for side in 0..2 {
            if stuck[side] || g.len(side) > g.len(1 - side) {
                continue;
            }
            let list = cands[side];
            let mut added = false;
            while cursor[side] < list.len() {
                let q = list[cursor[side]];
                cursor[side] += 1;
                if g.try_add(side, q) {
                    added = true;
                    break;
                }
            }
            if !added {
                stuck[side] = true;
            }
        }
        if stuck[0] != stuck[1] {
            break;
        }
    }
    g.balanced()
}
