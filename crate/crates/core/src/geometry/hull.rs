use super::{Orientation, PointSeq};
use crate::error::{Error, Result};

/// Vertices of the convex hull of a planar sequence, counterclockwise,
/// starting at the lexicographically smallest vertex. Points in the
/// relative interior of hull edges are not vertices.
pub fn convex_hull_2d(p: &PointSeq) -> Result<Vec<usize>> {
    if p.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: p.dim(),
        });
    }
    hull_of(p, &(0..p.len()).collect::<Vec<_>>())
}

/// Hull of the sub-collection `idx` (indices into `p`).
pub(crate) fn hull_of(p: &PointSeq, idx: &[usize]) -> Result<Vec<usize>> {
    if idx.is_empty() {
        return Err(Error::Input("hull of an empty set".into()));
    }
    let mut order = idx.to_vec();
    order.sort_by(|&a, &b| p.point(a).cmp(p.point(b)));
    order.dedup();
    if order.len() <= 2 {
        return Ok(order);
    }
    // Andrew's monotone chain; pops on non-left turns drop collinear points.
    let turn = |a: usize, b: usize, c: usize| p.orient_idx(&[a, b, c]);
    let mut lower: Vec<usize> = Vec::new();
    for &i in &order {
        while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], i) != Orientation::Positive {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in order.iter().rev() {
        while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], i) != Orientation::Positive {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    Ok(lower)
}
