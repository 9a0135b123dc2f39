//! Exact rational geometric primitives.
//!
//! Every predicate here is decided with exact integer or rational
//! arithmetic. A [`PointSeq`] keeps, next to its rational coordinates, a
//! copy scaled by the common denominator so that index-based orientation
//! queries run on machine integers whenever the magnitudes allow it.

mod det;
mod hull;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use crate::combin::for_each_combination;
use crate::error::{Error, Result};

pub(crate) use det::rational_det_sign;
pub use hull::convex_hull_2d;

/// Exact rational number in canonical form.
pub type Rational = BigRational;

/// Sign of an orientation determinant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Negative,
    Zero,
    Positive,
}

impl Orientation {
    pub fn value(self) -> i8 {
        match self {
            Orientation::Negative => -1,
            Orientation::Zero => 0,
            Orientation::Positive => 1,
        }
    }

    pub fn reversed(self) -> Orientation {
        match self {
            Orientation::Negative => Orientation::Positive,
            Orientation::Zero => Orientation::Zero,
            Orientation::Positive => Orientation::Negative,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Orientation::Zero
    }

    pub(crate) fn of<T: Zero + PartialOrd>(v: &T) -> Orientation {
        let z = T::zero();
        if *v > z {
            Orientation::Positive
        } else if *v < z {
            Orientation::Negative
        } else {
            Orientation::Zero
        }
    }
}

impl From<Ordering> for Orientation {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Orientation::Negative,
            Ordering::Equal => Orientation::Zero,
            Ordering::Greater => Orientation::Positive,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.value())
    }
}

/// A point of R^d with exact coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    coords: Vec<Rational>,
}

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point {
            coords: coords.iter().map(|&c| Rational::from_integer(c.into())).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Rational {
        &self.coords[i]
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    /// Lossy conversion, for rendering only.
    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn sub(&self, other: &Point) -> Vec<Rational> {
        self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect()
    }

    pub fn squared_distance(&self, other: &Point) -> Rational {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| {
                let d = a - b;
                &d * &d
            })
            .fold(Rational::zero(), |acc, v| acc + v)
    }

    /// Arithmetic mean of a nonempty list of points.
    pub fn centroid<'a>(points: impl IntoIterator<Item = &'a Point>) -> Option<Point> {
        let mut it = points.into_iter();
        let first = it.next()?;
        let mut sum = first.coords.clone();
        let mut count = 1u64;
        for p in it {
            for (s, c) in sum.iter_mut().zip(&p.coords) {
                *s += c;
            }
            count += 1;
        }
        let n = Rational::from_integer(count.into());
        Some(Point {
            coords: sum.into_iter().map(|s| s / &n).collect(),
        })
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

// Coordinates scaled by the common denominator of the whole sequence.
// A positive homothety preserves every orientation.
#[derive(Clone, Debug)]
enum Frame {
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

// Largest scaled magnitude for which the fixed-size i128 formulas cannot
// overflow: differences fit in 61 bits for d = 2 and 41 bits for d = 3.
fn small_bound(dim: usize) -> Option<i64> {
    match dim {
        1 | 2 => Some(1 << 60),
        3 => Some(1 << 40),
        _ => None,
    }
}

impl Frame {
    fn build(dim: usize, points: &[Point]) -> Frame {
        let lcm = points
            .iter()
            .flat_map(|p| p.coords.iter())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled: Vec<BigInt> = points
            .iter()
            .flat_map(|p| p.coords.iter())
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        if let Some(bound) = small_bound(dim) {
            let small: Option<Vec<i64>> = scaled.iter().map(|v| v.to_i64().filter(|x| x.abs() < bound)).collect();
            if let Some(small) = small {
                return Frame::Small(small);
            }
        }
        Frame::Big(scaled)
    }
}

/// An ordered sequence of pairwise distinct points of R^d.
#[derive(Clone, Debug)]
pub struct PointSeq {
    dim: usize,
    points: Vec<Point>,
    frame: Frame,
}

impl PartialEq for PointSeq {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.points == other.points
    }
}

impl Eq for PointSeq {}

impl PointSeq {
    pub fn new(dim: usize, points: Vec<Point>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Input("dimension must be positive".into()));
        }
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
        }
        let mut seen = HashSet::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if !seen.insert(p) {
                return Err(Error::Input(format!("point {i} {p} is a duplicate")));
            }
        }
        let frame = Frame::build(dim, &points);
        Ok(PointSeq { dim, points, frame })
    }

    /// Builds a sequence from integer rows; the dimension is taken from the
    /// first row.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let dim = rows.first().map(|r| r.as_ref().len()).unwrap_or(2);
        PointSeq::new(dim, rows.iter().map(|r| Point::from_ints(r.as_ref())).collect())
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

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// The sub-sequence at the given indices, in the given order.
    pub fn subset(&self, indices: &[usize]) -> PointSeq {
        let points: Vec<Point> = indices.iter().map(|&i| self.points[i].clone()).collect();
        let frame = Frame::build(self.dim, &points);
        PointSeq {
            dim: self.dim,
            points,
            frame,
        }
    }

    /// Orientation of the `d + 1` points at `idx`.
    pub fn orient_idx(&self, idx: &[usize]) -> Orientation {
        debug_assert_eq!(idx.len(), self.dim + 1);
        let d = self.dim;
        match &self.frame {
            Frame::Small(c) if d == 2 => {
                let o = 2 * idx[0];
                let (x0, y0) = (c[o] as i128, c[o + 1] as i128);
                let a = [c[2 * idx[1]] as i128 - x0, c[2 * idx[1] + 1] as i128 - y0];
                let b = [c[2 * idx[2]] as i128 - x0, c[2 * idx[2] + 1] as i128 - y0];
                Orientation::of(&det::det2_i128(a, b))
            }
            Frame::Small(c) if d == 3 => {
                let o = 3 * idx[0];
                let base = [c[o] as i128, c[o + 1] as i128, c[o + 2] as i128];
                let col = |k: usize| {
                    let s = 3 * idx[k];
                    [
                        c[s] as i128 - base[0],
                        c[s + 1] as i128 - base[1],
                        c[s + 2] as i128 - base[2],
                    ]
                };
                Orientation::of(&det::det3_i128(col(1), col(2), col(3)))
            }
            Frame::Small(c) if d == 1 => Orientation::of(&(c[idx[1]] as i128 - c[idx[0]] as i128)),
            _ => Orientation::of(&self.orient_value_big(idx)),
        }
    }

    fn scaled_big(&self, i: usize, j: usize) -> BigInt {
        match &self.frame {
            Frame::Small(c) => BigInt::from(c[i * self.dim + j]),
            Frame::Big(c) => c[i * self.dim + j].clone(),
        }
    }

    fn orient_value_big(&self, idx: &[usize]) -> BigInt {
        let d = self.dim;
        let m = (0..d)
            .map(|r| {
                (1..=d)
                    .map(|k| self.scaled_big(idx[k], r) - self.scaled_big(idx[0], r))
                    .collect()
            })
            .collect();
        det::bareiss_det(m)
    }

    /// Indices of all points sorted by their signed offset from the
    /// hyperplane through the `d` points at `base` (ties by index).
    pub(crate) fn sweep_order(&self, base: &[usize]) -> Vec<usize> {
        debug_assert_eq!(base.len(), self.dim);
        let n = self.len();
        let mut idx = base.to_vec();
        idx.push(0);
        let mut order: Vec<usize> = (0..n).collect();
        match &self.frame {
            Frame::Small(c) if self.dim == 2 => {
                let p = |i: usize| [c[2 * i] as i128, c[2 * i + 1] as i128];
                let (o, q) = (p(base[0]), p(base[1]));
                let dir = [q[0] - o[0], q[1] - o[1]];
                let keys: Vec<i128> = (0..n)
                    .map(|i| {
                        let v = p(i);
                        det::det2_i128(dir, [v[0] - o[0], v[1] - o[1]])
                    })
                    .collect();
                order.sort_by_key(|&i| (keys[i], i));
            }
            Frame::Small(c) if self.dim == 3 => {
                let p = |i: usize| [c[3 * i] as i128, c[3 * i + 1] as i128, c[3 * i + 2] as i128];
                let o = p(base[0]);
                let diff = |v: [i128; 3]| [v[0] - o[0], v[1] - o[1], v[2] - o[2]];
                let (u, w) = (diff(p(base[1])), diff(p(base[2])));
                let keys: Vec<i128> = (0..n).map(|i| det::det3_i128(u, w, diff(p(i)))).collect();
                order.sort_by_key(|&i| (keys[i], i));
            }
            _ => {
                let keys: Vec<BigInt> = (0..n)
                    .map(|i| {
                        idx[self.dim] = i;
                        self.orient_value_big(&idx)
                    })
                    .collect();
                order.sort_by(|&a, &b| keys[a].cmp(&keys[b]).then(a.cmp(&b)));
            }
        }
        order
    }
}

/// An affine hyperplane `{ x : normal · x = offset }`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    normal: Vec<Rational>,
    offset: Rational,
}

impl Hyperplane {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Result<Self> {
        if normal.iter().all(|c| c.is_zero()) {
            return Err(Error::Degenerate("hyperplane normal is the zero vector".into()));
        }
        Ok(Hyperplane { normal, offset })
    }

    pub fn normal(&self) -> &[Rational] {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// `normal · p - offset`.
    pub fn eval(&self, p: &Point) -> Rational {
        dot(&self.normal, p.coords()) - &self.offset
    }

    pub fn side(&self, p: &Point) -> Orientation {
        Orientation::of(&self.eval(p))
    }

    /// Scales to a primitive integer normal whose first nonzero entry is
    /// positive. Negation swaps the sides.
    pub fn canonical(&self) -> Hyperplane {
        let lcm = self.normal.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.normal.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        let mut scale = Rational::new(lcm, g);
        if ints.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative()) {
            scale = -scale;
        }
        Hyperplane {
            normal: self.normal.iter().map(|c| c * &scale).collect(),
            offset: &self.offset * &scale,
        }
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.normal.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}] . x = {}", parts.join(", "), self.offset)
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Sign of the `(d+1) x (d+1)` determinant whose first row is all ones and
/// whose column `j` holds the coordinates of `tuple[j]`.
pub fn orient(tuple: &[&Point]) -> Result<Orientation> {
    let Some(first) = tuple.first() else {
        return Err(Error::Input("empty tuple".into()));
    };
    let d = first.dim();
    if tuple.len() != d + 1 {
        return Err(Error::DimensionMismatch {
            expected: d + 1,
            found: tuple.len(),
        });
    }
    if let Some(p) = tuple.iter().find(|p| p.dim() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: p.dim(),
        });
    }
    // Subtracting the first column from the others leaves the difference
    // vectors in the lower-right block.
    let columns: Vec<Vec<Rational>> = tuple[1..].iter().map(|p| p.sub(first)).collect();
    Ok(rational_det_sign(&columns).into())
}

/// True iff no `d + 1` points lie on a common hyperplane.
pub fn general_position(p: &PointSeq) -> bool {
    let d = p.dim();
    if p.len() <= d {
        return affinely_independent(p, &(0..p.len()).collect::<Vec<_>>());
    }
    if let (2, Frame::Small(c)) = (d, &p.frame) {
        return planar_general_position(c);
    }
    for_each_combination(p.len(), d + 1, |t| !p.orient_idx(t).is_zero())
}

// Three points are collinear iff two of them leave a third in the same
// primitive direction, so sorting reduced directions finds every witness.
fn planar_general_position(c: &[i64]) -> bool {
    let n = c.len() / 2;
    let mut dirs = Vec::with_capacity(n);
    for i in 0..n {
        dirs.clear();
        for j in 0..n {
            if j == i {
                continue;
            }
            let (mut x, mut y) = (c[2 * j] - c[2 * i], c[2 * j + 1] - c[2 * i + 1]);
            let g = x.gcd(&y);
            x /= g;
            y /= g;
            if x < 0 || (x == 0 && y < 0) {
                x = -x;
                y = -y;
            }
            dirs.push((x, y));
        }
        dirs.sort_unstable();
        if dirs.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
    }
    true
}

/// Affine independence of at most `d + 1` points of `p`, by rank.
pub(crate) fn affinely_independent(p: &PointSeq, idx: &[usize]) -> bool {
    if idx.len() <= 1 {
        return true;
    }
    let base = p.point(idx[0]);
    let rows: Vec<Vec<Rational>> = idx[1..].iter().map(|&i| p.point(i).sub(base)).collect();
    rank(rows) == idx.len() - 1
}

pub(crate) fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = &row[c] / &pivot[c];
                for (x, y) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x -= y * &f;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Counts of points strictly on the positive side, strictly on the
/// negative side, and on the hyperplane spanned by `h_points`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct SideCounts {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl SideCounts {
    /// All counted points strictly on one side.
    pub fn one_sided(&self) -> bool {
        self.zero == 0 && (self.positive == 0 || self.negative == 0)
    }
}

pub fn side_counts(h_points: &[&Point], q: &[&Point]) -> Result<SideCounts> {
    let Some(first) = h_points.first() else {
        return Err(Error::Input("no hyperplane points".into()));
    };
    let d = first.dim();
    if h_points.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: h_points.len(),
        });
    }
    let rows: Vec<Vec<Rational>> = h_points[1..].iter().map(|p| p.sub(first)).collect();
    if h_points.iter().any(|p| p.dim() != d) || rank(rows) != d - 1 {
        return Err(Error::Degenerate("hyperplane points are affinely dependent".into()));
    }
    let mut counts = SideCounts::default();
    let mut tuple: Vec<&Point> = h_points.to_vec();
    tuple.push(first);
    for p in q {
        tuple[d] = p;
        match orient(&tuple)? {
            Orientation::Positive => counts.positive += 1,
            Orientation::Negative => counts.negative += 1,
            Orientation::Zero => counts.zero += 1,
        }
    }
    Ok(counts)
}

/// Exact intersection of the line through `p` and `q` with `h`.
pub fn line_hyperplane_intersection(p: &Point, q: &Point, h: &Hyperplane) -> Result<Point> {
    if p.dim() != h.dim() || q.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: if p.dim() != h.dim() { p.dim() } else { q.dim() },
        });
    }
    if p == q {
        return Err(Error::Degenerate("line through a single point".into()));
    }
    let dir = q.sub(p);
    let denom = dot(h.normal(), &dir);
    let rest = -h.eval(p);
    if denom.is_zero() {
        return if rest.is_zero() {
            Err(Error::Degenerate("line is contained in the hyperplane".into()))
        } else {
            Err(Error::NoIntersection)
        };
    }
    let s = rest / denom;
    Ok(Point::new(
        p.coords().iter().zip(&dir).map(|(a, v)| a + &s * v).collect(),
    ))
}

/// Parses `p/q`, an integer, or a finite decimal such as `-1.25`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let neg = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        if !int_digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let digits: BigInt = format!("{int_digits}{frac}").parse().ok()?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let v = Rational::new(digits, den);
        return Some(if neg { -v } else { v });
    }
    s.parse::<BigInt>().ok().map(Rational::from_integer)
}
