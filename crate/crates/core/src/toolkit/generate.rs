use num_bigint::BigInt;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geometry::{general_position, Point, PointSeq, Rational};

/// Give up on reaching general position after this many retries.
pub const MAX_RETRIES: u64 = 1000;

const UNIT: i64 = 1 << 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenKind {
    Uniform,
    PerturbedGrid,
    Convex,
    MomentCurve,
}

impl GenKind {
    pub fn name(self) -> &'static str {
        match self {
            GenKind::Uniform => "uniform",
            GenKind::PerturbedGrid => "perturbed_grid",
            GenKind::Convex => "convex",
            GenKind::MomentCurve => "moment_curve",
        }
    }
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GenKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "uniform" => Ok(GenKind::Uniform),
            "perturbed_grid" | "grid" => Ok(GenKind::PerturbedGrid),
            "convex" => Ok(GenKind::Convex),
            "moment_curve" | "moment" => Ok(GenKind::MomentCurve),
            other => Err(Error::Input(format!("unknown generator `{other}`"))),
        }
    }
}

/// Parameters of a generated point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub kind: GenKind,
    pub n: usize,
    pub dim: usize,
    pub seed: u64,
    /// Perturbation radius for the grid, in grid units.
    pub delta: Rational,
}

impl GenSpec {
    pub fn new(kind: GenKind, n: usize, dim: usize, seed: u64) -> Self {
        GenSpec {
            kind,
            n,
            dim,
            seed,
            delta: Rational::new(1.into(), 8.into()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Input("n must be at least 1".into()));
        }
        if self.dim == 0 {
            return Err(Error::Input("dimension must be positive".into()));
        }
        if self.kind == GenKind::PerturbedGrid {
            let quarter = Rational::new(1.into(), 4.into());
            if self.delta <= Rational::from_integer(0.into()) || self.delta >= quarter {
                return Err(Error::Input("delta must lie strictly between 0 and 1/4".into()));
            }
        }
        if self.kind == GenKind::Convex && self.dim < 2 {
            return Err(Error::Input("convex position needs dimension at least 2".into()));
        }
        Ok(())
    }
}

/// A generated set together with the number of rejected draws.
#[derive(Clone, Debug)]
pub struct Generated {
    pub points: PointSeq,
    pub retries: u64,
}

/// Deterministic point set for `spec`, always in general position.
///
/// Rejected draws (duplicates or degenerate tuples) are redrawn from the
/// next stream of the seeded generator.
pub fn generate(spec: &GenSpec) -> Result<Generated> {
    spec.validate()?;
    if spec.kind == GenKind::MomentCurve {
        let points = moment_curve(spec.n, spec.dim);
        return Ok(Generated { points, retries: 0 });
    }
    for retry in 0..=MAX_RETRIES {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        rng.set_stream(retry);
        let pts = match spec.kind {
            GenKind::Uniform => uniform(&mut rng, spec.n, spec.dim),
            GenKind::PerturbedGrid => perturbed_grid(&mut rng, spec.n, spec.dim, &spec.delta),
            GenKind::Convex => sphere(&mut rng, spec.n, spec.dim),
            GenKind::MomentCurve => unreachable!(),
        };
        if let Ok(points) = PointSeq::new(spec.dim, pts) {
            if general_position(&points) {
                return Ok(Generated { points, retries: retry });
            }
        }
    }
    Err(Error::Degenerate(format!(
        "no general-position draw for {} n={} d={} after {MAX_RETRIES} retries",
        spec.kind, spec.n, spec.dim
    )))
}

fn dyadic(num: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(UNIT))
}

fn uniform(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Vec<Point> {
    (0..n)
        .map(|_| Point::new((0..d).map(|_| dyadic(rng.next_u32() as i64)).collect()))
        .collect()
}

fn perturbed_grid(rng: &mut ChaCha8Rng, n: usize, d: usize, delta: &Rational) -> Vec<Point> {
    let mut side = 1usize;
    while side.pow(d as u32) < n {
        side += 1;
    }
    // largest j with j / 2^32 < delta
    let scaled = delta * Rational::from_integer(BigInt::from(UNIT));
    let reach = (scaled.ceil().to_integer() - 1i32).try_into().unwrap_or(0i64).max(0);
    (0..n)
        .map(|cell| {
            let mut rest = cell;
            let coords = (0..d)
                .map(|_| {
                    let g = (rest % side) as i64;
                    rest /= side;
                    let e = rng.random_range(-reach..=reach);
                    dyadic(g * UNIT + e)
                })
                .collect::<Vec<_>>();
            Point::new(coords.into_iter().rev().collect())
        })
        .collect()
}

// Inverse stereographic projection of a random lattice point in R^{d-1}
// lands exactly on the unit sphere.
fn sphere(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Vec<Point> {
    let b: i64 = 1 << 14;
    (0..n)
        .map(|_| {
            let a: Vec<i64> = (0..d - 1).map(|_| rng.random_range(-b..=b)).collect();
            let norm: i64 = a.iter().map(|x| x * x).sum();
            let den = BigInt::from(norm + b * b);
            let mut coords: Vec<Rational> = a
                .iter()
                .map(|&x| Rational::new(BigInt::from(2 * x * b), den.clone()))
                .collect();
            coords.push(Rational::new(BigInt::from(norm - b * b), den));
            Point::new(coords)
        })
        .collect()
}

fn moment_curve(n: usize, d: usize) -> PointSeq {
    let rows: Vec<Vec<i64>> = (1..=n as i64)
        .map(|t| (1..=d as u32).map(|e| t.pow(e)).collect())
        .collect();
    PointSeq::new(d, rows.iter().map(|r| Point::from_ints(r)).collect()).expect("distinct parameters")
}
