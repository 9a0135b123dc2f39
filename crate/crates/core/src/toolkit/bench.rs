use num_bigint::BigUint;
use num_integer::Roots;
use rayon::prelude::*;
use std::fs;
use std::io::Write;
use std::path::Path;

use super::generate::{generate, GenKind, GenSpec};
use crate::avoidance::{
    crossing_family_from_avoiding, find_avoiding_heuristic, max_avoiding_bruteforce, max_crossing_family_bruteforce,
    DEFAULT_AVOIDING_CAP, DEFAULT_AVOIDING_CAP_RD, DEFAULT_CROSSING_CAP,
};
use crate::error::{Error, Result};
use crate::geometry::{parse_rational, PointSeq, Rational};
use crate::highdim::crossing_family_rd;

pub const FORMAT_LINE: &str = "# format=1";
pub const COLUMNS: [&str; 12] = [
    "generator",
    "n",
    "d",
    "seed",
    "delta",
    "retries",
    "avoiding_min_size",
    "crossing_size",
    "bound_sqrt_n12",
    "bound_ceil",
    "method",
    "status",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Oracle,
    Heuristic,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::Heuristic => "heuristic",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRow {
    pub generator: GenSpec,
    pub retries: u64,
    pub avoiding_min_size: usize,
    pub crossing_size: usize,
    pub method: Method,
    /// `ok`, or the error that stopped the row.
    pub status: String,
}

/// `sqrt(n / 12)` rounded down to six decimals, as an exact rational.
pub fn sqrt_n12(n: usize) -> Rational {
    let scaled = (BigUint::from(n) * BigUint::from(10u64).pow(12) / BigUint::from(12u32)).sqrt();
    Rational::new(scaled.into(), BigUint::from(10u64).pow(6).into())
}

/// Smallest integer `m` with `m >= sqrt(n / 12)`.
pub fn sqrt_n12_ceil(n: usize) -> usize {
    let mut m = (n / 12).sqrt();
    while 12 * m * m < n {
        m += 1;
    }
    m
}

fn decimal6(r: &Rational) -> String {
    let micro = (r * Rational::from_integer(1_000_000.into())).floor().to_integer();
    let (q, rem) = (&micro / 1_000_000, &micro % 1_000_000);
    format!("{q}.{rem:0>6}")
}

/// One row: largest avoiding pair and crossing family found for the spec.
pub fn bench_row(spec: &GenSpec) -> BenchRow {
    let mut row = BenchRow {
        generator: spec.clone(),
        retries: 0,
        avoiding_min_size: 0,
        crossing_size: 0,
        method: Method::Heuristic,
        status: "ok".into(),
    };
    if let Err(e) = fill(spec, &mut row) {
        row.status = e.to_string().replace(',', ";");
    }
    row
}

fn fill(spec: &GenSpec, row: &mut BenchRow) -> Result<()> {
    let g = generate(spec)?;
    row.retries = g.retries;
    let p: &PointSeq = &g.points;
    if p.len() < 2 {
        return Err(Error::Input("need at least two points".into()));
    }
    let cap = if p.dim() == 2 {
        DEFAULT_AVOIDING_CAP
    } else {
        DEFAULT_AVOIDING_CAP_RD
    };
    let pair = if p.len() <= cap {
        row.method = Method::Oracle;
        max_avoiding_bruteforce(p, cap)?
    } else {
        find_avoiding_heuristic(p, p.len() / 2)?
    };
    row.avoiding_min_size = pair.min_size();
    row.crossing_size = if p.dim() == 2 {
        if p.len() <= DEFAULT_CROSSING_CAP {
            max_crossing_family_bruteforce(p, DEFAULT_CROSSING_CAP)?.len()
        } else {
            crossing_family_from_avoiding(p, &pair)?.len()
        }
    } else {
        crossing_family_rd(p)?.family.len()
    };
    Ok(())
}

/// Rows for all specs, in spec order, computed in parallel.
pub fn bench_rows(specs: &[GenSpec]) -> Vec<BenchRow> {
    specs.par_iter().map(bench_row).collect()
}

pub fn bench_csv(specs: &[GenSpec]) -> Result<String> {
    let rows = bench_rows(specs);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(COLUMNS).map_err(csv_err)?;
    for r in &rows {
        let g = &r.generator;
        let delta = if g.kind == GenKind::PerturbedGrid {
            g.delta.to_string()
        } else {
            String::new()
        };
        w.write_record([
            g.kind.name().to_string(),
            g.n.to_string(),
            g.dim.to_string(),
            g.seed.to_string(),
            delta,
            r.retries.to_string(),
            r.avoiding_min_size.to_string(),
            r.crossing_size.to_string(),
            decimal6(&sqrt_n12(g.n)),
            sqrt_n12_ceil(g.n).to_string(),
            r.method.name().to_string(),
            r.status.clone(),
        ])
        .map_err(csv_err)?;
    }
    let body = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
    Ok(format!(
        "{FORMAT_LINE}\n{}",
        String::from_utf8(body).expect("ascii csv")
    ))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Internal(format!("csv: {e}"))
}

/// Writes the benchmark table to `out`.
pub fn bench(specs: &[GenSpec], out: impl AsRef<Path>) -> Result<()> {
    let text = bench_csv(specs)?;
    let mut f = fs::File::create(out)?;
    f.write_all(text.as_bytes())?;
    Ok(())
}

/// Spec list: one `kind n d seed [delta]` per line, `#` comments allowed.
pub fn parse_bench_specs(text: &str) -> Result<Vec<GenSpec>> {
    let mut specs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let f: Vec<&str> = body.split_whitespace().collect();
        if !(4..=5).contains(&f.len()) {
            return Err(Error::Parse {
                line,
                msg: "expected `kind n d seed [delta]`".into(),
            });
        }
        let bad = |what: &str| Error::Parse {
            line,
            msg: format!("invalid {what}"),
        };
        let kind: GenKind = f[0].parse().map_err(|_| bad("generator"))?;
        let n = f[1].parse().map_err(|_| bad("n"))?;
        let d = f[2].parse().map_err(|_| bad("dimension"))?;
        let seed = f[3].parse().map_err(|_| bad("seed"))?;
        let mut spec = GenSpec::new(kind, n, d, seed);
        if let Some(delta) = f.get(4) {
            spec.delta = parse_rational(delta).ok_or_else(|| bad("delta"))?;
        }
        specs.push(spec);
    }
    Ok(specs)
}

/// Uniform planar sets at the sizes where the bound reaches 1..4, plus
/// perturbed grids and a few spatial sets.
pub fn default_bench_specs() -> Vec<GenSpec> {
    let mut specs = Vec::new();
    for n in [12, 48, 108, 192] {
        for seed in 0..3 {
            specs.push(GenSpec::new(GenKind::Uniform, n, 2, seed));
        }
    }
    for n in [9, 49, 100] {
        specs.push(GenSpec::new(GenKind::PerturbedGrid, n, 2, 0));
    }
    for n in [12, 24] {
        specs.push(GenSpec::new(GenKind::Uniform, n, 3, 0));
    }
    specs
}
