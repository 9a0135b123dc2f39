use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use avoidkit::avoidance::{
    crossing_family_from_avoiding, find_avoiding_heuristic, is_crossing_family, max_avoiding_bruteforce,
    max_crossing_family_bruteforce, mutually_avoiding, AvoidingPair, CrossingFamily, IndexSet, DEFAULT_AVOIDING_CAP,
    DEFAULT_AVOIDING_CAP_RD, DEFAULT_CROSSING_CAP,
};
use avoidkit::fractional::{
    build_regions, fractional_family, support_of, verify_crossing_variant, verify_fractional, FractionalFamily,
    Verdict, DEFAULT_EXHAUSTIVE_CAP,
};
use avoidkit::highdim::crossing_family_rd;
use avoidkit::sametype::{
    default_parts, fractional_rd_with, same_type_partition, same_type_transversals_with, PartitionParts, SameTypeCheck,
    DEFAULT_ORIENT_CAP,
};
use avoidkit::toolkit::{
    bench_csv, default_bench_specs, format_parts, format_points, format_simplices, generate, join, parse_bench_specs,
    parse_index_set, parse_parts, parse_points, parse_simplices, sqrt_n12, svg_string, GenKind, GenSpec, Overlay,
    Report,
};
use avoidkit::{Error, PointSeq, Rational, Result};

use crate::{Check, Io, Outcome};

fn read_input(io: &Io) -> Result<PointSeq> {
    let text = match &io.input {
        Some(path) => fs::read_to_string(path)?,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    parse_points(&text)
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn finish(io: &Io, r: &Report, ok: bool) -> Result<Outcome> {
    emit(&io.output, &r.to_string())?;
    Ok(if ok { Outcome::Ok } else { Outcome::Failed })
}

fn exhaustive_cap(check: &Check) -> u64 {
    if check.exhaustive {
        u64::MAX
    } else {
        DEFAULT_EXHAUSTIVE_CAP
    }
}

fn avoiding_cap(p: &PointSeq) -> usize {
    if p.dim() == 2 {
        DEFAULT_AVOIDING_CAP
    } else {
        DEFAULT_AVOIDING_CAP_RD
    }
}

fn header(r: &mut Report, kind: &str, p: &PointSeq) {
    r.push("kind", kind).push("n", p.len()).push("d", p.dim());
}

fn push_verdict(r: &mut Report, prefix: &str, v: &Verdict) {
    r.push(&format!("{prefix}_method"), v.method.name())
        .push(&format!("{prefix}_checked"), v.checked)
        .push(&format!("{prefix}_seed"), v.seed)
        .push(&format!("{prefix}_passed"), v.passed);
    if let Some((a, b)) = &v.witness {
        r.push(&format!("{prefix}_witness"), format!("{}|{}", join(a), join(b)));
    }
}

fn push_family(r: &mut Report, fam: &FractionalFamily, n: usize) {
    let sizes: Vec<usize> = fam.parts().map(IndexSet::len).collect();
    r.push("k", fam.k)
        .push("a_parts", format_parts(&fam.a_parts))
        .push("b_parts", format_parts(&fam.b_parts))
        .push("part_sizes", join(&sizes))
        .push("epsilon", Rational::new(fam.min_part().into(), n.into()))
        .push("transversals", fam.transversal_count());
}

pub fn gen(
    kind: GenKind,
    n: usize,
    dim: usize,
    seed: u64,
    delta: Option<&str>,
    output: Option<PathBuf>,
) -> Result<Outcome> {
    let mut spec = GenSpec::new(kind, n, dim, seed);
    if let Some(d) = delta {
        spec.delta =
            avoidkit::geometry::parse_rational(d).ok_or_else(|| Error::Input(format!("`{d}` is not a rational")))?;
    }
    let g = generate(&spec)?;
    let text = format!(
        "# {} n={n} d={dim} seed={seed} retries={}\n{}",
        kind.name(),
        g.retries,
        format_points(&g.points)
    );
    emit(&output, &text)?;
    Ok(Outcome::Ok)
}

pub fn find_avoiding(io: &Io, m: Option<usize>, cap: Option<usize>, exhaustive: bool) -> Result<Outcome> {
    let p = read_input(io)?;
    let cap = cap.unwrap_or_else(|| avoiding_cap(&p));
    let (pair, method) = if exhaustive || (m.is_none() && p.len() <= cap) {
        (max_avoiding_bruteforce(&p, cap)?, "exhaustive")
    } else {
        (find_avoiding_heuristic(&p, m.unwrap_or(p.len() / 2))?, "heuristic")
    };
    let mut r = Report::new();
    header(&mut r, "avoiding", &p);
    r.push("method", method)
        .push("a", &pair.a)
        .push("b", &pair.b)
        .push("size", pair.min_size())
        .push("bound_sqrt_n12", sqrt_n12(p.len()))
        .push("verified", pair.verified);
    let reached = m.is_none_or(|m| pair.min_size() >= m);
    if let Some(m) = m {
        r.push("target", m).push("target_reached", reached);
    }
    finish(io, &r, pair.verified && reached)
}

fn push_crossing(r: &mut Report, fam: &CrossingFamily) {
    r.push("size", fam.len())
        .push("simplices", format_simplices(&fam.simplices))
        .push("verified", fam.verified);
}

pub fn find_crossing(io: &Io, cap: Option<usize>, exhaustive: bool) -> Result<Outcome> {
    let p = read_input(io)?;
    if p.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: p.dim(),
        });
    }
    let cap = cap.unwrap_or(DEFAULT_CROSSING_CAP);
    let mut r = Report::new();
    header(&mut r, "crossing", &p);
    let fam = if exhaustive || p.len() <= cap {
        r.push("method", "exhaustive");
        max_crossing_family_bruteforce(&p, cap)?
    } else {
        let pair = find_avoiding_heuristic(&p, p.len() / 2)?;
        r.push("method", "avoiding_pair").push("a", &pair.a).push("b", &pair.b);
        crossing_family_from_avoiding(&p, &pair)?
    };
    push_crossing(&mut r, &fam);
    finish(io, &r, fam.verified)
}

pub fn fractional(io: &Io, k: usize, m: usize, check: &Check) -> Result<Outcome> {
    let p = read_input(io)?;
    let run = fractional_family(&p, k, m)?;
    let cap = exhaustive_cap(check);
    let v = verify_fractional(&p, &run.family, check.trials, cap, check.seed)?;
    let c = verify_crossing_variant(&p, &run.family, check.trials, cap, check.seed)?;
    let mut r = Report::new();
    header(&mut r, "fractional", &p);
    r.push("m", m)
        .push("a", &run.pair.a)
        .push("b", &run.pair.b)
        .push("support_a", join(&run.support.a_prime))
        .push("support_b", join(&run.support.b_prime))
        .push("alpha", join(&run.regions.counts_a))
        .push("beta", join(&run.regions.counts_b))
        .push("chosen_a", join(&run.chosen_a))
        .push("chosen_b", join(&run.chosen_b));
    push_family(&mut r, &run.family, p.len());
    push_verdict(&mut r, "avoid", &v);
    push_verdict(&mut r, "cross", &c);
    r.push("verified", v.passed && c.passed);
    finish(io, &r, v.passed && c.passed)
}

pub fn fractional_rd(io: &Io, k: usize, parts: Option<usize>, check: &Check) -> Result<Outcome> {
    let p = read_input(io)?;
    let k_prime = parts.unwrap_or_else(|| default_parts(k, p.dim()));
    let run = fractional_rd_with(&p, k, k_prime, check.trials, exhaustive_cap(check), check.seed)?;
    let mut r = Report::new();
    header(&mut r, "fractional", &p);
    r.push("parts", k_prime)
        .push("partition_fallback", run.partition.fallback)
        .push("partition_rounds", run.partition.rounds)
        .push("representatives", join(&run.representatives))
        .push("a", &run.pair.a)
        .push("b", &run.pair.b);
    push_family(&mut r, &run.family, p.len());
    push_verdict(&mut r, "avoid", &run.verdict);
    r.push("verified", run.verdict.passed);
    finish(io, &r, run.verdict.passed)
}

pub fn crossing_rd(io: &Io) -> Result<Outcome> {
    let p = read_input(io)?;
    let run = crossing_family_rd(&p)?;
    let mut r = Report::new();
    header(&mut r, "crossing", &p);
    if let Some(pair) = &run.pair {
        r.push("a", &pair.a).push("b", &pair.b);
    }
    r.push("bound", format!("{:.6}", run.bound));
    if let Some(agree) = run.frames_agree {
        r.push("frames_agree", agree);
    }
    for w in &run.warnings {
        r.push("warning", w.replace('\n', " "));
    }
    push_crossing(&mut r, &run.family);
    finish(io, &r, run.family.verified)
}

fn push_check(r: &mut Report, c: &SameTypeCheck) {
    r.push("check_method", c.method)
        .push("check_evaluations", c.evaluations)
        .push("same_type", c.same);
    if let Some(w) = &c.witness {
        r.push("witness", join(w));
    }
}

pub fn sametype_partition(io: &Io, k: usize, seed: u64, exhaustive: bool) -> Result<Outcome> {
    let p = read_input(io)?;
    let run = same_type_partition(&p, k)?;
    let check = if exhaustive {
        same_type_transversals_with(&p, &run.parts, u64::MAX, seed)?
    } else {
        run.check.clone()
    };
    let sizes: Vec<usize> = run.parts.parts.iter().map(IndexSet::len).collect();
    let mut r = Report::new();
    header(&mut r, "partition", &p);
    r.push("k", k)
        .push("parts", format_parts(&run.parts.parts))
        .push("sizes", join(&sizes))
        .push("epsilon", &run.epsilon)
        .push("fallback", run.fallback)
        .push("rounds", run.rounds);
    push_check(&mut r, &check);
    r.push("verified", check.same);
    finish(io, &r, check.same)
}

fn family_of(claim: &Report) -> Result<FractionalFamily> {
    let k: usize = claim
        .require("k")?
        .parse()
        .map_err(|_| Error::Input("`k` is not an integer".into()))?;
    Ok(FractionalFamily {
        a_parts: parse_parts(claim.require("a_parts")?)?,
        b_parts: parse_parts(claim.require("b_parts")?)?,
        k,
    })
}

fn pair_of(claim: &Report) -> Result<(IndexSet, IndexSet)> {
    Ok((
        parse_index_set(claim.require("a")?)?,
        parse_index_set(claim.require("b")?)?,
    ))
}

fn read_claim(path: &Path) -> Result<Report> {
    fs::read_to_string(path)?.parse()
}

pub fn verify(io: &Io, claim: &Path, check: &Check) -> Result<Outcome> {
    let p = read_input(io)?;
    let claim = read_claim(claim)?;
    let kind = claim.require("kind")?.to_string();
    let mut r = Report::new();
    header(&mut r, &kind, &p);
    let ok = match kind.as_str() {
        "avoiding" => {
            let (a, b) = pair_of(&claim)?;
            mutually_avoiding(&p, &a, &b)?
        }
        "crossing" => {
            let fam = parse_simplices(claim.require("simplices")?)?;
            for s in &fam {
                if s.vertices.len() != p.dim() || s.vertices.iter().any(|&v| v >= p.len()) {
                    return Err(Error::Input(format!(
                        "simplex {s} does not fit {} points in dimension {}",
                        p.len(),
                        p.dim()
                    )));
                }
            }
            r.push("size", fam.len());
            is_crossing_family(&p, &fam)
        }
        "fractional" => {
            let fam = family_of(&claim)?;
            let cap = exhaustive_cap(check);
            let v = verify_fractional(&p, &fam, check.trials, cap, check.seed)?;
            push_verdict(&mut r, "avoid", &v);
            let mut ok = v.passed;
            if p.dim() == 2 {
                let c = verify_crossing_variant(&p, &fam, check.trials, cap, check.seed)?;
                push_verdict(&mut r, "cross", &c);
                ok &= c.passed;
            }
            ok
        }
        "partition" => {
            let parts = PartitionParts::new(parse_parts(claim.require("parts")?)?, p.len())?;
            let cap = if check.exhaustive { u64::MAX } else { DEFAULT_ORIENT_CAP };
            let c = same_type_transversals_with(&p, &parts, cap, check.seed)?;
            push_check(&mut r, &c);
            c.same
        }
        other => return Err(Error::Input(format!("unknown report kind `{other}`"))),
    };
    r.push("verified", ok);
    finish(io, &r, ok)
}

pub fn bench(spec: Option<PathBuf>, output: Option<PathBuf>) -> Result<Outcome> {
    let specs = match spec {
        Some(path) => parse_bench_specs(&fs::read_to_string(path)?)?,
        None => default_bench_specs(),
    };
    emit(&output, &bench_csv(&specs)?)?;
    Ok(Outcome::Ok)
}

fn overlays_of(p: &PointSeq, claim: &Report) -> Result<Vec<Overlay>> {
    let kind = claim.require("kind")?;
    let mut out = Vec::new();
    if kind != "partition" && claim.get("a").is_some() {
        let (a, b) = pair_of(claim)?;
        out.push(Overlay::Pair(AvoidingPair::certify(p, a, b)?));
    }
    match kind {
        "crossing" => out.push(Overlay::Crossing(CrossingFamily {
            simplices: parse_simplices(claim.require("simplices")?)?,
            verified: false,
        })),
        "fractional" => {
            if let (Some(ca), Some(cb)) = (claim.get("chosen_a"), claim.get("chosen_b")) {
                let (a, b) = pair_of(claim)?;
                let pair = AvoidingPair::certify(p, a, b)?;
                let regions = build_regions(p, &support_of(p, &pair)?)?;
                let pick = |s: &str, ws: &[avoidkit::fractional::Wedge]| -> Result<Vec<_>> {
                    parse_index_set(s)?
                        .iter()
                        .map(|i| ws.get(i).cloned().ok_or_else(|| Error::Input(format!("no region {i}"))))
                        .collect()
                };
                let mut ws = pick(ca, &regions.a_regions)?;
                ws.extend(pick(cb, &regions.b_regions)?);
                out.push(Overlay::Regions(ws));
            }
            let fam = family_of(claim)?;
            out.push(Overlay::Parts(fam.parts().cloned().collect()));
        }
        "partition" => out.push(Overlay::Parts(parse_parts(claim.require("parts")?)?)),
        _ => {}
    }
    Ok(out)
}

pub fn render(io: &Io, overlays: &[PathBuf]) -> Result<Outcome> {
    let p = read_input(io)?;
    let mut all = Vec::new();
    for path in overlays {
        all.extend(overlays_of(&p, &read_claim(path)?)?);
    }
    emit(&io.output, &svg_string(&p, &all)?)?;
    Ok(Outcome::Ok)
}
