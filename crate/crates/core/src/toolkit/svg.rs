use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::avoidance::{AvoidingPair, CrossingFamily, IndexSet};
use crate::error::{Error, Result};
use crate::fractional::Wedge;
use crate::geometry::{convex_hull_2d, PointSeq};

/// Something drawn on top of the point set.
#[derive(Clone, Debug)]
pub enum Overlay {
    /// Both hulls and every line spanned by either side.
    Pair(AvoidingPair),
    Crossing(CrossingFamily),
    Regions(Vec<Wedge>),
    Parts(Vec<IndexSet>),
}

const COLOURS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

struct Canvas {
    xs: Vec<f64>,
    ys: Vec<f64>,
    min: [f64; 2],
    max: [f64; 2],
    unit: f64,
}

impl Canvas {
    fn new(p: &PointSeq) -> Canvas {
        let coords: Vec<Vec<f64>> = p.points().iter().map(|q| q.to_f64()).collect();
        let xs: Vec<f64> = coords.iter().map(|c| c[0]).collect();
        // y grows downwards in SVG
        let ys: Vec<f64> = coords.iter().map(|c| -c[1]).collect();
        let lo = |v: &[f64]| v.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = |v: &[f64]| v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let (mut min, mut max) = ([lo(&xs), lo(&ys)], [hi(&xs), hi(&ys)]);
        if !min[0].is_finite() {
            min = [0.0, 0.0];
            max = [1.0, 1.0];
        }
        let span = (max[0] - min[0]).max(max[1] - min[1]).max(1e-9);
        for k in 0..2 {
            min[k] -= 0.05 * span;
            max[k] += 0.05 * span;
        }
        Canvas {
            xs,
            ys,
            min,
            max,
            unit: span / 200.0,
        }
    }

    fn at(&self, i: usize) -> (f64, f64) {
        (self.xs[i], self.ys[i])
    }

    fn polygon(&self, out: &mut String, pts: &[(f64, f64)], colour: &str, opacity: f64) {
        let d: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.6},{y:.6}")).collect();
        writeln!(
            out,
            r#"<polygon points="{}" fill="{colour}" fill-opacity="{opacity:.6}" stroke="{colour}" stroke-width="{:.6}"/>"#,
            d.join(" "),
            self.unit * 0.4
        )
        .unwrap();
    }

    fn segment(&self, out: &mut String, a: (f64, f64), b: (f64, f64), colour: &str, width: f64) {
        writeln!(
            out,
            r#"<line x1="{:.6}" y1="{:.6}" x2="{:.6}" y2="{:.6}" stroke="{colour}" stroke-width="{:.6}"/>"#,
            a.0,
            a.1,
            b.0,
            b.1,
            self.unit * width
        )
        .unwrap();
    }

    fn frame(&self) -> Vec<(f64, f64)> {
        vec![
            (self.min[0], self.min[1]),
            (self.max[0], self.min[1]),
            (self.max[0], self.max[1]),
            (self.min[0], self.max[1]),
        ]
    }

    // The full line through a and b, clipped to the canvas (Liang-Barsky).
    fn line(&self, out: &mut String, a: (f64, f64), b: (f64, f64), colour: &str) {
        let d = [b.0 - a.0, b.1 - a.1];
        let o = [a.0, a.1];
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        for k in 0..2 {
            if d[k] == 0.0 {
                continue;
            }
            let (t0, t1) = ((self.min[k] - o[k]) / d[k], (self.max[k] - o[k]) / d[k]);
            lo = lo.max(t0.min(t1));
            hi = hi.min(t0.max(t1));
        }
        if lo < hi {
            let at = |t: f64| (o[0] + t * d[0], o[1] + t * d[1]);
            self.segment(out, at(lo), at(hi), colour, 0.25);
        }
    }
}

// Sutherland-Hodgman step: the part of `poly` where `f >= 0`.
fn clip(poly: &[(f64, f64)], f: impl Fn((f64, f64)) -> f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let (p, q) = (poly[i], poly[(i + 1) % poly.len()]);
        let (fp, fq) = (f(p), f(q));
        if fp >= 0.0 {
            out.push(p);
        }
        if (fp >= 0.0) != (fq >= 0.0) {
            let t = fp / (fp - fq);
            out.push((p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1)));
        }
    }
    out
}

/// The picture as an SVG document.
pub fn svg_string(p: &PointSeq, overlays: &[Overlay]) -> Result<String> {
    if p.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: p.dim(),
        });
    }
    let c = Canvas::new(p);
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.6} {:.6} {:.6} {:.6}">"#,
        c.min[0],
        c.min[1],
        c.max[0] - c.min[0],
        c.max[1] - c.min[1]
    )
    .unwrap();
    for (layer, overlay) in overlays.iter().enumerate() {
        let colour = COLOURS[layer % COLOURS.len()];
        let second = COLOURS[(layer + 1) % COLOURS.len()];
        writeln!(out, "<g>").unwrap();
        match overlay {
            Overlay::Pair(pair) => {
                for (set, col) in [(&pair.a, colour), (&pair.b, second)] {
                    let s = set.as_slice();
                    for i in 0..s.len() {
                        for j in i + 1..s.len() {
                            c.line(&mut out, c.at(s[i]), c.at(s[j]), col);
                        }
                    }
                    hull(&c, &mut out, p, s, col);
                }
            }
            Overlay::Crossing(fam) => {
                for s in &fam.simplices {
                    if let [u, v] = s.vertices[..] {
                        c.segment(&mut out, c.at(u), c.at(v), colour, 0.6);
                    }
                }
            }
            Overlay::Regions(ws) => {
                for w in ws {
                    let mut poly = c.frame();
                    for con in &w.constraints {
                        let (a, b) = (c.at(con.through.0), c.at(con.through.1));
                        // orientation flips with the y axis
                        let sign = -(con.side.value() as f64);
                        poly = clip(&poly, |q| {
                            sign * ((b.0 - a.0) * (q.1 - a.1) - (b.1 - a.1) * (q.0 - a.0))
                        });
                    }
                    if poly.len() >= 3 {
                        c.polygon(&mut out, &poly, colour, 0.15);
                    }
                }
            }
            Overlay::Parts(parts) => {
                for (j, s) in parts.iter().enumerate() {
                    let col = COLOURS[(layer + j) % COLOURS.len()];
                    hull(&c, &mut out, p, s.as_slice(), col);
                }
            }
        }
        writeln!(out, "</g>").unwrap();
    }
    for i in 0..p.len() {
        let (x, y) = c.at(i);
        writeln!(
            out,
            r#"<circle cx="{x:.6}" cy="{y:.6}" r="{:.6}" fill="black"/>"#,
            c.unit
        )
        .unwrap();
    }
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}

fn hull(c: &Canvas, out: &mut String, p: &PointSeq, s: &[usize], colour: &str) {
    if s.is_empty() {
        return;
    }
    let sub = p.subset(s);
    if let Ok(h) = convex_hull_2d(&sub) {
        let pts: Vec<(f64, f64)> = h.iter().map(|&i| c.at(s[i])).collect();
        c.polygon(out, &pts, colour, 0.2);
    }
}

pub fn render_svg(p: &PointSeq, overlays: &[Overlay], path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, svg_string(p, overlays)?)?;
    Ok(())
}
