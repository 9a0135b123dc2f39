use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::{parse_rational, Point, PointSeq, Rational};

/// Text form: a `d n` header, then one point per line. `#` starts a comment.
pub fn format_points(p: &PointSeq) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", p.dim(), p.len()).unwrap();
    for pt in p.points() {
        let row: Vec<String> = pt.coords().iter().map(Rational::to_string).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

pub fn parse_points(text: &str) -> Result<PointSeq> {
    let mut header: Option<(usize, usize)> = None;
    let mut points = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        let Some((d, n)) = header else {
            let parsed = match fields.as_slice() {
                [d, n] => d.parse::<usize>().ok().zip(n.parse::<usize>().ok()),
                _ => None,
            };
            match parsed {
                Some((d, n)) if d > 0 => header = Some((d, n)),
                _ => {
                    return Err(Error::Parse {
                        line,
                        msg: format!("expected header `d n`, found `{body}`"),
                    })
                }
            }
            continue;
        };
        if points.len() == n {
            return Err(Error::Parse {
                line,
                msg: format!("more than the {n} points announced in the header"),
            });
        }
        if fields.len() != d {
            return Err(Error::Parse {
                line,
                msg: format!("row {} has {} coordinates, expected {d}", points.len(), fields.len()),
            });
        }
        let coords = fields
            .iter()
            .map(|f| {
                parse_rational(f).ok_or_else(|| Error::Parse {
                    line,
                    msg: format!("`{f}` is not a rational number"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        points.push(Point::new(coords));
    }
    let Some((d, n)) = header else {
        return Err(Error::Parse {
            line: 1,
            msg: "missing header".into(),
        });
    };
    if points.len() != n {
        return Err(Error::Parse {
            line: text.lines().count(),
            msg: format!("header announces {n} points, found {}", points.len()),
        });
    }
    PointSeq::new(d, points)
}

pub fn read_points(path: impl AsRef<Path>) -> Result<PointSeq> {
    parse_points(&fs::read_to_string(path)?)
}

pub fn write_points(p: &PointSeq, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, format_points(p))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toolkit::{generate, GenKind, GenSpec};

    #[test]
    fn round_trip_through_a_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pts.txt");
        for kind in [GenKind::Uniform, GenKind::PerturbedGrid, GenKind::Convex] {
            let p = generate(&GenSpec::new(kind, 20, 2, 4)).unwrap().points;
            write_points(&p, &path).unwrap();
            assert_eq!(read_points(&path).unwrap(), p);
        }
    }

    #[test]
    fn negative_and_fractional_coordinates() {
        let text = "# sample\n2 3\n-1/3 2\n0.25 -7   # trailing comment\n\n5 -2/4\n";
        let p = parse_points(text).unwrap();
        assert_eq!(p.point(2).coord(1), &Rational::new((-1).into(), 2.into()));
        assert_eq!(parse_points(&format_points(&p)).unwrap(), p);
        assert!(format_points(&p).contains("-1/3 2"));
    }

    #[test]
    fn malformed_rows_name_their_line() {
        let err = parse_points("2 2\n1 2\n1 2 3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        assert!(err.to_string().contains("row 1"));
        assert!(matches!(parse_points("2 1\n1 x\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_points("two\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_points("2 3\n1 2\n"), Err(Error::Parse { .. })));
    }
}
