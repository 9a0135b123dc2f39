use std::fmt;
use std::str::FromStr;

use crate::avoidance::{IndexSet, Simplex};
use crate::error::{Error, Result};

/// Ordered `key=value` lines.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    entries: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        self.entries.push((key.to_string(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn require(&self, key: &str) -> Result<&str> {
        self.get(key)
            .ok_or_else(|| Error::Input(format!("report has no `{key}` entry")))
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

impl FromStr for Report {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut r = Report::new();
        for (i, raw) in s.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: i + 1,
                msg: format!("expected key=value, found `{line}`"),
            })?;
            r.push(k.trim(), v.trim());
        }
        Ok(r)
    }
}

/// `1,4,7`; the empty string is the empty set.
pub fn parse_index_set(s: &str) -> Result<IndexSet> {
    if s.trim().is_empty() {
        return Ok(IndexSet::new(vec![]));
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Input(format!("`{t}` is not an index")))
        })
        .collect::<Result<Vec<_>>>()
        .map(IndexSet::new)
}

/// Index sets joined by `|`.
pub fn format_parts<'a>(parts: impl IntoIterator<Item = &'a IndexSet>) -> String {
    parts.into_iter().map(|s| s.to_string()).collect::<Vec<_>>().join("|")
}

pub fn parse_parts(s: &str) -> Result<Vec<IndexSet>> {
    s.split('|').map(parse_index_set).collect()
}

/// Simplices as vertex lists joined by `;`, vertices by `-`.
pub fn format_simplices(fam: &[Simplex]) -> String {
    fam.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(";")
}

pub fn parse_simplices(s: &str) -> Result<Vec<Simplex>> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(';')
        .map(|t| {
            t.split('-')
                .map(|v| {
                    v.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Input(format!("`{v}` is not a vertex index")))
                })
                .collect::<Result<Vec<_>>>()
                .map(Simplex::new)
        })
        .collect()
}

pub fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}
