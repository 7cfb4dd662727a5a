//! Plain-text matrix format.
//!
//! ```text
//! # name: ex2_d0
//! # description: GF(4) multiplication table
//! # group: GF(4)
//! # labels: GF(4)
//! # check: dm
//! 0 | 0 0 0 0
//! 1 | 0 1 x x+1
//! ```
//!
//! `group` applies to every column; `groups` lists one alphabet per column.
//! With `labels`, each row starts with its label and a `|`. `offset: k`
//! means entries are written as `index + k` (integer alphabets only).

use std::fmt::Write as _;
use std::str::FromStr;

use crate::algebra::{Elem, GroupSpec};
use crate::arrays::{RowLabels, LevelArray};
use crate::error::{Error, Result};

/// Checker applied when an entry is loaded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    None,
    Oa,
    Dm,
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(CheckKind::None),
            "oa" => Ok(CheckKind::Oa),
            "dm" => Ok(CheckKind::Dm),
            _ => Err(Error::Format(format!("unknown check {s:?}"))),
        }
    }
}

impl CheckKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckKind::None => "none",
            CheckKind::Oa => "oa",
            CheckKind::Dm => "dm",
        }
    }
}

/// A parsed matrix file before any checking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixDoc {
    pub name: String,
    pub description: String,
    pub check: CheckKind,
    pub offset: u32,
    pub columns: Option<Vec<String>>,
    pub array: LevelArray,
}

fn bad(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Format(format!("line {line}: {msg}"))
}

pub fn parse(text: &str) -> Result<MatrixDoc> {
    let mut name = None;
    let mut description = String::new();
    let mut check = CheckKind::None;
    let mut offset = 0u32;
    let mut columns = None;
    let mut group: Option<GroupSpec> = None;
    let mut groups: Option<Vec<GroupSpec>> = None;
    let mut labels: Option<GroupSpec> = None;
    let mut rows: Vec<(usize, Option<String>, Vec<String>)> = Vec::new();

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let t = raw.trim();
        if t.is_empty() {
            continue;
        }
        if let Some(h) = t.strip_prefix('#') {
            let (key, value) = h
                .split_once(':')
                .ok_or_else(|| bad(line, "header needs `key: value`"))?;
            let value = value.trim();
            match key.trim() {
                "name" => name = Some(value.to_string()),
                "description" => description = value.to_string(),
                "check" => check = value.parse().map_err(|e| bad(line, e))?,
                "offset" => offset = value.parse().map_err(|_| bad(line, "offset must be an integer"))?,
                "columns" => columns = Some(value.split_whitespace().map(String::from).collect()),
                "group" => group = Some(GroupSpec::parse_spec(value).map_err(|e| bad(line, e))?),
                "groups" => {
                    groups = Some(
                        value
                            .split_whitespace()
                            .map(GroupSpec::parse_spec)
                            .collect::<Result<_>>()
                            .map_err(|e| bad(line, e))?,
                    )
                }
                "labels" => labels = Some(GroupSpec::parse_spec(value).map_err(|e| bad(line, e))?),
                other => return Err(bad(line, format!("unknown header {other:?}"))),
            }
            continue;
        }
        let (label, cells) = match t.split_once('|') {
            Some((l, rest)) => (Some(l.trim().to_string()), rest),
            None => (None, t),
        };
        if label.is_some() != labels.is_some() {
            return Err(bad(line, "row labels must appear on every row exactly when `labels` is set"));
        }
        rows.push((line, label, cells.split_whitespace().map(String::from).collect()));
    }

    let name = name.ok_or_else(|| Error::Format("missing `name` header".into()))?;
    let width = rows.first().map(|r| r.2.len()).ok_or_else(|| Error::Format(format!("{name}: no rows")))?;
    let alphabets = match (group, groups) {
        (Some(g), None) => vec![g; width],
        (None, Some(gs)) => gs,
        _ => return Err(Error::Format(format!("{name}: give exactly one of `group` or `groups`"))),
    };
    if alphabets.len() != width {
        return Err(Error::Format(format!("{name}: {} alphabets for {width} columns", alphabets.len())));
    }
    if offset > 0 && alphabets.iter().any(|g| !matches!(g, GroupSpec::Cyclic(_))) {
        return Err(Error::Format(format!("{name}: offset needs integer alphabets")));
    }
    let mut data = Vec::with_capacity(rows.len() * width);
    let mut label_values = Vec::new();
    for (line, label, cells) in &rows {
        if cells.len() != width {
            return Err(bad(*line, format!("{} entries, expected {width}", cells.len())));
        }
        for (c, cell) in cells.iter().enumerate() {
            let g = &alphabets[c];
            let e = if offset > 0 {
                cell.parse::<u32>()
                    .ok()
                    .and_then(|v| v.checked_sub(offset))
                    .filter(|&v| g.contains(Elem(v)))
                    .map(Elem)
                    .ok_or_else(|| bad(*line, format!("column {}: {cell:?} is not a level of {g}", c + 1)))?
            } else {
                g.parse(cell).map_err(|e| bad(*line, format!("column {}: {e}", c + 1)))?
            };
            data.push(e);
        }
        if let (Some(l), Some(lg)) = (label, &labels) {
            label_values.push(lg.parse(l).map_err(|e| bad(*line, format!("label: {e}")))?);
        }
    }
    let mut array = LevelArray::new(alphabets, rows.len(), data)?;
    if let Some(g) = labels {
        array = array.with_labels(RowLabels { group: g, values: label_values })?;
    }
    Ok(MatrixDoc { name, description, check, offset, columns, array })
}

pub fn write(doc: &MatrixDoc) -> String {
    let a = &doc.array;
    let mut out = String::new();
    let _ = writeln!(out, "# name: {}", doc.name);
    if !doc.description.is_empty() {
        let _ = writeln!(out, "# description: {}", doc.description);
    }
    match a.common_alphabet() {
        Some(g) => {
            let _ = writeln!(out, "# group: {g}");
        }
        None => {
            let gs: Vec<String> = a.alphabets().iter().map(|g| g.to_string()).collect();
            let _ = writeln!(out, "# groups: {}", gs.join(" "));
        }
    }
    if let Some(l) = a.labels() {
        let _ = writeln!(out, "# labels: {}", l.group);
    }
    if doc.offset > 0 {
        let _ = writeln!(out, "# offset: {}", doc.offset);
    }
    let _ = writeln!(out, "# check: {}", doc.check.as_str());
    if let Some(cols) = &doc.columns {
        let _ = writeln!(out, "# columns: {}", cols.join(" "));
    }
    for r in 0..a.rows() {
        if let Some(l) = a.labels() {
            let _ = write!(out, "{} | ", l.group.format(l.values[r]));
        }
        let cells: Vec<String> = (0..a.cols())
            .map(|c| {
                if doc.offset > 0 {
                    (a.get(r, c).0 + doc.offset).to_string()
                } else {
                    a.text(r, c)
                }
            })
            .collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "# name: t\n# group: GF(4)\n# labels: GF(4)\n# check: dm\n0 | 0 0\n1 | 0 1\nx | 0 x\nx+1 | 0 x+1\n";

    #[test]
    fn round_trip() {
        let d = parse(SAMPLE).unwrap();
        assert_eq!((d.array.rows(), d.array.cols()), (4, 2));
        assert_eq!(d.check, CheckKind::Dm);
        assert_eq!(parse(&write(&d)).unwrap(), d);
    }

    #[test]
    fn offset_levels() {
        let d = parse("# name: t\n# group: Z3\n# offset: 1\n1 3\n2 1\n").unwrap();
        assert_eq!(d.array.get(0, 1), Elem(2));
        assert!(write(&d).contains("\n1 3\n"));
        assert!(parse("# name: t\n# group: Z3\n# offset: 1\n0 3\n").is_err());
    }

    #[test]
    fn errors_name_the_line() {
        let e = parse("# name: t\n# group: GF(4)\n0 0\n0 y\n").unwrap_err();
        assert!(e.to_string().contains("line 4"), "{e}");
        assert!(parse("# name: t\n# group: Z2\n0 0\n0\n").is_err());
        assert!(parse("# group: Z2\n0 0\n").is_err());
        assert!(parse("# name: t\n# group: Z2\n# labels: Z2\n0 0\n").is_err());
    }
}
