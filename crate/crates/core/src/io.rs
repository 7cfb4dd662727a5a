//! Files: array CSV with a JSON sidecar, design CSV with metadata.
//!
//! An array saved under the prefix `out` becomes `out.csv` (header
//! `c1,...,cm`, canonical element text) and `out.json`
//! ([`ArrayMeta`]). Run numbers in JSON are 1-based, matching the CSV
//! data rows. Every file is written to a temporary sibling and renamed.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::algebra::{GroupSpec, ProjectionSpec};
use crate::arrays::{LevelArray, NestMode, NestedPair, RowLabels};
use crate::error::{Error, Result};
use crate::nsfd::{Design, Jitter, Ranking};

/// What an array file claims to be.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Oa,
    Dm,
    Noa,
    Ndm,
    /// Paired-level matrix, checked as a whole only through its parts.
    Paired,
    None,
}

impl Kind {
    pub fn nested(mode: NestMode) -> Self {
        match mode {
            NestMode::Oa => Kind::Noa,
            NestMode::Dm => Kind::Ndm,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelsDoc {
    pub group: String,
    pub values: Vec<String>,
}

/// JSON sidecar of an array CSV.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrayMeta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    pub kind: Kind,
    pub groups: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub row_labels: Option<LabelsDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub child_runs: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projections: Option<Vec<String>>,
}

/// An array read back from disk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Loaded {
    pub array: LevelArray,
    pub meta: ArrayMeta,
}

impl Loaded {
    /// The nested pair described by the sidecar, if it has nesting data.
    pub fn nested(&self) -> Result<Option<NestedPair>> {
        let (Some(runs), Some(texts)) = (&self.meta.child_runs, &self.meta.projections) else {
            return Ok(None);
        };
        let rows = runs
            .iter()
            .map(|&r| r.checked_sub(1).ok_or_else(|| Error::Format("child runs are 1-based".into())))
            .collect::<Result<Vec<_>>>()?;
        if texts.len() != self.array.cols() {
            return Err(Error::Format(format!("{} projections for {} columns", texts.len(), self.array.cols())));
        }
        let projections = texts
            .iter()
            .zip(self.array.alphabets())
            .map(|(t, g)| ProjectionSpec::parse_for(g, t))
            .collect::<Result<Vec<_>>>()?;
        NestedPair::new(self.array.clone(), rows, projections).map(Some)
    }
}

/// `prefix` with `ext` appended, keeping any dots already in the name.
pub fn with_ext(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Io(format!("{}: {e}", path.display()))
}

/// Writes `bytes` to a temporary file beside `path`, then renames it.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| io_err(path, e))?;
    tmp.write_all(bytes).map_err(|e| io_err(path, e))?;
    tmp.persist(path).map_err(|e| io_err(path, e.error))?;
    Ok(())
}

fn csv_bytes(header: Vec<String>, rows: impl Iterator<Item = Vec<String>>) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let map = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(&header).map_err(map)?;
    for r in rows {
        w.write_record(&r).map_err(map)?;
    }
    w.into_inner().map_err(|e| Error::Io(e.to_string()))
}

pub fn array_csv(a: &LevelArray) -> Result<Vec<u8>> {
    let header = (1..=a.cols()).map(|c| format!("c{c}")).collect();
    csv_bytes(header, (0..a.rows()).map(|r| (0..a.cols()).map(|c| a.text(r, c)).collect()))
}

fn read_records(path: &Path, letter: char) -> Result<Vec<Vec<String>>> {
    let mut rd = csv::Reader::from_path(path).map_err(|e| io_err(path, e))?;
    let header = rd.headers().map_err(|e| io_err(path, e))?.clone();
    for (k, h) in header.iter().enumerate() {
        if h.trim() != format!("{letter}{}", k + 1) {
            return Err(Error::Format(format!("{}: header field {} is {h:?}", path.display(), k + 1)));
        }
    }
    rd.records()
        .enumerate()
        .map(|(k, r)| {
            let r = r.map_err(|e| io_err(path, e))?;
            if r.len() != header.len() {
                return Err(Error::Format(format!("{}: data row {} has {} fields", path.display(), k + 1, r.len())));
            }
            Ok(r.iter().map(|s| s.trim().to_string()).collect())
        })
        .collect()
}

/// Integer columns read without a sidecar are taken over `Z_(max+1)`.
fn infer_groups(records: &[Vec<String>], cols: usize) -> Result<Vec<GroupSpec>> {
    (0..cols)
        .map(|c| {
            let mut max = 0u32;
            for r in records {
                let v: u32 = r[c].parse().map_err(|_| {
                    Error::Format(format!("column c{}: {:?} needs a JSON sidecar naming its group", c + 1, r[c]))
                })?;
                max = max.max(v);
            }
            Ok(GroupSpec::Cyclic(max + 1))
        })
        .collect()
}

/// Reads an array CSV. Without `groups`, every column must hold integers.
pub fn read_array_csv(path: &Path, groups: Option<&[GroupSpec]>) -> Result<LevelArray> {
    let records = read_records(path, 'c')?;
    let cols = records.first().map_or(0, |r| r.len());
    let groups = match groups {
        Some(g) => g.to_vec(),
        None => infer_groups(&records, cols)?,
    };
    if groups.len() != cols {
        return Err(Error::Format(format!("{}: {cols} columns but {} groups", path.display(), groups.len())));
    }
    LevelArray::from_text(groups, &records)
}

fn meta_for(a: &LevelArray, kind: Kind, source: Option<&str>) -> ArrayMeta {
    ArrayMeta {
        source: source.map(String::from),
        kind,
        groups: a.alphabets().iter().map(|g| g.to_string()).collect(),
        row_labels: a.labels().map(|l| LabelsDoc {
            group: l.group.to_string(),
            values: l.values.iter().map(|&e| l.group.format(e)).collect(),
        }),
        child_runs: None,
        projections: None,
    }
}

fn write_pair(prefix: &Path, a: &LevelArray, meta: &ArrayMeta) -> Result<()> {
    let json = serde_json::to_vec_pretty(meta).map_err(|e| Error::Io(e.to_string()))?;
    write_atomic(&with_ext(prefix, "csv"), &array_csv(a)?)?;
    write_atomic(&with_ext(prefix, "json"), &json)
}

/// Saves an array as `<prefix>.csv` and `<prefix>.json`.
pub fn save_array(prefix: &Path, a: &LevelArray, kind: Kind, source: Option<&str>) -> Result<()> {
    write_pair(prefix, a, &meta_for(a, kind, source))
}

/// Saves a nested pair's parent with its child runs and projections.
pub fn save_nested(prefix: &Path, p: &NestedPair, mode: NestMode, source: Option<&str>) -> Result<()> {
    let mut meta = meta_for(p.parent(), Kind::nested(mode), source);
    meta.child_runs = Some(p.child_rows().iter().map(|r| r + 1).collect());
    meta.projections = Some(p.projections().iter().map(|q| q.describe()).collect());
    write_pair(prefix, p.parent(), &meta)
}

/// Loads `<prefix>.csv`, using `<prefix>.json` when present. `prefix` may
/// also name the CSV file itself.
pub fn load(prefix: &Path) -> Result<Loaded> {
    let base = match prefix.extension() {
        Some(e) if e == "csv" || e == "json" => prefix.with_extension(""),
        _ => prefix.to_path_buf(),
    };
    let csv_path = with_ext(&base, "csv");
    let json_path = with_ext(&base, "json");
    if !json_path.exists() {
        let array = read_array_csv(&csv_path, None)?;
        let meta = meta_for(&array, Kind::None, None);
        return Ok(Loaded { array, meta });
    }
    let text = fs::read_to_string(&json_path).map_err(|e| io_err(&json_path, e))?;
    let meta: ArrayMeta = serde_json::from_str(&text).map_err(|e| Error::Format(format!("{}: {e}", json_path.display())))?;
    let groups = meta.groups.iter().map(|g| GroupSpec::parse_spec(g)).collect::<Result<Vec<_>>>()?;
    let mut array = read_array_csv(&csv_path, Some(&groups))?;
    if let Some(l) = &meta.row_labels {
        let group = GroupSpec::parse_spec(&l.group)?;
        let values = l.values.iter().map(|v| group.parse(v)).collect::<Result<Vec<_>>>()?;
        array = array.with_labels(RowLabels { group, values })?;
    }
    Ok(Loaded { array, meta })
}

/// `x` with 12 significant digits, trailing zeros removed.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = (11 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn design_csv(d: &Design) -> Result<Vec<u8>> {
    let header = (1..=d.cols()).map(|c| format!("x{c}")).collect();
    csv_bytes(header, (0..d.rows()).map(|r| d.row(r).iter().map(|&x| sig12(x)).collect()))
}

pub fn read_design_csv(path: &Path) -> Result<Design> {
    let records = read_records(path, 'x')?;
    let cols = records.first().map_or(0, |r| r.len());
    let points = records
        .iter()
        .flatten()
        .map(|s| s.parse::<f64>().map_err(|_| Error::Format(format!("{}: {s:?} is not a number", path.display()))))
        .collect::<Result<Vec<_>>>()?;
    Design::new(records.len(), cols, points)
}

/// Metadata written beside a nested design.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignMeta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    pub ranking: Ranking,
    pub jitter: Jitter,
    pub runs: usize,
    pub levels: Vec<u32>,
    pub child_levels: Vec<u32>,
    pub child_runs: Vec<usize>,
}

pub fn save_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let json = serde_json::to_vec_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    write_atomic(path, &json)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::ndm_theorem3;

    #[test]
    fn sig12_digits() {
        assert_eq!(sig12(0.5), "0.5");
        assert_eq!(sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(sig12(0.0123456789012345), "0.0123456789012");
        assert_eq!(sig12(0.0), "0");
    }

    #[test]
    fn nested_round_trip_with_labels() {
        let dir = tempfile::tempdir().unwrap();
        let prefix = dir.path().join("t3");
        let p = ndm_theorem3(3).unwrap();
        save_nested(&prefix, &p, NestMode::Dm, Some("theorem3 m=3")).unwrap();
        let back = load(&prefix).unwrap();
        assert_eq!(back.meta.kind, Kind::Ndm);
        assert_eq!(back.nested().unwrap().unwrap(), p);
        assert_eq!(load(&with_ext(&prefix, "csv")).unwrap(), back);
    }

    #[test]
    fn integer_csv_without_sidecar() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.csv");
        fs::write(&path, "c1,c2\n0,1\n1,0\n").unwrap();
        let l = load(&path).unwrap();
        assert_eq!(l.array.alphabet(0), &GroupSpec::Cyclic(2));
        assert_eq!(l.nested().unwrap(), None);
        fs::write(&path, "c1,c2\n0,x\n").unwrap();
        assert!(matches!(load(&path), Err(Error::Format(_))));
        fs::write(&path, "a,b\n0,1\n").unwrap();
        assert!(matches!(load(&path), Err(Error::Format(_))));
    }

    #[test]
    fn design_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.csv");
        let d = Design::new(2, 2, vec![0.125, 0.5, 0.875, 1.0 / 3.0]).unwrap();
        write_atomic(&path, &design_csv(&d).unwrap()).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("x1,x2\n0.125,0.5\n"));
        let back = read_design_csv(&path).unwrap();
        assert!((back.get(1, 1) - 1.0 / 3.0).abs() < 1e-12);
    }
}
