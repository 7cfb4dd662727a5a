//! Built-in matrices, printed fixtures, and default field polynomials.
//!
//! Stored entries are embedded text files in the [`format`] notation and are
//! checked when loaded. Derived entries are computed from stored ones by
//! column or row selection and level collapsing. Setting `NESTFILL_CATALOG`
//! to a directory makes `<dir>/<name>.txt` take precedence over the
//! embedded copy.

pub mod format;
mod polys;

pub use format::{CheckKind, MatrixDoc};
pub use polys::default_irreducible;

use std::path::PathBuf;

use crate::algebra::{GroupSpec, ProjectionSpec};
use crate::arrays::{check_dm, check_nested, check_oa, collapse, LevelArray, NestMode, NestedPair};
use crate::error::{Error, Result};

/// Environment variable naming an override directory.
pub const CATALOG_ENV: &str = "NESTFILL_CATALOG";

const STORED: &[(&str, &str)] = &[
    ("seberry_12_12_4", include_str!("data/seberry_12_12_4.txt")),
    ("dulmage_12_6_12", include_str!("data/dulmage_12_6_12.txt")),
    ("ex2_d0", include_str!("data/ex2_d0.txt")),
    ("ex2_d2", include_str!("data/ex2_d2.txt")),
    ("ex3_d1", include_str!("data/ex3_d1.txt")),
    ("ex3_phi_d2", include_str!("data/ex3_phi_d2.txt")),
    ("ex4_phi_d2", include_str!("data/ex4_phi_d2.txt")),
    ("ex6_block", include_str!("data/ex6_block.txt")),
    ("ex10_a2", include_str!("data/ex10_a2.txt")),
    ("ex10_phi_d", include_str!("data/ex10_phi_d.txt")),
    ("ex13_d1", include_str!("data/ex13_d1.txt")),
    ("ex13_d2", include_str!("data/ex13_d2.txt")),
    ("ex13_d", include_str!("data/ex13_d.txt")),
    ("table4", include_str!("data/table4.txt")),
];

const DERIVED: &[(&str, &str)] = &[
    ("d_12_6_6", "second components of dulmage_12_6_12, a D(12,6,6) over Z6"),
    ("d_12_4_4", "columns 1, 3, 4, 5 of seberry_12_12_4, a D(12,4,4)"),
    ("d_4_4_2_nested", "d_12_4_4 nested with rows 1, 2, 4, 5 under second-component projection"),
    ("rho3_d_6_6_3", "rows 1, 4, 5, 6, 8, 12 of d_12_6_6 reduced mod 3, a D(6,6,3)"),
    ("ex11_ndm", "d_12_6_6 nested with rows 1, 4, 5, 6, 8, 12 under reduction mod 3"),
];

const SIX_ROWS: [usize; 6] = [0, 3, 4, 5, 7, 11];

/// What an entry holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Array(LevelArray),
    Nested(NestedPair),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    /// `None` for derived entries.
    pub doc: Option<MatrixDoc>,
    pub payload: Payload,
}

impl CatalogEntry {
    /// The array, or the parent of a nested pair.
    pub fn array(&self) -> &LevelArray {
        match &self.payload {
            Payload::Array(a) => a,
            Payload::Nested(p) => p.parent(),
        }
    }

    pub fn nested(&self) -> Option<&NestedPair> {
        match &self.payload {
            Payload::Nested(p) => Some(p),
            Payload::Array(_) => None,
        }
    }

    pub fn is_derived(&self) -> bool {
        self.doc.is_none()
    }
}

/// `(name, description)` of every entry, stored first.
pub fn list() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = STORED
        .iter()
        .map(|(name, text)| {
            let desc = text
                .lines()
                .find_map(|l| l.strip_prefix("# description:"))
                .unwrap_or("")
                .trim()
                .to_string();
            (name.to_string(), desc)
        })
        .collect();
    out.extend(DERIVED.iter().map(|(n, d)| (n.to_string(), d.to_string())));
    out
}

fn override_path(name: &str) -> Option<PathBuf> {
    let dir = std::env::var_os(CATALOG_ENV)?;
    let path = PathBuf::from(dir).join(format!("{name}.txt"));
    path.is_file().then_some(path)
}

fn source(name: &str) -> Result<String> {
    if let Some(path) = override_path(name) {
        return std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())));
    }
    STORED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| t.to_string())
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

/// Parses and checks a matrix file.
pub fn load_text(text: &str) -> Result<MatrixDoc> {
    let doc = format::parse(text)?;
    let verdict = match doc.check {
        CheckKind::None => return Ok(doc),
        CheckKind::Oa => check_oa(&doc.array),
        CheckKind::Dm => check_dm(&doc.array)?,
    };
    verdict.require(&format!("catalog entry {}", doc.name))?;
    Ok(doc)
}

fn stored(name: &str) -> Result<CatalogEntry> {
    let doc = load_text(&source(name)?)?;
    if doc.name != name {
        return Err(Error::Format(format!("file for {name} declares name {}", doc.name)));
    }
    Ok(CatalogEntry {
        name: doc.name.clone(),
        description: doc.description.clone(),
        payload: Payload::Array(doc.array.clone()),
        doc: Some(doc),
    })
}

fn second_component(a: &LevelArray) -> Result<ProjectionSpec> {
    let g = a.common_alphabet().ok_or_else(|| Error::Shape("mixed alphabets".into()))?;
    ProjectionSpec::component(g, 1)
}

/// Computes a derived entry from the stored ones.
pub fn derive(name: &str) -> Result<CatalogEntry> {
    let desc = DERIVED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, d)| d.to_string())
        .ok_or_else(|| Error::UnknownName(name.to_string()))?;
    let array = |n: &str| get(n).map(|e| e.array().clone());
    let payload = match name {
        "d_12_6_6" => {
            let d = array("dulmage_12_6_12")?;
            let p = second_component(&d)?;
            let out = collapse(&d, &vec![p; d.cols()])?;
            check_dm(&out)?.require(name)?;
            Payload::Array(out)
        }
        "d_12_4_4" => {
            let out = array("seberry_12_12_4")?.subcols(&[0, 2, 3, 4])?;
            check_dm(&out)?.require(name)?;
            Payload::Array(out)
        }
        "d_4_4_2_nested" => {
            let d = array("d_12_4_4")?;
            let p = second_component(&d)?;
            let pair = NestedPair::uniform(d, vec![0, 1, 3, 4], p)?;
            check_nested(&pair, NestMode::Dm)?.require(name)?;
            Payload::Nested(pair)
        }
        "rho3_d_6_6_3" => {
            let d = array("d_12_6_6")?.subrows(&SIX_ROWS)?;
            let out = collapse(&d, &vec![ProjectionSpec::residue(6, 3)?; d.cols()])?;
            check_dm(&out)?.require(name)?;
            Payload::Array(out)
        }
        "ex11_ndm" => {
            let pair = NestedPair::uniform(array("d_12_6_6")?, SIX_ROWS.to_vec(), ProjectionSpec::residue(6, 3)?)?;
            check_nested(&pair, NestMode::Dm)?.require(name)?;
            Payload::Nested(pair)
        }
        _ => unreachable!("listed in DERIVED"),
    };
    Ok(CatalogEntry { name: name.to_string(), description: desc, doc: None, payload })
}

/// Looks up a stored or derived entry by name.
pub fn get(name: &str) -> Result<CatalogEntry> {
    if STORED.iter().any(|(n, _)| *n == name) || override_path(name).is_some() {
        stored(name)
    } else {
        derive(name)
    }
}

/// Shorthand for `get(name)?.array().clone()`.
pub fn array(name: &str) -> Result<LevelArray> {
    get(name).map(|e| e.array().clone())
}

/// The six-level group used by the second-component matrices.
pub fn z6() -> GroupSpec {
    GroupSpec::Cyclic(6)
}
