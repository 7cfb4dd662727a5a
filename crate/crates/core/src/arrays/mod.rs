//! Matrices over group alphabets, nesting, and the brute-force checkers.

mod ops;
mod verify;

pub use ops::{collapse, hconcat, kronecker_add, normalize_dm, reinterpret};
pub use verify::{check_dm, check_nested, check_oa, NestMode, NestStage, Verdict, Violation};

use crate::algebra::{Elem, GroupSpec, ProjectionSpec};
use crate::error::{Error, Result};

/// Optional labels attached to rows, e.g. the field element each row of a
/// multiplication table is indexed by.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowLabels {
    pub group: GroupSpec,
    pub values: Vec<Elem>,
}

/// An n x m matrix whose column j takes values in `alphabets[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelArray {
    rows: usize,
    alphabets: Vec<GroupSpec>,
    data: Vec<Elem>,
    labels: Option<RowLabels>,
}

impl LevelArray {
    /// Row-major constructor; every entry must lie in its column's alphabet.
    pub fn new(alphabets: Vec<GroupSpec>, rows: usize, data: Vec<Elem>) -> Result<Self> {
        let cols = alphabets.len();
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} array",
                data.len()
            )));
        }
        for (k, &e) in data.iter().enumerate() {
            let g = &alphabets[k % cols];
            if !g.contains(e) {
                return Err(Error::ElementOutOfRange { element: e.0, group: g.to_string() });
            }
        }
        Ok(LevelArray { rows, alphabets, data, labels: None })
    }

    /// Builds an array by evaluating `f(row, col)`.
    pub fn from_fn(
        alphabets: Vec<GroupSpec>,
        rows: usize,
        mut f: impl FnMut(usize, usize) -> Elem,
    ) -> Result<Self> {
        let cols = alphabets.len();
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self::new(alphabets, rows, data)
    }

    /// Parses rows of element text, one alphabet per column.
    pub fn from_text<S: AsRef<str>>(alphabets: Vec<GroupSpec>, rows: &[Vec<S>]) -> Result<Self> {
        let cols = alphabets.len();
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::Shape(format!("row has {} entries, expected {cols}", row.len())));
            }
            for (g, t) in alphabets.iter().zip(row) {
                data.push(g.parse(t.as_ref())?);
            }
        }
        Self::new(alphabets, rows.len(), data)
    }

    pub fn with_labels(mut self, labels: RowLabels) -> Result<Self> {
        if labels.values.len() != self.rows {
            return Err(Error::Shape(format!(
                "{} labels for {} rows",
                labels.values.len(),
                self.rows
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for (i, &v) in labels.values.iter().enumerate() {
            if !labels.group.contains(v) {
                return Err(Error::ElementOutOfRange {
                    element: v.0,
                    group: labels.group.to_string(),
                });
            }
            if !seen.insert(v) {
                return Err(Error::DuplicateIndex(i));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.alphabets.len()
    }

    pub fn alphabets(&self) -> &[GroupSpec] {
        &self.alphabets
    }

    pub fn alphabet(&self, col: usize) -> &GroupSpec {
        &self.alphabets[col]
    }

    pub fn labels(&self) -> Option<&RowLabels> {
        self.labels.as_ref()
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> Elem {
        self.data[row * self.cols() + col]
    }

    pub fn row(&self, row: usize) -> &[Elem] {
        let m = self.cols();
        &self.data[row * m..(row + 1) * m]
    }

    pub fn column(&self, col: usize) -> impl Iterator<Item = Elem> + '_ {
        (0..self.rows).map(move |r| self.get(r, col))
    }

    /// The single alphabet shared by all columns, if there is one.
    pub fn common_alphabet(&self) -> Option<&GroupSpec> {
        let first = self.alphabets.first()?;
        self.alphabets.iter().all(|g| g == first).then_some(first)
    }

    /// Row whose label is `label`.
    pub fn row_of_label(&self, label: Elem) -> Option<usize> {
        self.labels.as_ref()?.values.iter().position(|&v| v == label)
    }

    /// Entry text as rendered by the column alphabet.
    pub fn text(&self, row: usize, col: usize) -> String {
        self.alphabets[col].format(self.get(row, col))
    }

    /// Every row rendered as element text.
    pub fn to_text(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| (0..self.cols()).map(|c| self.text(r, c)).collect())
            .collect()
    }

    /// Selected rows, in the order given. Labels are carried along.
    pub fn subrows(&self, rows: &[usize]) -> Result<Self> {
        check_indices(rows, self.rows)?;
        let mut data = Vec::with_capacity(rows.len() * self.cols());
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        let labels = self.labels.as_ref().map(|l| RowLabels {
            group: l.group.clone(),
            values: rows.iter().map(|&r| l.values[r]).collect(),
        });
        Ok(LevelArray { rows: rows.len(), alphabets: self.alphabets.clone(), data, labels })
    }

    /// Selected columns, in the order given.
    pub fn subcols(&self, cols: &[usize]) -> Result<Self> {
        check_indices(cols, self.cols())?;
        let alphabets = cols.iter().map(|&c| self.alphabets[c].clone()).collect();
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            for &c in cols {
                data.push(self.get(r, c));
            }
        }
        Ok(LevelArray { rows: self.rows, alphabets, data, labels: self.labels.clone() })
    }
}

fn check_indices(indices: &[usize], len: usize) -> Result<()> {
    let mut seen = vec![false; len];
    for &i in indices {
        if i >= len {
            return Err(Error::IndexOutOfRange { index: i, len });
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::DuplicateIndex(i));
        }
    }
    Ok(())
}

/// A parent array, the parent rows forming the child, and the per-column
/// projections that collapse the child's levels.
///
/// Used both for nested orthogonal arrays and nested difference matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestedPair {
    parent: LevelArray,
    child_rows: Vec<usize>,
    projections: Vec<ProjectionSpec>,
}

impl NestedPair {
    pub fn new(
        parent: LevelArray,
        child_rows: Vec<usize>,
        projections: Vec<ProjectionSpec>,
    ) -> Result<Self> {
        check_indices(&child_rows, parent.rows())?;
        if projections.len() != parent.cols() {
            return Err(Error::Shape(format!(
                "{} projections for {} columns",
                projections.len(),
                parent.cols()
            )));
        }
        for (p, g) in projections.iter().zip(parent.alphabets()) {
            if p.source() != g {
                return Err(Error::GroupMismatch {
                    expected: g.to_string(),
                    found: p.source().to_string(),
                });
            }
        }
        Ok(NestedPair { parent, child_rows, projections })
    }

    /// Same projection on every column.
    pub fn uniform(parent: LevelArray, child_rows: Vec<usize>, projection: ProjectionSpec) -> Result<Self> {
        let projections = vec![projection; parent.cols()];
        Self::new(parent, child_rows, projections)
    }

    pub fn parent(&self) -> &LevelArray {
        &self.parent
    }

    pub fn child_rows(&self) -> &[usize] {
        &self.child_rows
    }

    pub fn projections(&self) -> &[ProjectionSpec] {
        &self.projections
    }

    /// The child rows before collapsing.
    pub fn child(&self) -> LevelArray {
        self.parent.subrows(&self.child_rows).expect("indices validated")
    }

    /// The child rows after collapsing each column.
    pub fn collapsed_child(&self) -> LevelArray {
        collapse(&self.child(), &self.projections).expect("projections validated")
    }

    /// Keeps only the given columns of the parent (and their projections).
    pub fn restrict_columns(&self, cols: &[usize]) -> Result<Self> {
        let parent = self.parent.subcols(cols)?;
        let projections = cols.iter().map(|&c| self.projections[c].clone()).collect();
        NestedPair::new(parent, self.child_rows.clone(), projections)
    }

    pub fn check(&self, mode: NestMode) -> Result<Verdict> {
        check_nested(self, mode)
    }
}
