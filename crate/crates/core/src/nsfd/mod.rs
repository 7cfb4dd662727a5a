//! Nested space-filling designs from nested orthogonal arrays.
//!
//! The pipeline is [`relabel`] → [`oa_lhd`] → [`to_design`] →
//! [`extract_nested`], with [`strat_counts`] to inspect the result.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arrays::{check_nested, NestMode, NestedPair};
use crate::error::{Error, Result};

/// A nested array with integer levels `1..=s_j` per column, where the
/// levels collapsing to the same child level are consecutive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeled {
    rows: usize,
    levels: Vec<u32>,
    group_sizes: Vec<u32>,
    data: Vec<u32>,
    child_rows: Vec<usize>,
}

impl Relabeled {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.levels.len()
    }

    /// Number of levels per column.
    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    /// Parent levels per child level, per column.
    pub fn group_sizes(&self) -> &[u32] {
        &self.group_sizes
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.data[row * self.cols() + col]
    }

    pub fn row(&self, row: usize) -> &[u32] {
        let m = self.cols();
        &self.data[row * m..(row + 1) * m]
    }

    pub fn child_rows(&self) -> &[usize] {
        &self.child_rows
    }

    /// Number of collapsed levels per column.
    pub fn child_levels(&self) -> Vec<u32> {
        self.levels.iter().zip(&self.group_sizes).map(|(s, e)| s / e).collect()
    }
}

/// Relabels a nested array with consecutive groups.
///
/// Child levels are taken in index order; group `t` of column `j` gets the
/// labels `t*e_j + 1 ..= (t+1)*e_j`, handed out to the parent levels of the
/// group in index order.
pub fn relabel(p: &NestedPair) -> Result<Relabeled> {
    check_nested(p, NestMode::Oa)?.require("nested orthogonal array")?;
    let a = p.parent();
    let maps: Vec<(Vec<u32>, u32)> = p
        .projections()
        .iter()
        .map(|proj| {
            let e = proj.source().order() / proj.target().order();
            let mut label = vec![0u32; proj.source().order() as usize];
            for (t, fiber) in proj.fibers().iter().enumerate() {
                for (pos, x) in fiber.iter().enumerate() {
                    label[x.index()] = t as u32 * e + pos as u32 + 1;
                }
            }
            (label, e)
        })
        .collect();
    let m = a.cols();
    let data = a.data().iter().enumerate().map(|(k, x)| maps[k % m].0[x.index()]).collect();
    Ok(Relabeled {
        rows: a.rows(),
        levels: a.alphabets().iter().map(|g| g.order()).collect(),
        group_sizes: maps.iter().map(|(_, e)| *e).collect(),
        data,
        child_rows: p.child_rows().to_vec(),
    })
}

/// How the occurrences of a level are ordered into ranks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "seed")]
pub enum Ranking {
    /// In row order.
    RowOrder,
    /// By a keyed pseudo-random value per cell.
    Seeded(u64),
}

/// Where a point sits inside its cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "seed")]
pub enum Jitter {
    Midpoint,
    Uniform(u64),
}

const STREAM_RANK: u64 = 0;
const STREAM_JITTER: u64 = 1;

/// Pseudo-random word for cell `(row, col)` under `seed`, independent of
/// the order in which cells are visited.
fn cell_word(seed: u64, purpose: u64, row: usize, col: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(purpose << 32 | col as u64);
    rng.set_word_pos(row as u128 * 2);
    rng.next_u64()
}

/// Rank matrix of an OA-based Latin hypercube: in each column the `q`
/// occurrences of level `i` become a permutation of `(i-1)q+1 ..= iq`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ranks {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Ranks {
    /// Checks that every column is a permutation of `1..=rows`.
    pub fn new(rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!("{} entries for {rows}x{cols}", data.len())));
        }
        for c in 0..cols {
            let mut seen = vec![false; rows];
            for r in 0..rows {
                let v = data[r * cols + c] as usize;
                if v == 0 || v > rows || std::mem::replace(&mut seen[v - 1], true) {
                    return Err(Error::Shape(format!("column {} is not a permutation of 1..={rows}", c + 1)));
                }
            }
        }
        Ok(Ranks { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.data[row * self.cols + col]
    }
}

pub fn oa_lhd(r: &Relabeled, ranking: Ranking) -> Result<Ranks> {
    let (n, m) = (r.rows(), r.cols());
    let mut data = vec![0u32; n * m];
    for c in 0..m {
        let s = r.levels[c] as usize;
        if n % s != 0 {
            return Err(Error::Shape(format!("{n} rows do not split into {s} levels")));
        }
        let q = n / s;
        let mut rows: Vec<usize> = (0..n).collect();
        match ranking {
            Ranking::RowOrder => rows.sort_by_key(|&i| r.get(i, c)),
            Ranking::Seeded(seed) => {
                rows.sort_by_key(|&i| (r.get(i, c), cell_word(seed, STREAM_RANK, i, c), i))
            }
        }
        for (k, &i) in rows.iter().enumerate() {
            let level = r.get(i, c) as usize;
            if k / q + 1 != level {
                return Err(Error::Shape(format!("level {level} in column {} is unbalanced", c + 1)));
            }
            data[i * m + c] = k as u32 + 1;
        }
    }
    Ranks::new(n, m, data)
}

/// Points in `[0, 1)^m`, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Design {
    rows: usize,
    cols: usize,
    points: Vec<f64>,
}

impl Design {
    pub fn new(rows: usize, cols: usize, points: Vec<f64>) -> Result<Self> {
        if points.len() != rows * cols {
            return Err(Error::Shape(format!("{} values for {rows}x{cols}", points.len())));
        }
        if let Some(x) = points.iter().find(|x| !(0.0..1.0).contains(*x)) {
            return Err(Error::Shape(format!("{x} lies outside [0, 1)")));
        }
        Ok(Design { rows, cols, points })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.points[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.points[row * self.cols..(row + 1) * self.cols]
    }

    pub fn subrows(&self, rows: &[usize]) -> Result<Design> {
        let mut points = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            if r >= self.rows {
                return Err(Error::IndexOutOfRange { index: r, len: self.rows });
            }
            points.extend_from_slice(self.row(r));
        }
        Ok(Design { rows: rows.len(), cols: self.cols, points })
    }

    /// Cell index `floor(x * n)` of every entry; recovers the ranks minus one.
    pub fn cells(&self) -> Vec<usize> {
        let n = self.rows as f64;
        self.points.iter().map(|x| (x * n).floor() as usize).collect()
    }
}

/// `x = (a - 1 + v) / n` with `v = 1/2` or drawn uniformly from `[0, 1)`.
pub fn to_design(ranks: &Ranks, jitter: Jitter) -> Result<Design> {
    let (n, m) = (ranks.rows(), ranks.cols());
    let nf = n as f64;
    let mut points = Vec::with_capacity(n * m);
    for r in 0..n {
        for c in 0..m {
            let a = ranks.get(r, c) as f64;
            let v = match jitter {
                Jitter::Midpoint => 0.5,
                Jitter::Uniform(seed) => (cell_word(seed, STREAM_JITTER, r, c) >> 11) as f64 / (1u64 << 53) as f64,
            };
            let mut x = (a - 1.0 + v) / nf;
            while (x * nf).floor() >= a {
                x = x.next_down();
            }
            while (x * nf).floor() < a - 1.0 {
                x = x.next_up();
            }
            points.push(x);
        }
    }
    Design::new(n, m, points)
}

/// Both point sets of a nested design.
#[derive(Clone, Debug, PartialEq)]
pub struct NestedDesign {
    pub low: Design,
    pub high: Design,
    pub child_rows: Vec<usize>,
}

pub fn extract_nested(d: &Design, p: &NestedPair) -> Result<NestedDesign> {
    let a = p.parent();
    if d.rows() != a.rows() || d.cols() != a.cols() {
        return Err(Error::Shape(format!(
            "design is {}x{}, array is {}x{}",
            d.rows(),
            d.cols(),
            a.rows(),
            a.cols()
        )));
    }
    Ok(NestedDesign {
        low: d.clone(),
        high: d.subrows(p.child_rows())?,
        child_rows: p.child_rows().to_vec(),
    })
}

/// Runs the whole pipeline on a nested array.
pub fn nested_design(p: &NestedPair, ranking: Ranking, jitter: Jitter) -> Result<NestedDesign> {
    let ranks = oa_lhd(&relabel(p)?, ranking)?;
    extract_nested(&to_design(&ranks, jitter)?, p)
}

/// Occupancy of a `g1 × g2` grid by the projection onto two columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratCounts {
    pub grid: (usize, usize),
    /// Row-major, first coordinate slowest.
    pub counts: Vec<usize>,
}

impl StratCounts {
    pub fn is_uniform(&self) -> bool {
        self.counts.windows(2).all(|w| w[0] == w[1])
    }

    pub fn get(&self, i: usize, k: usize) -> usize {
        self.counts[i * self.grid.1 + k]
    }
}

pub fn strat_counts(d: &Design, cols: (usize, usize), grid: (usize, usize)) -> Result<StratCounts> {
    if d.rows() == 0 {
        return Err(Error::Shape("empty design".into()));
    }
    if grid.0 == 0 || grid.1 == 0 {
        return Err(Error::InvalidParameter("grid sizes must be positive".into()));
    }
    for c in [cols.0, cols.1] {
        if c >= d.cols() {
            return Err(Error::IndexOutOfRange { index: c, len: d.cols() });
        }
    }
    let mut counts = vec![0usize; grid.0 * grid.1];
    let bin = |x: f64, g: usize| ((x * g as f64).floor() as usize).min(g - 1);
    for r in 0..d.rows() {
        counts[bin(d.get(r, cols.0), grid.0) * grid.1 + bin(d.get(r, cols.1), grid.1)] += 1;
    }
    Ok(StratCounts { grid, counts })
}

/// Uniformity of one bivariate projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    pub cols: (usize, usize),
    pub grid: (usize, usize),
    pub uniform: bool,
}

/// Checks every column pair of `d` on the grid given by `levels`.
pub fn bivariate_checks(d: &Design, levels: &[u32]) -> Result<Vec<PairCheck>> {
    if levels.len() != d.cols() {
        return Err(Error::Shape(format!("{} grid sizes for {} columns", levels.len(), d.cols())));
    }
    let mut out = Vec::new();
    for j in 0..d.cols() {
        for k in j + 1..d.cols() {
            let grid = (levels[j] as usize, levels[k] as usize);
            let uniform = strat_counts(d, (j, k), grid)?.is_uniform();
            out.push(PairCheck { cols: (j, k), grid, uniform });
        }
    }
    Ok(out)
}
