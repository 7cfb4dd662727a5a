//! Mixed-level nested arrays: Wang–Wu juxtaposition of Kronecker blocks
//! built from nested orthogonal arrays or nested difference matrices, and
//! the mixed difference-matrix route through paired levels.

mod wang;

pub use wang::{mixed_dm_lemma7, noa_theorem9, MixedDm};

use crate::algebra::{Elem, GroupSpec, ProjectionSpec};
use crate::arrays::{check_dm, check_nested, hconcat, kronecker_add, LevelArray, NestMode, NestedPair};
use crate::error::{Error, Result};

/// One Kronecker block: columns of the base array paired with a matrix.
#[derive(Clone, Copy, Debug)]
pub struct Block<'a, T> {
    pub columns: &'a [usize],
    pub matrix: &'a T,
}

fn check_columns(cols: usize, blocks: &[&[usize]]) -> Result<()> {
    if blocks.is_empty() {
        return Err(Error::InvalidParameter("no blocks".into()));
    }
    let mut seen = vec![false; cols];
    for &c in blocks.iter().flat_map(|b| b.iter()) {
        if c >= cols {
            return Err(Error::IndexOutOfRange { index: c, len: cols });
        }
        if std::mem::replace(&mut seen[c], true) {
            return Err(Error::DuplicateIndex(c));
        }
    }
    if blocks.iter().any(|b| b.is_empty()) {
        return Err(Error::InvalidParameter("empty block".into()));
    }
    Ok(())
}

/// Running-index column: row `i * b + r` holds `order[r]`.
fn b_column(n: usize, b: usize, order: &[u32]) -> Result<LevelArray> {
    let g = GroupSpec::Cyclic(b as u32);
    LevelArray::from_fn(vec![g], n * b, |r, _| Elem(order[r % b]))
}

/// `[A_11 ⊗ D(1) ... A_v1 ⊗ D(v) B_1]` nested with the same blocks built on
/// the child runs of `noa`.
///
/// Every block's columns must share the alphabet of its matrix, and all
/// matrices need the same row count `b`. The optional `B` column is a
/// `b`-level factor that is not collapsed. Both levels are checked before
/// the result is returned.
pub fn ww_from_noas(
    noa: &NestedPair,
    blocks: &[Block<'_, LevelArray>],
    include_b: bool,
) -> Result<NestedPair> {
    let a = noa.parent();
    check_columns(a.cols(), &blocks.iter().map(|b| b.columns).collect::<Vec<_>>())?;
    check_nested(noa, NestMode::Oa)?.require("nested orthogonal array")?;
    let b = blocks[0].matrix.rows();
    let mut parts = Vec::with_capacity(blocks.len() + 1);
    let mut projections = Vec::new();
    for (j, blk) in blocks.iter().enumerate() {
        let d = blk.matrix;
        if d.rows() != b {
            return Err(Error::Shape(format!("block {} has {} rows, expected {b}", j + 1, d.rows())));
        }
        check_dm(d)?.require(&format!("block {} matrix", j + 1))?;
        let sub = a.subcols(blk.columns)?;
        parts.push(kronecker_add(&sub, d)?);
        for &c in blk.columns {
            projections.extend(std::iter::repeat_n(noa.projections()[c].clone(), d.cols()));
        }
    }
    if include_b {
        let order: Vec<u32> = (0..b as u32).collect();
        let col = b_column(a.rows(), b, &order)?;
        projections.push(ProjectionSpec::identity(col.alphabet(0)));
        parts.push(col);
    }
    let parent = hconcat(&parts.iter().collect::<Vec<_>>())?;
    let child = noa.child_rows().iter().flat_map(|&i| i * b..(i + 1) * b).collect();
    let pair = NestedPair::new(parent, child, projections)?;
    check_nested(&pair, NestMode::Oa)?.require("mixed nested array")?;
    Ok(pair)
}

/// `[A_1 ⊗ D_1(1) ... A_v ⊗ D_1(v) B_1]` nested with
/// `[A_1 ⊗ D_2(1) ... A_v ⊗ D_2(v) B_2]`.
///
/// The nested matrices must share their row count and child rows, so that
/// the second array is a row subset of the first. The `B` column is
/// labeled so the child rows of each block carry levels `0..b2` in child
/// order; it collapses by residue onto `b2` levels.
pub fn ww_from_ndms(
    a: &LevelArray,
    blocks: &[Block<'_, NestedPair>],
    include_b: bool,
) -> Result<NestedPair> {
    check_columns(a.cols(), &blocks.iter().map(|b| b.columns).collect::<Vec<_>>())?;
    crate::arrays::check_oa(a).require("orthogonal array")?;
    let first = blocks[0].matrix;
    let b1 = first.parent().rows();
    let rows = first.child_rows();
    let mut parts = Vec::with_capacity(blocks.len() + 1);
    let mut projections = Vec::new();
    for (j, blk) in blocks.iter().enumerate() {
        let ndm = blk.matrix;
        if ndm.parent().rows() != b1 || ndm.child_rows() != rows {
            return Err(Error::Shape(format!(
                "block {} does not share rows with block 1",
                j + 1
            )));
        }
        check_nested(ndm, NestMode::Dm)?.require(&format!("block {} nested matrix", j + 1))?;
        let sub = a.subcols(blk.columns)?;
        parts.push(kronecker_add(&sub, ndm.parent())?);
        for _ in blk.columns {
            projections.extend(ndm.projections().iter().cloned());
        }
    }
    let b2 = rows.len();
    if include_b {
        let mut order = vec![0u32; b1];
        let rest = (0..b1).filter(|r| !rows.contains(r));
        for (level, r) in rows.iter().copied().chain(rest).enumerate() {
            order[r] = level as u32;
        }
        let col = b_column(a.rows(), b1, &order)?;
        projections.push(ProjectionSpec::residue(b1 as u32, b2 as u32)?);
        parts.push(col);
    }
    let parent = hconcat(&parts.iter().collect::<Vec<_>>())?;
    let child = (0..a.rows()).flat_map(|i| rows.iter().map(move |&r| i * b1 + r)).collect();
    let pair = NestedPair::new(parent, child, projections)?;
    check_nested(&pair, NestMode::Oa)?.require("mixed nested array")?;
    Ok(pair)
}

/// All level combinations of `groups`, last factor fastest.
pub fn full_factorial(groups: &[GroupSpec]) -> Result<LevelArray> {
    let n: usize = groups.iter().map(|g| g.order() as usize).product();
    LevelArray::from_fn(groups.to_vec(), n, |r, c| {
        let stride: usize = groups[c + 1..].iter().map(|g| g.order() as usize).product();
        Elem(((r / stride) % groups[c].order() as usize) as u32)
    })
}

/// Full factorial nested with the runs whose levels all lie among the first
/// `|target|` elements of each column, which must map bijectively onto the
/// collapsed alphabet.
pub fn nested_factorial(groups: &[GroupSpec], projections: Vec<ProjectionSpec>) -> Result<NestedPair> {
    let parent = full_factorial(groups)?;
    let child = (0..parent.rows())
        .filter(|&r| parent.row(r).iter().zip(&projections).all(|(e, p)| e.0 < p.target().order()))
        .collect();
    let pair = NestedPair::new(parent, child, projections)?;
    check_nested(&pair, NestMode::Oa)?.require("nested factorial")?;
    Ok(pair)
}
