use crate::algebra::ProjectionSpec;
use crate::arrays::{check_dm, collapse, LevelArray};
use crate::error::{Error, Result};

/// First row subset, in lexicographic order, whose collapse is a difference
/// matrix. At most `budget` subsets are examined.
pub fn search_nested_rows(
    d: &LevelArray,
    child_size: usize,
    projection: &ProjectionSpec,
    budget: u64,
) -> Result<Option<Vec<usize>>> {
    search_common_rows(&[(d, projection)], child_size, budget)
}

/// Like [`search_nested_rows`], but the same rows must work for every
/// (matrix, projection) pair at once. All matrices need the same row count.
pub fn search_common_rows(
    ds: &[(&LevelArray, &ProjectionSpec)],
    child_size: usize,
    budget: u64,
) -> Result<Option<Vec<usize>>> {
    if budget == 0 {
        return Err(Error::InvalidParameter("search budget must be positive".into()));
    }
    let Some((first, _)) = ds.first() else {
        return Err(Error::InvalidParameter("nothing to search".into()));
    };
    let n = first.rows();
    if ds.iter().any(|(d, _)| d.rows() != n) {
        return Err(Error::Shape("matrices differ in row count".into()));
    }
    let collapsed = ds
        .iter()
        .map(|(d, p)| collapse(d, &vec![(*p).clone(); d.cols()]))
        .collect::<Result<Vec<_>>>()?;
    if child_size == 0
        || child_size > n
        || ds.iter().any(|(_, p)| child_size % p.target().order() as usize != 0)
    {
        return Ok(None);
    }
    let mut subset: Vec<usize> = (0..child_size).collect();
    let mut tried = 0u64;
    loop {
        if tried == budget {
            return Ok(None);
        }
        tried += 1;
        let mut ok = true;
        for c in &collapsed {
            if !check_dm(&c.subrows(&subset)?)?.is_pass() {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(Some(subset));
        }
        let Some(i) = (0..child_size).rev().find(|&i| subset[i] != i + n - child_size) else {
            return Ok(None);
        };
        subset[i] += 1;
        for j in i + 1..child_size {
            subset[j] = subset[j - 1] + 1;
        }
    }
}
