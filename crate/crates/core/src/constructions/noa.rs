use super::mult_table;
use super::ndm::ndm_theorem1;
use crate::algebra::{Elem, FieldSpec, GroupSpec, ProjectionSpec};
use crate::arrays::{check_nested, check_oa, kronecker_add, LevelArray, NestMode, NestedPair};
use crate::error::{Error, Result};

fn vector(index: u32, s: u32, k: u32) -> Vec<Elem> {
    let mut rest = index;
    (0..k)
        .map(|_| {
            let e = Elem(rest % s);
            rest /= s;
            e
        })
        .collect()
}

/// Canonical direction vectors (last nonzero coordinate 1) whose
/// coordinates all have index below `bound`, in index order.
fn directions(s: u32, k: u32, bound: u32) -> Vec<Vec<Elem>> {
    (1..s.pow(k))
        .map(|t| vector(t, s, k))
        .filter(|v| v.iter().rev().find(|e| e.0 != 0) == Some(&Elem(1)))
        .filter(|v| v.iter().all(|e| e.0 < bound))
        .collect()
}

fn linear_oa(f: &FieldSpec, k: u32, cols: &[Vec<Elem>]) -> Result<LevelArray> {
    let s = f.order();
    let g = GroupSpec::Field(f.clone());
    let n = (s as u64).pow(k);
    if n > u32::MAX as u64 / 2 {
        return Err(Error::InvalidParameter(format!("{s}^{k} runs is too many")));
    }
    let rows: Vec<Vec<Elem>> = (0..n as u32).map(|i| vector(i, s, k)).collect();
    LevelArray::from_fn(vec![g; cols.len()], rows.len(), |r, c| {
        rows[r]
            .iter()
            .zip(&cols[c])
            .fold(Elem(0), |acc, (&x, &a)| f.add_unchecked(acc, f.mul_unchecked(a, x)))
    })
}

/// OA(s^k, (s^k-1)/(s-1), s) from all linear functionals on F^k.
///
/// Row `i` is the vector whose coordinates are the base-s digits of `i`,
/// first coordinate fastest.
pub fn rao_hamming_oa(f: &FieldSpec, k: u32) -> Result<LevelArray> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k must be at least 2, got {k}")));
    }
    linear_oa(f, k, &directions(f.order(), k, f.order()))
}

/// Nested Rao–Hamming array: the functionals and runs whose coordinates
/// all have degree below u2, collapsed by the modulus projection.
///
/// The result is checked before it is returned.
pub fn qtw_noa(f1: &FieldSpec, f2: &FieldSpec, k: u32) -> Result<NestedPair> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k must be at least 2, got {k}")));
    }
    if f1.p() != f2.p() {
        return Err(Error::InvalidParameter(format!("{f1} and {f2} differ in characteristic")));
    }
    if 2 * f2.u() > f1.u() + 1 || f2.u() >= f1.u() {
        return Err(Error::InvalidParameter(format!(
            "need u2 < u1 and 2*u2 <= u1+1, got u1={}, u2={}",
            f1.u(),
            f2.u()
        )));
    }
    let s = f1.order();
    let bound = f2.order();
    let parent = linear_oa(f1, k, &directions(s, k, bound))?;
    let child: Vec<usize> = (0..parent.rows())
        .filter(|&i| vector(i as u32, s, k).iter().all(|e| e.0 < bound))
        .collect();
    let pair = NestedPair::uniform(parent, child, ProjectionSpec::modulus(f1, f2)?)?;
    check_nested(&pair, NestMode::Oa)?.require("nested Rao–Hamming array")?;
    Ok(pair)
}

/// `A ⊗ D1` nested with `A ⊗ D2`: child rows are the NDM child rows inside
/// every block, blocks in order.
pub fn noa_theorem4(a: &LevelArray, ndm: &NestedPair) -> Result<NestedPair> {
    check_oa(a).require("orthogonal array")?;
    check_nested(ndm, NestMode::Dm)?.require("nested difference matrix")?;
    let parent = kronecker_add(a, ndm.parent())?;
    let b = ndm.parent().rows();
    let child: Vec<usize> = (0..a.rows())
        .flat_map(|i| ndm.child_rows().iter().map(move |&r| i * b + r))
        .collect();
    let projections = (0..a.cols()).flat_map(|_| ndm.projections().iter().cloned()).collect();
    NestedPair::new(parent, child, projections)
}

/// `A1 ⊗ D` nested with `A2 ⊗ D`: every run generated by a child run of
/// the NOA is a child run.
pub fn noa_theorem5(noa: &NestedPair, d: &LevelArray) -> Result<NestedPair> {
    check_nested(noa, NestMode::Oa)?.require("nested orthogonal array")?;
    crate::arrays::check_dm(d)?.require("difference matrix")?;
    let parent = kronecker_add(noa.parent(), d)?;
    let b = d.rows();
    let child: Vec<usize> = noa.child_rows().iter().flat_map(|&i| i * b..(i + 1) * b).collect();
    let projections = noa
        .projections()
        .iter()
        .flat_map(|p| std::iter::repeat_n(p.clone(), d.cols()))
        .collect();
    NestedPair::new(parent, child, projections)
}

/// Rows `(i, j, -(i+j))` over Z_{s1}, `i` outer; the child keeps
/// `i, j < s2` and collapses by residue mod s2.
pub fn zero_sum_noa(s1: u32, s2: u32) -> Result<NestedPair> {
    if s1 < 2 {
        return Err(Error::InvalidParameter(format!("s1 must be at least 2, got {s1}")));
    }
    let proj = ProjectionSpec::residue(s1, s2)?;
    let g = GroupSpec::Cyclic(s1);
    let n = (s1 * s1) as usize;
    let parent = LevelArray::from_fn(vec![g; 3], n, |r, c| {
        let (i, j) = (r as u32 / s1, r as u32 % s1);
        Elem(match c {
            0 => i,
            1 => j,
            _ => (2 * s1 - i - j) % s1,
        })
    })?;
    let child = (0..n).filter(|&r| (r as u32 / s1) < s2 && (r as u32 % s1) < s2).collect();
    NestedPair::uniform(parent, child, proj)
}

/// A larger computer-model array containing a field design on shared
/// columns.
#[derive(Clone, Debug)]
pub struct ValidationPair {
    /// `A ⊗ T` with `T` the whole multiplication table, rows of `T` in the
    /// same cluster order as the nested difference matrix.
    pub full: LevelArray,
    /// The shared columns of `full`, nested with the field design.
    pub nested: NestedPair,
    /// Column indices of `full` carried by `nested`.
    pub shared_columns: Vec<usize>,
}

pub fn validation_pair(m: u32, a: &LevelArray) -> Result<ValidationPair> {
    let ndm = ndm_theorem1(m)?;
    let f = ndm.parent().alphabet(0).as_field().expect("field alphabet").clone();
    let field = GroupSpec::Field(f.clone());
    if a.common_alphabet() != Some(&field) {
        return Err(Error::GroupMismatch {
            expected: field.to_string(),
            found: a.alphabets().first().map(|g| g.to_string()).unwrap_or_default(),
        });
    }
    check_oa(a).require("orthogonal array")?;
    let rows = &ndm.parent().labels().expect("labeled").values;
    let table = mult_table(&f).subrows(&rows.iter().map(|e| e.index()).collect::<Vec<_>>())?;
    let full = kronecker_add(a, &table)?;
    let s = f.order() as usize;
    let width = ndm.parent().cols();
    let shared_columns: Vec<usize> = (0..a.cols()).flat_map(|j| (0..width).map(move |k| j * s + k)).collect();
    let theorem4 = noa_theorem4(a, &ndm)?;
    let nested = NestedPair::new(
        full.subcols(&shared_columns)?,
        theorem4.child_rows().to_vec(),
        theorem4.projections().to_vec(),
    )?;
    Ok(ValidationPair { full, nested, shared_columns })
}
