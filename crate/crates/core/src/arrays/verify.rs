use std::fmt;

use super::{LevelArray, NestedPair};
use crate::error::{Error, Result};

/// Outcome of a checker. Failures carry the first violation found, scanning
/// column pairs in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Violation),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(v) => Some(v),
        }
    }

    /// Turns a failure into [`Error::NotVerified`] prefixed with `what`.
    pub fn require(self, what: &str) -> Result<()> {
        match self {
            Verdict::Pass => Ok(()),
            Verdict::Fail(v) => Err(Error::NotVerified(format!("{what}: {v}"))),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "PASS"),
            Verdict::Fail(v) => write!(f, "FAIL: {v}"),
        }
    }
}

/// Which half of a nested pair a violation belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NestStage {
    Parent,
    Child,
}

/// Column indices are zero-based; the `Display` form is one-based to match
/// the CSV headers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Row count is not a multiple of the level counts involved.
    Divisibility { columns: Vec<usize>, rows: usize, modulus: u64 },
    /// A single column is unbalanced.
    LevelCount { column: usize, level: String, count: usize, expected: usize },
    /// A pair of columns is not orthogonal.
    PairCount { columns: (usize, usize), levels: (String, String), count: usize, expected: usize },
    /// Column differences are not uniform.
    DifferenceCount { columns: (usize, usize), difference: String, count: usize, expected: usize },
    Nested { stage: NestStage, violation: Box<Violation> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Divisibility { columns, rows, modulus } => {
                let cols: Vec<String> = columns.iter().map(|c| format!("c{}", c + 1)).collect();
                write!(f, "{rows} rows not divisible by {modulus} for column(s) {}", cols.join(","))
            }
            Violation::LevelCount { column, level, count, expected } => write!(
                f,
                "column c{}: level {level} occurs {count} times, expected {expected}",
                column + 1
            ),
            Violation::PairCount { columns, levels, count, expected } => write!(
                f,
                "columns (c{},c{}): level pair ({},{}) occurs {count} times, expected {expected}",
                columns.0 + 1,
                columns.1 + 1,
                levels.0,
                levels.1
            ),
            Violation::DifferenceCount { columns, difference, count, expected } => write!(
                f,
                "columns (c{},c{}): difference {difference} occurs {count} times, expected {expected}",
                columns.0 + 1,
                columns.1 + 1
            ),
            Violation::Nested { stage, violation } => {
                let s = match stage {
                    NestStage::Parent => "parent",
                    NestStage::Child => "collapsed child",
                };
                write!(f, "{s}: {violation}")
            }
        }
    }
}

/// Which checker a nested pair is judged by.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NestMode {
    Oa,
    Dm,
}

/// Strength-two orthogonality with per-column level counts. A single
/// column is checked for balance.
pub fn check_oa(a: &LevelArray) -> Verdict {
    let n = a.rows();
    let m = a.cols();
    if m == 1 {
        let s = a.alphabet(0).order() as usize;
        if n % s != 0 {
            return fail_div(vec![0], n, s as u64);
        }
        let mut counts = vec![0usize; s];
        for e in a.column(0) {
            counts[e.index()] += 1;
        }
        let expected = n / s;
        if let Some(l) = counts.iter().position(|&c| c != expected) {
            return Verdict::Fail(Violation::LevelCount {
                column: 0,
                level: a.alphabet(0).format(crate::algebra::Elem(l as u32)),
                count: counts[l],
                expected,
            });
        }
        return Verdict::Pass;
    }
    let mut counts = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let si = a.alphabet(i).order() as usize;
            let sj = a.alphabet(j).order() as usize;
            if n % (si * sj) != 0 {
                return fail_div(vec![i, j], n, (si * sj) as u64);
            }
            counts.clear();
            counts.resize(si * sj, 0usize);
            for r in 0..n {
                counts[a.get(r, i).index() * sj + a.get(r, j).index()] += 1;
            }
            let expected = n / (si * sj);
            if let Some(k) = counts.iter().position(|&c| c != expected) {
                return Verdict::Fail(Violation::PairCount {
                    columns: (i, j),
                    levels: (
                        a.alphabet(i).format(crate::algebra::Elem((k / sj) as u32)),
                        a.alphabet(j).format(crate::algebra::Elem((k % sj) as u32)),
                    ),
                    count: counts[k],
                    expected,
                });
            }
        }
    }
    Verdict::Pass
}

fn fail_div(columns: Vec<usize>, rows: usize, modulus: u64) -> Verdict {
    Verdict::Fail(Violation::Divisibility { columns, rows, modulus })
}

/// Difference-matrix check over the single alphabet shared by all columns.
/// Every ordered column pair is examined.
pub fn check_dm(d: &LevelArray) -> Result<Verdict> {
    if d.cols() == 0 {
        return Ok(Verdict::Pass);
    }
    let g = d.common_alphabet().ok_or_else(|| {
        let other = d.alphabets().iter().find(|x| *x != d.alphabet(0)).expect("mixed");
        Error::GroupMismatch { expected: d.alphabet(0).to_string(), found: other.to_string() }
    })?;
    let b = d.rows();
    let order = g.order() as usize;
    if b % order != 0 {
        return Ok(fail_div((0..d.cols()).collect(), b, order as u64));
    }
    let expected = b / order;
    let mut counts = vec![0usize; order];
    for i in 0..d.cols() {
        for j in 0..d.cols() {
            if i == j {
                continue;
            }
            counts.fill(0);
            for r in 0..b {
                counts[g.sub_unchecked(d.get(r, i), d.get(r, j)).index()] += 1;
            }
            if let Some(k) = counts.iter().position(|&c| c != expected) {
                return Ok(Verdict::Fail(Violation::DifferenceCount {
                    columns: (i, j),
                    difference: g.format(crate::algebra::Elem(k as u32)),
                    count: counts[k],
                    expected,
                }));
            }
        }
    }
    Ok(Verdict::Pass)
}

/// Checks the parent, then the collapsed child, with the checker for `mode`.
pub fn check_nested(p: &NestedPair, mode: NestMode) -> Result<Verdict> {
    let run = |a: &LevelArray| match mode {
        NestMode::Oa => Ok(check_oa(a)),
        NestMode::Dm => check_dm(a),
    };
    if let Verdict::Fail(v) = run(p.parent())? {
        return Ok(Verdict::Fail(Violation::Nested { stage: NestStage::Parent, violation: Box::new(v) }));
    }
    if let Verdict::Fail(v) = run(&p.collapsed_child())? {
        return Ok(Verdict::Fail(Violation::Nested { stage: NestStage::Child, violation: Box::new(v) }));
    }
    Ok(Verdict::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Elem, FieldSpec, GroupSpec, ProjectionSpec};

    fn z(s: u32) -> GroupSpec {
        GroupSpec::Cyclic(s)
    }

    fn arr(g: GroupSpec, rows: &[&[u32]]) -> LevelArray {
        let m = rows[0].len();
        let data = rows.iter().flat_map(|r| r.iter().map(|&v| Elem(v))).collect();
        LevelArray::new(vec![g; m], rows.len(), data).unwrap()
    }

    #[test]
    fn full_factorial_is_oa() {
        let a = arr(z(2), &[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]);
        assert_eq!(check_oa(&a), Verdict::Pass);
    }

    #[test]
    fn repeated_row_fails_oa() {
        let a = arr(z(2), &[&[0, 0], &[0, 1], &[1, 0], &[0, 0]]);
        let v = check_oa(&a);
        assert_eq!(
            v,
            Verdict::Fail(Violation::PairCount {
                columns: (0, 1),
                levels: ("0".into(), "0".into()),
                count: 2,
                expected: 1
            })
        );
        assert_eq!(v.to_string(), "FAIL: columns (c1,c2): level pair (0,0) occurs 2 times, expected 1");
    }

    #[test]
    fn divisibility_is_a_failure() {
        let a = arr(z(2), &[&[0, 0], &[1, 1]]);
        assert!(matches!(check_oa(&a), Verdict::Fail(Violation::Divisibility { .. })));
        let d = arr(z(3), &[&[0, 0], &[1, 2]]);
        assert!(matches!(check_dm(&d).unwrap(), Verdict::Fail(Violation::Divisibility { .. })));
    }

    #[test]
    fn single_column_balance() {
        assert!(check_oa(&arr(z(2), &[&[0], &[1]])).is_pass());
        assert!(!check_oa(&arr(z(2), &[&[0], &[0]])).is_pass());
    }

    #[test]
    fn small_dm() {
        let d = arr(z(2), &[&[0, 0], &[0, 1]]);
        assert!(check_dm(&d).unwrap().is_pass());
        assert!(!check_dm(&arr(z(4), &[&[0]])).unwrap().is_pass());
        assert!(check_dm(&arr(z(2), &[&[1], &[0]])).unwrap().is_pass());
    }

    #[test]
    fn dm_rejects_mixed_alphabets() {
        let a = LevelArray::new(vec![z(2), z(3)], 1, vec![Elem(0), Elem(0)]).unwrap();
        assert!(matches!(check_dm(&a), Err(Error::GroupMismatch { .. })));
    }

    #[test]
    fn gf4_table_is_dm() {
        let f = FieldSpec::with_modulus_text(2, 2, "x^2+x+1").unwrap();
        let g = GroupSpec::Field(f.clone());
        let d = LevelArray::from_fn(vec![g; 4], 4, |r, c| {
            f.mul(Elem(r as u32), Elem(c as u32)).unwrap()
        })
        .unwrap();
        assert!(check_dm(&d).unwrap().is_pass());
    }

    #[test]
    fn self_nesting() {
        let a = arr(z(2), &[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]);
        let p = NestedPair::uniform(a, vec![0, 1, 2, 3], ProjectionSpec::identity(&z(2))).unwrap();
        assert!(check_nested(&p, NestMode::Oa).unwrap().is_pass());
    }

    #[test]
    fn nested_child_failure_is_tagged() {
        let a = arr(z(2), &[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]);
        let p = NestedPair::uniform(a, vec![0, 1], ProjectionSpec::identity(&z(2))).unwrap();
        match check_nested(&p, NestMode::Oa).unwrap() {
            Verdict::Fail(Violation::Nested { stage: NestStage::Child, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }
}
