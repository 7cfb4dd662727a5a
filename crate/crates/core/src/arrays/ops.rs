use super::{check_dm, LevelArray, Verdict};
use crate::algebra::{GroupSpec, ProjectionSpec};
use crate::error::{Error, Result};

/// Applies one projection per column. Column alphabets become the
/// projection targets; row labels are kept.
pub fn collapse(a: &LevelArray, projections: &[ProjectionSpec]) -> Result<LevelArray> {
    if projections.len() != a.cols() {
        return Err(Error::Shape(format!(
            "{} projections for {} columns",
            projections.len(),
            a.cols()
        )));
    }
    for (p, g) in projections.iter().zip(a.alphabets()) {
        if p.source() != g {
            return Err(Error::GroupMismatch { expected: g.to_string(), found: p.source().to_string() });
        }
    }
    let alphabets = projections.iter().map(|p| p.target().clone()).collect();
    let tables: Vec<_> = projections.iter().map(|p| p.table()).collect();
    let m = a.cols();
    let data = a
        .data()
        .iter()
        .enumerate()
        .map(|(k, e)| tables[k % m][e.index()])
        .collect();
    let out = LevelArray::new(alphabets, a.rows(), data)?;
    match a.labels() {
        Some(l) => out.with_labels(l.clone()),
        None => Ok(out),
    }
}

fn shared_alphabet<'a>(a: &'a LevelArray, what: &str) -> Result<&'a GroupSpec> {
    a.common_alphabet()
        .ok_or_else(|| Error::Shape(format!("{what} must have a single alphabet")))
}

/// Additive Kronecker product: block (i, j) is `d` with `a[i, j]` added to
/// every entry. Row `i * b + r` comes from row `i` of `a` and row `r` of `d`;
/// column `j * c + k` likewise.
pub fn kronecker_add(a: &LevelArray, d: &LevelArray) -> Result<LevelArray> {
    let g = shared_alphabet(a, "left factor")?;
    let h = shared_alphabet(d, "right factor")?;
    if g != h {
        return Err(Error::GroupMismatch { expected: g.to_string(), found: h.to_string() });
    }
    let (n, m) = (a.rows(), a.cols());
    let (b, c) = (d.rows(), d.cols());
    let mut data = Vec::with_capacity(n * b * m * c);
    for i in 0..n {
        for r in 0..b {
            for j in 0..m {
                let x = a.get(i, j);
                for k in 0..c {
                    data.push(g.add_unchecked(x, d.get(r, k)));
                }
            }
        }
    }
    LevelArray::new(vec![g.clone(); m * c], n * b, data)
}

/// Subtracts the first column from every column, giving a zero first column.
pub fn normalize_dm(d: &LevelArray) -> Result<LevelArray> {
    if let Verdict::Fail(v) = check_dm(d)? {
        return Err(Error::NotVerified(v.to_string()));
    }
    let g = shared_alphabet(d, "difference matrix")?.clone();
    let m = d.cols();
    LevelArray::from_fn(vec![g.clone(); m], d.rows(), |r, c| g.sub_unchecked(d.get(r, c), d.get(r, 0)))
}

/// Side-by-side juxtaposition of arrays with equal row counts.
pub fn hconcat(parts: &[&LevelArray]) -> Result<LevelArray> {
    let first = parts.first().ok_or_else(|| Error::Shape("nothing to concatenate".into()))?;
    let n = first.rows();
    if let Some(p) = parts.iter().find(|p| p.rows() != n) {
        return Err(Error::Shape(format!("row counts {n} and {} differ", p.rows())));
    }
    let alphabets: Vec<GroupSpec> = parts.iter().flat_map(|p| p.alphabets().iter().cloned()).collect();
    let mut data = Vec::with_capacity(n * alphabets.len());
    for r in 0..n {
        for p in parts {
            data.extend_from_slice(p.row(r));
        }
    }
    LevelArray::new(alphabets, n, data)
}

/// Moves every column to `group` without renumbering. Allowed only when the
/// source and target alphabets add identically on indices.
pub fn reinterpret(a: &LevelArray, group: &GroupSpec) -> Result<LevelArray> {
    for g in a.alphabets() {
        if !g.same_addition(group) {
            return Err(Error::GroupMismatch { expected: group.to_string(), found: g.to_string() });
        }
    }
    LevelArray::new(vec![group.clone(); a.cols()], a.rows(), a.data().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Elem, FieldSpec};
    use crate::arrays::check_oa;

    fn gf(order: u32) -> FieldSpec {
        FieldSpec::of_order(order).unwrap()
    }

    fn mult_table(f: &FieldSpec) -> LevelArray {
        let s = f.order() as usize;
        LevelArray::from_fn(vec![GroupSpec::Field(f.clone()); s], s, |r, c| {
            f.mul(Elem(r as u32), Elem(c as u32)).unwrap()
        })
        .unwrap()
    }

    #[test]
    fn identity_collapse_is_noop() {
        let t = mult_table(&gf(4));
        let id: Vec<_> = t.alphabets().iter().map(ProjectionSpec::identity).collect();
        assert_eq!(collapse(&t, &id).unwrap(), t);
    }

    #[test]
    fn collapse_rejects_wrong_source() {
        let t = mult_table(&gf(4));
        let p = vec![ProjectionSpec::identity(&GroupSpec::Cyclic(4)); 4];
        assert!(collapse(&t, &p).is_err());
    }

    #[test]
    fn kronecker_layout() {
        let z = GroupSpec::Cyclic(3);
        let a = LevelArray::new(vec![z.clone(); 2], 1, vec![Elem(1), Elem(2)]).unwrap();
        let d = LevelArray::new(vec![z.clone()], 2, vec![Elem(0), Elem(1)]).unwrap();
        let k = kronecker_add(&a, &d).unwrap();
        assert_eq!(k.rows(), 2);
        let got: Vec<u32> = k.data().iter().map(|e| e.0).collect();
        assert_eq!(got, [1, 2, 2, 0]);
    }

    #[test]
    fn kronecker_with_zero_column_replicates_rows() {
        let f = gf(2);
        let g = GroupSpec::Field(f);
        let a = LevelArray::from_fn(vec![g.clone(); 3], 4, |r, c| {
            Elem(match c {
                0 => (r >> 1) as u32,
                1 => (r & 1) as u32,
                _ => ((r >> 1) ^ (r & 1)) as u32,
            })
        })
        .unwrap();
        let zero = LevelArray::new(vec![g.clone()], 2, vec![Elem(0); 2]).unwrap();
        let k = kronecker_add(&a, &zero).unwrap();
        for r in 0..8 {
            assert_eq!(k.row(r), a.row(r / 2));
        }
        assert!(check_oa(&k).is_pass());
    }

    #[test]
    fn normalize_zeroes_first_column() {
        let t = mult_table(&gf(4));
        assert_eq!(normalize_dm(&t).unwrap(), t);
        let g = t.alphabet(0).clone();
        let shifted = LevelArray::from_fn(vec![g.clone(); 4], 4, |r, c| g.add(t.get(r, c), Elem(1 + (r as u32 % 3))).unwrap())
            .unwrap();
        let n = normalize_dm(&shifted).unwrap();
        assert!(n.column(0).all(|e| e == Elem(0)));
        assert!(check_dm(&n).unwrap().is_pass());
    }

    #[test]
    fn normalize_rejects_non_dm() {
        let z = GroupSpec::Cyclic(2);
        let d = LevelArray::new(vec![z; 2], 2, vec![Elem(0), Elem(0), Elem(1), Elem(1)]).unwrap();
        assert!(matches!(normalize_dm(&d), Err(Error::NotVerified(_))));
    }

    #[test]
    fn reinterpret_gf4_as_z2z2() {
        let t = mult_table(&gf(4));
        let z22 = GroupSpec::parse_spec("Z2*Z2").unwrap();
        let r = reinterpret(&t, &z22).unwrap();
        assert!(check_dm(&r).unwrap().is_pass());
        assert_eq!(r.text(2, 1), "10");
        assert!(reinterpret(&t, &GroupSpec::Cyclic(4)).is_err());
    }

    #[test]
    fn hconcat_checks_rows() {
        let t = mult_table(&gf(4));
        let h = hconcat(&[&t, &t]).unwrap();
        assert_eq!(h.cols(), 8);
        assert_eq!(h.row(3)[4..], *t.row(3));
        let s = t.subrows(&[0]).unwrap();
        assert!(hconcat(&[&t, &s]).is_err());
    }
}
