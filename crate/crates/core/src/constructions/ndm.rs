use super::{label_sequence, monomial, shifted};
use crate::algebra::{Elem, FieldSpec, GroupSpec, ProjectionSpec};
use crate::arrays::{LevelArray, NestedPair, RowLabels};
use crate::error::{Error, Result};

/// The full multiplication table, rows and columns in index order.
pub fn mult_table(f: &FieldSpec) -> LevelArray {
    let all: Vec<Elem> = f.elements().collect();
    table_block(f, &all, &all)
}

/// Rows `rows` and columns `cols` of the multiplication table, with the
/// row elements attached as labels.
pub fn table_block(f: &FieldSpec, rows: &[Elem], cols: &[Elem]) -> LevelArray {
    let g = GroupSpec::Field(f.clone());
    LevelArray::from_fn(vec![g.clone(); cols.len()], rows.len(), |r, c| f.mul_unchecked(rows[r], cols[c]))
        .and_then(|a| a.with_labels(RowLabels { group: g, values: rows.to_vec() }))
        .expect("field products lie in the field")
}

fn need_m(m: u32) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("m must be at least 2, got {m}")));
    }
    Ok(())
}

/// Rows are the clusters `offset + r_{m-2}` in the order given; the child is
/// formed by the clusters listed in `child`.
fn clustered(
    f: &FieldSpec,
    g: &FieldSpec,
    m: u32,
    offsets: &[Elem],
    child: &[usize],
    col_degree: i32,
) -> Result<NestedPair> {
    let r = label_sequence(f, m as i32 - 2);
    let rows: Vec<Elem> = offsets.iter().flat_map(|&o| shifted(f, o, &r)).collect();
    let cols = label_sequence(f, col_degree);
    let parent = table_block(f, &rows, &cols);
    let len = r.len();
    let child_rows: Vec<usize> = child.iter().flat_map(|&c| c * len..(c + 1) * len).collect();
    NestedPair::uniform(parent, child_rows, ProjectionSpec::truncation(f, g)?)
}

fn offsets(f: &FieldSpec, m: u32, wide: bool) -> Vec<Elem> {
    let xm = monomial(f, m);
    let xm1 = monomial(f, m - 1);
    let low = [Elem(0), xm, xm1, f.add_unchecked(xm, xm1)];
    if !wide {
        return low.to_vec();
    }
    let top = monomial(f, m + 1);
    low.iter().copied().chain(low.iter().map(|&e| f.add_unchecked(top, e))).collect()
}

/// Columns r_1 of the table of GF(2^{m+1}), rows in four clusters, child
/// from the first and last cluster, collapsed by truncation onto GF(2^m).
pub fn ndm_theorem1(m: u32) -> Result<NestedPair> {
    need_m(m)?;
    let f = FieldSpec::new(2, m + 1, None)?;
    let g = FieldSpec::new(2, m, None)?;
    let off = offsets(&f, m, false);
    clustered(&f, &g, m, &off, &[0, 3], 1)
}

/// Columns r_1 of the table of GF(2^{m+2}), eight clusters, child from the
/// first and last cluster, collapsed onto GF(2^m).
pub fn ndm_theorem2(m: u32) -> Result<NestedPair> {
    need_m(m)?;
    let f = FieldSpec::new(2, m + 2, None)?;
    let g = FieldSpec::new(2, m, None)?;
    let off = offsets(&f, m, true);
    clustered(&f, &g, m, &off, &[0, 7], 1)
}

/// Moduli used by the r_2 families where the default polynomial does not
/// give a nested matrix.
const R2_MODULI: &[(u32, &str)] = &[(5, "x^5+x^4+x^3+x^2+1"), (6, "x^6+x^3+1")];

/// Field used by [`ndm_theorem3`] and [`ndm_sec34`] for GF(2^u).
pub fn r2_field(u: u32) -> Result<FieldSpec> {
    match R2_MODULI.iter().find(|(v, _)| *v == u) {
        Some((_, text)) => FieldSpec::with_modulus_text(2, u, text),
        None => FieldSpec::new(2, u, None),
    }
}

/// Columns r_2 of the table of GF(2^{m+2}), eight clusters, child from
/// clusters 1, 4, 5 and 8, collapsed onto GF(2^m).
///
/// Whether the child collapses to a difference matrix depends on the field
/// polynomial; see [`r2_field`] for the default, or use
/// [`ndm_theorem3_over`] to pick one.
pub fn ndm_theorem3(m: u32) -> Result<NestedPair> {
    need_m(m)?;
    ndm_theorem3_over(m, &r2_field(m + 2)?)
}

pub fn ndm_theorem3_over(m: u32, f: &FieldSpec) -> Result<NestedPair> {
    need_m(m)?;
    if f.p() != 2 || f.u() != m + 2 {
        return Err(Error::InvalidParameter(format!("{f} is not GF(2^{})", m + 2)));
    }
    let g = FieldSpec::new(2, m, None)?;
    let off = offsets(f, m, true);
    clustered(f, &g, m, &off, &[0, 3, 4, 7], 2)
}

/// The two GF(32) to GF(4) instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sec34Variant {
    /// 8 columns, 8 child rows.
    A,
    /// 16 columns, 16 child rows.
    B,
}

fn rows_by_label(parent: &LevelArray, f: &FieldSpec, labels: &[&str]) -> Result<Vec<usize>> {
    labels
        .iter()
        .map(|t| {
            let e = f.parse(t)?;
            parent
                .row_of_label(e)
                .ok_or_else(|| Error::InvalidParameter(format!("no row labeled {t}")))
        })
        .collect()
}

/// GF(32) to GF(4) nesting over the field from [`r2_field`].
pub fn ndm_sec34(variant: Sec34Variant) -> Result<NestedPair> {
    ndm_sec34_over(variant, &r2_field(5)?)
}

pub fn ndm_sec34_over(variant: Sec34Variant, f: &FieldSpec) -> Result<NestedPair> {
    if f.p() != 2 || f.u() != 5 {
        return Err(Error::InvalidParameter(format!("{f} is not GF(32)")));
    }
    let g = FieldSpec::new(2, 2, None)?;
    let all: Vec<Elem> = f.elements().collect();
    let (degree, labels): (i32, &[&str]) = match variant {
        Sec34Variant::A => (
            2,
            &["0", "1", "x^3+x", "x^3+x+1", "x^4", "x^4+1", "x^4+x^3+x", "x^4+x^3+x+1"],
        ),
        Sec34Variant::B => (
            3,
            &[
                "0", "1", "x^2+x", "x^2+x+1", "x^3+x^2", "x^3+x^2+1", "x^3+x", "x^3+x+1",
                "x^4+x^2", "x^4+x^2+1", "x^4+x", "x^4+x+1", "x^4+x^3", "x^4+x^3+1",
                "x^4+x^3+x^2+x", "x^4+x^3+x^2+x+1",
            ],
        ),
    };
    let parent = table_block(f, &all, &label_sequence(f, degree));
    let child = rows_by_label(&parent, f, labels)?;
    NestedPair::uniform(parent, child, ProjectionSpec::truncation(f, &g)?)
}

/// The two characteristic-3 instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum P3Instance {
    Gf27ToGf9,
    Gf81ToGf27,
}

/// Columns r_1 of the table of GF(27) or GF(81), rows in index order, child
/// from three cosets of r_{m-2}, collapsed by truncation.
pub fn ndm_p3(instance: P3Instance) -> Result<NestedPair> {
    let (f, g, base, offs): (FieldSpec, FieldSpec, i32, [&str; 3]) = match instance {
        P3Instance::Gf27ToGf9 => (
            FieldSpec::with_modulus_text(3, 3, "x^3+2x+1")?,
            FieldSpec::with_modulus_text(3, 2, "x^2+x+2")?,
            0,
            ["0", "2x^2+x", "x^2+2x"],
        ),
        P3Instance::Gf81ToGf27 => (
            FieldSpec::with_modulus_text(3, 4, "x^4+x+2")?,
            FieldSpec::with_modulus_text(3, 3, "x^3+2x+1")?,
            1,
            ["0", "2x^3+x^2", "x^3+2x^2"],
        ),
    };
    let all: Vec<Elem> = f.elements().collect();
    let parent = table_block(&f, &all, &label_sequence(&f, 1));
    let r = label_sequence(&f, base);
    let mut child = Vec::with_capacity(3 * r.len());
    for t in offs {
        let o = f.parse(t)?;
        for e in shifted(&f, o, &r) {
            child.push(parent.row_of_label(e).expect("every element labels a row"));
        }
    }
    NestedPair::uniform(parent, child, ProjectionSpec::truncation(&f, &g)?)
}
