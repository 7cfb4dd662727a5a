use crate::algebra::{Elem, GroupSpec, ProjectionSpec};
use crate::arrays::{check_dm, check_nested, hconcat, kronecker_add, LevelArray, NestMode, NestedPair, Verdict};
use crate::error::{Error, Result};

/// `[D0, D11*, D21*]` built from two difference matrices.
///
/// `d0` has paired levels over `G1*G2`; `d1` and `d2` hold the trailing
/// columns of the inputs, replicated so that row `i * b2 + j` comes from
/// row `i` of the first input and row `j` of the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedDm {
    pub d0: LevelArray,
    pub d1: LevelArray,
    pub d2: LevelArray,
}

impl MixedDm {
    pub fn combined(&self) -> LevelArray {
        let parts: Vec<&LevelArray> = [&self.d0, &self.d1, &self.d2].into_iter().filter(|p| p.cols() > 0).collect();
        hconcat(&parts).expect("parts share the row count")
    }

    pub fn groups(&self) -> (&GroupSpec, &GroupSpec) {
        match self.d0.alphabet(0) {
            GroupSpec::Product(parts) => (&parts[0], &parts[1]),
            _ => unreachable!("paired columns use a two-factor product"),
        }
    }

    /// The three difference-matrix conditions: `d0`, `[σ1(d0), d1]` and
    /// `[σ2(d0), d2]`. Returns the first failure.
    pub fn check(&self) -> Result<Verdict> {
        for m in [self.d0.clone(), hconcat(&[&self.sigma(0), &self.d1])?, hconcat(&[&self.sigma(1), &self.d2])?] {
            let v = check_dm(&m)?;
            if !v.is_pass() {
                return Ok(v);
            }
        }
        Ok(Verdict::Pass)
    }

    /// First or second component of every paired entry.
    pub fn sigma(&self, j: usize) -> LevelArray {
        let g = self.d0.alphabet(0);
        let target = match g {
            GroupSpec::Product(parts) => parts[j].clone(),
            _ => unreachable!(),
        };
        LevelArray::from_fn(vec![target; self.d0.cols()], self.d0.rows(), |r, c| {
            g.components(self.d0.get(r, c))[j]
        })
        .expect("components lie in their factor")
    }
}

fn single_group<'a>(d: &'a LevelArray, what: &str) -> Result<&'a GroupSpec> {
    d.common_alphabet()
        .ok_or_else(|| Error::Shape(format!("{what} must have a single alphabet")))
}

/// Paired-level difference matrix from `d1` over `G1` and `d2` over `G2`,
/// pairing the first `c0` columns.
pub fn mixed_dm_lemma7(d1: &LevelArray, d2: &LevelArray, c0: usize) -> Result<MixedDm> {
    let g1 = single_group(d1, "first matrix")?.clone();
    let g2 = single_group(d2, "second matrix")?.clone();
    if c0 == 0 || c0 > d1.cols().min(d2.cols()) {
        return Err(Error::InvalidParameter(format!(
            "c0 must lie in 1..={}, got {c0}",
            d1.cols().min(d2.cols())
        )));
    }
    check_dm(d1)?.require("first matrix")?;
    check_dm(d2)?.require("second matrix")?;
    let (b1, b2) = (d1.rows(), d2.rows());
    let pair = GroupSpec::Product(vec![g1.clone(), g2.clone()]);
    let d0 = LevelArray::from_fn(vec![pair.clone(); c0], b1 * b2, |r, k| {
        pair.compose(&[d1.get(r / b2, k), d2.get(r % b2, k)]).expect("components in range")
    })?;
    let rest1: Vec<usize> = (c0..d1.cols()).collect();
    let rest2: Vec<usize> = (c0..d2.cols()).collect();
    let d1s = LevelArray::from_fn(vec![g1; rest1.len()], b1 * b2, |r, k| d1.get(r / b2, rest1[k]))?;
    let d2s = LevelArray::from_fn(vec![g2; rest2.len()], b1 * b2, |r, k| d2.get(r % b2, rest2[k]))?;
    Ok(MixedDm { d0, d1: d1s, d2: d2s })
}

/// First `count` elements of a group, in index order, must map onto the
/// whole target bijectively.
fn canonical_range(delta: &ProjectionSpec) -> Result<u32> {
    let t = delta.target().order();
    let mut hit = vec![false; t as usize];
    for e in 0..t {
        let img = delta.apply(Elem(e))?;
        if std::mem::replace(&mut hit[img.index()], true) {
            return Err(Error::InvalidProjection(format!(
                "{} is not injective on the first {t} elements",
                delta.describe()
            )));
        }
    }
    Ok(t)
}

/// `[C1 ⊗ D01, σ1(C1) ⊗ D11, σ2(C1) ⊗ D21]` nested with the same blocks on
/// `C2` and the rows `child_rows` of `d`.
///
/// `C1` runs over every pair of `G1*G2` in index order. `C2` keeps the
/// pairs whose components lie among the first `|δ1(G1)|` and `|δ2(G2)|`
/// elements, which δ maps bijectively onto the collapsed groups. Paired
/// columns collapse by `δ1 × δ2`. The result is checked before it is
/// returned.
pub fn noa_theorem9(
    d: &MixedDm,
    child_rows: &[usize],
    delta1: &ProjectionSpec,
    delta2: &ProjectionSpec,
) -> Result<NestedPair> {
    let (g1, g2) = d.groups();
    if delta1.source() != g1 || delta2.source() != g2 {
        return Err(Error::GroupMismatch {
            expected: format!("{g1} and {g2}"),
            found: format!("{} and {}", delta1.source(), delta2.source()),
        });
    }
    let delta0 = ProjectionSpec::product(vec![delta1.clone(), delta2.clone()])?;
    let nested = |m: &LevelArray, p: &ProjectionSpec, what: &str| -> Result<()> {
        if m.cols() == 0 {
            return Ok(());
        }
        let pair = NestedPair::uniform(m.clone(), child_rows.to_vec(), p.clone())?;
        check_nested(&pair, NestMode::Dm)?.require(what)
    };
    nested(&d.d0, &delta0, "paired columns")?;
    let aug1 = hconcat(&[&d.sigma(0), &d.d1])?;
    let aug2 = hconcat(&[&d.sigma(1), &d.d2])?;
    nested(&aug1, delta1, "first augmented matrix")?;
    nested(&aug2, delta2, "second augmented matrix")?;

    let (t1, t2) = (canonical_range(delta1)?, canonical_range(delta2)?);
    let pair = d.d0.alphabet(0).clone();
    let s2 = g2.order();
    let c1 = LevelArray::from_fn(vec![pair.clone()], pair.order() as usize, |r, _| Elem(r as u32))?;
    let c1_first = LevelArray::from_fn(vec![g1.clone()], c1.rows(), |r, _| Elem(r as u32 / s2))?;
    let c1_second = LevelArray::from_fn(vec![g2.clone()], c1.rows(), |r, _| Elem(r as u32 % s2))?;
    let mut parts = vec![kronecker_add(&c1, &d.d0)?];
    let mut projections = vec![delta0; d.d0.cols()];
    if d.d1.cols() > 0 {
        parts.push(kronecker_add(&c1_first, &d.d1)?);
        projections.extend(std::iter::repeat_n(delta1.clone(), d.d1.cols()));
    }
    if d.d2.cols() > 0 {
        parts.push(kronecker_add(&c1_second, &d.d2)?);
        projections.extend(std::iter::repeat_n(delta2.clone(), d.d2.cols()));
    }
    let parent = hconcat(&parts.iter().collect::<Vec<_>>())?;
    let n1 = d.d0.rows();
    let c2 = (0..c1.rows()).filter(|&t| (t as u32 / s2) < t1 && (t as u32 % s2) < t2);
    let child = c2.flat_map(|t| child_rows.iter().map(move |&r| t * n1 + r)).collect();
    let out = NestedPair::new(parent, child, projections)?;
    check_nested(&out, NestMode::Oa)?.require("mixed nested array")?;
    Ok(out)
}
