//! Named constructions with `key=value` parameters.
//!
//! ```
//! let built = nestfill::registry::build("zerosum s1=6 s2=3", None).unwrap();
//! assert!(built.verdict().unwrap().is_pass());
//! assert_eq!(built.output.array().rows(), 36);
//! ```
//!
//! The mixed-level constructions (`thm7`, `thm8`, `lemma7`, `thm9`) accept
//! an optional TOML plan naming their inputs; without one they use a
//! built-in plan. Matrix references in a plan are catalog names or
//! construction invocations such as `"theorem1 m=2"`.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::algebra::{Elem, FieldSpec, GroupSpec, ProjectionSpec};
use crate::arrays::{check_nested, check_oa, reinterpret, LevelArray, NestMode, NestedPair, Verdict};
use crate::catalog;
use crate::constructions::{
    ndm_p3, ndm_sec34, ndm_theorem1, ndm_theorem2, ndm_theorem3, noa_theorem4, noa_theorem5, qtw_noa,
    rao_hamming_oa, validation_pair, zero_sum_noa, P3Instance, Sec34Variant,
};
use crate::error::{Error, Result};
use crate::mixed::{
    mixed_dm_lemma7, nested_factorial, noa_theorem9, ww_from_ndms, ww_from_noas, Block, MixedDm,
};

/// `(name, parameters, summary)` for every construction.
pub const CONSTRUCTIONS: &[(&str, &str, &str)] = &[
    ("theorem1", "m=<2..7>", "NDM over GF(2^(m+1)) collapsing onto GF(2^m)"),
    ("theorem2", "m=<2..6>", "NDM over GF(2^(m+2)) collapsing onto GF(4)"),
    ("theorem3", "m=<2..6>", "NDM over GF(2^(m+2)) collapsing onto GF(2^m)"),
    ("sec34", "variant=a|b", "NDM over GF(32) collapsing onto GF(4)"),
    ("p3", "s1=27|81", "NDM over GF(27) or GF(81) collapsing by one degree"),
    ("qtw", "s1= s2= k=", "nested Rao-Hamming array over GF(s1) collapsing onto GF(s2)"),
    ("zerosum", "s1= s2=", "zero-sum OA(s1^2,3,s1) collapsing by residue mod s2"),
    (
        "theorem4",
        "ndm=theorem1|theorem2|theorem3|<catalog nested entry> m= k=",
        "OA Kronecker NDM; k=1 uses the one-column OA, larger k a Rao-Hamming or zero-sum OA",
    ),
    ("theorem5", "s1= s2= k=", "nested Rao-Hamming array Kronecker the GF(s1) multiplication table"),
    ("validation", "m= k=", "computer-model array with a nested field design on shared columns"),
    ("thm7", "b=true|false plan=<toml>", "mixed NOA from a nested factorial and difference matrices"),
    ("thm8", "b=true|false plan=<toml>", "mixed NOA from an OA and nested difference matrices"),
    ("lemma7", "c0= plan=<toml>", "paired-level difference matrix from two difference matrices"),
    ("thm9", "c0= plan=<toml>", "mixed NOA from a paired-level difference matrix"),
];

/// What a construction produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Output {
    Nested { pair: NestedPair, mode: NestMode },
    Mixed(MixedDm),
}

impl Output {
    /// The parent array, or the combined paired-level matrix.
    pub fn array(&self) -> LevelArray {
        match self {
            Output::Nested { pair, .. } => pair.parent().clone(),
            Output::Mixed(m) => m.combined(),
        }
    }

    pub fn nested(&self) -> Option<&NestedPair> {
        match self {
            Output::Nested { pair, .. } => Some(pair),
            Output::Mixed(_) => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Built {
    /// Canonical invocation, e.g. `theorem1 m=2`.
    pub invocation: String,
    pub output: Output,
    /// Further arrays that must be orthogonal arrays, by role.
    pub extras: Vec<(String, LevelArray)>,
}

impl Built {
    /// Checks the output and every extra array.
    pub fn verdict(&self) -> Result<Verdict> {
        let main = match &self.output {
            Output::Nested { pair, mode } => check_nested(pair, *mode)?,
            Output::Mixed(m) => m.check()?,
        };
        if !main.is_pass() {
            return Ok(main);
        }
        Ok(self.extras.iter().map(|(_, a)| check_oa(a)).find(|v| !v.is_pass()).unwrap_or(Verdict::Pass))
    }
}

/// Parsed `key=value` arguments; every key must be consumed.
struct Params {
    name: String,
    map: BTreeMap<String, String>,
    used: Vec<(String, String)>,
}

impl Params {
    fn parse(name: &str, args: &[&str]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for a in args {
            let (k, v) = a
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("{name}: expected key=value, got {a:?}")))?;
            if map.insert(k.to_string(), v.to_string()).is_some() {
                return Err(Error::InvalidParameter(format!("{name}: {k} given twice")));
            }
        }
        Ok(Params { name: name.to_string(), map, used: Vec::new() })
    }

    fn text(&mut self, key: &str, default: &str) -> String {
        let v = self.map.remove(key).unwrap_or_else(|| default.to_string());
        self.used.push((key.to_string(), v.clone()));
        v
    }

    fn optional(&mut self, key: &str) -> Option<String> {
        let v = self.map.remove(key)?;
        self.used.push((key.to_string(), v.clone()));
        Some(v)
    }

    fn num<T: std::str::FromStr>(&mut self, key: &str, default: &str) -> Result<T> {
        let v = self.text(key, default);
        v.parse()
            .map_err(|_| Error::InvalidParameter(format!("{}: {key}={v} is not a valid number", self.name)))
    }

    fn flag(&mut self, key: &str, default: bool) -> Result<bool> {
        match self.text(key, if default { "true" } else { "false" }).as_str() {
            "true" | "yes" | "1" => Ok(true),
            "false" | "no" | "0" => Ok(false),
            v => Err(Error::InvalidParameter(format!("{}: {key}={v} is not a boolean", self.name))),
        }
    }

    fn finish(self) -> Result<String> {
        if let Some(k) = self.map.keys().next() {
            return Err(Error::InvalidParameter(format!("{}: unknown parameter {k}", self.name)));
        }
        let mut parts = vec![self.name];
        parts.extend(self.used.into_iter().map(|(k, v)| format!("{k}={v}")));
        Ok(parts.join(" "))
    }
}

fn field(order: u32) -> Result<FieldSpec> {
    FieldSpec::of_order(order)
}

fn nested(pair: NestedPair, mode: NestMode) -> Output {
    Output::Nested { pair, mode }
}

/// One column listing every element of `g`.
fn trivial_oa(g: &GroupSpec) -> Result<LevelArray> {
    LevelArray::from_fn(vec![g.clone()], g.order() as usize, |r, _| Elem(r as u32))
}

/// An OA over the alphabet of `g` with `k` as its size parameter.
fn base_oa(g: &GroupSpec, k: u32) -> Result<LevelArray> {
    if k == 1 {
        return trivial_oa(g);
    }
    match g {
        GroupSpec::Field(f) => rao_hamming_oa(f, k),
        GroupSpec::Cyclic(s) if k == 2 => Ok(zero_sum_noa(*s, 1)?.parent().clone()),
        _ if g.order() <= 256 => {
            let f = field(g.order())?;
            if !GroupSpec::Field(f.clone()).same_addition(g) {
                return Err(Error::InvalidParameter(format!("no k={k} orthogonal array over {g}")));
            }
            reinterpret(&rao_hamming_oa(&f, k)?, g)
        }
        _ => Err(Error::InvalidParameter(format!("no k={k} orthogonal array over {g}"))),
    }
}

/// A construction invocation or catalog name, as a nested pair.
fn nested_ref(r: &str) -> Result<NestedPair> {
    let r = r.trim();
    if !r.contains(' ') {
        if let Ok(e) = catalog::get(r) {
            return e
                .nested()
                .cloned()
                .ok_or_else(|| Error::InvalidParameter(format!("catalog entry {r} is not nested")));
        }
    }
    build(r, None)?
        .output
        .nested()
        .cloned()
        .ok_or_else(|| Error::InvalidParameter(format!("{r} does not produce a nested pair")))
}

/// A construction invocation or catalog name, as a plain array.
fn array_ref(r: &str) -> Result<LevelArray> {
    let r = r.trim();
    if !r.contains(' ') {
        if let Ok(e) = catalog::get(r) {
            return Ok(e.array().clone().without_labels());
        }
    }
    Ok(build(r, None)?.output.array().without_labels())
}

fn groups_of(texts: &[String]) -> Result<Vec<GroupSpec>> {
    texts.iter().map(|t| GroupSpec::parse_spec(t)).collect()
}

fn one_based(cols: &[usize]) -> Result<Vec<usize>> {
    cols.iter()
        .map(|&c| c.checked_sub(1).ok_or_else(|| Error::InvalidParameter("plan columns are 1-based".into())))
        .collect()
}

fn parse_plan<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    toml::from_str(text).map_err(|e| Error::Format(format!("plan: {e}")))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FactorialPlan {
    groups: Vec<String>,
    #[serde(default)]
    projections: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BlockPlan {
    columns: Vec<usize>,
    matrix: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MixedPlan {
    base: FactorialPlan,
    block: Vec<BlockPlan>,
}

const THM7_PLAN: &str = r#"
[base]
groups = ["Z6", "Z2*Z2"]
projections = ["residue:3", "component:1"]

[[block]]
columns = [1]
matrix = "d_12_6_6"

[[block]]
columns = [2]
matrix = "seberry_12_12_4"
"#;

const THM8_PLAN: &str = r#"
[base]
groups = ["GF(8)", "GF(8)"]

[[block]]
columns = [1, 2]
matrix = "theorem1 m=2"
"#;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairedPlan {
    d1: String,
    d2: String,
    c0: usize,
    #[serde(default)]
    delta1: Option<String>,
    #[serde(default)]
    delta2: Option<String>,
    #[serde(default)]
    child_rows: Option<Vec<usize>>,
}

const PAIRED_PLAN: &str = r#"
d1 = "ex13_d1"
d2 = "ex13_d2"
c0 = 2
delta1 = "truncation:GF(2)"
delta2 = "identity"
"#;

fn thm7(plan: &MixedPlan, include_b: bool) -> Result<NestedPair> {
    let groups = groups_of(&plan.base.groups)?;
    if plan.base.projections.len() != groups.len() {
        return Err(Error::InvalidParameter("thm7: one projection per base group is required".into()));
    }
    let projections = groups
        .iter()
        .zip(&plan.base.projections)
        .map(|(g, t)| ProjectionSpec::parse_for(g, t))
        .collect::<Result<_>>()?;
    let noa = nested_factorial(&groups, projections)?;
    let matrices = plan.block.iter().map(|b| array_ref(&b.matrix)).collect::<Result<Vec<_>>>()?;
    let columns = plan.block.iter().map(|b| one_based(&b.columns)).collect::<Result<Vec<_>>>()?;
    let blocks: Vec<Block<'_, LevelArray>> =
        columns.iter().zip(&matrices).map(|(c, m)| Block { columns: c, matrix: m }).collect();
    ww_from_noas(&noa, &blocks, include_b)
}

fn thm8(plan: &MixedPlan, include_b: bool) -> Result<NestedPair> {
    if !plan.base.projections.is_empty() {
        return Err(Error::InvalidParameter("thm8: the base array takes no projections".into()));
    }
    let a = crate::mixed::full_factorial(&groups_of(&plan.base.groups)?)?;
    let ndms = plan.block.iter().map(|b| nested_ref(&b.matrix)).collect::<Result<Vec<_>>>()?;
    let columns = plan.block.iter().map(|b| one_based(&b.columns)).collect::<Result<Vec<_>>>()?;
    let blocks: Vec<Block<'_, NestedPair>> =
        columns.iter().zip(&ndms).map(|(c, m)| Block { columns: c, matrix: m }).collect();
    ww_from_ndms(&a, &blocks, include_b)
}

fn paired(plan: &PairedPlan) -> Result<MixedDm> {
    mixed_dm_lemma7(&array_ref(&plan.d1)?, &array_ref(&plan.d2)?, plan.c0)
}

fn thm9(plan: &PairedPlan) -> Result<NestedPair> {
    let d = paired(plan)?;
    let (g1, g2) = d.groups();
    let (t1, t2) = match (&plan.delta1, &plan.delta2) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::InvalidParameter("thm9: plan needs delta1 and delta2".into())),
    };
    let (p1, p2) = (ProjectionSpec::parse_for(g1, t1)?, ProjectionSpec::parse_for(g2, t2)?);
    let rows = match &plan.child_rows {
        Some(r) => one_based(r)?,
        None => (0..d.d0.rows()).collect(),
    };
    noa_theorem9(&d, &rows, &p1, &p2)
}

/// Builds `invocation`, e.g. `"qtw s1=8 s2=4 k=2"`. `plan` is the text of
/// a TOML plan for the mixed-level constructions.
pub fn build(invocation: &str, plan: Option<&str>) -> Result<Built> {
    let mut words = invocation.split_whitespace();
    let name = words.next().ok_or_else(|| Error::InvalidParameter("empty construction".into()))?;
    let args: Vec<&str> = words.collect();
    build_args(name, &args, plan)
}

/// [`build`] with the name and parameters already split.
pub fn build_args(name: &str, args: &[&str], plan: Option<&str>) -> Result<Built> {
    if !CONSTRUCTIONS.iter().any(|(n, _, _)| *n == name) {
        return Err(Error::UnknownName(name.to_string()));
    }
    let takes_plan = matches!(name, "thm7" | "thm8" | "lemma7" | "thm9");
    if plan.is_some() && !takes_plan {
        return Err(Error::InvalidParameter(format!("{name} does not take a plan")));
    }
    let mut p = Params::parse(name, args)?;
    let mut extras = Vec::new();
    let output = match name {
        "theorem1" | "theorem2" | "theorem3" => {
            let m: u32 = p.num("m", "2")?;
            let f = match name {
                "theorem1" => ndm_theorem1,
                "theorem2" => ndm_theorem2,
                _ => ndm_theorem3,
            };
            nested(f(m)?, NestMode::Dm)
        }
        "sec34" => {
            let v = match p.text("variant", "a").as_str() {
                "a" => Sec34Variant::A,
                "b" => Sec34Variant::B,
                v => return Err(Error::InvalidParameter(format!("sec34: variant must be a or b, got {v}"))),
            };
            nested(ndm_sec34(v)?, NestMode::Dm)
        }
        "p3" => {
            let i = match p.num::<u32>("s1", "27")? {
                27 => P3Instance::Gf27ToGf9,
                81 => P3Instance::Gf81ToGf27,
                s => return Err(Error::InvalidParameter(format!("p3: s1 must be 27 or 81, got {s}"))),
            };
            nested(ndm_p3(i)?, NestMode::Dm)
        }
        "qtw" => {
            let (s1, s2, k) = (p.num("s1", "8")?, p.num("s2", "4")?, p.num("k", "2")?);
            nested(qtw_noa(&field(s1)?, &field(s2)?, k)?, NestMode::Oa)
        }
        "zerosum" => {
            let (s1, s2) = (p.num("s1", "6")?, p.num("s2", "3")?);
            nested(zero_sum_noa(s1, s2)?, NestMode::Oa)
        }
        "theorem4" => {
            let which = p.text("ndm", "theorem1");
            let ndm = if which.starts_with("theorem") {
                let m: u32 = p.num("m", "2")?;
                nested_ref(&format!("{which} m={m}"))?
            } else {
                nested_ref(&which)?
            };
            let k: u32 = p.num("k", "1")?;
            let g = ndm
                .parent()
                .common_alphabet()
                .ok_or_else(|| Error::InvalidParameter("theorem4: mixed-alphabet NDM".into()))?;
            let a = base_oa(g, k)?;
            nested(noa_theorem4(&a, &ndm)?, NestMode::Oa)
        }
        "theorem5" => {
            let (s1, s2, k): (u32, u32, u32) = (p.num("s1", "8")?, p.num("s2", "4")?, p.num("k", "2")?);
            let f = field(s1)?;
            let noa = qtw_noa(&f, &field(s2)?, k)?;
            let d = crate::constructions::mult_table(&f).without_labels();
            nested(noa_theorem5(&noa, &d)?, NestMode::Oa)
        }
        "validation" => {
            let (m, k): (u32, u32) = (p.num("m", "2")?, p.num("k", "1")?);
            let f = field(2u32.pow(m + 1))?;
            let vp = validation_pair(m, &base_oa(&GroupSpec::Field(f), k)?)?;
            extras.push(("full".to_string(), vp.full));
            nested(vp.nested, NestMode::Oa)
        }
        "thm7" | "thm8" => {
            let include_b = p.flag("b", false)?;
            let default = if name == "thm7" { THM7_PLAN } else { THM8_PLAN };
            let plan: MixedPlan = parse_plan(plan.unwrap_or(default))?;
            let pair = if name == "thm7" { thm7(&plan, include_b)? } else { thm8(&plan, include_b)? };
            nested(pair, NestMode::Oa)
        }
        "lemma7" | "thm9" => {
            let mut plan: PairedPlan = parse_plan(plan.unwrap_or(PAIRED_PLAN))?;
            if let Some(c0) = p.optional("c0") {
                plan.c0 = c0
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("{name}: c0={c0} is not a valid number")))?;
            }
            if name == "lemma7" {
                Output::Mixed(paired(&plan)?)
            } else {
                nested(thm9(&plan)?, NestMode::Oa)
            }
        }
        _ => unreachable!("listed in CONSTRUCTIONS"),
    };
    Ok(Built { invocation: p.finish()?, output, extras })
}
