//! Level-collapsing projections between group alphabets.
//!
//! Every projection built here is an additive, surjective, balanced map;
//! the constructors reject parameter combinations that would break this.

use serde::{Deserialize, Serialize};

use super::field::FieldSpec;
use super::group::GroupSpec;
use super::poly;
use super::Elem;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjectionKind {
    /// Keep the coefficients of degree below the target's extension degree.
    Truncation,
    /// Reduce modulo the target field's polynomial.
    Modulus,
    /// u mod a, from Z_s onto Z_a with a | s.
    Residue,
    /// Keep one component of a direct-product element.
    Component(usize),
    /// Apply one projection per component of a direct product.
    Product(Vec<ProjectionSpec>),
    Identity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ProjectionDoc", into = "ProjectionDoc")]
pub struct ProjectionSpec {
    kind: ProjectionKind,
    source: GroupSpec,
    target: GroupSpec,
}

impl ProjectionSpec {
    pub fn identity(group: &GroupSpec) -> Self {
        ProjectionSpec {
            kind: ProjectionKind::Identity,
            source: group.clone(),
            target: group.clone(),
        }
    }

    fn check_fields(source: &FieldSpec, target: &FieldSpec) -> Result<()> {
        if source.p() != target.p() {
            return Err(Error::InvalidProjection(format!(
                "characteristic mismatch between {source} and {target}"
            )));
        }
        if target.u() > source.u() {
            return Err(Error::InvalidProjection(format!(
                "{target} is larger than {source}"
            )));
        }
        Ok(())
    }

    /// Truncation: drops all powers of degree u2 or higher.
    pub fn truncation(source: &FieldSpec, target: &FieldSpec) -> Result<Self> {
        Self::check_fields(source, target)?;
        Ok(ProjectionSpec {
            kind: ProjectionKind::Truncation,
            source: source.clone().into(),
            target: target.clone().into(),
        })
    }

    /// Modulus: reduces modulo the target field's irreducible polynomial.
    pub fn modulus(source: &FieldSpec, target: &FieldSpec) -> Result<Self> {
        Self::check_fields(source, target)?;
        Ok(ProjectionSpec {
            kind: ProjectionKind::Modulus,
            source: source.clone().into(),
            target: target.clone().into(),
        })
    }

    /// rho_a on Z_s.
    pub fn residue(s: u32, a: u32) -> Result<Self> {
        if a == 0 || s == 0 || s % a != 0 {
            return Err(Error::InvalidProjection(format!("{a} does not divide {s}")));
        }
        Ok(ProjectionSpec {
            kind: ProjectionKind::Residue,
            source: GroupSpec::Cyclic(s),
            target: GroupSpec::Cyclic(a),
        })
    }

    /// Component extraction sigma_j (drops the other digits).
    pub fn component(source: &GroupSpec, index: usize) -> Result<Self> {
        match source {
            GroupSpec::Product(parts) if index < parts.len() => Ok(ProjectionSpec {
                kind: ProjectionKind::Component(index),
                source: source.clone(),
                target: parts[index].clone(),
            }),
            _ => Err(Error::InvalidProjection(format!(
                "no component {index} in {source}"
            ))),
        }
    }

    /// Componentwise product of projections, e.g. delta1 x delta2.
    pub fn product(parts: Vec<ProjectionSpec>) -> Result<Self> {
        if parts.len() < 2 {
            return Err(Error::InvalidProjection(
                "a product projection needs at least two parts".into(),
            ));
        }
        let source = GroupSpec::Product(parts.iter().map(|p| p.source.clone()).collect());
        let target = GroupSpec::Product(parts.iter().map(|p| p.target.clone()).collect());
        Ok(ProjectionSpec { kind: ProjectionKind::Product(parts), source, target })
    }

    pub fn kind(&self) -> &ProjectionKind {
        &self.kind
    }

    pub fn source(&self) -> &GroupSpec {
        &self.source
    }

    pub fn target(&self) -> &GroupSpec {
        &self.target
    }

    pub fn is_identity(&self) -> bool {
        matches!(self.kind, ProjectionKind::Identity)
    }

    pub fn apply(&self, e: Elem) -> Result<Elem> {
        if !self.source.contains(e) {
            return Err(Error::ElementOutOfRange { element: e.0, group: self.source.to_string() });
        }
        Ok(self.apply_unchecked(e))
    }

    pub(crate) fn apply_unchecked(&self, e: Elem) -> Elem {
        match &self.kind {
            ProjectionKind::Identity => e,
            ProjectionKind::Residue => Elem(e.0 % self.target.order()),
            ProjectionKind::Truncation => {
                let (src, dst) = self.fields();
                let c = src.coeffs(e);
                Elem(poly::to_index(&c[..dst.u() as usize], src.p()))
            }
            ProjectionKind::Modulus => {
                let (src, dst) = self.fields();
                let r = poly::rem_monic(&src.coeffs(e), dst.modulus(), src.p());
                Elem(poly::to_index(&r, src.p()))
            }
            ProjectionKind::Component(i) => self.source.components(e)[*i],
            ProjectionKind::Product(parts) => {
                let comps: Vec<Elem> = parts
                    .iter()
                    .zip(self.source.components(e))
                    .map(|(p, c)| p.apply_unchecked(c))
                    .collect();
                self.target.compose(&comps).expect("components lie in target")
            }
        }
    }

    fn fields(&self) -> (&FieldSpec, &FieldSpec) {
        match (&self.source, &self.target) {
            (GroupSpec::Field(a), GroupSpec::Field(b)) => (a, b),
            _ => unreachable!("field projection between non-fields"),
        }
    }

    /// Image of every source element, in source index order.
    pub fn table(&self) -> Vec<Elem> {
        self.source.elements().map(|e| self.apply_unchecked(e)).collect()
    }

    /// Preimages of each target element, each listed in source index order.
    pub fn fibers(&self) -> Vec<Vec<Elem>> {
        let mut out = vec![Vec::new(); self.target.order() as usize];
        for e in self.source.elements() {
            out[self.apply_unchecked(e).0 as usize].push(e);
        }
        out
    }

    /// Short text form used on the command line, e.g. `truncation:GF(4)`,
    /// `residue:3`, `component:1`, `product(truncation:GF(2),identity)`.
    pub fn describe(&self) -> String {
        match &self.kind {
            ProjectionKind::Identity => "identity".into(),
            ProjectionKind::Truncation => format!("truncation:{}", self.target),
            ProjectionKind::Modulus => format!("modulus:{}", self.target),
            ProjectionKind::Residue => format!("residue:{}", self.target.order()),
            ProjectionKind::Component(i) => format!("component:{i}"),
            ProjectionKind::Product(parts) => format!(
                "product({})",
                parts.iter().map(|p| p.describe()).collect::<Vec<_>>().join(",")
            ),
        }
    }

    /// Parses the text form of [`describe`](Self::describe) for a known source group.
    pub fn parse_for(source: &GroupSpec, text: &str) -> Result<Self> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::InvalidProjection(format!("cannot parse {text:?} for {source}"));
        if t == "identity" {
            return Ok(Self::identity(source));
        }
        if let Some(inner) = t.strip_prefix("product(").and_then(|s| s.strip_suffix(')')) {
            let GroupSpec::Product(parts) = source else { return Err(bad()) };
            let texts = split_commas(inner);
            if texts.len() != parts.len() {
                return Err(bad());
            }
            let specs = parts
                .iter()
                .zip(&texts)
                .map(|(g, s)| Self::parse_for(g, s))
                .collect::<Result<Vec<_>>>()?;
            return Self::product(specs);
        }
        let (kind, arg) = t.split_once(':').ok_or_else(bad)?;
        match kind {
            "residue" => {
                let GroupSpec::Cyclic(s) = source else { return Err(bad()) };
                Self::residue(*s, arg.parse().map_err(|_| bad())?)
            }
            "component" => Self::component(source, arg.parse().map_err(|_| bad())?),
            "truncation" | "modulus" => {
                let GroupSpec::Field(src) = source else { return Err(bad()) };
                let GroupSpec::Field(dst) = GroupSpec::parse_spec(arg)? else { return Err(bad()) };
                if kind == "truncation" {
                    Self::truncation(src, &dst)
                } else {
                    Self::modulus(src, &dst)
                }
            }
            _ => Err(bad()),
        }
    }
}

fn split_commas(text: &str) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut depth = 0;
    for c in text.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if c == ',' && depth == 0 {
            out.push(String::new());
        } else {
            out.last_mut().unwrap().push(c);
        }
    }
    out
}

/// Serialized form of a projection for JSON sidecars.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProjectionDoc {
    pub kind: String,
    pub source: String,
    pub target: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<ProjectionDoc>,
}

impl From<ProjectionSpec> for ProjectionDoc {
    fn from(p: ProjectionSpec) -> Self {
        let (kind, index, parts) = match p.kind {
            ProjectionKind::Identity => ("identity", None, Vec::new()),
            ProjectionKind::Truncation => ("truncation", None, Vec::new()),
            ProjectionKind::Modulus => ("modulus", None, Vec::new()),
            ProjectionKind::Residue => ("residue", None, Vec::new()),
            ProjectionKind::Component(i) => ("component", Some(i), Vec::new()),
            ProjectionKind::Product(parts) => {
                ("product", None, parts.into_iter().map(Into::into).collect())
            }
        };
        ProjectionDoc {
            kind: kind.to_string(),
            source: p.source.to_string(),
            target: p.target.to_string(),
            index,
            parts,
        }
    }
}

impl TryFrom<ProjectionDoc> for ProjectionSpec {
    type Error = Error;

    fn try_from(doc: ProjectionDoc) -> Result<Self> {
        let source = GroupSpec::parse_spec(&doc.source)?;
        let target = GroupSpec::parse_spec(&doc.target)?;
        let bad = || Error::InvalidProjection(format!("inconsistent {} projection", doc.kind));
        let spec = match doc.kind.as_str() {
            "identity" => ProjectionSpec::identity(&source),
            "truncation" | "modulus" => {
                let (GroupSpec::Field(s), GroupSpec::Field(t)) = (&source, &target) else {
                    return Err(bad());
                };
                if doc.kind == "truncation" {
                    ProjectionSpec::truncation(s, t)?
                } else {
                    ProjectionSpec::modulus(s, t)?
                }
            }
            "residue" => ProjectionSpec::residue(source.order(), target.order())?,
            "component" => ProjectionSpec::component(&source, doc.index.ok_or_else(bad)?)?,
            "product" => ProjectionSpec::product(
                doc.parts
                    .into_iter()
                    .map(ProjectionSpec::try_from)
                    .collect::<Result<Vec<_>>>()?,
            )?,
            _ => return Err(bad()),
        };
        if spec.source != source || spec.target != target {
            return Err(bad());
        }
        Ok(spec)
    }
}
