//! TOML project files: a bound quiver over a field, named representations,
//! named formulas and pairs, bounds and a tensor structure.
//!
//! ```toml
//! field = "Q"
//!
//! [quiver]
//! vertices = ["1", "2", "3"]
//! arrows = [{ name = "a", source = "1", target = "2" }, { name = "b", source = "2", target = "3" }]
//! relations = []
//!
//! [representations.p1]
//! dims = [1, 1, 1]
//! arrows = { a = [[1]], b = [[1]] }
//!
//! [formulas]
//! f11 = "x:2 = x / exists y:1 . a*y = x"
//! ```
//!
//! Matrices are row-major, `dims[target] × dims[source]`; entries are
//! integers or strings such as `"1/2"`. Unlisted arrows act by zero.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::artheory::Bounds;
use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Matrix};
use crate::quiver::{path_basis, BoundQuiver, PathCombination, Quiver, StructureAlgebra};
use crate::rep::Representation;
use crate::tensorcat::{DiagonalCharTwo, MonoidalStructure, TensorOverR};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectFile {
    pub field: String,
    pub quiver: QuiverSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsSection>,
    /// `"over-r"` or `"diagonal"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tensor: Option<String>,
    /// Names for the simple functors, keyed by catalogue node name such as
    /// `(0,1,1)`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub simple_names: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub formulas: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub representations: BTreeMap<String, RepSection>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverSection {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowSection>,
    #[serde(default)]
    pub relations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSection {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsSection {
    pub max_total_dim: Option<usize>,
    pub max_entries: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepSection {
    pub dims: Vec<usize>,
    #[serde(default)]
    pub arrows: BTreeMap<String, Vec<Vec<Entry>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

/// The built-in tensor structures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorChoice {
    OverR,
    Diagonal,
}

impl TensorChoice {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "over-r" | "over_r" | "R" => Ok(TensorChoice::OverR),
            "diagonal" | "K" => Ok(TensorChoice::Diagonal),
            _ => Err(Error::Parse(format!(
                "unknown tensor structure `{text}` (expected `over-r` or `diagonal`)"
            ))),
        }
    }
    pub fn structure(self) -> &'static dyn MonoidalStructure {
        match self {
            TensorChoice::OverR => &TensorOverR,
            TensorChoice::Diagonal => &DiagonalCharTwo,
        }
    }
}

/// A parsed project with its algebra and representations built.
#[derive(Clone, Debug)]
pub struct Project {
    pub file: ProjectFile,
    pub algebra: StructureAlgebra,
    pub bounds: Bounds,
    pub representations: BTreeMap<String, Representation>,
}

impl ProjectFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Canonical TOML: fixed key order, sorted named tables.
    pub fn to_canonical(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Build the algebra and the representations; `field` overrides the
    /// file's field.
    pub fn resolve(&self, field: Option<FieldSpec>) -> Result<Project> {
        let field = match field {
            Some(f) => f,
            None => FieldSpec::parse(&self.field)?,
        };
        let arrows = self
            .quiver
            .arrows
            .iter()
            .map(|a| (a.name.clone(), a.source.clone(), a.target.clone()))
            .collect();
        let quiver = Quiver::new(self.quiver.vertices.clone(), arrows)?;
        let relations = self
            .quiver
            .relations
            .iter()
            .map(|w| PathCombination::parse(&quiver, field, w))
            .collect::<Result<Vec<_>>>()?;
        let algebra = path_basis(&BoundQuiver::new(quiver, field, relations)?)?;
        let mut bounds = Bounds::default();
        if let Some(b) = self.bounds {
            bounds.max_total_dim = b.max_total_dim.unwrap_or(bounds.max_total_dim);
            bounds.max_entries = b.max_entries.unwrap_or(bounds.max_entries);
        }
        let mut representations = BTreeMap::new();
        for (name, r) in &self.representations {
            let rep = build_rep(&algebra, r).map_err(|e| match e {
                Error::Parse(m) => Error::Parse(format!("representation `{name}`: {m}")),
                other => other,
            })?;
            representations.insert(name.clone(), rep);
        }
        Ok(Project {
            file: self.clone(),
            algebra,
            bounds,
            representations,
        })
    }
}

fn build_rep(alg: &StructureAlgebra, r: &RepSection) -> Result<Representation> {
    let field = alg.field();
    if r.dims.len() != alg.num_sorts() {
        return Err(Error::Dimension(format!(
            "expected {} dimensions, got {}",
            alg.num_sorts(),
            r.dims.len()
        )));
    }
    let info = alg.quiver().ok_or(Error::NotBoundQuiver)?;
    let mut mats: Vec<(&str, Matrix)> = Vec::new();
    for (name, rows) in &r.arrows {
        let (_, s, t) = info
            .arrows
            .iter()
            .find(|(n, _, _)| n == name)
            .ok_or_else(|| Error::Parse(format!("unknown arrow `{name}`")))?;
        let (nr, nc) = (r.dims[*t], r.dims[*s]);
        let rows_ok = rows.len() == nr && rows.iter().all(|row| row.len() == nc);
        if !rows_ok && !(nr == 0 || nc == 0) {
            return Err(Error::Dimension(format!(
                "arrow `{name}` needs a {nr}×{nc} matrix"
            )));
        }
        let mut m = Matrix::zeros(field, nr, nc);
        for (i, row) in rows.iter().enumerate().take(nr) {
            for (j, e) in row.iter().enumerate().take(nc) {
                m[(i, j)] = match e {
                    Entry::Int(v) => field.from_i64(*v),
                    Entry::Text(t) => field.parse_scalar(t)?,
                };
            }
        }
        mats.push((name.as_str(), m));
    }
    Representation::from_arrows(alg, r.dims.clone(), &mats)
}

impl Project {
    pub fn load(path: &Path, field: Option<FieldSpec>) -> Result<Self> {
        ProjectFile::load(path)?.resolve(field)
    }

    pub fn representation(&self, name: &str) -> Result<&Representation> {
        self.representations
            .get(name)
            .ok_or_else(|| Error::Parse(format!("no representation named `{name}`")))
    }

    /// A named formula, or the text itself.
    pub fn formula_text<'a>(&'a self, name_or_text: &'a str) -> &'a str {
        self.file
            .formulas
            .get(name_or_text)
            .map(String::as_str)
            .unwrap_or(name_or_text)
    }

    pub fn tensor(&self) -> Result<TensorChoice> {
        TensorChoice::parse(self.file.tensor.as_deref().unwrap_or("over-r"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A3: &str = r#"
field = "Q"

[quiver]
vertices = ["1", "2", "3"]
arrows = [{ name = "a", source = "1", target = "2" }, { name = "b", source = "2", target = "3" }]

[representations.p1]
dims = [1, 1, 1]
arrows = { a = [[1]], b = [["1/2"]] }

[representations.s2]
dims = [0, 1, 0]
"#;

    #[test]
    fn parse_and_resolve() {
        let p = ProjectFile::parse(A3).unwrap();
        let proj = p.resolve(None).unwrap();
        assert_eq!(proj.algebra.dim(), 6);
        assert_eq!(proj.representation("p1").unwrap().dims(), &[1, 1, 1]);
        assert!(proj.representation("s2").unwrap().act(4).is_zero());
    }

    #[test]
    fn canonical_is_idempotent() {
        let once = ProjectFile::parse(A3).unwrap().to_canonical().unwrap();
        let twice = ProjectFile::parse(&once).unwrap().to_canonical().unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn unknown_keys_rejected() {
        let bad = A3.replace("field = \"Q\"", "field = \"Q\"\ncolour = 3");
        assert!(matches!(ProjectFile::parse(&bad), Err(Error::Parse(_))));
        let bad_arrow = A3.replace("b = [[\"1/2\"]]", "c = [[1]]");
        assert!(matches!(
            ProjectFile::parse(&bad_arrow).unwrap().resolve(None),
            Err(Error::Parse(_))
        ));
    }
}
