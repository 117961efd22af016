//! Versioned JSON cache of a module catalogue, optionally with the
//! catalogue of functors over its Auslander algebra.
//!
//! The format is canonical: fixed field order, scalars as text, entries in
//! catalogue order, so saving the same catalogue twice gives identical bytes.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::artheory::{ar_sequences, irreducible_map_counts, Catalogue, Provenance};
use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Matrix};
use crate::funcat::{auslander_algebra, AuslanderAlgebra};
use crate::quiver::{AlgebraSpec, QuiverInfo, StructureAlgebra};
use crate::rep::Representation;

pub const CACHE_FORMAT: &str = "ppsort-catalogue";
pub const CACHE_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CacheFile {
    pub format: String,
    pub version: u32,
    pub provenance: String,
    pub base: CachedCatalogue,
    pub ar: CachedAr,
    pub functors: Option<CachedCatalogue>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CachedAlgebra {
    pub field: FieldSpec,
    pub sort_names: Vec<String>,
    pub labels: Vec<String>,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub idempotents: Vec<usize>,
    /// Row `x * dim + y`: the product `x·y` as `(basis index, scalar)`.
    pub table: Vec<Vec<(usize, String)>>,
    pub basic: bool,
    pub quiver: Option<CachedQuiver>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CachedQuiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, usize, usize)>,
    pub arrow_basis: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CachedModule {
    pub dims: Vec<usize>,
    /// One row-major matrix per algebra basis element.
    pub actions: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CachedCatalogue {
    pub algebra: CachedAlgebra,
    pub complete: bool,
    pub modules: Vec<CachedModule>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CachedAr {
    pub irreducible: Vec<Vec<usize>>,
    /// `(left, middle, right)` catalogue indices of each almost split sequence.
    pub sequences: Vec<(usize, Vec<usize>, usize)>,
}

pub fn provenance_tag(p: &Provenance) -> String {
    match p {
        Provenance::Fixpoint => "fixpoint".into(),
        Provenance::FixpointAndOracle => "fixpoint+oracle".into(),
        Provenance::Oracle => "oracle".into(),
        Provenance::BoundsHit(why) => format!("bounds-hit: {why}"),
        Provenance::Cached(inner) => inner.clone(),
        Provenance::Subcategory => "subcategory".into(),
    }
}

fn encode_algebra(alg: &StructureAlgebra) -> CachedAlgebra {
    let spec = alg.to_spec();
    CachedAlgebra {
        field: spec.field,
        sort_names: spec.sort_names,
        labels: spec.labels,
        source: spec.source,
        target: spec.target,
        idempotents: spec.idempotents,
        table: spec
            .table
            .iter()
            .map(|c| c.iter().map(|(b, s)| (*b, s.to_text())).collect())
            .collect(),
        basic: spec.basic,
        quiver: spec.quiver.map(|q| CachedQuiver {
            vertices: q.vertices,
            arrows: q.arrows,
            arrow_basis: q.arrow_basis,
        }),
    }
}

fn decode_algebra(c: &CachedAlgebra) -> Result<StructureAlgebra> {
    let field = c.field;
    let table = c
        .table
        .iter()
        .map(|row| {
            row.iter()
                .map(|(b, s)| Ok((*b, field.parse_scalar(s)?)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let spec = AlgebraSpec {
        field,
        sort_names: c.sort_names.clone(),
        labels: c.labels.clone(),
        source: c.source.clone(),
        target: c.target.clone(),
        idempotents: c.idempotents.clone(),
        table,
        basic: c.basic,
        quiver: c.quiver.as_ref().map(|q| QuiverInfo {
            vertices: q.vertices.clone(),
            arrows: q.arrows.clone(),
            arrow_basis: q.arrow_basis.clone(),
        }),
    };
    StructureAlgebra::new(spec)
}

fn encode_module(m: &Representation) -> CachedModule {
    let actions = m
        .actions()
        .iter()
        .map(|a| {
            (0..a.rows())
                .map(|i| (0..a.cols()).map(|j| a[(i, j)].to_text()).collect())
                .collect()
        })
        .collect();
    CachedModule {
        dims: m.dims().to_vec(),
        actions,
    }
}

fn decode_module(alg: &StructureAlgebra, c: &CachedModule) -> Result<Representation> {
    let field = alg.field();
    if c.dims.len() != alg.num_sorts() || c.actions.len() != alg.dim() {
        return Err(Error::Cache(
            "module shape does not match its algebra".into(),
        ));
    }
    let mut action = Vec::with_capacity(alg.dim());
    for (b, rows) in c.actions.iter().enumerate() {
        let (r, k) = (c.dims[alg.target(b)], c.dims[alg.source(b)]);
        if rows.len() != r || rows.iter().any(|row| row.len() != k) {
            return Err(Error::Cache(format!("action {b} has the wrong shape")));
        }
        let mut m = Matrix::zeros(field, r, k);
        for (i, row) in rows.iter().enumerate() {
            for (j, t) in row.iter().enumerate() {
                m[(i, j)] = field.parse_scalar(t)?;
            }
        }
        action.push(m);
    }
    Representation::new(alg, c.dims.clone(), action)
}

fn encode_catalogue(cat: &Catalogue) -> CachedCatalogue {
    CachedCatalogue {
        algebra: encode_algebra(cat.algebra()),
        complete: cat.is_complete(),
        modules: cat.modules().iter().map(encode_module).collect(),
    }
}

fn decode_modules(alg: &StructureAlgebra, c: &CachedCatalogue) -> Result<Vec<Representation>> {
    c.modules.iter().map(|m| decode_module(alg, m)).collect()
}

/// Snapshot a catalogue, its AR data and optionally the functor catalogue.
pub fn encode(cat: &Catalogue, functors: Option<&Catalogue>) -> Result<CacheFile> {
    let irreducible = irreducible_map_counts(cat)?;
    let sequences = ar_sequences(cat)?
        .into_iter()
        .map(|s| (s.left, s.middle, s.right))
        .collect();
    Ok(CacheFile {
        format: CACHE_FORMAT.into(),
        version: CACHE_VERSION,
        provenance: provenance_tag(cat.provenance()),
        base: encode_catalogue(cat),
        ar: CachedAr {
            irreducible,
            sequences,
        },
        functors: functors.map(encode_catalogue),
    })
}

pub fn to_text(file: &CacheFile) -> String {
    let mut s = serde_json::to_string_pretty(file).expect("cache data serialises");
    s.push('\n');
    s
}

/// Parse and check format and version.
pub fn from_text(text: &str) -> Result<CacheFile> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Cache(e.to_string()))?;
    let version = value.get("version").and_then(serde_json::Value::as_u64);
    if value.get("format").and_then(serde_json::Value::as_str) != Some(CACHE_FORMAT) {
        return Err(Error::Cache("not a catalogue cache".into()));
    }
    match version {
        Some(v) if v == u64::from(CACHE_VERSION) => {}
        Some(v) => {
            return Err(Error::CacheVersion {
                found: v.to_string(),
                expected: CACHE_VERSION.to_string(),
            })
        }
        None => return Err(Error::Cache("missing version".into())),
    }
    serde_json::from_value(value).map_err(|e| Error::Cache(e.to_string()))
}

/// Catalogues rebuilt from a cache file.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub catalogue: Catalogue,
    pub ar: CachedAr,
    /// The Auslander algebra (recomputed) and the cached functor catalogue.
    pub functors: Option<(AuslanderAlgebra, Catalogue)>,
}

pub fn load(file: &CacheFile) -> Result<Loaded> {
    let alg = decode_algebra(&file.base.algebra).map_err(|e| Error::Cache(e.to_string()))?;
    let modules = decode_modules(&alg, &file.base).map_err(as_cache)?;
    let provenance = Provenance::Cached(file.provenance.clone());
    let catalogue = Catalogue::from_modules(&alg, modules, file.base.complete, provenance.clone())?;
    let functors = match &file.functors {
        None => None,
        Some(fc) => {
            let aus = auslander_algebra(&catalogue)?;
            if encode_algebra(aus.algebra()) != fc.algebra {
                return Err(Error::Cache(
                    "cached functor catalogue belongs to a different Auslander algebra".into(),
                ));
            }
            let modules = decode_modules(aus.algebra(), fc).map_err(as_cache)?;
            let cat = Catalogue::from_modules(aus.algebra(), modules, fc.complete, provenance)?;
            Some((aus, cat))
        }
    };
    Ok(Loaded {
        catalogue,
        ar: file.ar.clone(),
        functors,
    })
}

fn as_cache(e: Error) -> Error {
    match e {
        Error::Cache(_) | Error::CacheVersion { .. } => e,
        other => Error::Cache(other.to_string()),
    }
}

pub fn save_path(path: &Path, cat: &Catalogue, functors: Option<&Catalogue>) -> Result<()> {
    std::fs::write(path, to_text(&encode(cat, functors)?))?;
    Ok(())
}

pub fn load_path(path: &Path) -> Result<Loaded> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
    load(&from_text(&text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artheory::{build_catalogue, Bounds};
    use crate::funcat::functor_catalogue;
    use crate::quiver::dual_numbers;

    #[test]
    fn round_trip_is_byte_stable() {
        let alg = dual_numbers(FieldSpec::Rationals);
        let cat = build_catalogue(&alg, &Bounds::default()).unwrap();
        let aus = auslander_algebra(&cat).unwrap();
        let fc = functor_catalogue(&aus, &Bounds::default()).unwrap();
        let text = to_text(&encode(&cat, Some(&fc)).unwrap());
        let loaded = load(&from_text(&text).unwrap()).unwrap();
        let (_, fc2) = loaded.functors.as_ref().unwrap();
        let again = to_text(&encode(&loaded.catalogue, Some(fc2)).unwrap());
        assert_eq!(text, again);
    }

    #[test]
    fn version_and_corruption() {
        let alg = dual_numbers(FieldSpec::Rationals);
        let cat = build_catalogue(&alg, &Bounds::default()).unwrap();
        let text = to_text(&encode(&cat, None).unwrap());
        let bumped = text.replacen("\"version\": 1", "\"version\": 99", 1);
        assert!(matches!(
            from_text(&bumped),
            Err(Error::CacheVersion { .. })
        ));
        assert!(matches!(
            from_text(&text[..text.len() / 2]),
            Err(Error::Cache(_))
        ));
        let mut broken = from_text(&text).unwrap();
        broken.base.modules[0].actions[0][0][0] = "x".into();
        assert!(matches!(load(&broken), Err(Error::Cache(_))));
    }
}
