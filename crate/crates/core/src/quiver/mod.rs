//! Quivers, paths, admissible relations and bound quiver algebras.
//!
//! Paths compose right to left: the word `b.a` is "first `a`, then `b`".

mod algebra;

pub use algebra::{AlgebraElement, AlgebraSpec, Combination, QuiverInfo, StructureAlgebra};

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Matrix, Scalar};

/// Default path-length guard for [`path_basis`].
pub const MAX_PATH_LENGTH: usize = 64;
const MAX_PATHS: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite directed multigraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// `arrows` are `(name, source, target)` with vertex names.
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self> {
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::Parse(format!("duplicate vertex `{v}`")));
            }
        }
        let index = |v: &str| {
            vertices
                .iter()
                .position(|w| w == v)
                .ok_or_else(|| Error::UnknownVertex(v.into()))
        };
        let mut out = Vec::new();
        for (name, s, t) in arrows {
            if out.iter().any(|a: &Arrow| a.name == name) || vertices.contains(&name) {
                return Err(Error::Parse(format!("duplicate arrow name `{name}`")));
            }
            out.push(Arrow {
                source: index(&s)?,
                target: index(&t)?,
                name,
            });
        }
        Ok(Quiver {
            vertices,
            arrows: out,
        })
    }

    /// The linear quiver `1 → 2 → … → n` with arrows `a1, a2, …`.
    pub fn linear(n: usize) -> Self {
        let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows = (1..n)
            .map(|i| (format!("a{i}"), i.to_string(), (i + 1).to_string()))
            .collect();
        Quiver::new(vertices, arrows).expect("linear quiver is well formed")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }
    pub fn vertex_index(&self, v: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|w| w == v)
            .ok_or_else(|| Error::UnknownVertex(v.into()))
    }
    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }
}

/// A path: a lazy path at a vertex, or a composable arrow sequence stored
/// leftmost-last (`[b, a]` is `b.a`, first `a` then `b`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn lazy(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn arrow(q: &Quiver, a: usize) -> Self {
        let ar = &q.arrows[a];
        Path {
            source: ar.source,
            target: ar.target,
            arrows: vec![a],
        }
    }

    /// Build from arrow indices written left to right; errors if not composable.
    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Result<Self> {
        let Some(&last) = arrows.last() else {
            return Err(Error::Parse("empty path word".into()));
        };
        for w in arrows.windows(2) {
            if q.arrows[w[0]].source != q.arrows[w[1]].target {
                return Err(Error::Parse(format!(
                    "arrows `{}` and `{}` do not compose",
                    q.arrows[w[0]].name, q.arrows[w[1]].name
                )));
            }
        }
        Ok(Path {
            source: q.arrows[last].source,
            target: q.arrows[arrows[0]].target,
            arrows,
        })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self · other` (first `other`, then `self`), if composable.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.source != other.target {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend(&other.arrows);
        Some(Path {
            source: other.source,
            target: self.target,
            arrows,
        })
    }

    /// `b.a` style label; lazy paths print as `e_v`.
    pub fn label(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e_{}", q.vertices[self.source])
        } else {
            self.arrows
                .iter()
                .map(|&a| q.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join(".")
        }
    }
}

/// A linear combination of parallel paths in the path algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathCombination {
    pub terms: Vec<(Path, Scalar)>,
}

impl PathCombination {
    /// Parse signed path words such as `b.a - c.d` or `e.e` or `2*b.a + 1/2 c.d`.
    pub fn parse(q: &Quiver, field: FieldSpec, text: &str) -> Result<Self> {
        let mut terms: Vec<(Path, Scalar)> = Vec::new();
        for (coeff, word) in split_signed_terms(field, text)? {
            let names: Vec<&str> = word.split('.').map(str::trim).collect();
            let path = if names.len() == 1
                && names[0].starts_with("e_")
                && q.arrow_index(names[0]).is_none()
            {
                Path::lazy(q.vertex_index(&names[0][2..])?)
            } else {
                let arrows = names
                    .iter()
                    .map(|n| {
                        q.arrow_index(n)
                            .ok_or_else(|| Error::Parse(format!("unknown arrow `{n}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Path::from_arrows(q, arrows)?
            };
            match terms.iter_mut().find(|(p, _)| *p == path) {
                Some((_, c)) => *c += &coeff,
                None => terms.push((path, coeff)),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some((p0, _)) = terms.first() {
            if terms
                .iter()
                .any(|(p, _)| p.source != p0.source || p.target != p0.target)
            {
                return Err(Error::Parse(format!(
                    "relation `{text}` mixes non-parallel paths"
                )));
            }
        }
        Ok(PathCombination { terms })
    }

    pub fn display(&self, q: &Quiver) -> String {
        let mut out = String::new();
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            if i > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            if !mag.is_one() {
                out.push_str(&format!("{mag}*"));
            }
            out.push_str(&p.label(q));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Split `2*b.a - c.d + 1/2 x` into `(coefficient, word)` pairs.
pub(crate) fn split_signed_terms(field: FieldSpec, text: &str) -> Result<Vec<(Scalar, String)>> {
    let mut out = Vec::new();
    let mut sign = field.one();
    let mut cur = String::new();
    let flush = |cur: &mut String, sign: &Scalar, out: &mut Vec<(Scalar, String)>| -> Result<()> {
        let t = cur.trim().to_string();
        cur.clear();
        if t.is_empty() {
            return Err(Error::Parse(format!("empty term in `{text}`")));
        }
        let (coeff_text, word) = split_coefficient(&t);
        let coeff = match coeff_text {
            Some(c) => field.parse_scalar(&c)?,
            None => field.one(),
        };
        if word.is_empty() {
            return Err(Error::Parse(format!("term `{t}` has no path word")));
        }
        out.push((sign * &coeff, word));
        Ok(())
    };
    let mut seen_any = false;
    for ch in text.chars() {
        if (ch == '+' || ch == '-') && !cur.trim().is_empty() {
            flush(&mut cur, &sign, &mut out)?;
            sign = if ch == '-' { -field.one() } else { field.one() };
            seen_any = true;
        } else if (ch == '+' || ch == '-') && cur.trim().is_empty() {
            if ch == '-' {
                sign = -&sign;
            }
        } else {
            cur.push(ch);
        }
    }
    if !cur.trim().is_empty() || !seen_any {
        flush(&mut cur, &sign, &mut out)?;
    }
    Ok(out)
}

/// Split a leading integer or fraction coefficient (optionally followed by
/// `*`) from a path word.
fn split_coefficient(t: &str) -> (Option<String>, String) {
    let digits_end = t
        .find(|c: char| !(c.is_ascii_digit() || c == '/' || c.is_whitespace()))
        .unwrap_or(t.len());
    let (num, rest) = t.split_at(digits_end);
    let num = num.trim();
    if num.is_empty() {
        return (None, t.trim().to_string());
    }
    let rest = rest.trim();
    let rest = rest.strip_prefix('*').unwrap_or(rest).trim();
    (Some(num.replace(' ', "")), rest.to_string())
}

/// A quiver with a list of relations over a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundQuiver {
    pub quiver: Quiver,
    pub field: FieldSpec,
    pub relations: Vec<PathCombination>,
}

impl BoundQuiver {
    pub fn new(quiver: Quiver, field: FieldSpec, relations: Vec<PathCombination>) -> Result<Self> {
        for r in &relations {
            if let Some((p, _)) = r.terms.iter().find(|(p, _)| p.len() < 2) {
                return Err(Error::NotAdmissible(format!(
                    "`{}` contains the path `{}` of length {}",
                    r.display(&quiver),
                    p.label(&quiver),
                    p.len()
                )));
            }
        }
        Ok(BoundQuiver {
            quiver,
            field,
            relations,
        })
    }

    /// Parse relations given as signed path words.
    pub fn with_relation_words(quiver: Quiver, field: FieldSpec, words: &[&str]) -> Result<Self> {
        let rels = words
            .iter()
            .map(|w| PathCombination::parse(&quiver, field, w))
            .collect::<Result<Vec<_>>>()?;
        Self::new(quiver, field, rels)
    }
}

/// All paths of length exactly `len`, in a fixed order.
fn paths_of_length(q: &Quiver, prev: &[Path]) -> Vec<Path> {
    let mut out = Vec::new();
    for p in prev {
        for (a, ar) in q.arrows.iter().enumerate() {
            if ar.source == p.target {
                let mut arrows = vec![a];
                arrows.extend(&p.arrows);
                out.push(Path {
                    source: p.source,
                    target: ar.target,
                    arrows,
                });
            }
        }
    }
    out
}

/// The bound quiver algebra with a basis of residue classes of paths.
///
/// Works in `KQ / J^{L+1}` for increasing `L` until every path of length `L`
/// lies in `I + J^{L+1}`; for an admissible ideal this gives `KQ / I`.
/// Basis paths are the non-leading paths after reducing the relation span
/// with longer paths (then lexicographically larger ones) leading.
pub fn path_basis(bq: &BoundQuiver) -> Result<StructureAlgebra> {
    path_basis_with_guard(bq, MAX_PATH_LENGTH)
}

pub fn path_basis_with_guard(bq: &BoundQuiver, guard: usize) -> Result<StructureAlgebra> {
    let q = &bq.quiver;
    let mut layers: Vec<Vec<Path>> = vec![(0..q.vertices.len()).map(Path::lazy).collect()];
    let mut total = layers[0].len();
    let max_rel_len = bq
        .relations
        .iter()
        .flat_map(|r| r.terms.iter().map(|(p, _)| p.len()))
        .max()
        .unwrap_or(0);
    for len in 1..=guard {
        let next = paths_of_length(q, layers.last().unwrap());
        total += next.len();
        if total > MAX_PATHS {
            return Err(Error::InfiniteDimensional(len));
        }
        layers.push(next);
        if len < max_rel_len {
            continue;
        }
        if let Some(alg) = try_truncation(bq, &layers)? {
            return Ok(alg);
        }
    }
    Err(Error::InfiniteDimensional(guard))
}

fn try_truncation(bq: &BoundQuiver, layers: &[Vec<Path>]) -> Result<Option<StructureAlgebra>> {
    let q = &bq.quiver;
    let field = bq.field;
    let top = layers.len() - 1;
    // Column order: longest first, then descending path order, so leading
    // terms are the "largest" paths.
    let mut order: Vec<Path> = Vec::new();
    for layer in layers.iter().rev() {
        let mut l = layer.clone();
        l.sort();
        l.reverse();
        order.extend(l);
    }
    let index: HashMap<&Path, usize> = order.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let all: Vec<&Path> = layers.iter().flatten().collect();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for r in &bq.relations {
        let (s, t) = (r.terms[0].0.source, r.terms[0].0.target);
        let min_len = r.terms.iter().map(|(p, _)| p.len()).min().unwrap();
        for u in all.iter().filter(|u| u.source == t) {
            for v in all.iter().filter(|v| v.target == s) {
                if u.len() + v.len() + min_len > top {
                    continue;
                }
                let mut row = vec![field.zero(); order.len()];
                for (p, c) in &r.terms {
                    let full = u.compose(&p.compose(v).unwrap()).unwrap();
                    if full.len() <= top {
                        row[index[&full]] += c;
                    }
                }
                rows.push(row);
            }
        }
    }
    let m = Matrix::from_rows(field, rows.clone());
    let m = if rows.is_empty() {
        Matrix::zeros(field, 0, order.len())
    } else {
        m
    };
    let (rref, pivots) = m.rref();
    // All top-length paths must be leading terms.
    let top_count = layers[top].len();
    if !(0..top_count).all(|c| pivots.contains(&c)) {
        return Ok(None);
    }
    let basis_cols: Vec<usize> = (0..order.len()).filter(|c| !pivots.contains(c)).collect();
    let mut basis_paths: Vec<Path> = basis_cols.iter().map(|&c| order[c].clone()).collect();
    basis_paths.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let pos: HashMap<&Path, usize> = basis_paths
        .iter()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    // Reduce any path to a combination of basis paths.
    let pivot_row: HashMap<usize, usize> =
        pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();
    let reduce = |p: &Path| -> Vec<(usize, Scalar)> {
        if p.len() > top {
            return Vec::new();
        }
        let col = index[p];
        match pivot_row.get(&col) {
            None => vec![(pos[p], field.one())],
            Some(&r) => {
                let mut out: Vec<(usize, Scalar)> = basis_cols
                    .iter()
                    .filter(|&&c| !rref[(r, c)].is_zero())
                    .map(|&c| (pos[&order[c]], -&rref[(r, c)]))
                    .collect();
                out.sort_by_key(|t| t.0);
                out
            }
        }
    };
    let n = basis_paths.len();
    let mut table = vec![Vec::new(); n * n];
    for (x, px) in basis_paths.iter().enumerate() {
        for (y, py) in basis_paths.iter().enumerate() {
            if let Some(p) = px.compose(py) {
                table[x * n + y] = reduce(&p);
            }
        }
    }
    let nv = q.vertices.len();
    let idempotents: Vec<usize> = (0..nv).map(|v| pos[&Path::lazy(v)]).collect();
    let arrow_basis: Vec<usize> = (0..q.arrows.len())
        .map(|a| pos[&Path::arrow(q, a)])
        .collect();
    let spec = AlgebraSpec {
        field,
        sort_names: q.vertices.clone(),
        labels: basis_paths.iter().map(|p| p.label(q)).collect(),
        source: basis_paths.iter().map(|p| p.source).collect(),
        target: basis_paths.iter().map(|p| p.target).collect(),
        idempotents,
        table,
        basic: true,
        quiver: Some(QuiverInfo {
            vertices: q.vertices.clone(),
            arrows: q
                .arrows
                .iter()
                .map(|a| (a.name.clone(), a.source, a.target))
                .collect(),
            arrow_basis,
        }),
    };
    StructureAlgebra::new(spec).map(Some)
}

/// Product of two elements of an algebra (bilinear extension of the table).
pub fn multiply(x: &AlgebraElement, y: &AlgebraElement, alg: &StructureAlgebra) -> AlgebraElement {
    alg.multiply(x, y)
}

/// Parse an element written as signed words of basis labels, e.g. `b.a`,
/// `a - 2*b` or `e_1`. Labels may themselves contain dots (path labels), so
/// each term is matched against the basis labels first and otherwise
/// multiplied out factor by factor.
pub fn parse_element(alg: &StructureAlgebra, text: &str) -> Result<AlgebraElement> {
    let field = alg.field();
    let mut acc = AlgebraElement::zero();
    for (coeff, word) in split_signed_terms(field, text)? {
        let elem = parse_word(alg, &word)?;
        acc = acc.add(&elem.scale(&coeff), alg);
    }
    Ok(acc)
}

fn parse_word(alg: &StructureAlgebra, word: &str) -> Result<AlgebraElement> {
    let word = word.trim();
    if let Some(b) = alg.basis_index(word) {
        return Ok(AlgebraElement::basis(b, alg.field()));
    }
    let mut factors = word.split('.').map(str::trim);
    let first = factors.next().unwrap_or("");
    let lookup = |name: &str| -> Result<AlgebraElement> {
        alg.basis_index(name)
            .map(|b| AlgebraElement::basis(b, alg.field()))
            .ok_or_else(|| Error::Parse(format!("unknown algebra element `{name}`")))
    };
    let mut acc = lookup(first)?;
    for f in factors {
        let next = lookup(f)?;
        let (s_acc, t_next) = (alg.source(acc.terms[0].0), alg.target(next.terms[0].0));
        if s_acc != t_next {
            return Err(Error::Parse(format!("`{word}` does not compose")));
        }
        acc = alg.multiply(&acc, &next);
        if acc.is_zero() {
            return Ok(acc);
        }
    }
    Ok(acc)
}

/// The path algebra of `1 → 2 → 3` (arrows `a: 1→2`, `b: 2→3`), no relations.
pub fn a3(field: FieldSpec) -> StructureAlgebra {
    let q = Quiver::new(
        vec!["1".into(), "2".into(), "3".into()],
        vec![
            ("a".into(), "1".into(), "2".into()),
            ("b".into(), "2".into(), "3".into()),
        ],
    )
    .expect("A3 quiver");
    path_basis(&BoundQuiver::new(q, field, Vec::new()).expect("no relations"))
        .expect("A3 is finite dimensional")
}

/// The dual numbers `K[ε]/(ε²)`: one vertex `1`, loop `e`, relation `e.e`.
pub fn dual_numbers(field: FieldSpec) -> StructureAlgebra {
    let q = Quiver::new(vec!["1".into()], vec![("e".into(), "1".into(), "1".into())])
        .expect("loop quiver");
    let bq = BoundQuiver::with_relation_words(q, field, &["e.e"]).expect("admissible");
    path_basis(&bq).expect("dual numbers are finite dimensional")
}

/// The one-vertex algebra `K`.
pub fn point(field: FieldSpec) -> StructureAlgebra {
    let q = Quiver::new(vec!["1".into()], Vec::new()).expect("point quiver");
    path_basis(&BoundQuiver::new(q, field, Vec::new()).expect("no relations")).expect("finite")
}
