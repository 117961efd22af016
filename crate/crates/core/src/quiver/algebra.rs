//! Finite-dimensional algebras given by structure constants, with a complete
//! set of orthogonal idempotents ("sorts").
//!
//! Every basis element `b` lives in one Hom-space: it has a source sort and a
//! target sort, and `x · y` (read "x after y") is nonzero only when
//! `source(x) == target(y)`. The idempotent of each sort is itself a basis
//! element. Left modules therefore see `b` as a map from the `source(b)`
//! component to the `target(b)` component.

use std::fmt;
use std::sync::{Arc, OnceLock, Weak};

use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Matrix, Scalar};

/// Sparse linear combination of basis indices, sorted by index, no zero terms.
pub type Combination = Vec<(usize, Scalar)>;

/// Quiver data retained when an algebra comes from a bound quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverInfo {
    pub vertices: Vec<String>,
    /// `(name, source, target)` with endpoints as sort indices.
    pub arrows: Vec<(String, usize, usize)>,
    /// Basis index of each arrow.
    pub arrow_basis: Vec<usize>,
}

#[derive(Debug)]
struct AlgebraData {
    field: FieldSpec,
    sort_names: Vec<String>,
    labels: Vec<String>,
    source: Vec<usize>,
    target: Vec<usize>,
    idempotents: Vec<usize>,
    table: Vec<Combination>,
    generators: Vec<usize>,
    words: Vec<Vec<(Vec<usize>, Scalar)>>,
    basic: bool,
    quiver: Option<QuiverInfo>,
    opposite: OnceLock<StructureAlgebra>,
    opposite_of: Weak<AlgebraData>,
}

/// A finite-dimensional associative algebra with explicit structure constants.
/// Cheap to clone.
#[derive(Clone)]
pub struct StructureAlgebra {
    data: Arc<AlgebraData>,
}

/// Raw ingredients for [`StructureAlgebra::new`].
#[derive(Clone, Debug)]
pub struct AlgebraSpec {
    pub field: FieldSpec,
    pub sort_names: Vec<String>,
    pub labels: Vec<String>,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    /// Basis index of the idempotent of each sort.
    pub idempotents: Vec<usize>,
    /// `table[x * dim + y]` is the product `x · y`.
    pub table: Vec<Combination>,
    /// Whether the non-idempotent basis elements span the Jacobson radical
    /// and the algebra is split basic (true for bound quiver algebras and
    /// for endomorphism algebras of catalogues).
    pub basic: bool,
    pub quiver: Option<QuiverInfo>,
}

impl StructureAlgebra {
    /// Validate the structure constants (sorting, idempotents, associativity)
    /// and derive generators of the radical modulo its square.
    pub fn new(spec: AlgebraSpec) -> Result<Self> {
        let n = spec.labels.len();
        let s = spec.sort_names.len();
        if spec.source.len() != n
            || spec.target.len() != n
            || spec.table.len() != n * n
            || spec.idempotents.len() != s
        {
            return Err(Error::InvalidAlgebra("inconsistent table sizes".into()));
        }
        if spec.source.iter().chain(&spec.target).any(|&v| v >= s) {
            return Err(Error::InvalidAlgebra("sort index out of range".into()));
        }
        for (v, &e) in spec.idempotents.iter().enumerate() {
            if e >= n || spec.source[e] != v || spec.target[e] != v {
                return Err(Error::InvalidAlgebra(format!(
                    "idempotent of sort {v} is misplaced"
                )));
            }
        }
        let mut data = AlgebraData {
            field: spec.field,
            sort_names: spec.sort_names,
            labels: spec.labels,
            source: spec.source,
            target: spec.target,
            idempotents: spec.idempotents,
            table: spec.table,
            generators: Vec::new(),
            words: Vec::new(),
            basic: spec.basic,
            quiver: spec.quiver,
            opposite: OnceLock::new(),
            opposite_of: Weak::new(),
        };
        check_table(&data)?;
        if data.basic {
            let (generators, words) = radical_generators(&data)?;
            data.generators = generators;
            data.words = words;
        } else {
            data.generators = (0..n).filter(|b| !data.idempotents.contains(b)).collect();
            data.words = (0..n).map(|b| vec![(vec![b], data.field.one())]).collect();
        }
        Ok(StructureAlgebra {
            data: Arc::new(data),
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.data.field
    }
    pub fn dim(&self) -> usize {
        self.data.labels.len()
    }
    pub fn num_sorts(&self) -> usize {
        self.data.sort_names.len()
    }
    pub fn sort_names(&self) -> &[String] {
        &self.data.sort_names
    }
    pub fn sort_name(&self, s: usize) -> &str {
        &self.data.sort_names[s]
    }
    pub fn sort_index(&self, name: &str) -> Result<usize> {
        self.data
            .sort_names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }
    pub fn labels(&self) -> &[String] {
        &self.data.labels
    }
    pub fn label(&self, b: usize) -> &str {
        &self.data.labels[b]
    }
    pub fn basis_index(&self, label: &str) -> Option<usize> {
        self.data.labels.iter().position(|l| l == label)
    }
    pub fn source(&self, b: usize) -> usize {
        self.data.source[b]
    }
    pub fn target(&self, b: usize) -> usize {
        self.data.target[b]
    }
    pub fn idempotent(&self, s: usize) -> usize {
        self.data.idempotents[s]
    }
    pub fn idempotents(&self) -> &[usize] {
        &self.data.idempotents
    }
    pub fn is_idempotent_basis(&self, b: usize) -> bool {
        self.data.idempotents[self.data.source[b]] == b
    }
    /// Basis elements spanning the radical modulo its square; module
    /// morphisms need only commute with these.
    pub fn generators(&self) -> &[usize] {
        &self.data.generators
    }
    /// Each basis element as a combination of words in the generators
    /// (words list basis indices left to right, leftmost applied last);
    /// idempotents are the empty word.
    pub fn words(&self, b: usize) -> &[(Vec<usize>, Scalar)] {
        &self.data.words[b]
    }
    pub fn is_basic(&self) -> bool {
        self.data.basic
    }
    pub fn quiver(&self) -> Option<&QuiverInfo> {
        self.data.quiver.as_ref()
    }
    /// Product of two basis elements.
    pub fn product(&self, x: usize, y: usize) -> &Combination {
        &self.data.table[x * self.dim() + y]
    }
    /// Basis elements from sort `from` to sort `to`.
    pub fn basis_between(&self, from: usize, to: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&b| self.data.source[b] == from && self.data.target[b] == to)
            .collect()
    }

    /// Bilinear product of combinations.
    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut acc: Vec<Scalar> = vec![self.field().zero(); self.dim()];
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                let coeff = ca * cb;
                for (c, cc) in self.product(*a, *b) {
                    acc[*c] += &(&coeff * cc);
                }
            }
        }
        AlgebraElement::from_dense(&acc)
    }

    /// The opposite algebra: same basis and sorts, sources and targets
    /// swapped, `x ·op y = y · x`.
    /// The opposite is cached, and the opposite of the opposite is `self`
    /// (pointer-equal), so modules can move between the two freely.
    pub fn opposite(&self) -> StructureAlgebra {
        if let Some(orig) = self.data.opposite_of.upgrade() {
            return StructureAlgebra { data: orig };
        }
        self.data
            .opposite
            .get_or_init(|| self.build_opposite())
            .clone()
    }

    fn build_opposite(&self) -> StructureAlgebra {
        let d = &self.data;
        let n = self.dim();
        let mut table = vec![Vec::new(); n * n];
        for x in 0..n {
            for y in 0..n {
                table[x * n + y] = d.table[y * n + x].clone();
            }
        }
        let quiver = d.quiver.as_ref().map(|q| QuiverInfo {
            vertices: q.vertices.clone(),
            arrows: q
                .arrows
                .iter()
                .map(|(name, s, t)| (name.clone(), *t, *s))
                .collect(),
            arrow_basis: q.arrow_basis.clone(),
        });
        let mut data = AlgebraData {
            field: d.field,
            sort_names: d.sort_names.clone(),
            labels: d.labels.clone(),
            source: d.target.clone(),
            target: d.source.clone(),
            idempotents: d.idempotents.clone(),
            table,
            generators: d.generators.clone(),
            words: d
                .words
                .iter()
                .map(|ws| {
                    ws.iter()
                        .map(|(w, c)| (w.iter().rev().copied().collect(), c.clone()))
                        .collect()
                })
                .collect(),
            basic: d.basic,
            quiver,
            opposite: OnceLock::new(),
            opposite_of: Arc::downgrade(&self.data),
        };
        data.generators.sort();
        StructureAlgebra {
            data: Arc::new(data),
        }
    }

    /// Structural equality (same field, sorts, basis and table).
    pub fn same_as(&self, other: &StructureAlgebra) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || {
            let (a, b) = (&self.data, &other.data);
            a.field == b.field
                && a.sort_names == b.sort_names
                && a.labels == b.labels
                && a.source == b.source
                && a.target == b.target
                && a.idempotents == b.idempotents
                && a.table == b.table
        }
    }

    pub fn ensure_same(&self, other: &StructureAlgebra) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch(
                "operands live over different algebras".into(),
            ))
        }
    }

    pub fn ensure_basic(&self) -> Result<()> {
        if self.is_basic() {
            Ok(())
        } else {
            Err(Error::NotBoundQuiver)
        }
    }

    /// True when the algebra is commutative.
    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|x| (0..n).all(|y| self.product(x, y) == self.product(y, x)))
    }

    /// Raw ingredients, for serialisation.
    pub fn to_spec(&self) -> AlgebraSpec {
        let d = &self.data;
        AlgebraSpec {
            field: d.field,
            sort_names: d.sort_names.clone(),
            labels: d.labels.clone(),
            source: d.source.clone(),
            target: d.target.clone(),
            idempotents: d.idempotents.clone(),
            table: d.table.clone(),
            basic: d.basic,
            quiver: d.quiver.clone(),
        }
    }

    /// Left multiplication by basis element `x` as a matrix on the whole
    /// algebra (columns indexed by the basis).
    pub fn left_mult_matrix(&self, x: usize) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(self.field(), n, n);
        for y in 0..n {
            for (c, s) in self.product(x, y) {
                m[(*c, y)] = s.clone();
            }
        }
        m
    }
}

impl fmt::Debug for StructureAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "StructureAlgebra(dim {}, sorts {:?}, field {})",
            self.dim(),
            self.data.sort_names,
            self.data.field
        )
    }
}

impl PartialEq for StructureAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

fn check_table(d: &AlgebraData) -> Result<()> {
    let n = d.labels.len();
    let prod = |x: usize, y: usize| &d.table[x * n + y];
    for x in 0..n {
        for y in 0..n {
            let p = prod(x, y);
            if p.iter().any(|(_, c)| c.is_zero() || c.field() != d.field)
                || p.windows(2).any(|w| w[0].0 >= w[1].0)
            {
                return Err(Error::InvalidAlgebra(format!(
                    "product {x}*{y} is not a canonical combination"
                )));
            }
            if d.source[x] != d.target[y] {
                if !p.is_empty() {
                    return Err(Error::InvalidAlgebra(format!(
                        "product {x}*{y} of non-composable elements is nonzero"
                    )));
                }
                continue;
            }
            if p.iter()
                .any(|(z, _)| d.source[*z] != d.source[y] || d.target[*z] != d.target[x])
            {
                return Err(Error::InvalidAlgebra(format!(
                    "product {x}*{y} leaves its Hom-space"
                )));
            }
        }
    }
    for b in 0..n {
        let e_t = d.idempotents[d.target[b]];
        let e_s = d.idempotents[d.source[b]];
        let unit = vec![(b, d.field.one())];
        if prod(e_t, b) != &unit || prod(b, e_s) != &unit {
            return Err(Error::InvalidAlgebra(format!(
                "idempotents do not act as units on {}",
                d.labels[b]
            )));
        }
    }
    // Associativity on all basis triples.
    let mul = |x: &Combination, y: &Combination| -> Vec<Scalar> {
        let mut acc = vec![d.field.zero(); n];
        for (a, ca) in x {
            for (b, cb) in y {
                for (c, cc) in prod(*a, *b) {
                    acc[*c] += &(&(ca * cb) * cc);
                }
            }
        }
        acc
    };
    for x in 0..n {
        for y in 0..n {
            if d.source[x] != d.target[y] {
                continue;
            }
            for z in 0..n {
                if d.source[y] != d.target[z] {
                    continue;
                }
                let left = mul(prod(x, y), &vec![(z, d.field.one())]);
                let right = mul(&vec![(x, d.field.one())], prod(y, z));
                if left != right {
                    return Err(Error::InvalidAlgebra(format!(
                        "associativity fails on ({}, {}, {})",
                        d.labels[x], d.labels[y], d.labels[z]
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Choose radical basis elements spanning rad/rad² and express every basis
/// element as a combination of generator words.
#[allow(clippy::type_complexity)]
fn radical_generators(d: &AlgebraData) -> Result<(Vec<usize>, Vec<Vec<(Vec<usize>, Scalar)>>)> {
    let n = d.labels.len();
    let field = d.field;
    let radical: Vec<usize> = (0..n)
        .filter(|b| d.idempotents[d.source[*b]] != *b)
        .collect();
    let unit_vec = |b: usize| -> Vec<Scalar> {
        let mut v = vec![field.zero(); n];
        v[b] = field.one();
        v
    };
    let comb_vec = |c: &Combination| -> Vec<Scalar> {
        let mut v = vec![field.zero(); n];
        for (i, s) in c {
            v[*i] = s.clone();
        }
        v
    };
    // rad² spanned by products of radical basis elements.
    let mut rad2: Vec<Vec<Scalar>> = Vec::new();
    for &x in &radical {
        for &y in &radical {
            let p = &d.table[x * n + y];
            if !p.is_empty() {
                rad2.push(comb_vec(p));
            }
        }
    }
    let mut generators = Vec::new();
    let mut span = rad2.clone();
    let mut rank = Matrix::from_columns(field, n, &span).rank();
    for &b in &radical {
        span.push(unit_vec(b));
        let r = Matrix::from_columns(field, n, &span).rank();
        if r > rank {
            generators.push(b);
            rank = r;
        } else {
            span.pop();
        }
    }
    if rank != radical.len() {
        return Err(Error::InvalidAlgebra(
            "non-idempotent basis elements do not span a radical".into(),
        ));
    }
    // Words: layer by layer, keep independent products.
    let mut kept: Vec<(Vec<usize>, Vec<Scalar>)> =
        generators.iter().map(|&g| (vec![g], unit_vec(g))).collect();
    let mut layer: Vec<usize> = (0..kept.len()).collect();
    let mut guard = 0;
    while !layer.is_empty() {
        guard += 1;
        if guard > n + 1 {
            return Err(Error::InvalidAlgebra("radical is not nilpotent".into()));
        }
        let mut next = Vec::new();
        for &g in &generators {
            for &w in &layer {
                let (word, vec) = kept[w].clone();
                if d.source[g] != d.target[*word.first().unwrap()] {
                    continue;
                }
                let mut prod = vec![field.zero(); n];
                for (i, c) in vec.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (k, s) in &d.table[g * n + i] {
                        prod[*k] += &(c * s);
                    }
                }
                if prod.iter().all(Scalar::is_zero) {
                    continue;
                }
                let cols: Vec<Vec<Scalar>> = kept.iter().map(|(_, v)| v.clone()).collect();
                let before = Matrix::from_columns(field, n, &cols);
                let mut with = cols;
                with.push(prod.clone());
                if Matrix::from_columns(field, n, &with).rank() > before.rank() {
                    let mut nw = vec![g];
                    nw.extend(word);
                    kept.push((nw, prod));
                    next.push(kept.len() - 1);
                }
            }
        }
        layer = next;
    }
    if kept.len() != radical.len() {
        return Err(Error::InvalidAlgebra(
            "generators do not generate the radical".into(),
        ));
    }
    let cols: Vec<Vec<Scalar>> = kept.iter().map(|(_, v)| v.clone()).collect();
    let span = Matrix::from_columns(field, n, &cols);
    let mut words = Vec::with_capacity(n);
    for b in 0..n {
        if d.idempotents[d.source[b]] == b {
            words.push(vec![(Vec::new(), field.one())]);
            continue;
        }
        let target = Matrix::from_columns(field, n, &[unit_vec(b)]);
        let x = span
            .solve(&target)?
            .ok_or_else(|| Error::InvalidAlgebra("radical element outside word span".into()))?;
        let w = (0..kept.len())
            .filter(|&k| !x[(k, 0)].is_zero())
            .map(|k| (kept[k].0.clone(), x[(k, 0)].clone()))
            .collect();
        words.push(w);
    }
    Ok((generators, words))
}

/// A linear combination of basis elements of some algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AlgebraElement {
    pub terms: Combination,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement { terms: Vec::new() }
    }

    pub fn basis(b: usize, field: FieldSpec) -> Self {
        AlgebraElement {
            terms: vec![(b, field.one())],
        }
    }

    /// Canonicalise a dense coefficient vector.
    pub fn from_dense(v: &[Scalar]) -> Self {
        AlgebraElement {
            terms: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    /// Canonicalise an arbitrary list of terms (merging repeats).
    pub fn from_terms(field: FieldSpec, dim: usize, terms: &[(usize, Scalar)]) -> Self {
        let mut v = vec![field.zero(); dim];
        for (i, c) in terms {
            v[*i] += c;
        }
        Self::from_dense(&v)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common `(source, target)` sort of all terms, or `None` for zero.
    /// Errors when the terms are not parallel.
    pub fn sorts(&self, alg: &StructureAlgebra) -> Result<Option<(usize, usize)>> {
        let mut st = None;
        for (b, _) in &self.terms {
            let here = (alg.source(*b), alg.target(*b));
            match st {
                None => st = Some(here),
                Some(prev) if prev != here => {
                    return Err(Error::SortMismatch(format!(
                        "element mixes Hom-spaces: {}",
                        self.display(alg)
                    )));
                }
                _ => {}
            }
        }
        Ok(st)
    }

    pub fn add(&self, other: &AlgebraElement, alg: &StructureAlgebra) -> AlgebraElement {
        let terms: Vec<(usize, Scalar)> = self.terms.iter().chain(&other.terms).cloned().collect();
        Self::from_terms(alg.field(), alg.dim(), &terms)
    }

    pub fn scale(&self, s: &Scalar) -> AlgebraElement {
        AlgebraElement {
            terms: self
                .terms
                .iter()
                .map(|(b, c)| (*b, c * s))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Human-readable form such as `b.a - 2 c`.
    pub fn display(&self, alg: &StructureAlgebra) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (b, c)) in self.terms.iter().enumerate() {
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
            out.push_str(alg.label(*b));
        }
        out
    }
}
