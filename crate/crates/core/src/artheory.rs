//! Catalogues of indecomposables for algebras of finite representation
//! type, irreducible maps, almost split sequences and DOT export.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exactfield::{poly, FieldSpec, Matrix, Scalar};
use crate::quiver::StructureAlgebra;
use crate::rep::{
    self, ar_translate, ar_translate_inverse, cokernel, decompose, direct_sum_with_maps, hom_basis,
    injective, kernel, projective, radical, simple, socle, top, DirectSum, RepMorphism,
    Representation,
};

/// Limits on the closure construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_total_dim: usize,
    pub max_entries: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_total_dim: 24,
            max_entries: 64,
        }
    }
}

/// How completeness of a catalogue was established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// The closure reached a fixpoint within the bounds.
    Fixpoint,
    /// Fixpoint reached and an exhaustive enumeration agreed.
    FixpointAndOracle,
    /// Produced by exhaustive enumeration.
    Oracle,
    /// Construction stopped at a bound; the catalogue may be partial.
    BoundsHit(String),
    /// Loaded from a cache file that recorded the given provenance.
    Cached(String),
    /// The indecomposables of a definable subcategory, taken from a
    /// complete catalogue.
    Subcategory,
}

#[derive(Clone, Debug)]
pub struct CatalogueEntry {
    pub module: Representation,
    pub projective: bool,
    pub injective: bool,
    pub simple: bool,
}

/// The indecomposables of an algebra, ordered by (total dim, dim vector).
#[derive(Debug)]
pub struct Catalogue {
    algebra: StructureAlgebra,
    entries: Vec<CatalogueEntry>,
    complete: bool,
    provenance: Provenance,
    generator: OnceLock<DirectSum>,
    homs: Vec<OnceLock<Vec<RepMorphism>>>,
    rads: Vec<OnceLock<Vec<RepMorphism>>>,
}

impl Clone for Catalogue {
    fn clone(&self) -> Self {
        Catalogue::from_parts(
            self.algebra.clone(),
            self.entries.clone(),
            self.complete,
            self.provenance.clone(),
        )
    }
}

impl Catalogue {
    pub(crate) fn from_parts(
        algebra: StructureAlgebra,
        entries: Vec<CatalogueEntry>,
        complete: bool,
        provenance: Provenance,
    ) -> Self {
        let n = entries.len();
        Catalogue {
            algebra,
            entries,
            complete,
            provenance,
            generator: OnceLock::new(),
            homs: (0..n * n).map(|_| OnceLock::new()).collect(),
            rads: (0..n * n).map(|_| OnceLock::new()).collect(),
        }
    }

    /// Assemble a catalogue from given indecomposables (sorted and flagged
    /// here); used by the exhaustive oracle and by cache loading.
    pub fn from_modules(
        algebra: &StructureAlgebra,
        modules: Vec<Representation>,
        complete: bool,
        provenance: Provenance,
    ) -> Result<Self> {
        let mut modules = modules;
        modules.sort_by_key(|m| (m.total_dim(), m.dims().to_vec()));
        let entries = flag_entries(algebra, modules)?;
        Ok(Self::from_parts(
            algebra.clone(),
            entries,
            complete,
            provenance,
        ))
    }

    pub fn algebra(&self) -> &StructureAlgebra {
        &self.algebra
    }
    pub fn entries(&self) -> &[CatalogueEntry] {
        &self.entries
    }
    pub fn len(&self) -> usize {
        self.entries.len()
    }
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
    pub fn module(&self, i: usize) -> &Representation {
        &self.entries[i].module
    }
    pub fn modules(&self) -> Vec<Representation> {
        self.entries.iter().map(|e| e.module.clone()).collect()
    }
    pub fn is_complete(&self) -> bool {
        self.complete
    }
    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }
    pub fn set_provenance(&mut self, p: Provenance) {
        self.provenance = p;
    }

    pub fn ensure_complete(&self) -> Result<()> {
        if self.complete {
            Ok(())
        } else {
            Err(Error::IncompleteCatalogue(format!("{:?}", self.provenance)))
        }
    }

    /// The additive generator `M₀ = ⊕ entries` with its structure maps.
    pub fn generator(&self) -> &DirectSum {
        self.generator.get_or_init(|| {
            direct_sum_with_maps(&self.algebra, &self.modules()).expect("same algebra")
        })
    }

    /// Cached basis of `Hom(N_i, N_j)`.
    pub fn hom(&self, i: usize, j: usize) -> &[RepMorphism] {
        self.homs[i * self.len() + j]
            .get_or_init(|| hom_basis(self.module(i), self.module(j)).expect("same algebra"))
    }

    /// Cached basis of the radical `rad(N_i, N_j)`: all of Hom for `i ≠ j`,
    /// the non-invertible endomorphisms for `i = j`.
    pub fn rad(&self, i: usize, j: usize) -> &[RepMorphism] {
        self.rads[i * self.len() + j].get_or_init(|| {
            if i != j {
                self.hom(i, j).to_vec()
            } else {
                endomorphism_radical(self.module(i), self.hom(i, i))
            }
        })
    }

    /// Index of the entry isomorphic to the indecomposable `x`, with an
    /// isomorphism `x → entry`.
    pub fn find(&self, x: &Representation) -> Option<(usize, RepMorphism)> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.module.dims() == x.dims())
            .find_map(|(i, e)| rep::iso_between_indecomposables(x, &e.module).map(|f| (i, f)))
    }

    /// Decompose `x` and identify each summand with a catalogue entry:
    /// returns `(entry index, inclusion entry → x, projection x → entry)`.
    pub fn locate_summands(
        &self,
        x: &Representation,
    ) -> Result<Vec<(usize, RepMorphism, RepMorphism)>> {
        let d = decompose(x)?;
        let mut out = Vec::new();
        for s in &d.summands {
            let (idx, phi) = self.find(&s.module).ok_or_else(|| {
                Error::IncompleteCatalogue(format!(
                    "summand {} not in the catalogue",
                    s.module.dim_label()
                ))
            })?;
            let phi_inv = phi.inverse().expect("isomorphism");
            out.push((
                idx,
                s.inclusion.compose(&phi_inv),
                phi.compose(&s.projection),
            ));
        }
        Ok(out)
    }

    /// Dimension-vector label of entry `i`.
    pub fn label(&self, i: usize) -> String {
        self.module(i).dim_label()
    }
}

/// Basis of the radical of a local endomorphism algebra: the span of
/// `f - λ_f` where `λ_f` is the eigenvalue of the basis element `f`.
fn endomorphism_radical(x: &Representation, basis: &[RepMorphism]) -> Vec<RepMorphism> {
    let field = x.field();
    let shifted: Vec<RepMorphism> = basis
        .iter()
        .filter_map(|f| {
            let blocks: Vec<&Matrix> = f.blocks().iter().collect();
            let m = poly::min_poly_blocks(field, &blocks);
            poly::single_root(&m).map(|l| f.sub(&RepMorphism::identity(x).scale(&l)))
        })
        .collect();
    independent(&shifted)
}

/// A maximal independent subfamily, chosen left to right.
fn independent(ms: &[RepMorphism]) -> Vec<RepMorphism> {
    if ms.is_empty() {
        return Vec::new();
    }
    let m = flatten_columns(ms);
    let (_, piv) = m.rref();
    piv.into_iter().map(|i| ms[i].clone()).collect()
}

fn flatten_columns(ms: &[RepMorphism]) -> Matrix {
    let field = ms[0].source().field();
    let len = ms[0].flatten().len();
    let cols: Vec<Vec<Scalar>> = ms.iter().map(RepMorphism::flatten).collect();
    Matrix::from_columns(field, len, &cols)
}

fn flag_entries(
    alg: &StructureAlgebra,
    modules: Vec<Representation>,
) -> Result<Vec<CatalogueEntry>> {
    let ps = (0..alg.num_sorts())
        .map(|v| projective(alg, v))
        .collect::<Result<Vec<_>>>()?;
    let is_ = (0..alg.num_sorts())
        .map(|v| injective(alg, v))
        .collect::<Result<Vec<_>>>()?;
    let ss = (0..alg.num_sorts())
        .map(|v| simple(alg, v))
        .collect::<Result<Vec<_>>>()?;
    let matches = |m: &Representation, list: &[Representation]| {
        list.iter()
            .any(|p| p.dims() == m.dims() && rep::iso_between_indecomposables(m, p).is_some())
    };
    Ok(modules
        .into_iter()
        .map(|m| CatalogueEntry {
            projective: matches(&m, &ps),
            injective: matches(&m, &is_),
            simple: matches(&m, &ss),
            module: m,
        })
        .collect())
}

struct Closure<'a> {
    bounds: &'a Bounds,
    known: Vec<Representation>,
    queue: VecDeque<usize>,
    hit: Option<String>,
}

impl Closure<'_> {
    fn add(&mut self, x: &Representation) -> Result<()> {
        if x.is_zero() {
            return Ok(());
        }
        let d = decompose(x)?;
        for (f, _) in d.factors {
            if f.total_dim() > self.bounds.max_total_dim {
                self.hit.get_or_insert_with(|| {
                    format!(
                        "module of total dimension {} exceeds the bound",
                        f.total_dim()
                    )
                });
                continue;
            }
            let seen = self
                .known
                .iter()
                .any(|k| k.dims() == f.dims() && rep::iso_between_indecomposables(&f, k).is_some());
            if seen {
                continue;
            }
            if self.known.len() >= self.bounds.max_entries {
                self.hit.get_or_insert_with(|| {
                    format!("more than {} indecomposables", self.bounds.max_entries)
                });
                continue;
            }
            self.known.push(f);
            self.queue.push_back(self.known.len() - 1);
        }
        Ok(())
    }
}

/// Closure construction of the catalogue.
///
/// Seeds are the projectives, injectives and simples; each new entry `F`
/// contributes `τF`, `τ⁻F`, `rad F`, `top F`, `F / soc F` and the kernels
/// and cokernels of the Hom-basis morphisms between `F` and every known
/// entry (both directions). Results are decomposed and deduplicated up to
/// isomorphism. Hitting a bound yields a partial catalogue flagged
/// incomplete.
pub fn build_catalogue(alg: &StructureAlgebra, bounds: &Bounds) -> Result<Catalogue> {
    alg.ensure_basic()?;
    let mut c = Closure {
        bounds,
        known: Vec::new(),
        queue: VecDeque::new(),
        hit: None,
    };
    for v in 0..alg.num_sorts() {
        c.add(&projective(alg, v)?)?;
        c.add(&injective(alg, v)?)?;
        c.add(&simple(alg, v)?)?;
    }
    while let Some(i) = c.queue.pop_front() {
        let f = c.known[i].clone();
        c.add(&ar_translate(&f)?)?;
        c.add(&ar_translate_inverse(&f)?)?;
        c.add(&radical(&f)?.0)?;
        c.add(&top(&f)?.0)?;
        let (_, soc_inc) = socle(&f)?;
        c.add(&cokernel(&soc_inc).0)?;
        let mut j = 0;
        while j < c.known.len() {
            let g = c.known[j].clone();
            for (a, b) in [(&f, &g), (&g, &f)] {
                for h in hom_basis(a, b)? {
                    c.add(&kernel(&h).0)?;
                    c.add(&cokernel(&h).0)?;
                }
                if j == i {
                    break;
                }
            }
            j += 1;
        }
    }
    let complete = c.hit.is_none();
    let provenance = match c.hit {
        None => Provenance::Fixpoint,
        Some(why) => Provenance::BoundsHit(why),
    };
    Catalogue::from_modules(alg, c.known, complete, provenance)
}

/// Enumerate every representation over `F_p` with dimension vector at most
/// `dim_bound` (componentwise), keep the indecomposables and deduplicate.
/// Fails when the number of generator-matrix tuples to enumerate exceeds
/// `budget`.
pub fn exhaustive_catalogue_oracle(
    alg: &StructureAlgebra,
    dim_bound: &[usize],
    budget: u64,
) -> Result<Catalogue> {
    alg.ensure_basic()?;
    let FieldSpec::Prime(p) = alg.field() else {
        return Err(Error::Unsupported(
            "the exhaustive oracle needs a prime field".into(),
        ));
    };
    if dim_bound.len() != alg.num_sorts() {
        return Err(Error::Dimension("one bound per sort is required".into()));
    }
    let gens = alg.generators().to_vec();
    let mut dim_vectors: Vec<Vec<usize>> = vec![Vec::new()];
    for &b in dim_bound {
        dim_vectors = dim_vectors
            .into_iter()
            .flat_map(|v| (0..=b).map(move |d| [v.clone(), vec![d]].concat()))
            .collect();
    }
    let mut total: u64 = 0;
    for dims in &dim_vectors {
        let entries: u32 = gens
            .iter()
            .map(|&g| (dims[alg.target(g)] * dims[alg.source(g)]) as u32)
            .sum();
        let count = (p as u64)
            .checked_pow(entries)
            .ok_or_else(|| Error::BudgetExceeded("overflow".into()))?;
        total = total.saturating_add(count);
    }
    if total > budget {
        return Err(Error::BudgetExceeded(format!(
            "{total} tuples exceed the budget of {budget}"
        )));
    }
    let mut found: Vec<Representation> = Vec::new();
    let field = alg.field();
    for dims in dim_vectors {
        if dims.iter().all(|&d| d == 0) {
            continue;
        }
        let shapes: Vec<(usize, usize)> = gens
            .iter()
            .map(|&g| (dims[alg.target(g)], dims[alg.source(g)]))
            .collect();
        let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
        let mut digits = vec![0u32; entries];
        loop {
            let mut k = 0;
            let mats: Vec<(usize, Matrix)> = gens
                .iter()
                .zip(&shapes)
                .map(|(&g, &(r, c))| {
                    let m = Matrix::from_fn(field, r, c, |_, _| {
                        k += 1;
                        Scalar::Fp {
                            v: digits[k - 1],
                            p,
                        }
                    });
                    (g, m)
                })
                .collect();
            if let Ok(x) = Representation::from_generators(alg, dims.clone(), &mats) {
                if rep::endomorphism_algebra_is_local(&x)
                    && !found.iter().any(|f| {
                        f.dims() == x.dims() && rep::iso_between_indecomposables(&x, f).is_some()
                    })
                {
                    found.push(x);
                }
            }
            // Next tuple.
            let mut carry = true;
            for d in digits.iter_mut() {
                *d += 1;
                if *d < p {
                    carry = false;
                    break;
                }
                *d = 0;
            }
            if carry {
                break;
            }
        }
    }
    Catalogue::from_modules(alg, found, true, Provenance::Oracle)
}

/// `counts[i][j] = dim rad(N_i, N_j) / rad²(N_i, N_j)`.
#[allow(clippy::needless_range_loop)]
pub fn irreducible_map_counts(cat: &Catalogue) -> Result<Vec<Vec<usize>>> {
    cat.ensure_complete()?;
    let n = cat.len();
    let mut counts = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let rad = cat.rad(i, j);
            if rad.is_empty() {
                continue;
            }
            let sq = rad_squared(cat, i, j);
            counts[i][j] = rad.len() - sq;
        }
    }
    Ok(counts)
}

/// Composites `rad(Z, N_j) ∘ rad(N_i, Z)` over all entries `Z`.
fn rad_squared_family(cat: &Catalogue, i: usize, j: usize) -> Vec<RepMorphism> {
    let mut out = Vec::new();
    for z in 0..cat.len() {
        for f in cat.rad(i, z) {
            for g in cat.rad(z, j) {
                let c = g.compose(f);
                if !c.is_zero() {
                    out.push(c);
                }
            }
        }
    }
    out
}

fn rad_squared(cat: &Catalogue, i: usize, j: usize) -> usize {
    let fam = rad_squared_family(cat, i, j);
    if fam.is_empty() {
        0
    } else {
        flatten_columns(&fam).rank()
    }
}

/// An almost split sequence `0 → τC → E → C → 0` with witnesses.
#[derive(Clone, Debug)]
pub struct ArSequence {
    pub left: usize,
    /// Catalogue indices of the middle term's summands, with repetition.
    pub middle: Vec<usize>,
    pub right: usize,
    pub kernel: Representation,
    pub inclusion: RepMorphism,
    pub sink: RepMorphism,
}

/// One almost split sequence per non-projective entry, built from its sink
/// map (a basis of irreducible maps into it) and verified exact, non-split
/// and with kernel `τC`.
#[allow(clippy::needless_range_loop)]
pub fn ar_sequences(cat: &Catalogue) -> Result<Vec<ArSequence>> {
    let counts = irreducible_map_counts(cat)?;
    let n = cat.len();
    let mut out = Vec::new();
    for c in 0..n {
        if cat.entries()[c].projective {
            continue;
        }
        let cmod = cat.module(c);
        let mut middle = Vec::new();
        let mut comps: Vec<RepMorphism> = Vec::new();
        for z in 0..n {
            if counts[z][c] == 0 {
                continue;
            }
            let sq = rad_squared_family(cat, z, c);
            let mut chosen: Vec<RepMorphism> = sq.clone();
            let mut rank = if sq.is_empty() {
                0
            } else {
                flatten_columns(&sq).rank()
            };
            for f in cat.rad(z, c) {
                chosen.push(f.clone());
                let r = flatten_columns(&chosen).rank();
                if r > rank {
                    rank = r;
                    middle.push(z);
                    comps.push(f.clone());
                } else {
                    chosen.pop();
                }
            }
        }
        let mods: Vec<Representation> = middle.iter().map(|&z| cat.module(z).clone()).collect();
        let e = direct_sum_with_maps(cat.algebra(), &mods)?;
        let mut sink = RepMorphism::zero(&e.sum, cmod);
        for (k, f) in comps.iter().enumerate() {
            sink = sink.add(&f.compose(&e.projections[k]));
        }
        if !sink.is_epi() {
            return Err(Error::Witness(format!(
                "sink map into {} is not surjective",
                cat.label(c)
            )));
        }
        let (kmod, inclusion) = kernel(&sink);
        if kmod.total_dim() + cmod.total_dim() != e.sum.total_dim()
            || !sink.compose(&inclusion).is_zero()
        {
            return Err(Error::Witness(format!(
                "sequence ending at {} is not exact",
                cat.label(c)
            )));
        }
        let tau = ar_translate(cmod)?;
        let left = cat.find(&kmod).map(|(i, _)| i).ok_or_else(|| {
            Error::Witness(format!(
                "kernel of the sink map into {} is not indecomposable",
                cat.label(c)
            ))
        })?;
        if rep::is_isomorphic(&kmod, &tau)?.is_none() {
            return Err(Error::Witness(format!(
                "kernel of the sink map into {} is not τC",
                cat.label(c)
            )));
        }
        if has_section(&sink)? {
            return Err(Error::Witness(format!(
                "sequence ending at {} splits",
                cat.label(c)
            )));
        }
        out.push(ArSequence {
            left,
            middle,
            right: c,
            kernel: kmod,
            inclusion,
            sink,
        });
    }
    Ok(out)
}

/// Whether `g: E → C` has a section, by solving `g ∘ s = 1` over `Hom(C, E)`.
pub fn has_section(g: &RepMorphism) -> Result<bool> {
    let basis = hom_basis(g.target(), g.source())?;
    let id = RepMorphism::identity(g.target()).flatten();
    if basis.is_empty() {
        return Ok(id.is_empty());
    }
    let composites: Vec<RepMorphism> = basis.iter().map(|s| g.compose(s)).collect();
    let a = flatten_columns(&composites);
    let b = Matrix::from_columns(g.source().field(), id.len(), &[id]);
    Ok(a.solve(&b)?.is_some())
}

/// DOT text for the AR quiver: nodes labelled by dimension vectors (with a
/// `#k` suffix on repeated labels), arrows with multiplicities, and dotted
/// edges `C → τC` for the almost split sequences.
pub fn export_ar_quiver(cat: &Catalogue) -> Result<String> {
    let counts = irreducible_map_counts(cat)?;
    let seqs = ar_sequences(cat)?;
    let names = node_names(cat);
    let arrows: usize = counts.iter().flatten().sum();
    let mut out = String::new();
    writeln!(out, "digraph ar_quiver {{").unwrap();
    writeln!(out, "  // {}", summary_line(cat.len(), arrows, seqs.len())).unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    for (i, name) in names.iter().enumerate() {
        let e = &cat.entries()[i];
        let mut flags = Vec::new();
        if e.projective {
            flags.push("P");
        }
        if e.injective {
            flags.push("I");
        }
        if e.simple {
            flags.push("S");
        }
        let shape = if flags.is_empty() {
            String::new()
        } else {
            format!(", xlabel=\"{}\"", flags.join(""))
        };
        writeln!(out, "  \"{name}\" [label=\"{}\"{shape}];", cat.label(i)).unwrap();
    }
    for (i, row) in counts.iter().enumerate() {
        for (j, &m) in row.iter().enumerate() {
            if m == 1 {
                writeln!(out, "  \"{}\" -> \"{}\";", names[i], names[j]).unwrap();
            } else if m > 1 {
                writeln!(
                    out,
                    "  \"{}\" -> \"{}\" [label=\"{m}\"];",
                    names[i], names[j]
                )
                .unwrap();
            }
        }
    }
    for s in &seqs {
        writeln!(
            out,
            "  \"{}\" -> \"{}\" [style=dotted, constraint=false, arrowhead=none];",
            names[s.right], names[s.left]
        )
        .unwrap();
    }
    writeln!(out, "}}").unwrap();
    Ok(out)
}

/// `N indecomposables, A arrows, S AR sequences`.
pub fn summary_line(entries: usize, arrows: usize, sequences: usize) -> String {
    format!("{entries} indecomposables, {arrows} arrows, {sequences} AR sequences")
}

/// Unique node names built from dimension-vector labels.
pub fn node_names(cat: &Catalogue) -> Vec<String> {
    let mut names: Vec<String> = Vec::new();
    for i in 0..cat.len() {
        let base = cat.label(i);
        let k = names
            .iter()
            .filter(|n| n.split('#').next() == Some(base.as_str()))
            .count();
        names.push(if k == 0 {
            base
        } else {
            format!("{base}#{}", k + 1)
        });
    }
    names
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{a3, dual_numbers, point};

    #[test]
    fn a3_catalogue() {
        let cat = build_catalogue(&a3(FieldSpec::Rationals), &Bounds::default()).unwrap();
        assert!(cat.is_complete());
        let dims: Vec<String> = (0..cat.len()).map(|i| cat.label(i)).collect();
        assert_eq!(
            dims,
            ["(0,0,1)", "(0,1,0)", "(1,0,0)", "(0,1,1)", "(1,1,0)", "(1,1,1)"]
        );
        let counts = irreducible_map_counts(&cat).unwrap();
        assert_eq!(counts.iter().flatten().sum::<usize>(), 6);
        let seqs = ar_sequences(&cat).unwrap();
        assert_eq!(seqs.len(), 3);
    }

    #[test]
    fn dual_numbers_catalogue() {
        let cat = build_catalogue(&dual_numbers(FieldSpec::Rationals), &Bounds::default()).unwrap();
        assert_eq!(cat.len(), 2);
        let seqs = ar_sequences(&cat).unwrap();
        assert_eq!(seqs.len(), 1);
        assert_eq!(
            (seqs[0].left, seqs[0].middle.clone(), seqs[0].right),
            (0, vec![1], 0)
        );
    }

    #[test]
    fn point_and_oracle() {
        let alg = point(FieldSpec::Prime(2));
        let cat = exhaustive_catalogue_oracle(&alg, &[3], 1000).unwrap();
        assert_eq!(cat.len(), 1);
        let alg = dual_numbers(FieldSpec::Prime(2));
        let cat = exhaustive_catalogue_oracle(&alg, &[2], 1000).unwrap();
        assert_eq!(cat.len(), 2);
        assert!(exhaustive_catalogue_oracle(&alg, &[6], 1000).is_err());
    }

    #[test]
    fn bounds_are_reported() {
        let cat = build_catalogue(
            &a3(FieldSpec::Rationals),
            &Bounds {
                max_total_dim: 24,
                max_entries: 3,
            },
        )
        .unwrap();
        assert!(!cat.is_complete());
        assert!(irreducible_map_counts(&cat).is_err());
    }
}
