//! Finitely presented functors on finite-dimensional modules, stored as
//! modules over the Auslander algebra `S = End(M₀)`.
//!
//! Sort `i` of `S` is catalogue entry `N_i`; a basis element of `S` from
//! sort `i` to sort `j` is a morphism `N_i → N_j` and multiplication is
//! composition. A functor `F` is the `S`-module with `F(N_i)` at sort `i`.
//! Functors are covariant; `(A, −)` is the representable at `A`, and a
//! morphism `f: A → B` gives `F_f = coker((f, −): (B, −) → (A, −))`.

use crate::artheory::{build_catalogue, node_names, Bounds, Catalogue};
use crate::error::{Error, Result};
use crate::exactfield::{Matrix, Scalar};
use crate::ppform::{apply_to_tuple, evaluate_pair, pp_type_generator, PairValue, PpPair};
use crate::quiver::{AlgebraElement, AlgebraSpec, Combination, StructureAlgebra};
use crate::rep::{
    direct_sum_with_maps, hom_basis, minimal_projective_presentation, radical, simple, top,
    top_generators, RepMorphism, Representation,
};

/// A finitely presented functor: a module over the Auslander algebra.
pub type FpFunctor = Representation;

/// Coordinates in a space of morphisms with a fixed basis.
#[derive(Clone, Debug)]
pub struct HomSpace {
    basis: Vec<RepMorphism>,
    flat: Matrix,
}

impl HomSpace {
    pub fn new(source: &Representation, target: &Representation, basis: Vec<RepMorphism>) -> Self {
        let rows: usize = (0..source.algebra().num_sorts())
            .map(|s| source.dim_at(s) * target.dim_at(s))
            .sum();
        let cols: Vec<Vec<Scalar>> = basis.iter().map(RepMorphism::flatten).collect();
        HomSpace {
            flat: Matrix::from_columns(source.field(), rows, &cols),
            basis,
        }
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[RepMorphism] {
        &self.basis
    }
    /// Coordinates of `g`; `None` if `g` is outside the span.
    pub fn coords(&self, g: &RepMorphism) -> Option<Vec<Scalar>> {
        let v = g.flatten();
        let rhs = Matrix::from_columns(g.source().field(), v.len(), &[v]);
        self.flat.solve(&rhs).ok().flatten().map(|z| z.column(0))
    }
}

/// The Auslander algebra of a complete catalogue.
#[derive(Clone, Debug)]
pub struct AuslanderAlgebra {
    algebra: StructureAlgebra,
    catalogue: Catalogue,
    maps: Vec<RepMorphism>,
    spaces: Vec<HomSpace>,
}

impl AuslanderAlgebra {
    pub fn algebra(&self) -> &StructureAlgebra {
        &self.algebra
    }
    pub fn catalogue(&self) -> &Catalogue {
        &self.catalogue
    }
    pub fn base(&self) -> &StructureAlgebra {
        self.catalogue.algebra()
    }
    pub fn len(&self) -> usize {
        self.catalogue.len()
    }
    pub fn is_empty(&self) -> bool {
        self.catalogue.is_empty()
    }
    /// The morphism `N_source → N_target` of basis element `b`.
    pub fn map(&self, b: usize) -> &RepMorphism {
        &self.maps[b]
    }
    /// Coordinates of `g: N_i → N_j` in the basis elements from `i` to `j`.
    pub fn element(&self, i: usize, j: usize, g: &RepMorphism) -> Result<AlgebraElement> {
        let z = self.spaces[i * self.len() + j].coords(g).ok_or_else(|| {
            Error::InvalidMorphism("not a morphism between catalogue entries".into())
        })?;
        let terms = self
            .algebra
            .basis_between(i, j)
            .into_iter()
            .zip(z)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Ok(AlgebraElement { terms })
    }
    /// The morphism `N_i → N_j` of an element running from `i` to `j`.
    pub fn morphism_of(&self, i: usize, j: usize, x: &AlgebraElement) -> RepMorphism {
        let (a, b) = (self.catalogue.module(i), self.catalogue.module(j));
        let terms: Vec<(Scalar, &RepMorphism)> = x
            .terms
            .iter()
            .map(|(k, c)| (c.clone(), &self.maps[*k]))
            .collect();
        RepMorphism::combination(a, b, &terms)
    }
}

/// `S = End(M₀)` with basis `id_i, rad(N_i, N_i)` on the diagonal and
/// `Hom(N_i, N_j)` off it.
pub fn auslander_algebra(cat: &Catalogue) -> Result<AuslanderAlgebra> {
    cat.ensure_complete()?;
    let n = cat.len();
    let field = cat.algebra().field();
    let mut labels = Vec::new();
    let mut source = Vec::new();
    let mut target = Vec::new();
    let mut maps = Vec::new();
    let mut idempotents = vec![0; n];
    let mut between: Vec<Vec<usize>> = vec![Vec::new(); n * n];
    for i in 0..n {
        for j in 0..n {
            let basis: Vec<RepMorphism> = if i == j {
                let rad = cat.rad(i, i);
                if rad.len() + 1 != cat.hom(i, i).len() {
                    return Err(Error::Unsupported(format!(
                        "End of entry {} is not split local over the base field",
                        cat.label(i)
                    )));
                }
                idempotents[i] = maps.len();
                std::iter::once(RepMorphism::identity(cat.module(i)))
                    .chain(rad.iter().cloned())
                    .collect()
            } else {
                cat.hom(i, j).to_vec()
            };
            for (k, f) in basis.into_iter().enumerate() {
                between[i * n + j].push(maps.len());
                labels.push(if i == j && k == 0 {
                    format!("id{i}")
                } else {
                    format!("f{i}_{j}_{k}")
                });
                source.push(i);
                target.push(j);
                maps.push(f);
            }
        }
    }
    let spaces: Vec<HomSpace> = (0..n * n)
        .map(|ij| {
            let (i, j) = (ij / n, ij % n);
            let basis = between[ij].iter().map(|&b| maps[b].clone()).collect();
            HomSpace::new(cat.module(i), cat.module(j), basis)
        })
        .collect();
    let dim = maps.len();
    let mut table: Vec<Combination> = Vec::with_capacity(dim * dim);
    for x in 0..dim {
        for y in 0..dim {
            if source[x] != target[y] {
                table.push(Vec::new());
                continue;
            }
            let (i, k) = (source[y], target[x]);
            let comp = maps[x].compose(&maps[y]);
            let z = spaces[i * n + k]
                .coords(&comp)
                .expect("composite lies in the Hom space");
            table.push(
                between[i * n + k]
                    .iter()
                    .zip(z)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(&b, c)| (b, c))
                    .collect(),
            );
        }
    }
    let spec = AlgebraSpec {
        field,
        sort_names: node_names(cat),
        labels,
        source,
        target,
        idempotents,
        table,
        basic: true,
        quiver: None,
    };
    let algebra = StructureAlgebra::new(spec)?;
    Ok(AuslanderAlgebra {
        algebra,
        catalogue: cat.clone(),
        maps,
        spaces,
    })
}

/// The representable functor `(a, −)`: value `Hom(a, N_i)` at sort `i`,
/// acted on by post-composition.
pub fn representable(a: &Representation, aus: &AuslanderAlgebra) -> Result<FpFunctor> {
    aus.base().ensure_same(a.algebra())?;
    let cat = aus.catalogue();
    let spaces: Vec<HomSpace> = (0..cat.len())
        .map(|i| {
            Ok(HomSpace::new(
                a,
                cat.module(i),
                hom_basis(a, cat.module(i))?,
            ))
        })
        .collect::<Result<_>>()?;
    let s = aus.algebra();
    let field = s.field();
    let dims: Vec<usize> = spaces.iter().map(HomSpace::dim).collect();
    let action = (0..s.dim())
        .map(|b| {
            let (i, j) = (s.source(b), s.target(b));
            let cols: Vec<Vec<Scalar>> = spaces[i]
                .basis()
                .iter()
                .map(|g| {
                    spaces[j]
                        .coords(&aus.map(b).compose(g))
                        .expect("post-composite lies in Hom")
                })
                .collect();
            Matrix::from_columns(field, dims[j], &cols)
        })
        .collect();
    Representation::new(s, dims, action)
}

/// `(g, −): (d, −) → (d′, −)` for `g: d′ → d`, with both representables.
pub fn representable_map(g: &RepMorphism, aus: &AuslanderAlgebra) -> Result<RepMorphism> {
    let (dp, d) = (g.source(), g.target());
    let rd = representable(d, aus)?;
    let rdp = representable(dp, aus)?;
    let cat = aus.catalogue();
    let blocks = (0..cat.len())
        .map(|i| {
            let from = hom_basis(d, cat.module(i))?;
            let to = HomSpace::new(dp, cat.module(i), hom_basis(dp, cat.module(i))?);
            let cols: Vec<Vec<Scalar>> = from
                .iter()
                .map(|h| to.coords(&h.compose(g)).expect("precomposite lies in Hom"))
                .collect();
            Ok(Matrix::from_columns(dp.field(), to.dim(), &cols))
        })
        .collect::<Result<Vec<_>>>()?;
    RepMorphism::new(&rd, &rdp, blocks)
}

/// `F(d) ≅ Hom_S((d, −), F)` with its basis of natural transformations.
#[derive(Clone, Debug)]
pub struct FunctorValue {
    pub representable: FpFunctor,
    pub basis: Vec<RepMorphism>,
}

impl FunctorValue {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn evaluate_functor(
    f: &FpFunctor,
    d: &Representation,
    aus: &AuslanderAlgebra,
) -> Result<FunctorValue> {
    aus.algebra().ensure_same(f.algebra())?;
    let rep = representable(d, aus)?;
    let basis = hom_basis(&rep, f)?;
    Ok(FunctorValue {
        representable: rep,
        basis,
    })
}

/// `F(g): F(d′) → F(d)` for `g: d′ → d`, in the bases of [`evaluate_functor`].
pub fn evaluate_functor_on_morphism(
    f: &FpFunctor,
    g: &RepMorphism,
    aus: &AuslanderAlgebra,
) -> Result<Matrix> {
    let from = evaluate_functor(f, g.source(), aus)?;
    let to = evaluate_functor(f, g.target(), aus)?;
    let yg = representable_map(g, aus)?;
    let space = HomSpace::new(&to.representable, f, to.basis.clone());
    let cols: Vec<Vec<Scalar>> = from
        .basis
        .iter()
        .map(|eta| {
            space
                .coords(&eta.compose(&yg))
                .ok_or_else(|| Error::InvalidMorphism("not natural".into()))
        })
        .collect::<Result<_>>()?;
    Ok(Matrix::from_columns(f.field(), to.dim(), &cols))
}

/// A functor built from a pair, with the coset data of each value.
#[derive(Clone, Debug)]
pub struct PairRealisation {
    pub functor: FpFunctor,
    pub values: Vec<PairValue>,
    pub sorts: Vec<usize>,
}

impl PairRealisation {
    /// Quotient coordinates at entry `i` of a tuple `v ∈ φ(N_i)`.
    pub fn coords(&self, i: usize, v: &[Scalar]) -> Result<Vec<Scalar>> {
        let val = &self.values[i];
        let n = v.len();
        let field = self.functor.field();
        let m = Matrix::hstack(field, n, &[&val.representatives, &val.psi.basis]);
        let rhs = Matrix::from_columns(field, n, &[v.to_vec()]);
        let z = m
            .solve(&rhs)?
            .ok_or_else(|| Error::Dimension("tuple outside the numerator".into()))?;
        Ok(z.column(0)[..val.dim].to_vec())
    }
    /// A representative in `φ(N_i)` of quotient coordinates.
    pub fn lift(&self, i: usize, coords: &[Scalar]) -> Vec<Scalar> {
        self.values[i].representatives.apply(coords)
    }
}

/// `F = φ/ψ` as an `S`-module, keeping the coset representatives.
pub fn realise_pp_pair(p: &PpPair, aus: &AuslanderAlgebra) -> Result<PairRealisation> {
    let cat = aus.catalogue();
    let values: Vec<PairValue> = cat
        .entries()
        .iter()
        .map(|e| evaluate_pair(p, &e.module))
        .collect::<Result<_>>()?;
    let sorts = p.free_sorts();
    let s = aus.algebra();
    let field = s.field();
    let dims: Vec<usize> = values.iter().map(|v| v.dim).collect();
    let mut real = PairRealisation {
        functor: Representation::zero(s),
        values,
        sorts,
    };
    let mut action = Vec::with_capacity(s.dim());
    for b in 0..s.dim() {
        let (i, j) = (s.source(b), s.target(b));
        let reps = &real.values[i].representatives;
        let cols: Vec<Vec<Scalar>> = (0..reps.cols())
            .map(|c| real.coords(j, &apply_to_tuple(aus.map(b), &real.sorts, &reps.column(c))))
            .collect::<Result<_>>()?;
        action.push(Matrix::from_columns(field, dims[j], &cols));
    }
    real.functor = Representation::new(s, dims, action)?;
    Ok(real)
}

pub fn functor_of_pp_pair(p: &PpPair, aus: &AuslanderAlgebra) -> Result<FpFunctor> {
    Ok(realise_pp_pair(p, aus)?.functor)
}

/// All indecomposable functors (a catalogue over the Auslander algebra).
pub fn functor_catalogue(aus: &AuslanderAlgebra, bounds: &Bounds) -> Result<Catalogue> {
    build_catalogue(aus.algebra(), bounds)
}

/// The simple functor at each catalogue entry: top of `(N_i, −)`.
pub fn simple_functors(aus: &AuslanderAlgebra) -> Result<Vec<FpFunctor>> {
    (0..aus.len()).map(|i| simple(aus.algebra(), i)).collect()
}

/// `F ≅ coker((f, −))` for a morphism `f: A → B` of base modules, with
/// `A = ⊕ N_{p0_l}` and `B = ⊕ N_{p1_k}`.
#[derive(Clone, Debug)]
pub struct FunctorPresentation {
    pub map: RepMorphism,
    pub p0: Vec<usize>,
    pub p1: Vec<usize>,
}

impl FunctorPresentation {
    pub fn source(&self) -> &Representation {
        self.map.source()
    }
    pub fn target(&self) -> &Representation {
        self.map.target()
    }
}

pub fn functor_presentation(f: &FpFunctor, aus: &AuslanderAlgebra) -> Result<FunctorPresentation> {
    aus.algebra().ensure_same(f.algebra())?;
    let pres = minimal_projective_presentation(f)?;
    let cat = aus.catalogue();
    let base = aus.base();
    let sum_of = |idx: &[usize]| {
        direct_sum_with_maps(
            base,
            &idx.iter()
                .map(|&i| cat.module(i).clone())
                .collect::<Vec<_>>(),
        )
    };
    let a = sum_of(&pres.p0_vertices)?;
    let b = sum_of(&pres.p1_vertices)?;
    let mut map = RepMorphism::zero(&a.sum, &b.sum);
    for (k, &u) in pres.p1_vertices.iter().enumerate() {
        for (l, &s) in pres.p0_vertices.iter().enumerate() {
            let akl = aus.morphism_of(s, u, &pres.elements[k][l]);
            map = map.add(&b.injections[k].compose(&akl).compose(&a.projections[l]));
        }
    }
    Ok(FunctorPresentation {
        map,
        p0: pres.p0_vertices,
        p1: pres.p1_vertices,
    })
}

/// `coker((f, −))` computed directly from a base morphism.
pub fn functor_of_morphism(f: &RepMorphism, aus: &AuslanderAlgebra) -> Result<FpFunctor> {
    let yf = representable_map(f, aus)?;
    Ok(crate::rep::cokernel(&yf).0)
}

/// A pair for `F`: with `F ≅ F_f`, `f: A → B`, and `ā` generating `A`, the
/// pair is `pp-type(ā in A) / pp-type(fā in B)`.
pub fn pp_pair_of_functor(f: &FpFunctor, aus: &AuslanderAlgebra) -> Result<PpPair> {
    let pres = functor_presentation(f, aus)?;
    let a = pres.source();
    let (sorts, tuple) = if a.is_zero() {
        (Vec::new(), Vec::new())
    } else {
        top_generators(a)?
    };
    let names: Vec<String> = (1..=sorts.len()).map(|i| format!("x{i}")).collect();
    let phi = pp_type_generator(a, &sorts, &tuple, &names)?;
    let image: Vec<Vec<Scalar>> = sorts
        .iter()
        .zip(&tuple)
        .map(|(&s, v)| pres.map.block(s).apply(v))
        .collect();
    let psi = pp_type_generator(pres.target(), &sorts, &image, &names)?;
    PpPair::new(phi, psi, aus.catalogue())
}

/// Loewy layers of `F`, top first, each written in the given names of the
/// simple functors: e.g. `S/T/S`.
pub fn loewy_label(f: &FpFunctor, names: &[&str]) -> Result<String> {
    let mut layers = Vec::new();
    let mut cur = f.clone();
    while !cur.is_zero() {
        let (t, _) = top(&cur)?;
        let mut parts = Vec::new();
        for (i, &d) in t.dims().iter().enumerate() {
            match d {
                0 => {}
                1 => parts.push(names[i].to_string()),
                _ => parts.push(format!("{d}{}", names[i])),
            }
        }
        layers.push(parts.join("+"));
        cur = radical(&cur)?.0;
    }
    Ok(if layers.is_empty() {
        "0".into()
    } else {
        layers.join("/")
    })
}

/// Convenience: catalogue then Auslander algebra.
pub fn auslander_of(alg: &StructureAlgebra, bounds: &Bounds) -> Result<AuslanderAlgebra> {
    auslander_algebra(&build_catalogue(alg, bounds)?)
}
