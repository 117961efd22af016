//! Finite-dimensional left modules over a [`StructureAlgebra`] and their
//! morphisms.
//!
//! A representation stores one matrix per algebra basis element; the matrix
//! of `b` maps the `source(b)` component to the `target(b)` component.

mod decompose;
mod homological;
mod ops;

pub use crate::rep::ops::{
    cokernel, image, kernel, quotient_by, radical, socle, submodule, submodule_generated, top,
    Image,
};
pub use decompose::{
    decompose, endomorphism_algebra_is_local, is_isomorphic, is_isomorphic_seeded,
    iso_between_indecomposables, Decomposition, Summand, DEFAULT_ISO_SEED,
};
pub use homological::{
    ar_translate, ar_translate_inverse, dual, free_module, injective, map_between_free,
    map_from_free, minimal_projective_presentation, projective, projective_cover, simple,
    top_generators, transpose, FreeGenerator, Presentation,
};

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Matrix, Scalar};
use crate::quiver::{AlgebraElement, StructureAlgebra};

#[derive(Debug)]
struct RepData {
    algebra: StructureAlgebra,
    dims: Vec<usize>,
    action: Vec<Matrix>,
}

/// A finite-dimensional module. Cheap to clone.
#[derive(Clone)]
pub struct Representation {
    data: Arc<RepData>,
}

impl Representation {
    /// Validate a full action (one matrix per basis element).
    pub fn new(algebra: &StructureAlgebra, dims: Vec<usize>, action: Vec<Matrix>) -> Result<Self> {
        let rep = Self::new_unchecked(algebra, dims, action);
        rep.validate()?;
        Ok(rep)
    }

    /// Trust the caller; used by internal constructions that are correct by
    /// construction.
    pub(crate) fn new_unchecked(
        algebra: &StructureAlgebra,
        dims: Vec<usize>,
        action: Vec<Matrix>,
    ) -> Self {
        Representation {
            data: Arc::new(RepData {
                algebra: algebra.clone(),
                dims,
                action,
            }),
        }
    }

    /// Build from matrices for the radical generators of the algebra (the
    /// arrows, for a bound quiver algebra); other basis elements act through
    /// their generator words. All relations are then checked.
    pub fn from_generators(
        algebra: &StructureAlgebra,
        dims: Vec<usize>,
        gens: &[(usize, Matrix)],
    ) -> Result<Self> {
        let field = algebra.field();
        if dims.len() != algebra.num_sorts() {
            return Err(Error::InvalidRepresentation(format!(
                "{} dimensions given for {} sorts",
                dims.len(),
                algebra.num_sorts()
            )));
        }
        let mut gen_mats: Vec<Option<Matrix>> = vec![None; algebra.dim()];
        for (g, m) in gens {
            if !algebra.generators().contains(g) {
                return Err(Error::InvalidRepresentation(format!(
                    "`{}` is not a generator",
                    algebra.label(*g)
                )));
            }
            let want = (dims[algebra.target(*g)], dims[algebra.source(*g)]);
            if m.shape() != want || m.field() != field {
                return Err(Error::InvalidRepresentation(format!(
                    "matrix for `{}` has shape {:?}, expected {:?} over {}",
                    algebra.label(*g),
                    m.shape(),
                    want,
                    field
                )));
            }
            gen_mats[*g] = Some(m.clone());
        }
        for &g in algebra.generators() {
            if gen_mats[g].is_none() {
                gen_mats[g] = Some(Matrix::zeros(
                    field,
                    dims[algebra.target(g)],
                    dims[algebra.source(g)],
                ));
            }
        }
        let mut action = Vec::with_capacity(algebra.dim());
        for b in 0..algebra.dim() {
            let (s, t) = (algebra.source(b), algebra.target(b));
            let mut m = Matrix::zeros(field, dims[t], dims[s]);
            for (word, c) in algebra.words(b) {
                if word.is_empty() {
                    m.add_scaled(c, &Matrix::identity(field, dims[s]));
                    continue;
                }
                let mut w = gen_mats[word[0]].clone().unwrap();
                for g in &word[1..] {
                    w = w.mul(gen_mats[*g].as_ref().unwrap());
                }
                m.add_scaled(c, &w);
            }
            action.push(m);
        }
        Self::new(algebra, dims, action)
    }

    /// Build a bound quiver representation from named arrow matrices.
    pub fn from_arrows(
        algebra: &StructureAlgebra,
        dims: Vec<usize>,
        arrows: &[(&str, Matrix)],
    ) -> Result<Self> {
        let gens = arrows
            .iter()
            .map(|(name, m)| {
                algebra
                    .basis_index(name)
                    .map(|b| (b, m.clone()))
                    .ok_or_else(|| Error::InvalidRepresentation(format!("unknown arrow `{name}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_generators(algebra, dims, &gens)
    }

    pub fn zero(algebra: &StructureAlgebra) -> Self {
        let field = algebra.field();
        let action = (0..algebra.dim())
            .map(|_| Matrix::zeros(field, 0, 0))
            .collect();
        Self::new_unchecked(algebra, vec![0; algebra.num_sorts()], action)
    }

    /// Check shapes, idempotent blocks and every product in the table.
    pub fn validate(&self) -> Result<()> {
        let alg = self.algebra();
        let field = alg.field();
        let d = &self.data;
        if d.dims.len() != alg.num_sorts() || d.action.len() != alg.dim() {
            return Err(Error::InvalidRepresentation(
                "wrong number of sorts or action matrices".into(),
            ));
        }
        for b in 0..alg.dim() {
            let want = (d.dims[alg.target(b)], d.dims[alg.source(b)]);
            if d.action[b].shape() != want || d.action[b].field() != field {
                return Err(Error::InvalidRepresentation(format!(
                    "action of `{}` has the wrong shape",
                    alg.label(b)
                )));
            }
        }
        for s in 0..alg.num_sorts() {
            if !d.action[alg.idempotent(s)].is_identity() {
                return Err(Error::InvalidRepresentation(format!(
                    "idempotent of sort {} does not act as 1",
                    alg.sort_name(s)
                )));
            }
        }
        for x in 0..alg.dim() {
            for y in 0..alg.dim() {
                if alg.source(x) != alg.target(y)
                    || alg.is_idempotent_basis(x)
                    || alg.is_idempotent_basis(y)
                {
                    continue;
                }
                let lhs = d.action[x].mul(&d.action[y]);
                let mut rhs = Matrix::zeros(field, lhs.rows(), lhs.cols());
                for (z, c) in alg.product(x, y) {
                    rhs.add_scaled(c, &d.action[*z]);
                }
                if lhs != rhs {
                    return Err(Error::InvalidRepresentation(format!(
                        "relation violated: action of {} * {} is wrong",
                        alg.label(x),
                        alg.label(y)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &StructureAlgebra {
        &self.data.algebra
    }
    pub fn field(&self) -> FieldSpec {
        self.data.algebra.field()
    }
    pub fn dims(&self) -> &[usize] {
        &self.data.dims
    }
    pub fn dim_at(&self, s: usize) -> usize {
        self.data.dims[s]
    }
    pub fn total_dim(&self) -> usize {
        self.data.dims.iter().sum()
    }
    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }
    /// Matrix of a basis element.
    pub fn act(&self, b: usize) -> &Matrix {
        &self.data.action[b]
    }
    pub fn actions(&self) -> &[Matrix] {
        &self.data.action
    }

    /// Matrix of an algebra element; errors if its terms are not parallel.
    pub fn act_element(&self, x: &AlgebraElement) -> Result<Matrix> {
        let alg = self.algebra();
        let Some((s, t)) = x.sorts(alg)? else {
            return Err(Error::SortMismatch(
                "the zero element has no sorts; use act_element_between".into(),
            ));
        };
        Ok(self.act_element_between(x, s, t))
    }

    /// Matrix of an element regarded as a map from sort `s` to sort `t`.
    pub fn act_element_between(&self, x: &AlgebraElement, s: usize, t: usize) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.dim_at(t), self.dim_at(s));
        for (b, c) in &x.terms {
            debug_assert_eq!(
                (self.algebra().source(*b), self.algebra().target(*b)),
                (s, t)
            );
            m.add_scaled(c, self.act(*b));
        }
        m
    }

    /// Offsets of each sort in the concatenated total space.
    pub fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.dims().len() + 1);
        let mut acc = 0;
        for d in self.dims() {
            off.push(acc);
            acc += d;
        }
        off.push(acc);
        off
    }

    /// Dimension vector as text, e.g. `(0,1,1)`.
    pub fn dim_label(&self) -> String {
        format!(
            "({})",
            self.dims()
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }

    /// Pointer or structural equality of the underlying data.
    pub fn same_as(&self, other: &Representation) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.data.dims == other.data.dims
                && self.data.action == other.data.action
                && self.algebra().same_as(other.algebra()))
    }

    /// Identical module regarded over a structurally equal algebra object.
    pub fn over(&self, algebra: &StructureAlgebra) -> Result<Representation> {
        self.algebra().ensure_same(algebra)?;
        Ok(Self::new_unchecked(
            algebra,
            self.dims().to_vec(),
            self.actions().to_vec(),
        ))
    }

    /// Apply the same change of basis `b_s` (columns = new basis in old
    /// coordinates) in every sort; returns the transported module and the
    /// isomorphism from it to `self`.
    pub fn change_basis(&self, bases: &[Matrix]) -> (Representation, RepMorphism) {
        let alg = self.algebra();
        let invs: Vec<Matrix> = bases
            .iter()
            .map(|b| b.inverse().expect("change of basis must be invertible"))
            .collect();
        let action = (0..alg.dim())
            .map(|b| {
                invs[alg.target(b)]
                    .mul(self.act(b))
                    .mul(&bases[alg.source(b)])
            })
            .collect();
        let rep = Representation::new_unchecked(alg, self.dims().to_vec(), action);
        let iso = RepMorphism::new_unchecked(&rep, self, bases.to_vec());
        (rep, iso)
    }
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Representation{}", self.dim_label())
    }
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

/// A module homomorphism given by one matrix per sort.
#[derive(Clone, Debug)]
pub struct RepMorphism {
    source: Representation,
    target: Representation,
    blocks: Vec<Matrix>,
}

impl RepMorphism {
    /// Validate shapes and naturality against every generator.
    pub fn new(
        source: &Representation,
        target: &Representation,
        blocks: Vec<Matrix>,
    ) -> Result<Self> {
        source.algebra().ensure_same(target.algebra())?;
        let f = Self::new_unchecked(source, target, blocks);
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(
        source: &Representation,
        target: &Representation,
        blocks: Vec<Matrix>,
    ) -> Self {
        RepMorphism {
            source: source.clone(),
            target: target.clone(),
            blocks,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let alg = self.source.algebra();
        if self.blocks.len() != alg.num_sorts() {
            return Err(Error::InvalidMorphism("wrong number of blocks".into()));
        }
        for (s, b) in self.blocks.iter().enumerate() {
            if b.shape() != (self.target.dim_at(s), self.source.dim_at(s)) {
                return Err(Error::InvalidMorphism(format!(
                    "block at sort {} has the wrong shape",
                    alg.sort_name(s)
                )));
            }
        }
        for b in 0..alg.dim() {
            if alg.is_idempotent_basis(b) {
                continue;
            }
            let (s, t) = (alg.source(b), alg.target(b));
            if self.target.act(b).mul(&self.blocks[s]) != self.blocks[t].mul(self.source.act(b)) {
                return Err(Error::InvalidMorphism(format!(
                    "square for `{}` does not commute",
                    alg.label(b)
                )));
            }
        }
        Ok(())
    }

    pub fn identity(x: &Representation) -> Self {
        let f = x.field();
        Self::new_unchecked(
            x,
            x,
            x.dims().iter().map(|&d| Matrix::identity(f, d)).collect(),
        )
    }

    pub fn zero(x: &Representation, y: &Representation) -> Self {
        let f = x.field();
        Self::new_unchecked(
            x,
            y,
            x.dims()
                .iter()
                .zip(y.dims())
                .map(|(&a, &b)| Matrix::zeros(f, b, a))
                .collect(),
        )
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }
    pub fn target(&self) -> &Representation {
        &self.target
    }
    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }
    pub fn block(&self, s: usize) -> &Matrix {
        &self.blocks[s]
    }

    /// `self ∘ other` (first `other`).
    pub fn compose(&self, other: &RepMorphism) -> RepMorphism {
        assert_eq!(
            other.target.dims(),
            self.source.dims(),
            "composition of non-composable morphisms"
        );
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.mul(b))
            .collect();
        Self::new_unchecked(&other.source, &self.target, blocks)
    }

    pub fn add(&self, other: &RepMorphism) -> RepMorphism {
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.add(b))
            .collect();
        Self::new_unchecked(&self.source, &self.target, blocks)
    }

    pub fn sub(&self, other: &RepMorphism) -> RepMorphism {
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.sub(b))
            .collect();
        Self::new_unchecked(&self.source, &self.target, blocks)
    }

    pub fn scale(&self, c: &Scalar) -> RepMorphism {
        Self::new_unchecked(
            &self.source,
            &self.target,
            self.blocks.iter().map(|b| b.scale(c)).collect(),
        )
    }

    /// `Σ c_i f_i` over morphisms with a common source and target.
    pub fn combination(
        source: &Representation,
        target: &Representation,
        terms: &[(Scalar, &RepMorphism)],
    ) -> RepMorphism {
        let mut acc = Self::zero(source, target);
        for (c, f) in terms {
            for (a, b) in acc.blocks.iter_mut().zip(&f.blocks) {
                a.add_scaled(c, b);
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn is_iso(&self) -> bool {
        self.source.dims() == self.target.dims()
            && self
                .blocks
                .iter()
                .all(|b| b.rows() == 0 || b.inverse().is_some())
    }

    pub fn inverse(&self) -> Option<RepMorphism> {
        if self.source.dims() != self.target.dims() {
            return None;
        }
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                if b.rows() == 0 {
                    Some(b.clone())
                } else {
                    b.inverse()
                }
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Self::new_unchecked(&self.target, &self.source, blocks))
    }

    pub fn is_mono(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols())
    }

    pub fn is_epi(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows())
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Matrix::rank).sum()
    }

    /// True when the endomorphism is nilpotent.
    pub fn is_nilpotent(&self) -> bool {
        self.blocks.iter().all(Matrix::is_nilpotent)
    }

    /// Same blocks, with source and target replaced by the given modules
    /// (which must have the same dimensions).
    pub fn retarget(&self, source: &Representation, target: &Representation) -> RepMorphism {
        assert_eq!(source.dims(), self.source.dims());
        assert_eq!(target.dims(), self.target.dims());
        Self::new_unchecked(source, target, self.blocks.clone())
    }

    /// All blocks flattened into one vector (sort by sort, row-major).
    pub fn flatten(&self) -> Vec<Scalar> {
        self.blocks
            .iter()
            .flat_map(|b| b.entries().iter().cloned())
            .collect()
    }
}

impl PartialEq for RepMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.blocks == other.blocks
            && self.source.dims() == other.source.dims()
            && self.target.dims() == other.target.dims()
    }
}

/// A basis of `Hom(x, y)` from the commuting-square equations for the
/// radical generators. The order is that of the kernel basis of the
/// equation system, hence deterministic.
pub fn hom_basis(x: &Representation, y: &Representation) -> Result<Vec<RepMorphism>> {
    x.algebra().ensure_same(y.algebra())?;
    Ok(hom_basis_unchecked(x, y))
}

pub(crate) fn hom_basis_unchecked(x: &Representation, y: &Representation) -> Vec<RepMorphism> {
    let alg = x.algebra();
    let field = x.field();
    let ns = alg.num_sorts();
    // Variable offsets for each block f_s (dims y_s × x_s, row-major).
    let mut off = vec![0usize; ns + 1];
    for s in 0..ns {
        off[s + 1] = off[s] + y.dim_at(s) * x.dim_at(s);
    }
    let nvars = off[ns];
    if nvars == 0 {
        return Vec::new();
    }
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for &g in alg.generators() {
        let (s, t) = (alg.source(g), alg.target(g));
        let (xg, yg) = (x.act(g), y.act(g));
        let (dxs, dyt) = (x.dim_at(s), y.dim_at(t));
        let (dys, dxt) = (y.dim_at(s), x.dim_at(t));
        // (Y(g) f_s - f_t X(g))[i][j] = 0 for i < dy_t, j < dx_s.
        for i in 0..dyt {
            for j in 0..dxs {
                let mut row = vec![field.zero(); nvars];
                let mut nonzero = false;
                for k in 0..dys {
                    let c = &yg[(i, k)];
                    if !c.is_zero() {
                        row[off[s] + k * dxs + j] += c;
                        nonzero = true;
                    }
                }
                for k in 0..dxt {
                    let c = &xg[(k, j)];
                    if !c.is_zero() {
                        row[off[t] + i * dxt + k] -= c;
                        nonzero = true;
                    }
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
    }
    let eq = if rows.is_empty() {
        Matrix::zeros(field, 0, nvars)
    } else {
        Matrix::from_rows(field, rows)
    };
    let ker = eq.kernel_basis();
    (0..ker.cols())
        .map(|c| {
            let blocks = (0..ns)
                .map(|s| {
                    let (r, cc) = (y.dim_at(s), x.dim_at(s));
                    Matrix::from_fn(field, r, cc, |i, j| ker[(off[s] + i * cc + j, c)].clone())
                })
                .collect();
            RepMorphism::new_unchecked(x, y, blocks)
        })
        .collect()
}

/// Direct sum with its canonical injections and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub sum: Representation,
    pub injections: Vec<RepMorphism>,
    pub projections: Vec<RepMorphism>,
}

/// Blockwise direct sum. The empty sum is the zero module.
pub fn direct_sum(algebra: &StructureAlgebra, xs: &[Representation]) -> Result<Representation> {
    Ok(direct_sum_with_maps(algebra, xs)?.sum)
}

pub fn direct_sum_with_maps(
    algebra: &StructureAlgebra,
    xs: &[Representation],
) -> Result<DirectSum> {
    for x in xs {
        algebra.ensure_same(x.algebra())?;
    }
    let field = algebra.field();
    let ns = algebra.num_sorts();
    let dims: Vec<usize> = (0..ns)
        .map(|s| xs.iter().map(|x| x.dim_at(s)).sum())
        .collect();
    let action = (0..algebra.dim())
        .map(|b| {
            let parts: Vec<&Matrix> = xs.iter().map(|x| x.act(b)).collect();
            Matrix::block_diag(field, &parts)
        })
        .collect();
    let sum = Representation::new_unchecked(algebra, dims.clone(), action);
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut offsets = vec![0usize; ns];
    for x in xs {
        let x = x.over(algebra)?;
        let mut inj = Vec::new();
        let mut proj = Vec::new();
        for s in 0..ns {
            let mut i = Matrix::zeros(field, dims[s], x.dim_at(s));
            let mut p = Matrix::zeros(field, x.dim_at(s), dims[s]);
            for k in 0..x.dim_at(s) {
                i[(offsets[s] + k, k)] = field.one();
                p[(k, offsets[s] + k)] = field.one();
            }
            inj.push(i);
            proj.push(p);
            offsets[s] += x.dim_at(s);
        }
        injections.push(RepMorphism::new_unchecked(&x, &sum, inj));
        projections.push(RepMorphism::new_unchecked(&sum, &x, proj));
    }
    Ok(DirectSum {
        sum,
        injections,
        projections,
    })
}

/// Morphism between direct sums given by a matrix of component morphisms
/// `comps[i][j]: xs[j] → ys[i]` (missing entries are zero).
pub fn matrix_morphism(
    src: &DirectSum,
    tgt: &DirectSum,
    comps: &[Vec<Option<RepMorphism>>],
) -> RepMorphism {
    let mut acc = RepMorphism::zero(&src.sum, &tgt.sum);
    for (i, row) in comps.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if let Some(f) = c {
                let part = tgt.injections[i].compose(f).compose(&src.projections[j]);
                acc = acc.add(&part);
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{a3, dual_numbers};

    const Q: FieldSpec = FieldSpec::Rationals;

    pub(crate) fn kkk() -> Representation {
        let alg = a3(Q);
        Representation::from_arrows(
            &alg,
            vec![1, 1, 1],
            &[("a", Matrix::identity(Q, 1)), ("b", Matrix::identity(Q, 1))],
        )
        .unwrap()
    }

    #[test]
    fn builds_from_arrows() {
        let x = kkk();
        assert_eq!(x.total_dim(), 3);
        let ba = x.algebra().basis_index("b.a").unwrap();
        assert!(x.act(ba).is_identity());
    }

    #[test]
    fn rejects_broken_relation() {
        let alg = dual_numbers(Q);
        let e = Matrix::identity(Q, 1);
        assert!(Representation::from_arrows(&alg, vec![1], &[("e", e)]).is_err());
    }

    #[test]
    fn endomorphisms_of_simple() {
        let alg = a3(Q);
        let s2 = simple(&alg, 1).unwrap();
        assert_eq!(hom_basis(&s2, &s2).unwrap().len(), 1);
    }

    #[test]
    fn sums_add_dims() {
        let alg = a3(Q);
        let p1 = projective(&alg, 0).unwrap();
        let s = direct_sum(&alg, &[p1.clone(), p1]).unwrap();
        assert_eq!(s.dims(), &[2, 2, 2]);
        assert!(direct_sum(&alg, &[]).unwrap().is_zero());
    }
}
