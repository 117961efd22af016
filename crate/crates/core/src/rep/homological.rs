//! Projective, injective and simple modules, projective presentations,
//! duality and the Auslander-Reiten translate `τ = D Tr`.

use super::ops::{cokernel, kernel, radical};
use super::{direct_sum, RepMorphism, Representation};
use crate::error::{Error, Result};
use crate::exactfield::{Matrix, Scalar};
use crate::quiver::{AlgebraElement, StructureAlgebra};

fn check_vertex(alg: &StructureAlgebra, v: usize) -> Result<()> {
    if v < alg.num_sorts() {
        Ok(())
    } else {
        Err(Error::UnknownVertex(v.to_string()))
    }
}

/// Basis of `A e_v` at each sort: the basis elements with source `v`
/// grouped by target, in basis order.
fn projective_basis(alg: &StructureAlgebra, v: usize) -> Vec<Vec<usize>> {
    let mut per_sort = vec![Vec::new(); alg.num_sorts()];
    for b in 0..alg.dim() {
        if alg.source(b) == v {
            per_sort[alg.target(b)].push(b);
        }
    }
    per_sort
}

/// The indecomposable projective `P_v = A e_v`.
pub fn projective(alg: &StructureAlgebra, v: usize) -> Result<Representation> {
    check_vertex(alg, v)?;
    let field = alg.field();
    let basis = projective_basis(alg, v);
    let pos = |t: usize, b: usize| {
        basis[t]
            .iter()
            .position(|&x| x == b)
            .expect("element of the projective")
    };
    let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
    let action = (0..alg.dim())
        .map(|b| {
            let (s, t) = (alg.source(b), alg.target(b));
            let mut m = Matrix::zeros(field, dims[t], dims[s]);
            for (j, &y) in basis[s].iter().enumerate() {
                for (z, c) in alg.product(b, y) {
                    m[(pos(t, *z), j)] = c.clone();
                }
            }
            m
        })
        .collect();
    Ok(Representation::new_unchecked(alg, dims, action))
}

/// The indecomposable injective `I_v = D(e_v A)`, computed as the dual of
/// the projective of the opposite algebra.
pub fn injective(alg: &StructureAlgebra, v: usize) -> Result<Representation> {
    let op = alg.opposite();
    Ok(dual(&projective(&op, v)?))
}

/// The simple module at `v`.
pub fn simple(alg: &StructureAlgebra, v: usize) -> Result<Representation> {
    check_vertex(alg, v)?;
    alg.ensure_basic()?;
    let field = alg.field();
    let dims: Vec<usize> = (0..alg.num_sorts()).map(|s| usize::from(s == v)).collect();
    let action = (0..alg.dim())
        .map(|b| {
            let (s, t) = (alg.source(b), alg.target(b));
            if alg.is_idempotent_basis(b) {
                Matrix::identity(field, dims[s])
            } else {
                Matrix::zeros(field, dims[t], dims[s])
            }
        })
        .collect();
    Ok(Representation::new_unchecked(alg, dims, action))
}

/// One summand `P_vertex` of a free module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreeGenerator {
    pub vertex: usize,
}

/// `⊕ P_{v_i}` in the given order.
pub fn free_module(alg: &StructureAlgebra, vertices: &[usize]) -> Result<Representation> {
    let ps = vertices
        .iter()
        .map(|&v| projective(alg, v))
        .collect::<Result<Vec<_>>>()?;
    direct_sum(alg, &ps)
}

/// Position of basis element `b` of summand `i` inside `(⊕ P_{v_i})_t`.
fn free_position(alg: &StructureAlgebra, vertices: &[usize], i: usize, b: usize) -> usize {
    let t = alg.target(b);
    let before: usize = vertices[..i]
        .iter()
        .map(|&v| alg.basis_between(v, t).len())
        .sum();
    before
        + alg
            .basis_between(vertices[i], t)
            .iter()
            .position(|&x| x == b)
            .expect("basis element of the summand")
}

/// The morphism `⊕ P_{v_i} → x` sending the `i`-th generator `e_{v_i}` to
/// `images[i] ∈ x_{v_i}`.
pub fn map_from_free(
    alg: &StructureAlgebra,
    vertices: &[usize],
    x: &Representation,
    images: &[Vec<Scalar>],
) -> Result<RepMorphism> {
    let free = free_module(alg, vertices)?;
    let field = alg.field();
    let mut blocks: Vec<Matrix> = (0..alg.num_sorts())
        .map(|t| Matrix::zeros(field, x.dim_at(t), free.dim_at(t)))
        .collect();
    for (i, &v) in vertices.iter().enumerate() {
        if images[i].len() != x.dim_at(v) {
            return Err(Error::Dimension(format!(
                "generator image {i} has the wrong length"
            )));
        }
        for b in 0..alg.dim() {
            if alg.source(b) != v {
                continue;
            }
            let t = alg.target(b);
            let col = free_position(alg, vertices, i, b);
            let img = x.act(b).apply(&images[i]);
            for (r, c) in img.into_iter().enumerate() {
                blocks[t][(r, col)] = c;
            }
        }
    }
    Ok(RepMorphism::new_unchecked(&free, x, blocks))
}

/// The morphism `⊕_l P_{from_l} → ⊕_k P_{to_k}` sending generator `l` to
/// `Σ_k elems[l][k] · g_k`, where `elems[l][k]` runs from `to_k` to `from_l`.
pub fn map_between_free(
    alg: &StructureAlgebra,
    from: &[usize],
    to: &[usize],
    elems: &[Vec<AlgebraElement>],
) -> Result<RepMorphism> {
    let target = free_module(alg, to)?;
    let field = alg.field();
    let images: Vec<Vec<Scalar>> = from
        .iter()
        .enumerate()
        .map(|(l, &s)| {
            let mut v = vec![field.zero(); target.dim_at(s)];
            for (k, _) in to.iter().enumerate() {
                for (b, c) in &elems[l][k].terms {
                    debug_assert_eq!(alg.target(*b), s);
                    v[free_position(alg, to, k, *b)] += c;
                }
            }
            v
        })
        .collect();
    map_from_free(alg, from, &target, &images)
}

/// Read off the generator images of a morphism out of a free module as
/// algebra elements: `result[l][k]` is the `k`-th component of the image of
/// generator `l`.
fn elements_of_map(
    alg: &StructureAlgebra,
    from: &[usize],
    to: &[usize],
    f: &RepMorphism,
) -> Vec<Vec<AlgebraElement>> {
    from.iter()
        .enumerate()
        .map(|(l, &s)| {
            let gen_col = free_position(alg, from, l, alg.idempotent(s));
            to.iter()
                .enumerate()
                .map(|(k, &u)| {
                    let terms: Vec<(usize, Scalar)> = alg
                        .basis_between(u, s)
                        .into_iter()
                        .map(|b| {
                            (
                                b,
                                f.block(s)[(free_position(alg, to, k, b), gen_col)].clone(),
                            )
                        })
                        .filter(|(_, c)| !c.is_zero())
                        .collect();
                    AlgebraElement { terms }
                })
                .collect()
        })
        .collect()
}

/// Projective cover: vertices of the generators and the epimorphism
/// `⊕ P_{v_i} → x` sending generators to lifts of a basis of the top.
pub fn projective_cover(x: &Representation) -> Result<(Vec<usize>, RepMorphism)> {
    let (vertices, images) = top_generators(x)?;
    let f = map_from_free(x.algebra(), &vertices, x, &images)?;
    Ok((vertices, f))
}

/// A minimal generating tuple: lifts of a basis of the top, with their sorts.
pub fn top_generators(x: &Representation) -> Result<(Vec<usize>, Vec<Vec<Scalar>>)> {
    let alg = x.algebra();
    let (_, rad_inc) = radical(x)?;
    let mut vertices = Vec::new();
    let mut images = Vec::new();
    for s in 0..alg.num_sorts() {
        let comp = rad_inc.block(s).complement_columns();
        for c in 0..comp.cols() {
            vertices.push(s);
            images.push(comp.column(c));
        }
    }
    Ok((vertices, images))
}

/// A minimal projective presentation `P1 --d1--> P0 --d0--> x → 0`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub p0_vertices: Vec<usize>,
    pub p1_vertices: Vec<usize>,
    pub d0: RepMorphism,
    pub d1: RepMorphism,
    /// `elements[k][l]`: generator `k` of `P1` maps to `Σ_l elements[k][l]·g_l`.
    pub elements: Vec<Vec<AlgebraElement>>,
}

pub fn minimal_projective_presentation(x: &Representation) -> Result<Presentation> {
    let alg = x.algebra();
    let (p0_vertices, d0) = projective_cover(x)?;
    let (k, inc) = kernel(&d0);
    let (p1_vertices, cover) = projective_cover(&k)?;
    let d1 = inc.compose(&cover);
    let d1 = d1.retarget(&free_module(alg, &p1_vertices)?, d0.source());
    let elements = elements_of_map(alg, &p1_vertices, &p0_vertices, &d1);
    Ok(Presentation {
        p0_vertices,
        p1_vertices,
        d0,
        d1,
        elements,
    })
}

/// The vector-space dual, a module over the opposite algebra.
pub fn dual(x: &Representation) -> Representation {
    let op = x.algebra().opposite();
    let action = x.actions().iter().map(Matrix::transpose).collect();
    Representation::new_unchecked(&op, x.dims().to_vec(), action)
}

/// The Auslander-Reiten transpose, a module over the opposite algebra:
/// the cokernel of `Hom(d1, A): Hom(P0, A) → Hom(P1, A)`.
pub fn transpose(x: &Representation) -> Result<Representation> {
    let alg = x.algebra();
    let pres = minimal_projective_presentation(x)?;
    let op = alg.opposite();
    let elems: Vec<Vec<AlgebraElement>> = (0..pres.p0_vertices.len())
        .map(|l| {
            (0..pres.p1_vertices.len())
                .map(|k| pres.elements[k][l].clone())
                .collect()
        })
        .collect();
    let f = map_between_free(&op, &pres.p0_vertices, &pres.p1_vertices, &elems)?;
    Ok(cokernel(&f).0)
}

/// `τ x = D Tr x`. Projective summands of `x` contribute nothing.
pub fn ar_translate(x: &Representation) -> Result<Representation> {
    Ok(dual(&transpose(x)?))
}

/// `τ⁻ x = Tr D x`. Injective summands of `x` contribute nothing.
pub fn ar_translate_inverse(x: &Representation) -> Result<Representation> {
    transpose(&dual(x))
}
