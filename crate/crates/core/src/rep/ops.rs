//! Abelian structure: submodules, quotients, kernels, cokernels, images,
//! radical, socle and top.

use super::{RepMorphism, Representation};
use crate::error::Result;
use crate::exactfield::Matrix;

/// The submodule spanned per sort by the (independent) columns of `spans`,
/// which must be invariant under the action. Returns it with its inclusion.
pub fn submodule(y: &Representation, spans: &[Matrix]) -> (Representation, RepMorphism) {
    let alg = y.algebra();
    let lefts: Vec<Matrix> = spans
        .iter()
        .map(|m| {
            m.left_inverse()
                .expect("spanning columns must be independent")
        })
        .collect();
    let dims: Vec<usize> = spans.iter().map(Matrix::cols).collect();
    let action = (0..alg.dim())
        .map(|b| {
            let (s, t) = (alg.source(b), alg.target(b));
            lefts[t].mul(&y.act(b).mul(&spans[s]))
        })
        .collect();
    let sub = Representation::new_unchecked(alg, dims, action);
    let inc = RepMorphism::new_unchecked(&sub, y, spans.to_vec());
    (sub, inc)
}

/// The quotient by the invariant subspaces spanned by `spans`, with its
/// projection.
pub fn quotient_by(y: &Representation, spans: &[Matrix]) -> (Representation, RepMorphism) {
    let alg = y.algebra();
    let maps: Vec<(Matrix, Matrix)> = spans.iter().map(Matrix::quotient_maps).collect();
    let dims: Vec<usize> = maps.iter().map(|(p, _)| p.rows()).collect();
    let action = (0..alg.dim())
        .map(|b| {
            let (s, t) = (alg.source(b), alg.target(b));
            maps[t].0.mul(&y.act(b).mul(&maps[s].1))
        })
        .collect();
    let q = Representation::new_unchecked(alg, dims, action);
    let proj = RepMorphism::new_unchecked(y, &q, maps.into_iter().map(|(p, _)| p).collect());
    (q, proj)
}

/// The submodule generated by the given vectors (columns, per sort).
pub fn submodule_generated(y: &Representation, gens: &[Matrix]) -> (Representation, RepMorphism) {
    let alg = y.algebra();
    let field = y.field();
    let mut cols: Vec<Vec<Vec<crate::exactfield::Scalar>>> =
        (0..alg.num_sorts()).map(|_| Vec::new()).collect();
    for (s, g) in gens.iter().enumerate() {
        for c in 0..g.cols() {
            cols[s].push(g.column(c));
        }
    }
    // The submodule generated is spanned by the images of the generators
    // under every basis element.
    let mut spans = Vec::new();
    for t in 0..alg.num_sorts() {
        let mut vecs = Vec::new();
        for b in 0..alg.dim() {
            if alg.target(b) != t {
                continue;
            }
            let s = alg.source(b);
            for v in &cols[s] {
                vecs.push(y.act(b).apply(v));
            }
        }
        let m = Matrix::from_columns(field, y.dim_at(t), &vecs);
        spans.push(m.column_space());
    }
    submodule(y, &spans)
}

pub fn kernel(f: &RepMorphism) -> (Representation, RepMorphism) {
    let spans: Vec<Matrix> = f.blocks().iter().map(Matrix::kernel_basis).collect();
    submodule(f.source(), &spans)
}

pub fn cokernel(f: &RepMorphism) -> (Representation, RepMorphism) {
    let spans: Vec<Matrix> = f.blocks().iter().map(Matrix::column_space).collect();
    quotient_by(f.target(), &spans)
}

/// An image factorisation `f = mono ∘ epi`.
#[derive(Clone, Debug)]
pub struct Image {
    pub module: Representation,
    pub epi: RepMorphism,
    pub mono: RepMorphism,
}

pub fn image(f: &RepMorphism) -> Image {
    let spans: Vec<Matrix> = f.blocks().iter().map(Matrix::column_space).collect();
    let (module, mono) = submodule(f.target(), &spans);
    let epi_blocks = f
        .blocks()
        .iter()
        .zip(&spans)
        .map(|(b, sp)| sp.left_inverse().expect("independent").mul(b))
        .collect();
    let epi = RepMorphism::new_unchecked(f.source(), &module, epi_blocks);
    Image { module, epi, mono }
}

/// Radical spans per sort: sums of images of all radical basis elements.
fn radical_spans(x: &Representation) -> Vec<Matrix> {
    let alg = x.algebra();
    let field = x.field();
    (0..alg.num_sorts())
        .map(|t| {
            let parts: Vec<&Matrix> = (0..alg.dim())
                .filter(|&b| alg.target(b) == t && !alg.is_idempotent_basis(b))
                .map(|b| x.act(b))
                .collect();
            Matrix::hstack(field, x.dim_at(t), &parts).column_space()
        })
        .collect()
}

/// `rad x` with its inclusion.
pub fn radical(x: &Representation) -> Result<(Representation, RepMorphism)> {
    x.algebra().ensure_basic()?;
    Ok(submodule(x, &radical_spans(x)))
}

/// `soc x`: the joint kernel of all radical basis elements.
pub fn socle(x: &Representation) -> Result<(Representation, RepMorphism)> {
    let alg = x.algebra();
    alg.ensure_basic()?;
    let field = x.field();
    let spans: Vec<Matrix> = (0..alg.num_sorts())
        .map(|s| {
            let parts: Vec<&Matrix> = (0..alg.dim())
                .filter(|&b| alg.source(b) == s && !alg.is_idempotent_basis(b))
                .map(|b| x.act(b))
                .collect();
            Matrix::vstack(field, x.dim_at(s), &parts).kernel_basis()
        })
        .collect();
    Ok(submodule(x, &spans))
}

/// `x / rad x` with its projection.
pub fn top(x: &Representation) -> Result<(Representation, RepMorphism)> {
    x.algebra().ensure_basic()?;
    Ok(quotient_by(x, &radical_spans(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::FieldSpec;
    use crate::quiver::{a3, dual_numbers};
    use crate::rep::{hom_basis, projective, simple};

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn kernel_of_identity_is_zero() {
        let alg = a3(Q);
        let p = projective(&alg, 0).unwrap();
        let (k, _) = kernel(&RepMorphism::identity(&p));
        assert!(k.is_zero());
    }

    #[test]
    fn dual_numbers_sequence() {
        let alg = dual_numbers(Q);
        let r = projective(&alg, 0).unwrap();
        let k = simple(&alg, 0).unwrap();
        let p = hom_basis(&r, &k).unwrap().remove(0);
        let (c, _) = cokernel(&p);
        assert_eq!(c.total_dim(), 0);
        let (ker, inc) = kernel(&p);
        assert_eq!(ker.dims(), &[1]);
        assert!(inc.is_mono());
        // jp is multiplication by e; its image is the socle.
        let j = hom_basis(&k, &r).unwrap().remove(0);
        let jp = j.compose(&p);
        let im = image(&jp);
        assert_eq!(im.module.total_dim(), 1);
        assert_eq!(im.mono.compose(&im.epi), jp);
        let (soc, _) = socle(&r).unwrap();
        let (rad, _) = radical(&r).unwrap();
        assert_eq!(soc.total_dim(), 1);
        assert_eq!(rad.total_dim(), 1);
    }

    #[test]
    fn radical_of_p1_is_p2() {
        let alg = a3(Q);
        let p1 = projective(&alg, 0).unwrap();
        let (rad, _) = radical(&p1).unwrap();
        assert_eq!(rad.dims(), &[0, 1, 1]);
        let s2 = simple(&alg, 1).unwrap();
        assert!(radical(&s2).unwrap().0.is_zero());
        let (t, _) = top(&p1).unwrap();
        assert_eq!(t.dims(), &[1, 0, 0]);
    }
}
