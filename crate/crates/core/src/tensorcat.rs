//! Monoidal structures on modules over a one-sort algebra, extended to
//! finitely presented functors by right exactness.

use crate::artheory::Catalogue;
use crate::error::{Error, Result};
use crate::exactfield::{Matrix, Scalar};
use crate::funcat::{
    functor_of_morphism, functor_presentation, loewy_label, representable, AuslanderAlgebra,
    FpFunctor,
};
use crate::ppform::{free_realisation, pp_type_generator, PpFormula};
use crate::quiver::StructureAlgebra;
use crate::rep::{direct_sum_with_maps, projective, simple, RepMorphism, Representation};

/// A tensor product on modules over a one-sort algebra.
pub trait MonoidalStructure {
    fn name(&self) -> &str;
    fn tensor_modules(&self, a: &Representation, b: &Representation) -> Result<Representation>;
    /// `f ⊗ g` between the products of the sources and of the targets.
    fn tensor_morphisms(&self, f: &RepMorphism, g: &RepMorphism) -> Result<RepMorphism>;
    /// The image of `x ⊗ y` in `tensor_modules(a, b)`.
    fn tensor_elements(
        &self,
        a: &Representation,
        b: &Representation,
        x: &[Scalar],
        y: &[Scalar],
    ) -> Result<Vec<Scalar>>;
    fn unit(&self, alg: &StructureAlgebra) -> Result<Representation>;
}

fn ensure_one_sort(alg: &StructureAlgebra) -> Result<()> {
    if alg.num_sorts() != 1 {
        return Err(Error::Unsupported(
            "tensor products are implemented over one-sort algebras".into(),
        ));
    }
    Ok(())
}

/// `⊗_R` over a commutative algebra: `a ⊗_K b` modulo `rx ⊗ y − x ⊗ ry`.
#[derive(Clone, Copy, Debug, Default)]
pub struct TensorOverR;

impl TensorOverR {
    /// The relation span inside `a ⊗_K b` and its quotient maps.
    fn quotient(a: &Representation, b: &Representation) -> Result<(Matrix, Matrix)> {
        let alg = a.algebra();
        alg.ensure_same(b.algebra())?;
        ensure_one_sort(alg)?;
        if !alg.is_commutative() {
            return Err(Error::Unsupported(
                "tensor over R needs a commutative algebra".into(),
            ));
        }
        let field = alg.field();
        let (da, db) = (a.dim_at(0), b.dim_at(0));
        let n = da * db;
        let (ia, ib) = (Matrix::identity(field, da), Matrix::identity(field, db));
        let rels: Vec<Matrix> = alg
            .generators()
            .iter()
            .map(|&r| a.act(r).kron(&ib).sub(&ia.kron(b.act(r))))
            .collect();
        let refs: Vec<&Matrix> = rels.iter().collect();
        let span = Matrix::hstack(field, n, &refs).column_space();
        Ok(span.quotient_maps())
    }
}

impl MonoidalStructure for TensorOverR {
    fn name(&self) -> &str {
        "tensor over R"
    }

    fn tensor_modules(&self, a: &Representation, b: &Representation) -> Result<Representation> {
        let (proj, lift) = Self::quotient(a, b)?;
        let alg = a.algebra();
        let ib = Matrix::identity(alg.field(), b.dim_at(0));
        let action = (0..alg.dim())
            .map(|r| proj.mul(&a.act(r).kron(&ib)).mul(&lift))
            .collect();
        Representation::new(alg, vec![proj.rows()], action)
    }

    fn tensor_morphisms(&self, f: &RepMorphism, g: &RepMorphism) -> Result<RepMorphism> {
        let (_, lift) = Self::quotient(f.source(), g.source())?;
        let (proj, _) = Self::quotient(f.target(), g.target())?;
        let m = proj.mul(&f.block(0).kron(g.block(0))).mul(&lift);
        RepMorphism::new(
            &self.tensor_modules(f.source(), g.source())?,
            &self.tensor_modules(f.target(), g.target())?,
            vec![m],
        )
    }

    fn tensor_elements(
        &self,
        a: &Representation,
        b: &Representation,
        x: &[Scalar],
        y: &[Scalar],
    ) -> Result<Vec<Scalar>> {
        let (proj, _) = Self::quotient(a, b)?;
        let field = a.field();
        let xm = Matrix::from_columns(field, x.len(), &[x.to_vec()]);
        let ym = Matrix::from_columns(field, y.len(), &[y.to_vec()]);
        Ok(proj.apply(&xm.kron(&ym).column(0)))
    }

    fn unit(&self, alg: &StructureAlgebra) -> Result<Representation> {
        ensure_one_sort(alg)?;
        projective(alg, 0)
    }
}

/// The group-algebra tensor on `K[ε]` in characteristic 2, with `g = 1 + ε`
/// acting diagonally; `ε` acts by `ε⊗1 + 1⊗ε + ε⊗ε`.
#[derive(Clone, Copy, Debug, Default)]
pub struct DiagonalCharTwo;

impl DiagonalCharTwo {
    fn epsilon(alg: &StructureAlgebra) -> Result<usize> {
        ensure_one_sort(alg)?;
        if alg.field().characteristic() != 2 || alg.dim() != 2 {
            return Err(Error::Unsupported(
                "the diagonal tensor needs K[ε] over a field of characteristic 2".into(),
            ));
        }
        let eps = (0..2)
            .find(|&b| !alg.is_idempotent_basis(b))
            .expect("one non-idempotent basis element");
        if !alg.product(eps, eps).is_empty() {
            return Err(Error::Unsupported(
                "the diagonal tensor needs ε² = 0".into(),
            ));
        }
        Ok(eps)
    }
}

impl MonoidalStructure for DiagonalCharTwo {
    fn name(&self) -> &str {
        "diagonal tensor over K"
    }

    fn tensor_modules(&self, a: &Representation, b: &Representation) -> Result<Representation> {
        let alg = a.algebra();
        alg.ensure_same(b.algebra())?;
        let eps = Self::epsilon(alg)?;
        let field = alg.field();
        let (ea, eb) = (a.act(eps), b.act(eps));
        let (ia, ib) = (
            Matrix::identity(field, a.dim_at(0)),
            Matrix::identity(field, b.dim_at(0)),
        );
        let m = ea.kron(&ib).add(&ia.kron(eb)).add(&ea.kron(eb));
        Representation::from_generators(alg, vec![a.dim_at(0) * b.dim_at(0)], &[(eps, m)])
    }

    fn tensor_morphisms(&self, f: &RepMorphism, g: &RepMorphism) -> Result<RepMorphism> {
        RepMorphism::new(
            &self.tensor_modules(f.source(), g.source())?,
            &self.tensor_modules(f.target(), g.target())?,
            vec![f.block(0).kron(g.block(0))],
        )
    }

    fn tensor_elements(
        &self,
        a: &Representation,
        _b: &Representation,
        x: &[Scalar],
        y: &[Scalar],
    ) -> Result<Vec<Scalar>> {
        let field = a.field();
        let xm = Matrix::from_columns(field, x.len(), &[x.to_vec()]);
        let ym = Matrix::from_columns(field, y.len(), &[y.to_vec()]);
        Ok(xm.kron(&ym).column(0))
    }

    fn unit(&self, alg: &StructureAlgebra) -> Result<Representation> {
        Self::epsilon(alg)?;
        simple(alg, 0)
    }
}

/// `(a, −) ⊗ (b, −) = (a ⊗ b, −)`.
pub fn tensor_representables(
    a: &Representation,
    b: &Representation,
    aus: &AuslanderAlgebra,
    ms: &dyn MonoidalStructure,
) -> Result<FpFunctor> {
    representable(&ms.tensor_modules(a, b)?, aus)
}

/// `F_a ⊗ F_b = coker((h, −))` with `h = (1 ⊗ b, a ⊗ 1): A⊗B → A⊗B′ ⊕ A′⊗B`,
/// for presentations `a: A → A′` of `f` and `b: B → B′` of `g`.
pub fn tensor_presented(
    a: &RepMorphism,
    b: &RepMorphism,
    aus: &AuslanderAlgebra,
    ms: &dyn MonoidalStructure,
) -> Result<FpFunctor> {
    let alg = aus.base();
    let one_a = RepMorphism::identity(a.source());
    let one_b = RepMorphism::identity(b.source());
    let left = ms.tensor_morphisms(&one_a, b)?;
    let right = ms.tensor_morphisms(a, &one_b)?;
    let sum = direct_sum_with_maps(alg, &[left.target().clone(), right.target().clone()])?;
    let h = sum.injections[0]
        .compose(&left)
        .add(&sum.injections[1].compose(&right));
    functor_of_morphism(&h, aus)
}

pub fn tensor_functors(
    f: &FpFunctor,
    g: &FpFunctor,
    aus: &AuslanderAlgebra,
    ms: &dyn MonoidalStructure,
) -> Result<FpFunctor> {
    let pf = functor_presentation(f, aus)?;
    let pg = functor_presentation(g, aus)?;
    tensor_presented(&pf.map, &pg.map, aus, ms)
}

/// All pairwise products of the indecomposable functors.
#[derive(Clone, Debug)]
pub struct TensorTable {
    pub labels: Vec<String>,
    /// `cells[i][j]`: `(functor index, multiplicity)` of the summands of
    /// `F_i ⊗ F_j`.
    pub cells: Vec<Vec<Vec<(usize, usize)>>>,
}

impl TensorTable {
    pub fn cell_label(&self, i: usize, j: usize) -> String {
        let parts: Vec<String> = self.cells[i][j]
            .iter()
            .map(|&(k, m)| {
                if m == 1 {
                    self.labels[k].clone()
                } else {
                    format!("{m}({})", self.labels[k])
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" ⊕ ")
        }
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.cells.len())
            .all(|i| (0..self.cells.len()).all(|j| self.cells[i][j] == self.cells[j][i]))
    }

    /// Tab-separated text with a header row.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("⊗");
        for l in &self.labels {
            out.push('\t');
            out.push_str(l);
        }
        out.push('\n');
        for (i, l) in self.labels.iter().enumerate() {
            out.push_str(l);
            for j in 0..self.labels.len() {
                out.push('\t');
                out.push_str(&self.cell_label(i, j));
            }
            out.push('\n');
        }
        out
    }
}

/// Decompose a functor into `(catalogue index, multiplicity)` pairs.
pub fn functor_summands(f: &FpFunctor, functors: &Catalogue) -> Result<Vec<(usize, usize)>> {
    let mut counts = vec![0usize; functors.len()];
    if !f.is_zero() {
        for (k, _, _) in functors.locate_summands(f)? {
            counts[k] += 1;
        }
    }
    Ok(counts
        .into_iter()
        .enumerate()
        .filter(|&(_, m)| m > 0)
        .collect())
}

/// The table over the functor catalogue, labelled by Loewy layers written in
/// `simple_names` (one name per base catalogue entry).
pub fn tensor_table(
    aus: &AuslanderAlgebra,
    functors: &Catalogue,
    ms: &dyn MonoidalStructure,
    simple_names: &[&str],
) -> Result<TensorTable> {
    functors.ensure_complete()?;
    let labels = functors
        .entries()
        .iter()
        .map(|e| loewy_label(&e.module, simple_names))
        .collect::<Result<Vec<_>>>()?;
    let n = functors.len();
    let pres = functors
        .entries()
        .iter()
        .map(|e| functor_presentation(&e.module, aus))
        .collect::<Result<Vec<_>>>()?;
    let mut cells = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let t = tensor_presented(&pres[i].map, &pres[j].map, aus, ms)?;
            cells[i][j] = functor_summands(&t, functors)?;
        }
    }
    Ok(TensorTable { labels, cells })
}

/// The naive recipe: realise both one-variable formulas freely as `(C, c)`
/// and `(C′, c′)` and take a generator of the pp-type of `c ⊗ c′` in
/// `C ⊗ C′`. It agrees with the functor tensor only in special cases.
pub fn naive_pp_tensor(
    phi: &PpFormula,
    psi: &PpFormula,
    alg: &StructureAlgebra,
    ms: &dyn MonoidalStructure,
) -> Result<PpFormula> {
    ensure_one_sort(alg)?;
    if phi.free().len() != 1 || psi.free().len() != 1 {
        return Err(Error::Unsupported(
            "the naive tensor is defined for one free variable".into(),
        ));
    }
    let a = free_realisation(alg, phi)?;
    let b = free_realisation(alg, psi)?;
    let c = ms.tensor_modules(&a.module, &b.module)?;
    let t = ms.tensor_elements(&a.module, &b.module, &a.tuple[0], &b.tuple[0])?;
    pp_type_generator(&c, &[0], &[t], &[phi.free()[0].name.clone()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artheory::Bounds;
    use crate::exactfield::FieldSpec;
    use crate::funcat::{auslander_of, functor_catalogue};
    use crate::quiver::dual_numbers;
    use crate::rep::is_isomorphic;

    #[test]
    fn module_level_products() {
        let alg = dual_numbers(FieldSpec::prime(2).unwrap());
        let r = projective(&alg, 0).unwrap();
        let k = simple(&alg, 0).unwrap();
        assert_eq!(TensorOverR.tensor_modules(&k, &k).unwrap().total_dim(), 1);
        assert!(
            is_isomorphic(&TensorOverR.tensor_modules(&r, &k).unwrap(), &k)
                .unwrap()
                .is_some()
        );
        let rr = DiagonalCharTwo.tensor_modules(&r, &r).unwrap();
        let r2 = crate::rep::direct_sum(&alg, &[r.clone(), r.clone()]).unwrap();
        assert!(is_isomorphic(&rr, &r2).unwrap().is_some());
        assert!(
            is_isomorphic(&DiagonalCharTwo.tensor_modules(&r, &k).unwrap(), &r)
                .unwrap()
                .is_some()
        );
    }

    #[test]
    fn tables_are_symmetric() {
        let alg = dual_numbers(FieldSpec::prime(2).unwrap());
        let aus = auslander_of(&alg, &Bounds::default()).unwrap();
        let fc = functor_catalogue(&aus, &Bounds::default()).unwrap();
        for ms in [&TensorOverR as &dyn MonoidalStructure, &DiagonalCharTwo] {
            let t = tensor_table(&aus, &fc, ms, &["T", "S"]).unwrap();
            assert!(t.is_symmetric(), "{}", t.to_tsv());
        }
    }
}
