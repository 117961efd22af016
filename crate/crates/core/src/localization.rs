//! Definable subcategories of a module category of finite type, the Serre
//! subcategory of functors vanishing on them, and the quotient functor
//! category `End(⊕_{i ∈ D} N_i)-mod`.

use crate::artheory::{build_catalogue, Bounds, Catalogue, Provenance};
use crate::error::{Error, Result};
use crate::exactfield::Matrix;
use crate::funcat::{
    auslander_algebra, pp_pair_of_functor, realise_pp_pair, AuslanderAlgebra, FpFunctor,
};
use crate::ppform::{evaluate_pair, PpPair};
use crate::quiver::StructureAlgebra;
use crate::rep::{RepMorphism, Representation};

/// A definable subcategory, given by the catalogue entries it contains.
#[derive(Clone, Debug)]
pub struct DefinableSubcatSpec {
    catalogue: Catalogue,
    members: Vec<usize>,
}

impl DefinableSubcatSpec {
    /// The subcategory additively generated by the listed entries.
    pub fn new(cat: &Catalogue, members: &[usize]) -> Result<Self> {
        cat.ensure_complete()?;
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        if let Some(&m) = members.iter().find(|&&m| m >= cat.len()) {
            return Err(Error::Dimension(format!("catalogue has no entry {m}")));
        }
        Ok(DefinableSubcatSpec {
            catalogue: cat.clone(),
            members,
        })
    }

    /// Every entry except the listed ones.
    pub fn excluding(cat: &Catalogue, excluded: &[usize]) -> Result<Self> {
        let members: Vec<usize> = (0..cat.len()).filter(|i| !excluded.contains(i)).collect();
        Self::new(cat, &members)
    }

    /// The entries on which every pair vanishes.
    pub fn from_pp_pairs(cat: &Catalogue, pairs: &[PpPair]) -> Result<Self> {
        let mut members = Vec::new();
        for (i, e) in cat.entries().iter().enumerate() {
            let mut zero = true;
            for p in pairs {
                if evaluate_pair(p, &e.module)?.dim != 0 {
                    zero = false;
                    break;
                }
            }
            if zero {
                members.push(i);
            }
        }
        Self::new(cat, &members)
    }

    pub fn catalogue(&self) -> &Catalogue {
        &self.catalogue
    }
    pub fn members(&self) -> &[usize] {
        &self.members
    }
    pub fn is_zero(&self) -> bool {
        self.members.is_empty()
    }
    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }
}

/// The indecomposable functors vanishing on a definable subcategory.
#[derive(Clone, Debug)]
pub struct SerreSubcat {
    /// Indices into the functor catalogue.
    pub members: Vec<usize>,
    pub functors: Vec<FpFunctor>,
}

/// `F` vanishes on the subcategory iff `F(N_i) = 0` for its members.
pub fn vanishes_on(f: &FpFunctor, spec: &DefinableSubcatSpec) -> bool {
    spec.members.iter().all(|&i| f.dim_at(i) == 0)
}

pub fn serre_subcategory(functors: &Catalogue, spec: &DefinableSubcatSpec) -> Result<SerreSubcat> {
    functors.ensure_complete()?;
    let mut out = SerreSubcat {
        members: Vec::new(),
        functors: Vec::new(),
    };
    for (k, e) in functors.entries().iter().enumerate() {
        if e.module.dims().len() != spec.catalogue.len() {
            return Err(Error::SortMismatch(
                "functor catalogue does not match the base catalogue".into(),
            ));
        }
        if vanishes_on(&e.module, spec) {
            out.members.push(k);
            out.functors.push(e.module.clone());
        }
    }
    Ok(out)
}

/// The quotient `Ab(R)/S_D`, realised as modules over `End(⊕_{i ∈ D} N_i)`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub spec: DefinableSubcatSpec,
    pub auslander: AuslanderAlgebra,
    pub functors: Catalogue,
}

pub fn quotient_category(spec: &DefinableSubcatSpec, bounds: &Bounds) -> Result<Quotient> {
    if spec.is_zero() {
        return Err(Error::Dimension(
            "the zero subcategory has a zero quotient".into(),
        ));
    }
    let cat = &spec.catalogue;
    let modules: Vec<Representation> = spec
        .members
        .iter()
        .map(|&i| cat.module(i).clone())
        .collect();
    let sub = Catalogue::from_modules(cat.algebra(), modules, true, Provenance::Subcategory)?;
    let auslander = auslander_algebra(&sub)?;
    let functors = build_catalogue(auslander.algebra(), bounds)?;
    Ok(Quotient {
        spec: spec.clone(),
        auslander,
        functors,
    })
}

/// Sub-catalogue position of each member of the original catalogue.
fn member_positions(q: &Quotient) -> Result<Vec<usize>> {
    let sub = q.auslander.catalogue();
    q.spec
        .members
        .iter()
        .map(|&i| {
            sub.find(q.spec.catalogue.module(i))
                .map(|(k, _)| k)
                .ok_or_else(|| {
                    Error::IncompleteCatalogue("member missing from the sub-catalogue".into())
                })
        })
        .collect()
}

/// Localise through a pair: re-certify `F`'s pair on the subcategory and
/// realise it over the quotient's Auslander algebra.
pub fn localize_functor(f: &FpFunctor, aus: &AuslanderAlgebra, q: &Quotient) -> Result<FpFunctor> {
    let p = pp_pair_of_functor(f, aus)?;
    let p = PpPair::new(p.phi, p.psi, q.auslander.catalogue())?;
    Ok(realise_pp_pair(&p, &q.auslander)?.functor)
}

/// Restriction of `F` to the members of the subcategory, as a module over
/// the quotient's Auslander algebra.
pub fn restrict_functor(f: &FpFunctor, aus: &AuslanderAlgebra, q: &Quotient) -> Result<FpFunctor> {
    aus.algebra().ensure_same(f.algebra())?;
    let s2 = q.auslander.algebra();
    let pos = member_positions(q)?;
    // Sort k of the quotient is original entry `orig[k]`.
    let mut orig = vec![0; pos.len()];
    for (m, &k) in pos.iter().enumerate() {
        orig[k] = q.spec.members[m];
    }
    let sub = q.auslander.catalogue();
    let dims: Vec<usize> = orig.iter().map(|&i| f.dim_at(i)).collect();
    let mut action = Vec::with_capacity(s2.dim());
    for b in 0..s2.dim() {
        let (k, l) = (s2.source(b), s2.target(b));
        let (i, j) = (orig[k], orig[l]);
        // Transport the map N'_k → N'_l to N_i → N_j through the identifications.
        let (_, to_i) = aus.catalogue().find(sub.module(k)).expect("member");
        let (_, to_j) = aus.catalogue().find(sub.module(l)).expect("member");
        let g = to_j
            .compose(q.auslander.map(b))
            .compose(&to_i.inverse().expect("iso"));
        let elem = aus.element(i, j, &g)?;
        action.push(f.act_element_between(&elem, i, j));
    }
    Representation::new(s2, dims, action)
}

/// Restriction on morphisms: keep the components at the members.
pub fn localize_morphism(
    eta: &RepMorphism,
    aus: &AuslanderAlgebra,
    q: &Quotient,
) -> Result<RepMorphism> {
    let src = restrict_functor(eta.source(), aus, q)?;
    let tgt = restrict_functor(eta.target(), aus, q)?;
    let pos = member_positions(q)?;
    let mut blocks: Vec<Matrix> = vec![Matrix::zeros(eta.source().field(), 0, 0); pos.len()];
    for (m, &k) in pos.iter().enumerate() {
        blocks[k] = eta.block(q.spec.members[m]).clone();
    }
    RepMorphism::new(&src, &tgt, blocks)
}

/// Arrows of the Gabriel quiver: `(source, target)` of each generator.
pub fn gabriel_quiver(alg: &StructureAlgebra) -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = alg
        .generators()
        .iter()
        .map(|&g| (alg.source(g), alg.target(g)))
        .collect();
    edges.sort_unstable();
    edges
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::FieldSpec;
    use crate::funcat::{auslander_of, functor_catalogue};
    use crate::quiver::{a3, dual_numbers};
    use crate::rep::{is_isomorphic, projective};

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn dual_numbers_at_r() {
        let alg = dual_numbers(Q);
        let aus = auslander_of(&alg, &Bounds::default()).unwrap();
        let fc = functor_catalogue(&aus, &Bounds::default()).unwrap();
        let (r, _) = aus.catalogue().find(&projective(&alg, 0).unwrap()).unwrap();
        let spec = DefinableSubcatSpec::new(aus.catalogue(), &[r]).unwrap();
        let serre = serre_subcategory(&fc, &spec).unwrap();
        assert_eq!(serre.members.len(), 1);
        assert_eq!(serre.functors[0].dims(), &[1, 0]);
        let q = quotient_category(&spec, &Bounds::default()).unwrap();
        assert_eq!(q.functors.len(), 2);
        for e in fc.entries() {
            let a = localize_functor(&e.module, &aus, &q).unwrap();
            let b = restrict_functor(&e.module, &aus, &q).unwrap();
            assert!(is_isomorphic(&a, &b).unwrap().is_some());
        }
    }

    #[test]
    fn a3_all_but_p3() {
        let alg = a3(Q);
        let aus = auslander_of(&alg, &Bounds::default()).unwrap();
        let fc = functor_catalogue(&aus, &Bounds::default()).unwrap();
        let (p3, _) = aus.catalogue().find(&projective(&alg, 2).unwrap()).unwrap();
        let spec = DefinableSubcatSpec::excluding(aus.catalogue(), &[p3]).unwrap();
        assert_eq!(serre_subcategory(&fc, &spec).unwrap().members.len(), 1);
        assert_eq!(
            quotient_category(&spec, &Bounds::default())
                .unwrap()
                .functors
                .len(),
            14
        );
    }
}
