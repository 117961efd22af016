//! Multisorted pp formulas: `∃ȳ G(x̄ ȳ) = 0` with sorted variables, their
//! solution sets in modules, pp-pairs, implication, free realisations and
//! generators of pp-types.

mod parse;

pub use parse::{parse_formula, parse_pair_text};

use std::fmt;

use crate::artheory::Catalogue;
use crate::error::{Error, Result};
use crate::exactfield::{Matrix, Scalar};
use crate::funcat::{realise_pp_pair, AuslanderAlgebra};
use crate::quiver::{AlgebraElement, StructureAlgebra};
use crate::rep::{
    self, cokernel, hom_basis, map_between_free, minimal_projective_presentation, Representation,
};

/// A sorted variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    pub sort: usize,
}

impl Variable {
    pub fn new(name: impl Into<String>, sort: usize) -> Self {
        Variable {
            name: name.into(),
            sort,
        }
    }
}

/// One equation `Σ_j coeffs[j] · v_j = 0` landing in sort `target`;
/// variables are the free ones followed by the bound ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Equation {
    pub target: usize,
    pub coeffs: Vec<AlgebraElement>,
}

/// `∃ bound . equations` with the given free variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PpFormula {
    free: Vec<Variable>,
    bound: Vec<Variable>,
    equations: Vec<Equation>,
}

impl PpFormula {
    /// Validate sorts: each nonzero coefficient must run from its variable's
    /// sort to the equation's target sort.
    pub fn new(
        alg: &StructureAlgebra,
        free: Vec<Variable>,
        bound: Vec<Variable>,
        equations: Vec<Equation>,
    ) -> Result<Self> {
        let f = PpFormula {
            free,
            bound,
            equations,
        };
        f.check(alg)?;
        Ok(f)
    }

    fn check(&self, alg: &StructureAlgebra) -> Result<()> {
        let vars: Vec<&Variable> = self.free.iter().chain(&self.bound).collect();
        for v in &vars {
            if v.sort >= alg.num_sorts() {
                return Err(Error::SortMismatch(format!(
                    "variable `{}` has an unknown sort",
                    v.name
                )));
            }
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].iter().any(|w| w.name == v.name) {
                return Err(Error::SortMismatch(format!(
                    "variable `{}` declared twice",
                    v.name
                )));
            }
        }
        for eq in &self.equations {
            if eq.coeffs.len() != vars.len() {
                return Err(Error::SortMismatch(
                    "equation has the wrong number of coefficients".into(),
                ));
            }
            if eq.target >= alg.num_sorts() {
                return Err(Error::SortMismatch(
                    "equation lands in an unknown sort".into(),
                ));
            }
            for (c, v) in eq.coeffs.iter().zip(&vars) {
                if let Some((s, t)) = c.sorts(alg)? {
                    if s != v.sort || t != eq.target {
                        return Err(Error::SortMismatch(format!(
                            "coefficient `{}` of `{}` runs {} -> {}, expected {} -> {}",
                            c.display(alg),
                            v.name,
                            alg.sort_name(s),
                            alg.sort_name(t),
                            alg.sort_name(v.sort),
                            alg.sort_name(eq.target)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `x̄ = x̄`: no conditions.
    pub fn trivial(free: Vec<Variable>) -> Self {
        PpFormula {
            free,
            bound: Vec::new(),
            equations: Vec::new(),
        }
    }

    /// `x̄ = 0`.
    pub fn zero(alg: &StructureAlgebra, free: Vec<Variable>) -> Self {
        let n = free.len();
        let equations = free
            .iter()
            .enumerate()
            .map(|(i, v)| Equation {
                target: v.sort,
                coeffs: (0..n)
                    .map(|j| {
                        if i == j {
                            AlgebraElement::basis(alg.idempotent(v.sort), alg.field())
                        } else {
                            AlgebraElement::zero()
                        }
                    })
                    .collect(),
            })
            .collect();
        PpFormula {
            free,
            bound: Vec::new(),
            equations,
        }
    }

    pub fn free(&self) -> &[Variable] {
        &self.free
    }
    pub fn bound(&self) -> &[Variable] {
        &self.bound
    }
    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }
    pub fn free_sorts(&self) -> Vec<usize> {
        self.free.iter().map(|v| v.sort).collect()
    }

    /// Rename the free variables (same count and sorts).
    pub fn with_free_names(&self, names: &[String]) -> PpFormula {
        let mut f = self.clone();
        for (v, n) in f.free.iter_mut().zip(names) {
            v.name = n.clone();
        }
        f
    }

    /// The conjunction of two formulas sharing their free variables; bound
    /// variables are renamed apart.
    pub fn and(&self, other: &PpFormula) -> Result<PpFormula> {
        if self.free_sorts() != other.free_sorts() {
            return Err(Error::SortMismatch(
                "conjunction of formulas with different free sorts".into(),
            ));
        }
        let nf = self.free.len();
        let (b1, b2) = (self.bound.len(), other.bound.len());
        let mut bound = self.bound.clone();
        for v in &other.bound {
            let mut name = v.name.clone();
            while bound.iter().chain(&self.free).any(|w| w.name == name) {
                name.push('\'');
            }
            bound.push(Variable::new(name, v.sort));
        }
        let mut equations = Vec::new();
        for eq in &self.equations {
            let mut coeffs = eq.coeffs.clone();
            coeffs.extend((0..b2).map(|_| AlgebraElement::zero()));
            equations.push(Equation {
                target: eq.target,
                coeffs,
            });
        }
        for eq in &other.equations {
            let mut coeffs: Vec<AlgebraElement> = eq.coeffs[..nf].to_vec();
            coeffs.extend((0..b1).map(|_| AlgebraElement::zero()));
            coeffs.extend(eq.coeffs[nf..].iter().cloned());
            equations.push(Equation {
                target: eq.target,
                coeffs,
            });
        }
        Ok(PpFormula {
            free: self.free.clone(),
            bound,
            equations,
        })
    }

    /// Surface syntax accepted by [`parse_formula`].
    pub fn display(&self, alg: &StructureAlgebra) -> String {
        let decl = |vs: &[Variable]| {
            vs.iter()
                .map(|v| format!("{}:{}", v.name, alg.sort_name(v.sort)))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let mut out = format!("[{}]", decl(&self.free));
        if !self.bound.is_empty() {
            out.push_str(&format!(" exists {} .", decl(&self.bound)));
        }
        let vars: Vec<&Variable> = self.free.iter().chain(&self.bound).collect();
        let eqs: Vec<String> = self
            .equations
            .iter()
            .map(|eq| {
                let mut terms = Vec::new();
                for (c, v) in eq.coeffs.iter().zip(&vars) {
                    if c.is_zero() {
                        continue;
                    }
                    let is_id = c.terms.len() == 1 && alg.is_idempotent_basis(c.terms[0].0);
                    let coef = &c.terms[0].1;
                    if is_id {
                        terms.push(if coef.is_one() {
                            v.name.clone()
                        } else {
                            format!("{coef}*{}", v.name)
                        });
                    } else if c.terms.len() == 1 {
                        let lab = alg.label(c.terms[0].0);
                        terms.push(if coef.is_one() {
                            format!("{lab}*{}", v.name)
                        } else {
                            format!("{coef}*{lab}*{}", v.name)
                        });
                    } else {
                        for (b, s) in &c.terms {
                            let lab = alg.label(*b);
                            terms.push(if alg.is_idempotent_basis(*b) {
                                format!("{s}*{}", v.name)
                            } else {
                                format!("{s}*{lab}*{}", v.name)
                            });
                        }
                    }
                }
                if terms.is_empty() {
                    "0 = 0".to_string()
                } else {
                    format!("{} = 0", terms.join(" + ").replace("+ -", "- "))
                }
            })
            .collect();
        if eqs.is_empty() {
            if let Some(v) = self.free.first() {
                out.push_str(&format!(" {} = {}", v.name, v.name));
            } else {
                out.push_str(" 0 = 0");
            }
        } else {
            out.push(' ');
            out.push_str(&eqs.join(" & "));
        }
        out
    }
}

/// A subspace of `⊕_i M_{sort_i}` given by independent basis columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub ambient: Vec<usize>,
    pub basis: Matrix,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient.iter().sum()
    }
    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> bool {
        self.basis.spans(&other.basis)
    }
    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        let m = Matrix::from_columns(self.basis.field(), v.len(), &[v.to_vec()]);
        self.basis.spans(&m)
    }
    pub fn same_as(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains(other)
    }
}

/// Offsets of variable blocks for a module.
fn var_offsets(vars: &[&Variable], m: &Representation) -> Vec<usize> {
    let mut off = vec![0];
    for v in vars {
        off.push(off.last().unwrap() + m.dim_at(v.sort));
    }
    off
}

/// The solution set `φ(M)` inside `⊕ M_{sort(free_i)}`.
pub fn evaluate(phi: &PpFormula, m: &Representation) -> Result<Subspace> {
    phi.check(m.algebra())?;
    let field = m.field();
    let vars: Vec<&Variable> = phi.free.iter().chain(&phi.bound).collect();
    let off = var_offsets(&vars, m);
    let nfree_coords = off[phi.free.len()];
    let ambient: Vec<usize> = phi.free.iter().map(|v| m.dim_at(v.sort)).collect();
    let total = *off.last().unwrap();
    let rows: usize = phi.equations.iter().map(|e| m.dim_at(e.target)).sum();
    let mut a = Matrix::zeros(field, rows, total);
    let mut r0 = 0;
    for eq in &phi.equations {
        for (j, c) in eq.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let block = m.act_element_between(c, vars[j].sort, eq.target);
            a.set_block(r0, off[j], &block);
        }
        r0 += m.dim_at(eq.target);
    }
    let ker = a.kernel_basis();
    let projected = ker.submatrix(0..nfree_coords, 0..ker.cols());
    Ok(Subspace {
        ambient,
        basis: projected.column_space(),
    })
}

/// Value of a pair on a module: dimension, coset representatives (columns
/// of `phi` completing a basis of `psi` to one of `phi`), and both subspaces.
#[derive(Clone, Debug)]
pub struct PairValue {
    pub dim: usize,
    pub representatives: Matrix,
    pub phi: Subspace,
    pub psi: Subspace,
}

/// A pp-pair `φ/ψ` with `ψ → φ` certified on a catalogue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PpPair {
    pub phi: PpFormula,
    pub psi: PpFormula,
}

impl PpPair {
    /// Check matching free sorts and `ψ(M₀) ⊆ φ(M₀)` on the catalogue.
    pub fn new(phi: PpFormula, psi: PpFormula, cat: &Catalogue) -> Result<Self> {
        if phi.free_sorts() != psi.free_sorts() {
            return Err(Error::SortMismatch("pair with different free sorts".into()));
        }
        if !implies(&psi, &phi, cat)? {
            return Err(Error::SortMismatch(
                "the denominator does not imply the numerator".into(),
            ));
        }
        Ok(PpPair { phi, psi })
    }

    /// `φ/(φ ∧ ψ)`, always a valid pair.
    pub fn normalised(phi: PpFormula, psi: PpFormula) -> Result<Self> {
        let both = phi.and(&psi)?;
        Ok(PpPair { phi, psi: both })
    }

    pub fn free_sorts(&self) -> Vec<usize> {
        self.phi.free_sorts()
    }

    pub fn display(&self, alg: &StructureAlgebra) -> String {
        format!("({}) / ({})", self.phi.display(alg), self.psi.display(alg))
    }
}

pub fn evaluate_pair(p: &PpPair, m: &Representation) -> Result<PairValue> {
    let phi = evaluate(&p.phi, m)?;
    let psi = evaluate(&p.psi, m)?;
    if !phi.contains(&psi) {
        return Err(Error::SortMismatch("ψ(M) is not contained in φ(M)".into()));
    }
    let field = m.field();
    let n = phi.ambient_dim();
    let mut span = psi.basis.clone();
    let mut reps: Vec<Vec<Scalar>> = Vec::new();
    let mut rank = span.rank();
    for c in 0..phi.basis.cols() {
        let col = phi.basis.column(c);
        let trial = Matrix::hstack(
            field,
            n,
            &[
                &span,
                &Matrix::from_columns(field, n, std::slice::from_ref(&col)),
            ],
        );
        let r = trial.rank();
        if r > rank {
            rank = r;
            span = trial;
            reps.push(col);
        }
    }
    Ok(PairValue {
        dim: reps.len(),
        representatives: Matrix::from_columns(field, n, &reps),
        phi,
        psi,
    })
}

/// `φ(M₀) ⊆ ψ(M₀)`, checked entry by entry on a complete catalogue.
pub fn implies(phi: &PpFormula, psi: &PpFormula, cat: &Catalogue) -> Result<bool> {
    cat.ensure_complete()?;
    if phi.free_sorts() != psi.free_sorts() {
        return Err(Error::SortMismatch(
            "implication between formulas with different free sorts".into(),
        ));
    }
    for e in cat.entries() {
        if !evaluate(psi, &e.module)?.contains(&evaluate(phi, &e.module)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Mutual implication on the catalogue.
pub fn equivalent(phi: &PpFormula, psi: &PpFormula, cat: &Catalogue) -> Result<bool> {
    Ok(implies(phi, psi, cat)? && implies(psi, phi, cat)?)
}

/// Two pairs define the same functor on the catalogue when their value
/// dimensions agree and they are related by equivalent numerators and
/// denominators. This checks the stronger, syntactic-free condition of
/// equivalent numerators and denominators.
pub fn pairs_equivalent(p: &PpPair, q: &PpPair, cat: &Catalogue) -> Result<bool> {
    Ok(equivalent(&p.phi, &q.phi, cat)? && equivalent(&p.psi, &q.psi, cat)?)
}

/// A module with a tuple whose pp-type is generated by a formula.
#[derive(Clone, Debug)]
pub struct FreeRealisation {
    pub module: Representation,
    /// One vector per free variable, in the component of its sort.
    pub tuple: Vec<Vec<Scalar>>,
    pub sorts: Vec<usize>,
}

impl FreeRealisation {
    /// The tuple as one column in `⊕ C_{sort_i}`.
    pub fn tuple_column(&self) -> Vec<Scalar> {
        self.tuple.iter().flatten().cloned().collect()
    }
}

/// Cokernel presentation: one projective generator per variable, one
/// relation per equation; the tuple is the image of the free generators.
pub fn free_realisation(alg: &StructureAlgebra, phi: &PpFormula) -> Result<FreeRealisation> {
    phi.check(alg)?;
    let vars: Vec<&Variable> = phi.free.iter().chain(&phi.bound).collect();
    let var_sorts: Vec<usize> = vars.iter().map(|v| v.sort).collect();
    let row_sorts: Vec<usize> = phi.equations.iter().map(|e| e.target).collect();
    let elems: Vec<Vec<AlgebraElement>> = phi.equations.iter().map(|e| e.coeffs.clone()).collect();
    let rel = map_between_free(alg, &row_sorts, &var_sorts, &elems)?;
    let (c, proj) = cokernel(&rel);
    let free = rel.target().clone();
    let mut tuple = Vec::new();
    for (i, v) in phi.free.iter().enumerate() {
        // Generator i sits at sort v.sort; find its coordinate in free_{v.sort}.
        let before: usize = var_sorts[..i]
            .iter()
            .map(|&s| alg.basis_between(s, v.sort).len())
            .sum();
        let pos = before
            + alg
                .basis_between(v.sort, v.sort)
                .iter()
                .position(|&b| b == alg.idempotent(v.sort))
                .unwrap();
        let mut e = vec![alg.field().zero(); free.dim_at(v.sort)];
        e[pos] = alg.field().one();
        tuple.push(proj.block(v.sort).apply(&e));
    }
    Ok(FreeRealisation {
        module: c,
        tuple,
        sorts: phi.free_sorts(),
    })
}

/// A formula generating the pp-type of `tuple` (vectors at `sorts`) in `c`:
/// `∃ȳ (Hȳ = 0 ∧ x̄ = Λȳ)` from a minimal presentation of `c`.
pub fn pp_type_generator(
    c: &Representation,
    sorts: &[usize],
    tuple: &[Vec<Scalar>],
    names: &[String],
) -> Result<PpFormula> {
    let alg = c.algebra();
    let field = c.field();
    if sorts.len() != tuple.len() || names.len() != tuple.len() {
        return Err(Error::Dimension(
            "tuple, sorts and names must have equal lengths".into(),
        ));
    }
    let pres = minimal_projective_presentation(c)?;
    let gens = &pres.p0_vertices;
    let nfree = sorts.len();
    let nb = gens.len();
    let free: Vec<Variable> = names
        .iter()
        .zip(sorts)
        .map(|(n, &s)| Variable::new(n.clone(), s))
        .collect();
    let mut bound = Vec::new();
    for (l, &v) in gens.iter().enumerate() {
        let mut name = format!("y{}", l + 1);
        while free.iter().any(|f| f.name == name) {
            name.push('\'');
        }
        bound.push(Variable::new(name, v));
    }
    let mut equations = Vec::new();
    for (k, &u) in pres.p1_vertices.iter().enumerate() {
        let mut coeffs = vec![AlgebraElement::zero(); nfree];
        coeffs.extend(pres.elements[k].iter().cloned());
        equations.push(Equation { target: u, coeffs });
    }
    for (i, (&s, vec)) in sorts.iter().zip(tuple).enumerate() {
        let d0 = pres.d0.block(s);
        let rhs = Matrix::from_columns(field, vec.len(), std::slice::from_ref(vec));
        let z = d0
            .solve(&rhs)?
            .ok_or_else(|| Error::Dimension("tuple entry outside the module".into()))?;
        let mut coeffs = vec![AlgebraElement::zero(); nfree + nb];
        coeffs[i] = AlgebraElement::basis(alg.idempotent(s), field);
        let mut pos = 0;
        for (l, &v) in gens.iter().enumerate() {
            let bs = alg.basis_between(v, s);
            let terms: Vec<(usize, Scalar)> = bs
                .iter()
                .enumerate()
                .map(|(t, &b)| (b, -&z[(pos + t, 0)]))
                .filter(|(_, x)| !x.is_zero())
                .collect();
            coeffs[nfree + l] = AlgebraElement { terms };
            pos += bs.len();
        }
        equations.push(Equation { target: s, coeffs });
    }
    PpFormula::new(alg, free, bound, equations)
}

/// `{ f(c̄) : f ∈ Hom(C, X) }` as a subspace of `⊕ X_{sort_i}`; equals
/// `φ(X)` when `(C, c̄)` freely realises `φ`.
pub fn images_of_tuple(real: &FreeRealisation, x: &Representation) -> Result<Subspace> {
    let field = x.field();
    let ambient: Vec<usize> = real.sorts.iter().map(|&s| x.dim_at(s)).collect();
    let n: usize = ambient.iter().sum();
    let cols: Vec<Vec<Scalar>> = hom_basis(&real.module, x)?
        .iter()
        .map(|f| {
            real.sorts
                .iter()
                .zip(&real.tuple)
                .flat_map(|(&s, v)| f.block(s).apply(v))
                .collect()
        })
        .collect();
    Ok(Subspace {
        ambient,
        basis: Matrix::from_columns(field, n, &cols).column_space(),
    })
}

/// Apply a morphism to a tuple column laid out by `sorts`.
pub fn apply_to_tuple(f: &rep::RepMorphism, sorts: &[usize], column: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::new();
    let mut pos = 0;
    for &s in sorts {
        let d = f.source().dim_at(s);
        out.extend(f.block(s).apply(&column[pos..pos + d]));
        pos += d;
    }
    out
}

/// Block-diagonal matrix of a morphism on tuples laid out by `sorts`.
pub fn tuple_matrix(f: &rep::RepMorphism, sorts: &[usize]) -> Matrix {
    let blocks: Vec<&Matrix> = sorts.iter().map(|&s| f.block(s)).collect();
    Matrix::block_diag(f.source().field(), &blocks)
}

/// A formula `ρ(x̄, x̄′)` defining the natural transformation `map: F_p → F_q`
/// (given between the functors of [`crate::funcat::realise_pp_pair`]).
///
/// With `(C, c̄)` freely realising `p.phi`, `c̄′` is a representative of
/// `map_C(c̄ + ψ(C))`, computed summand by summand of `C`; `ρ` generates the
/// pp-type of `(c̄, c̄′)`.
pub fn definable_map_formula(
    p: &PpPair,
    q: &PpPair,
    map: &rep::RepMorphism,
    aus: &AuslanderAlgebra,
) -> Result<PpFormula> {
    let rp = realise_pp_pair(p, aus)?;
    let rq = realise_pp_pair(q, aus)?;
    let map = rep::RepMorphism::new(&rp.functor, &rq.functor, map.blocks().to_vec())?;
    let alg = aus.base();
    let fr = free_realisation(alg, &p.phi)?;
    let c = fr.tuple_column();
    let qsorts = q.free_sorts();
    let mut c2: Vec<Scalar> =
        vec![alg.field().zero(); qsorts.iter().map(|&s| fr.module.dim_at(s)).sum()];
    if !fr.module.is_zero() {
        for (idx, inc, proj) in aus.catalogue().locate_summands(&fr.module)? {
            let coords = rp.coords(idx, &apply_to_tuple(&proj, &fr.sorts, &c))?;
            let image = map.block(idx).apply(&coords);
            let back = apply_to_tuple(&inc, &qsorts, &rq.lift(idx, &image));
            for (x, y) in c2.iter_mut().zip(back) {
                *x += &y;
            }
        }
    }
    let mut sorts = fr.sorts.clone();
    sorts.extend(&qsorts);
    let mut tuple = fr.tuple.clone();
    let mut pos = 0;
    for &s in &qsorts {
        let d = fr.module.dim_at(s);
        tuple.push(c2[pos..pos + d].to_vec());
        pos += d;
    }
    let mut names: Vec<String> = p.phi.free().iter().map(|v| v.name.clone()).collect();
    for v in q.phi.free() {
        let mut n = format!("{}'", v.name);
        while names.contains(&n) {
            n.push('\'');
        }
        names.push(n);
    }
    pp_type_generator(&fr.module, &sorts, &tuple, &names)
}

/// Check on every catalogue entry that `rho` relates `φ(N)` totally to
/// `φ′(N)` and induces exactly `map_N` on the quotients.
pub fn check_definable_map(
    rho: &PpFormula,
    p: &PpPair,
    q: &PpPair,
    map: &rep::RepMorphism,
    aus: &AuslanderAlgebra,
) -> Result<bool> {
    let rp = realise_pp_pair(p, aus)?;
    let rq = realise_pp_pair(q, aus)?;
    for (i, e) in aus.catalogue().entries().iter().enumerate() {
        let rel = evaluate(rho, &e.module)?;
        let n1: usize = p.free_sorts().iter().map(|&s| e.module.dim_at(s)).sum();
        let n = rel.ambient_dim();
        let xs = rel.basis.submatrix(0..n1, 0..rel.dim());
        let ys = rel.basis.submatrix(n1..n, 0..rel.dim());
        let phi = &rp.values[i].phi;
        if !(xs.spans(&phi.basis) && phi.basis.spans(&xs)) {
            return Ok(false);
        }
        if !rq.values[i].phi.basis.spans(&ys) {
            return Ok(false);
        }
        for c in 0..rel.dim() {
            let want = map.block(i).apply(&rp.coords(i, &xs.column(c))?);
            let got = rq.coords(i, &ys.column(c))?;
            if want != got {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}
