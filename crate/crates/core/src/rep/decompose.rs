//! Krull-Schmidt decomposition by Fitting's lemma, and isomorphism tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ops::submodule;
use super::{direct_sum_with_maps, hom_basis_unchecked, RepMorphism, Representation};
use crate::error::{Error, Result};
use crate::exactfield::poly::{min_poly_blocks, roots, single_root};
use crate::exactfield::{FieldSpec, Matrix, Scalar};

/// Default seed of the randomised isomorphism search.
pub const DEFAULT_ISO_SEED: u64 = 0x0005_eed0_f150;
const RANDOM_ISO_TRIALS: usize = 64;
const ENUMERATION_BUDGET: u64 = 4096;

/// One indecomposable summand of a decomposition with its split inclusion
/// and projection (`projection ∘ inclusion = 1`).
#[derive(Clone, Debug)]
pub struct Summand {
    /// Index into [`Decomposition::factors`]; the module is the factor's
    /// representative.
    pub class: usize,
    pub module: Representation,
    pub inclusion: RepMorphism,
    pub projection: RepMorphism,
}

/// `x ≅ ⊕ factors` with explicit mutually inverse certificates.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub input: Representation,
    /// Isomorphism classes ordered by (total dim, dim vector), with
    /// multiplicities.
    pub factors: Vec<(Representation, usize)>,
    /// All summands, grouped by class in factor order.
    pub summands: Vec<Summand>,
    /// The direct sum of the summands in order.
    pub sum: Representation,
    pub to_sum: RepMorphism,
    pub from_sum: RepMorphism,
}

impl Decomposition {
    /// Check the certificate: both composites are identities.
    pub fn verify(&self) -> bool {
        self.from_sum.compose(&self.to_sum) == RepMorphism::identity(&self.input)
            && self.to_sum.compose(&self.from_sum) == RepMorphism::identity(&self.sum)
            && self.to_sum.validate().is_ok()
            && self.from_sum.validate().is_ok()
    }

    /// Number of indecomposable summands counted with multiplicity.
    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }
}

fn sort_key(x: &Representation) -> (usize, Vec<usize>) {
    (x.total_dim(), x.dims().to_vec())
}

/// Decompose into indecomposables with explicit certificates.
pub fn decompose(x: &Representation) -> Result<Decomposition> {
    let mut pieces = Vec::new();
    split_into(
        x,
        &RepMorphism::identity(x),
        &RepMorphism::identity(x),
        &mut pieces,
    )?;
    pieces.sort_by_key(|(f, _, _)| sort_key(f));
    let mut classes: Vec<Representation> = Vec::new();
    let mut summands: Vec<Summand> = Vec::new();
    for (f, inc, proj) in pieces {
        let mut placed = false;
        for (c, rep) in classes.iter().enumerate() {
            if rep.dims() != f.dims() {
                continue;
            }
            if let Some(phi) = iso_between_indecomposables(&f, rep) {
                let phi_inv = phi.inverse().expect("isomorphism");
                summands.push(Summand {
                    class: c,
                    module: rep.clone(),
                    inclusion: inc.compose(&phi_inv),
                    projection: phi.compose(&proj),
                });
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(f.clone());
            summands.push(Summand {
                class: classes.len() - 1,
                module: f,
                inclusion: inc,
                projection: proj,
            });
        }
    }
    summands.sort_by_key(|s| s.class);
    let factors: Vec<(Representation, usize)> = classes
        .iter()
        .enumerate()
        .map(|(c, r)| (r.clone(), summands.iter().filter(|s| s.class == c).count()))
        .collect();
    let mods: Vec<Representation> = summands.iter().map(|s| s.module.clone()).collect();
    let ds = direct_sum_with_maps(x.algebra(), &mods)?;
    let mut to_sum = RepMorphism::zero(x, &ds.sum);
    let mut from_sum = RepMorphism::zero(&ds.sum, x);
    for (j, s) in summands.iter().enumerate() {
        to_sum = to_sum.add(&ds.injections[j].compose(&s.projection));
        from_sum = from_sum.add(&s.inclusion.compose(&ds.projections[j]));
    }
    Ok(Decomposition {
        input: x.clone(),
        factors,
        summands,
        sum: ds.sum,
        to_sum,
        from_sum,
    })
}

type Piece = (Representation, RepMorphism, RepMorphism);

/// `inc: x → root`, `proj: root → x` split the current piece off the root.
fn split_into(
    x: &Representation,
    inc: &RepMorphism,
    proj: &RepMorphism,
    out: &mut Vec<Piece>,
) -> Result<()> {
    if x.is_zero() {
        return Ok(());
    }
    let Some(h) = find_splitting_endomorphism(x)? else {
        out.push((x.clone(), inc.clone(), proj.clone()));
        return Ok(());
    };
    let n = x.total_dim() as u32;
    let field = x.field();
    let powers: Vec<Matrix> = h.blocks().iter().map(|b| b.pow(n)).collect();
    let ker: Vec<Matrix> = powers.iter().map(Matrix::kernel_basis).collect();
    let im: Vec<Matrix> = powers.iter().map(Matrix::column_space).collect();
    let (kmod, kinc) = submodule(x, &ker);
    let (imod, iinc) = submodule(x, &im);
    let mut kproj = Vec::new();
    let mut iproj = Vec::new();
    for s in 0..x.algebra().num_sorts() {
        let d = x.dim_at(s);
        let basis = Matrix::hstack(field, d, &[&ker[s], &im[s]]);
        let inv = basis.inverse().expect("Fitting decomposition");
        let k = ker[s].cols();
        kproj.push(inv.submatrix(0..k, 0..d));
        iproj.push(inv.submatrix(k..d, 0..d));
    }
    let kproj = RepMorphism::new_unchecked(x, &kmod, kproj);
    let iproj = RepMorphism::new_unchecked(x, &imod, iproj);
    split_into(&kmod, &inc.compose(&kinc), &kproj.compose(proj), out)?;
    split_into(&imod, &inc.compose(&iinc), &iproj.compose(proj), out)
}

fn min_poly_of(f: &RepMorphism) -> Vec<Scalar> {
    let blocks: Vec<&Matrix> = f.blocks().iter().collect();
    min_poly_blocks(f.source().field(), &blocks)
}

fn shifted(f: &RepMorphism, lambda: &Scalar) -> RepMorphism {
    let id = RepMorphism::identity(f.source());
    f.sub(&id.scale(lambda))
}

/// If `g` has an eigenvalue in the field and is not of the form
/// `λ + nilpotent`, return `g - λ`, which is neither nilpotent nor invertible.
fn splitter_from(g: &RepMorphism) -> Option<RepMorphism> {
    let m = min_poly_of(g);
    if m.len() <= 1 || single_root(&m).is_some() {
        return None;
    }
    let r = roots(&m);
    r.first().map(|lambda| shifted(g, lambda))
}

/// Returns `None` when `x` is indecomposable, otherwise an endomorphism that
/// is neither nilpotent nor invertible.
fn find_splitting_endomorphism(x: &Representation) -> Result<Option<RepMorphism>> {
    let basis = hom_basis_unchecked(x, x);
    if basis.len() <= 1 {
        return Ok(None);
    }
    let mut lambdas = Vec::new();
    let mut all_single = true;
    for f in &basis {
        let m = min_poly_of(f);
        match single_root(&m) {
            Some(l) => lambdas.push(l),
            None => {
                all_single = false;
                if let Some(h) = splitter_from(f) {
                    return Ok(Some(h));
                }
            }
        }
    }
    if all_single && nilpotent_complement(&basis, &lambdas) {
        return Ok(None);
    }
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if let Some(h) = splitter_from(&basis[i].add(&basis[j])) {
                return Ok(Some(h));
            }
        }
    }
    // Wider search: exhaustive over small prime fields, seeded random
    // combinations otherwise.
    let field = x.field();
    let mut found = None;
    for_each_combination(field, basis.len(), DEFAULT_ISO_SEED, 256, |coeffs| {
        let terms: Vec<(Scalar, &RepMorphism)> = coeffs.iter().cloned().zip(basis.iter()).collect();
        let g = RepMorphism::combination(x, x, &terms);
        if let Some(h) = splitter_from(&g) {
            found = Some(h);
            return true;
        }
        false
    });
    if found.is_some() {
        return Ok(found);
    }
    if all_single {
        return Err(Error::Witness(format!(
            "no splitting endomorphism found for a module {} whose endomorphism algebra is not local",
            x.dim_label()
        )));
    }
    // Every endomorphism tried has an irreducible minimal polynomial of
    // degree > 1 or a single eigenvalue; treat as indecomposable with a
    // residue field larger than the ground field.
    Ok(None)
}

/// With `λ_i` the unique eigenvalue of `f_i`, check that the span `N` of the
/// `f_i - λ_i` is closed under composition and nilpotent. Then
/// `End = K·1 ⊕ N` is local.
fn nilpotent_complement(basis: &[RepMorphism], lambdas: &[Scalar]) -> bool {
    let x = basis[0].source();
    let field = x.field();
    let len = basis[0].flatten().len();
    let to_matrix = |ms: &[RepMorphism]| -> Matrix {
        let cols: Vec<Vec<Scalar>> = ms.iter().map(RepMorphism::flatten).collect();
        Matrix::from_columns(field, len, &cols)
    };
    let span_basis = |ms: Vec<RepMorphism>| -> Vec<RepMorphism> {
        if ms.is_empty() {
            return ms;
        }
        let (_, piv) = to_matrix(&ms).rref();
        piv.into_iter().map(|i| ms[i].clone()).collect()
    };
    let n: Vec<RepMorphism> = span_basis(
        basis
            .iter()
            .zip(lambdas)
            .map(|(f, l)| shifted(f, l))
            .collect(),
    );
    let n_mat = to_matrix(&n);
    let mut power = n.clone();
    for _ in 0..=x.total_dim() + 1 {
        if power.is_empty() {
            return true;
        }
        let mut next = Vec::new();
        for a in &power {
            for b in &n {
                let p = a.compose(b);
                if !p.is_zero() {
                    next.push(p);
                }
            }
        }
        if !next.is_empty() && !n_mat.spans(&to_matrix(&next)) {
            return false;
        }
        power = span_basis(next);
    }
    power.is_empty()
}

/// Visit coefficient vectors: all of them when `p^len` fits the enumeration
/// budget, otherwise `random_trials` seeded random vectors. Stops when the
/// visitor returns true.
fn for_each_combination(
    field: FieldSpec,
    len: usize,
    seed: u64,
    random_trials: usize,
    mut visit: impl FnMut(&[Scalar]) -> bool,
) {
    if let FieldSpec::Prime(p) = field {
        let total = (p as u64).checked_pow(len as u32);
        if let Some(total) = total.filter(|&t| t <= ENUMERATION_BUDGET) {
            let mut digits = vec![0u32; len];
            for _ in 0..total {
                let coeffs: Vec<Scalar> = digits.iter().map(|&v| Scalar::Fp { v, p }).collect();
                if visit(&coeffs) {
                    return;
                }
                for d in digits.iter_mut() {
                    *d += 1;
                    if *d < p {
                        break;
                    }
                    *d = 0;
                }
            }
            return;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random_trials {
        let coeffs: Vec<Scalar> = (0..len)
            .map(|_| match field {
                FieldSpec::Prime(p) => Scalar::Fp {
                    v: rng.gen_range(0..p),
                    p,
                },
                FieldSpec::Rationals => field.from_i64(rng.gen_range(-4..=4)),
            })
            .collect();
        if visit(&coeffs) {
            return;
        }
    }
}

/// For indecomposable `x`, `y`: an isomorphism `x → y` if one exists.
/// Deterministic: `x ≅ y` iff some composite `g_b ∘ f_a` of Hom-basis
/// elements is not nilpotent, and then `f_a` is an isomorphism.
pub fn iso_between_indecomposables(x: &Representation, y: &Representation) -> Option<RepMorphism> {
    if x.dims() != y.dims() {
        return None;
    }
    let fs = hom_basis_unchecked(x, y);
    if let Some(f) = fs.iter().find(|f| f.is_iso()) {
        return Some(f.clone());
    }
    let gs = hom_basis_unchecked(y, x);
    for f in &fs {
        for g in &gs {
            if !g.compose(f).is_nilpotent() {
                return Some(f.clone());
            }
        }
    }
    // Fall back on combinations of the forward basis (needed only when the
    // residue field of End(x) is larger than the ground field).
    let mut found = None;
    for_each_combination(
        x.field(),
        fs.len(),
        DEFAULT_ISO_SEED,
        RANDOM_ISO_TRIALS,
        |c| {
            let terms: Vec<(Scalar, &RepMorphism)> = c.iter().cloned().zip(fs.iter()).collect();
            let f = RepMorphism::combination(x, y, &terms);
            if f.is_iso() {
                found = Some(f);
                return true;
            }
            false
        },
    );
    found
}

/// An isomorphism `x → y` if one exists.
pub fn is_isomorphic(x: &Representation, y: &Representation) -> Result<Option<RepMorphism>> {
    is_isomorphic_seeded(x, y, DEFAULT_ISO_SEED)
}

/// As [`is_isomorphic`], with an explicit seed for the randomised phase.
///
/// Combinations of the Hom basis are tried first (all of them when the
/// space is small over `F_p`, otherwise 64 seeded random ones). If none is
/// invertible both modules are decomposed and their summands matched, which
/// decides the question exactly.
pub fn is_isomorphic_seeded(
    x: &Representation,
    y: &Representation,
    seed: u64,
) -> Result<Option<RepMorphism>> {
    x.algebra().ensure_same(y.algebra())?;
    if x.dims() != y.dims() {
        return Ok(None);
    }
    if x.same_as(y) {
        return Ok(Some(RepMorphism::identity(x).retarget(x, y)));
    }
    let fs = hom_basis_unchecked(x, y);
    if fs.is_empty() {
        return Ok(if x.is_zero() {
            Some(RepMorphism::zero(x, y))
        } else {
            None
        });
    }
    let mut found = None;
    for_each_combination(x.field(), fs.len(), seed, RANDOM_ISO_TRIALS, |c| {
        let terms: Vec<(Scalar, &RepMorphism)> = c.iter().cloned().zip(fs.iter()).collect();
        let f = RepMorphism::combination(x, y, &terms);
        if f.is_iso() {
            found = Some(f);
            return true;
        }
        false
    });
    if found.is_some() {
        return Ok(found);
    }
    let dx = decompose(x)?;
    let dy = decompose(y)?;
    if dx.factors.len() != dy.factors.len() {
        return Ok(None);
    }
    // Match classes (both lists are sorted by dimension data).
    let mut class_iso: Vec<Option<RepMorphism>> = vec![None; dx.factors.len()];
    let mut used = vec![false; dy.factors.len()];
    for (i, (fx, mx)) in dx.factors.iter().enumerate() {
        let mut matched = false;
        for (j, (fy, my)) in dy.factors.iter().enumerate() {
            if used[j] || mx != my {
                continue;
            }
            if let Some(phi) = iso_between_indecomposables(fx, fy) {
                class_iso[i] = Some(phi);
                used[j] = true;
                // Remember the target class in the iso's target module.
                matched = true;
                break;
            }
        }
        if !matched {
            return Ok(None);
        }
    }
    // Pair the summands of each matched class in order.
    let mut iso = RepMorphism::zero(x, y);
    for (i, phi) in class_iso.iter().enumerate() {
        let phi = phi.as_ref().unwrap();
        let target_class = dy
            .factors
            .iter()
            .position(|(f, _)| f.same_as(phi.target()))
            .unwrap();
        let xs: Vec<&super::Summand> = dx.summands.iter().filter(|s| s.class == i).collect();
        let ys: Vec<&super::Summand> = dy
            .summands
            .iter()
            .filter(|s| s.class == target_class)
            .collect();
        for (sx, sy) in xs.iter().zip(&ys) {
            iso = iso.add(&sy.inclusion.compose(phi).compose(&sx.projection));
        }
    }
    debug_assert!(iso.is_iso());
    Ok(Some(iso))
}

/// Whether every endomorphism is nilpotent or invertible. Exhaustive over
/// small prime fields; otherwise the structural test on the Hom basis.
pub fn endomorphism_algebra_is_local(x: &Representation) -> bool {
    if x.is_zero() {
        return false;
    }
    let basis = hom_basis_unchecked(x, x);
    if let FieldSpec::Prime(p) = x.field() {
        if (p as u64)
            .checked_pow(basis.len() as u32)
            .is_some_and(|t| t <= ENUMERATION_BUDGET)
        {
            let mut ok = true;
            for_each_combination(x.field(), basis.len(), 0, 0, |c| {
                let terms: Vec<(Scalar, &RepMorphism)> =
                    c.iter().cloned().zip(basis.iter()).collect();
                let f = RepMorphism::combination(x, x, &terms);
                if !(f.is_nilpotent() || f.is_iso()) {
                    ok = false;
                    return true;
                }
                false
            });
            return ok;
        }
    }
    let mut lambdas = Vec::new();
    for f in &basis {
        match single_root(&min_poly_of(f)) {
            Some(l) => lambdas.push(l),
            None => return false,
        }
    }
    nilpotent_complement(&basis, &lambdas)
}
