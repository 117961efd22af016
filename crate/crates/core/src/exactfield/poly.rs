//! Univariate polynomials over an exact field, just enough for eigenvalue
//! searches: minimal polynomials of a family of commuting blocks and roots
//! lying in the ground field.
//!
//! Polynomials are coefficient vectors, lowest degree first, monic when
//! produced here.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use super::{FieldSpec, Matrix, Scalar};

/// Evaluate `poly` at `x` by Horner's rule.
pub fn eval(poly: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = x.field().zero();
    for c in poly.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// Minimal polynomial of the block-diagonal operator given by `blocks`
/// (all square). The zero-dimensional operator has minimal polynomial 1.
pub fn min_poly_blocks(field: FieldSpec, blocks: &[&Matrix]) -> Vec<Scalar> {
    let total: usize = blocks.iter().map(|b| b.rows() * b.rows()).sum();
    if total == 0 {
        return vec![field.one()];
    }
    let flatten = |ms: &[Matrix]| -> Vec<Scalar> {
        ms.iter()
            .flat_map(|m| m.entries().iter().cloned())
            .collect()
    };
    let mut powers: Vec<Vec<Scalar>> = Vec::new();
    let mut current: Vec<Matrix> = blocks
        .iter()
        .map(|b| Matrix::identity(field, b.rows()))
        .collect();
    loop {
        let v = flatten(&current);
        if !powers.is_empty() {
            let span = Matrix::from_columns(field, total, &powers);
            let target = Matrix::from_columns(field, total, std::slice::from_ref(&v));
            if let Some(x) = span.solve(&target).expect("shapes agree") {
                // v = Σ x_k M^k, so M^d - Σ x_k M^k = 0.
                let mut poly: Vec<Scalar> = (0..powers.len()).map(|k| -&x[(k, 0)]).collect();
                poly.push(field.one());
                return poly;
            }
        }
        powers.push(v);
        current = current.iter().zip(blocks).map(|(c, b)| c.mul(b)).collect();
    }
}

/// Roots of `poly` in its field, without multiplicity, in ascending order of
/// their canonical text for ℚ and by residue for `F_p`.
///
/// Over ℚ the rational root theorem is used, which needs the integer
/// content to be factorable by trial division; coefficients whose absolute
/// value exceeds 10^12 make the search give up on candidates involving them
/// and return only the roots found among the remaining candidates.
pub fn roots(poly: &[Scalar]) -> Vec<Scalar> {
    let Some(lead) = poly.iter().rposition(|c| !c.is_zero()) else {
        return Vec::new();
    };
    let poly = &poly[..=lead];
    let field = poly[0].field();
    match field {
        FieldSpec::Prime(p) => (0..p)
            .map(|v| Scalar::Fp { v, p })
            .filter(|x| eval(poly, x).is_zero())
            .collect(),
        FieldSpec::Rationals => rational_roots(poly),
    }
}

fn rational_roots(poly: &[Scalar]) -> Vec<Scalar> {
    let field = FieldSpec::Rationals;
    let mut out = Vec::new();
    // Strip factors of x.
    let low = poly.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if low > 0 {
        out.push(field.zero());
    }
    let poly = &poly[low..];
    if poly.len() <= 1 {
        return out;
    }
    // Clear denominators.
    let mut lcm = BigInt::one();
    for c in poly {
        if let Scalar::Q(q) = c {
            lcm = lcm.lcm(q.denom());
        }
    }
    let ints: Vec<BigInt> = poly
        .iter()
        .map(|c| match c {
            Scalar::Q(q) => (q * num_rational::BigRational::from_integer(lcm.clone())).to_integer(),
            _ => unreachable!(),
        })
        .collect();
    let (Some(a0), Some(an)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
        return out;
    };
    let mut cands: Vec<num_rational::BigRational> = Vec::new();
    for a in &a0 {
        for b in &an {
            for s in [1i64, -1] {
                let r = num_rational::BigRational::new(BigInt::from(*a * s), BigInt::from(*b));
                if !cands.contains(&r) {
                    cands.push(r);
                }
            }
        }
    }
    cands.sort();
    for r in cands {
        let x = Scalar::Q(r);
        if eval(poly, &x).is_zero() {
            out.push(x);
        }
    }
    out
}

fn divisors(n: &BigInt) -> Option<Vec<i64>> {
    let n = n.abs().to_i64()?;
    if n == 0 || n > 1_000_000_000_000 {
        return None;
    }
    let mut ds = Vec::new();
    let mut d = 1i64;
    while d * d <= n {
        if n % d == 0 {
            ds.push(d);
            if d * d != n {
                ds.push(n / d);
            }
        }
        d += 1;
    }
    ds.sort();
    Some(ds)
}

/// If `poly` (monic, degree ≥ 1) equals `(x - λ)^k`, return λ.
pub fn single_root(poly: &[Scalar]) -> Option<Scalar> {
    let k = poly.len().checked_sub(1)?;
    if k == 0 {
        return None;
    }
    let field = poly[0].field();
    let p = field.characteristic() as usize;
    // Locate the coefficient that determines λ: with k = p^a·b, the
    // coefficient of x^{k - p^a} is -b·λ^{p^a} = -b·λ over F_p.
    let (step, b) = if p == 0 {
        (1, k)
    } else {
        let mut step = 1;
        let mut b = k;
        while b % p == 0 {
            b /= p;
            step *= p;
        }
        (step, b)
    };
    let c = &poly[k - step];
    let lambda = &(-c) * &field.from_i64(b as i64).inv();
    // Check by expanding (x - λ)^k.
    let mut expanded = vec![field.one()];
    for _ in 0..k {
        let mut next = vec![field.zero(); expanded.len() + 1];
        for (i, a) in expanded.iter().enumerate() {
            next[i + 1] += a;
            let t = a * &lambda;
            next[i] -= &t;
        }
        expanded = next;
    }
    (expanded.as_slice() == poly).then_some(lambda)
}
