//! Shared fixtures for the criterion benchmarks.

use ppsort_core::quiver::a3;
use ppsort_core::{FieldSpec, Matrix, Representation};

/// A dense `n × n` rational matrix with small deterministic entries.
pub fn dense_matrix(n: usize) -> Matrix {
    let field = FieldSpec::Rationals;
    Matrix::from_fn(field, n, n, |i, j| {
        field.from_i64(((i * 7 + j * 3 + i * j) % 11) as i64 - 5)
    })
}

/// `P1^k ⊕ S2^k` over A3 written in a scrambled basis.
pub fn scrambled_a3_module(k: usize) -> Representation {
    let field = FieldSpec::Rationals;
    let alg = a3(field);
    let d1 = k;
    let d2 = 2 * k;
    let d3 = k;
    // a: V1 → V2 is the inclusion of the P1 part, b: V2 → V3 kills the S2 part.
    let a = Matrix::from_fn(field, d2, d1, |i, j| {
        if i == j {
            field.one()
        } else {
            field.zero()
        }
    });
    let b = Matrix::from_fn(field, d3, d2, |i, j| {
        if i == j {
            field.one()
        } else {
            field.zero()
        }
    });
    let p = Matrix::from_fn(field, d2, d2, |i, j| {
        if i == j || j == (i + 1) % d2 {
            field.one()
        } else {
            field.zero()
        }
    });
    let p = if p.inverse().is_some() {
        p
    } else {
        Matrix::identity(field, d2)
    };
    let p_inv = p.inverse().expect("invertible");
    Representation::from_arrows(
        &alg,
        vec![d1, d2, d3],
        &[("a", p.mul(&a)), ("b", b.mul(&p_inv))],
    )
    .expect("valid module")
}
