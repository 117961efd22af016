//! Scalars of an exact field: arbitrary-precision rationals or residues mod a prime.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest prime accepted for `F_p`; products of two residues fit in a `u64`
/// and eigenvalue searches may enumerate the whole field.
pub const MAX_PRIME: u32 = 65_521;

/// The ground field of every computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

impl FieldSpec {
    /// Build a prime field, rejecting composites and primes above [`MAX_PRIME`].
    pub fn prime(p: u32) -> Result<Self> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::Field(format!(
                "{p} is not a supported prime (2 <= p <= {MAX_PRIME})"
            )));
        }
        Ok(FieldSpec::Prime(p))
    }

    /// Parse `Q`, `QQ`, `rationals`, `F5`, `GF(5)` or a bare prime.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let lower = t.to_ascii_lowercase();
        if matches!(lower.as_str(), "q" | "qq" | "rationals" | "rational") {
            return Ok(FieldSpec::Rationals);
        }
        let digits = lower
            .strip_prefix("gf(")
            .and_then(|s| s.strip_suffix(')'))
            .or_else(|| lower.strip_prefix("gf"))
            .or_else(|| lower.strip_prefix('f'))
            .unwrap_or(&lower);
        let p: u32 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("unrecognised field `{t}`")))?;
        FieldSpec::prime(p)
    }

    /// 0 for ℚ, p for `F_p`.
    pub fn characteristic(self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Q(BigRational::zero()),
            FieldSpec::Prime(p) => Scalar::Fp { v: 0, p },
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => Scalar::Fp {
                v: n.rem_euclid(p as i64) as u32,
                p,
            },
        }
    }

    /// The fraction `num/den`; `den` must be nonzero in the field.
    pub fn from_fraction(self, num: i64, den: i64) -> Result<Scalar> {
        let d = self.from_i64(den);
        if d.is_zero() {
            return Err(Error::Field(format!(
                "denominator {den} vanishes in {self}"
            )));
        }
        Ok(&self.from_i64(num) * &d.inv())
    }

    /// Parse `a` or `a/b` with integer `a`, `b`.
    pub fn parse_scalar(self, text: &str) -> Result<Scalar> {
        let t = text.trim();
        let bad = || Error::Parse(format!("bad scalar `{t}`"));
        match t.split_once('/') {
            Some((a, b)) => {
                let a: i64 = a.trim().parse().map_err(|_| bad())?;
                let b: i64 = b.trim().parse().map_err(|_| bad())?;
                self.from_fraction(a, b)
            }
            None => Ok(self.from_i64(t.parse().map_err(|_| bad())?)),
        }
    }

    /// All field elements, for `F_p` only.
    pub fn elements(self) -> Option<Vec<Scalar>> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some((0..p).map(|v| Scalar::Fp { v, p }).collect()),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of ℚ or `F_p`. Mixing fields in one operation is a programming
/// error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { v: u32, p: u32 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Q(_) => FieldSpec::Rationals,
            Scalar::Fp { p, .. } => FieldSpec::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Q(q) => Scalar::Q(q.recip()),
            Scalar::Fp { v, p } => Scalar::Fp {
                v: pow_mod(*v, p - 2, *p),
                p: *p,
            },
        }
    }

    /// Integer powers.
    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Integral value when the scalar is a small integer (or any residue).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Q(q) if q.is_integer() => q.to_integer().to_i64(),
            Scalar::Q(_) => None,
            Scalar::Fp { v, .. } => Some(*v as i64),
        }
    }

    /// Canonical text: `a`, `-a` or `a/b` over ℚ; the residue in `0..p` over `F_p`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Sign-aware check used when printing linear combinations.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_negative(),
            Scalar::Fp { .. } => false,
        }
    }
}

fn pow_mod(mut b: u32, mut e: u32, p: u32) -> u32 {
    let m = p as u64;
    let mut acc = 1u64;
    let mut base = b as u64 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    b = acc as u32;
    b
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Scalar::Fp {
                v: ((*a as u64 + *b as u64) % *p as u64) as u32,
                p: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Scalar::Fp {
                v: ((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32,
                p: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Scalar::Fp {
                v: ((*a as u64 * *b as u64) % *p as u64) as u32,
                p: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { v, p } => Scalar::Fp {
                v: (p - v) % p,
                p: *p,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => *a += b,
            _ => *self = &*self + rhs,
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => *a -= b,
            _ => *self = &*self - rhs,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Q(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = FieldSpec::prime(7).unwrap();
        let three = f.from_i64(3);
        assert_eq!((&three * &three.inv()), f.one());
        assert_eq!(f.from_i64(-1), f.from_i64(6));
        assert_eq!(three.pow(6), f.one());
    }

    #[test]
    fn rational_fractions() {
        let q = FieldSpec::Rationals;
        let x = q.parse_scalar("3/2").unwrap();
        assert_eq!(x.to_string(), "3/2");
        assert_eq!((&x + &x).to_string(), "3");
        assert_eq!(q.parse_scalar("-4/6").unwrap().to_string(), "-2/3");
    }

    #[test]
    fn field_parsing() {
        assert_eq!(FieldSpec::parse("QQ").unwrap(), FieldSpec::Rationals);
        assert_eq!(FieldSpec::parse("F2").unwrap(), FieldSpec::Prime(2));
        assert_eq!(FieldSpec::parse("GF(3)").unwrap(), FieldSpec::Prime(3));
        assert!(FieldSpec::parse("F4").is_err());
        assert!(FieldSpec::parse("banana").is_err());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(FieldSpec::Prime(5).from_fraction(1, 5).is_err());
    }
}
