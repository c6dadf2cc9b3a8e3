//! Exact scalar fields: finite fields `GF(p^s)` and the rationals.

use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest admissible field order for finite fields.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// Description of a base field: characteristic 0 means the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    #[serde(rename = "char")]
    pub characteristic: u32,
    #[serde(default = "one_u32", skip_serializing_if = "is_one")]
    pub degree: u32,
}

fn one_u32() -> u32 {
    1
}

fn is_one(d: &u32) -> bool {
    *d == 1
}

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec { characteristic: 0, degree: 1 };

    pub fn prime(p: u32) -> FieldSpec {
        FieldSpec { characteristic: p, degree: 1 }
    }

    pub fn is_finite(&self) -> bool {
        self.characteristic != 0
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        if self.characteristic == 0 {
            None
        } else {
            (self.characteristic as u64).checked_pow(self.degree)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.degree == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        if self.characteristic == 0 {
            if self.degree != 1 {
                return Err(Error::InvalidField("the rationals have no extension degree".into()));
            }
            return Ok(());
        }
        if !is_prime(self.characteristic as u64) {
            return Err(Error::InvalidField(format!("{} is not prime", self.characteristic)));
        }
        match self.order() {
            Some(q) if q < MAX_FIELD_ORDER => Ok(()),
            _ => Err(Error::InvalidField(format!(
                "field order {}^{} exceeds 2^16",
                self.characteristic, self.degree
            ))),
        }
    }

    /// The same field enlarged to degree `s` over its prime field.
    pub fn extension(&self, s: u32) -> FieldSpec {
        FieldSpec { characteristic: self.characteristic, degree: self.degree * s }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.characteristic, self.degree) {
            (0, _) => write!(f, "Q"),
            (p, 1) => write!(f, "F{p}"),
            (p, s) => write!(f, "F{p}^{s}"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Exact field arithmetic. Elements are plain values; all operations go
/// through the field object so that moduli and tables stay in one place.
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync + 'static;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    #[allow(clippy::wrong_self_convention)]
    fn from_int(&self, n: i64) -> Self::Elem;
    /// Integer representative when `a` lies in the prime subring (ℤ for ℚ).
    fn to_prime_int(&self, a: &Self::Elem) -> Option<i64>;
    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u64>;
    /// The `index`-th element in a fixed enumeration (finite fields only).
    fn element(&self, index: u64) -> Self::Elem;
    /// Random element: uniform for finite fields, integers in [-10, 10] for ℚ.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    fn format(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `acc += a * b`
    fn add_mul_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let p = self.mul(a, b);
        *acc = self.add(acc, &p);
    }
}

#[derive(Debug)]
struct ExtTables {
    /// exp[i] = g^i for i in 0..q-1, with g a primitive element.
    exp: Vec<u32>,
    /// log[a] for a != 0.
    log: Vec<u32>,
}

/// The finite field with `p^s` elements. Elements are encoded as integers in
/// `0..q` whose base-`p` digits are the coefficients of a polynomial in the
/// primitive element modulo a primitive polynomial.
#[derive(Clone)]
pub struct FiniteField {
    p: u32,
    degree: u32,
    q: u32,
    tables: Option<Arc<ExtTables>>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteField({})", self.spec())
    }
}

impl FiniteField {
    pub fn new(p: u32, degree: u32) -> Result<Self> {
        let spec = FieldSpec { characteristic: p, degree };
        spec.validate()?;
        if p == 0 {
            return Err(Error::InvalidField("characteristic 0 is not a finite field".into()));
        }
        let q = spec.order().unwrap() as u32;
        let tables = if degree == 1 { None } else { Some(Arc::new(build_tables(p, degree, q))) };
        Ok(FiniteField { p, degree, q, tables })
    }

    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn size(&self) -> u32 {
        self.q
    }
}

fn digits(mut a: u32, p: u32, s: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(s as usize);
    for _ in 0..s {
        out.push(a % p);
        a /= p;
    }
    out
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Finds a primitive polynomial of degree `s` over `F_p` by brute force and
/// tabulates powers of its root.
fn build_tables(p: u32, s: u32, q: u32) -> ExtTables {
    // candidate: monic x^s + c_{s-1} x^{s-1} + ... + c_0, coefficients encoded as index
    for cand in 0..q {
        let coeffs = digits(cand, p, s);
        if coeffs[0] == 0 {
            continue;
        }
        // multiply-by-x in F_p[x]/(f): shift up and reduce x^s = -sum c_i x^i
        let mut cur = vec![0u32; s as usize];
        cur[0] = 1;
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut ok = true;
        for i in 0..(q - 1) {
            let enc = undigits(&cur, p);
            if i > 0 && enc == 1 {
                ok = false;
                break;
            }
            exp.push(enc);
            let top = cur[(s - 1) as usize];
            for j in (1..s as usize).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            for j in 0..s as usize {
                cur[j] = (cur[j] + (p - coeffs[j]) * top) % p;
            }
        }
        if ok && undigits(&cur, p) == 1 {
            let mut log = vec![0u32; q as usize];
            for (i, &e) in exp.iter().enumerate() {
                log[e as usize] = i as u32;
            }
            return ExtTables { exp, log };
        }
    }
    unreachable!("every finite field has a primitive polynomial")
}

impl Field for FiniteField {
    type Elem = u32;

    fn spec(&self) -> FieldSpec {
        FieldSpec { characteristic: self.p, degree: self.degree }
    }

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1
    }

    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        if self.degree == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else {
            let (mut x, mut y, mut out, mut place) = (*a, *b, 0, 1);
            for _ in 0..self.degree {
                out += ((x % self.p + y % self.p) % self.p) * place;
                x /= self.p;
                y /= self.p;
                place *= self.p;
            }
            out
        }
    }

    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if self.degree == 1 {
            if *a == 0 {
                0
            } else {
                self.p - a
            }
        } else {
            let (mut x, mut out, mut place) = (*a, 0, 1);
            for _ in 0..self.degree {
                out += ((self.p - x % self.p) % self.p) * place;
                x /= self.p;
                place *= self.p;
            }
            out
        }
    }

    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.add(a, &self.neg(b))
    }

    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        match &self.tables {
            None => ((*a as u64 * *b as u64) % self.p as u64) as u32,
            Some(t) => {
                if *a == 0 || *b == 0 {
                    return 0;
                }
                let e = (t.log[*a as usize] + t.log[*b as usize]) % (self.q - 1);
                t.exp[e as usize]
            }
        }
    }

    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        match &self.tables {
            None => {
                // Fermat: a^(p-2)
                let (mut base, mut e, mut acc) = (*a as u64, self.p as u64 - 2, 1u64);
                let p = self.p as u64;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    e >>= 1;
                }
                Some(acc as u32)
            }
            Some(t) => {
                let l = t.log[*a as usize];
                Some(t.exp[((self.q - 1 - l) % (self.q - 1)) as usize])
            }
        }
    }

    fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    fn to_prime_int(&self, a: &u32) -> Option<i64> {
        if *a < self.p {
            Some(*a as i64)
        } else {
            None
        }
    }

    fn order(&self) -> Option<u64> {
        Some(self.q as u64)
    }

    fn element(&self, index: u64) -> u32 {
        assert!(index < self.q as u64, "element index out of range");
        index as u32
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.q)
    }

    fn format(&self, a: &u32) -> String {
        if self.degree == 1 {
            return a.to_string();
        }
        let ds = digits(*a, self.p, self.degree);
        let terms: Vec<String> = ds
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(|(i, d)| match i {
                0 => d.to_string(),
                1 => format!("{d}g"),
                _ => format!("{d}g^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

/// The rational numbers with arbitrary-precision normalized fractions.
#[derive(Clone, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::RATIONALS
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn to_prime_int(&self, a: &BigRational) -> Option<i64> {
        if a.is_integer() {
            a.to_integer().to_i64()
        } else {
            None
        }
    }

    fn order(&self) -> Option<u64> {
        None
    }

    fn element(&self, _index: u64) -> BigRational {
        panic!("the rationals cannot be enumerated")
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_int(rng.gen_range(-10..=10))
    }

    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.to_integer().to_string()
        } else if a.is_negative() {
            format!("-{}/{}", a.numer().abs(), a.denom())
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn add_mul_assign(&self, acc: &mut BigRational, a: &BigRational, b: &BigRational) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *acc += a * b;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_field_axioms<F: Field>(f: &F) {
        let q = f.order().unwrap();
        for i in 0..q {
            let a = f.element(i);
            assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
            if !f.is_zero(&a) {
                assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
            }
            for j in 0..q {
                let b = f.element(j);
                assert_eq!(f.add(&a, &b), f.add(&b, &a));
                assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
                for k in (0..q).step_by(3) {
                    let c = f.element(k);
                    let lhs = f.mul(&a, &f.add(&b, &c));
                    let rhs = f.add(&f.mul(&a, &b), &f.mul(&a, &c));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn prime_fields_are_fields() {
        for p in [2, 3, 5, 7] {
            check_field_axioms(&FiniteField::prime(p).unwrap());
        }
    }

    #[test]
    fn extension_fields_are_fields() {
        for (p, s) in [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2)] {
            let f = FiniteField::new(p, s).unwrap();
            assert_eq!(f.order(), Some((p as u64).pow(s)));
            check_field_axioms(&f);
        }
    }

    #[test]
    fn prime_subfield_embeds() {
        let f = FiniteField::new(3, 2).unwrap();
        assert_eq!(f.to_prime_int(&f.from_int(2)), Some(2));
        assert_eq!(f.add(&f.from_int(2), &f.from_int(2)), f.from_int(1));
        assert_eq!(f.mul(&f.from_int(2), &f.from_int(2)), f.from_int(1));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(FiniteField::prime(4).is_err());
        assert!(FiniteField::prime(65537).is_err());
        assert!(FiniteField::new(2, 16).is_err());
        assert!(FieldSpec { characteristic: 0, degree: 2 }.validate().is_err());
    }

    #[test]
    fn rationals_format() {
        let q = Rationals;
        let half = q.inv(&q.from_int(-2)).unwrap();
        assert_eq!(q.format(&half), "-1/2");
        assert_eq!(q.to_prime_int(&half), None);
    }
}
