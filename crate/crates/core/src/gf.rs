//! Finite fields GF(p^k) for small orders.
//!
//! An element is stored as its index `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
//! where `c_0 + c_1 x + ...` is its reduced polynomial representative. This
//! index order is the element enumeration order. Arithmetic is first done on
//! coefficient vectors and then cached as Cayley tables at construction.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Largest supported field order; elements are stored in one byte.
pub const MAX_ORDER: u64 = 256;

/// Built-in moduli, coefficient lists low degree first.
///
/// | q  | modulus          |
/// |----|------------------|
/// | 4  | x^2 + x + 1      |
/// | 8  | x^3 + x + 1      |
/// | 9  | x^2 + 1          |
/// | 16 | x^4 + x + 1      |
/// | 25 | x^2 + 2          |
/// | 27 | x^3 + 2x + 1     |
pub const DEFAULT_MODULI: &[(u64, &[u32])] = &[
    (4, &[1, 1, 1]),
    (8, &[1, 1, 0, 1]),
    (9, &[1, 0, 1]),
    (16, &[1, 1, 0, 0, 1]),
    (25, &[2, 0, 1]),
    (27, &[1, 2, 0, 1]),
];

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u8);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub p: u32,
    pub k: u32,
    /// Monic, low degree first, length `k + 1`.
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.k)
    }
}

struct Tables {
    spec: FieldSpec,
    q: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
    frobenius: Vec<Elem>,
}

/// A validated finite field. Cloning is cheap.
#[derive(Clone)]
pub struct Field(Arc<Tables>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q())
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Splits `q = p^k`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p as u32, k))
}

// Polynomial helpers over GF(p), coefficient vectors low degree first.

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    (1..p).find(|&b| (a as u64 * b as u64) % p as u64 == 1).expect("nonzero residue")
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let m = trim(m.to_vec());
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod_p(m[dm], p);
    while r.len() > dm {
        let dr = r.len() - 1;
        let c = (r[dr] as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &mi) in m.iter().enumerate() {
            let idx = dr - dm + i;
            r[idx] = ((r[idx] as u64 + (p - c) as u64 * mi as u64) % p as u64) as u32;
        }
        r = trim(r);
    }
    r
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

/// Exhaustive factor check: no monic factor of degree `1..=deg/2` divides `m`.
pub fn is_irreducible(m: &[u32], p: u32) -> bool {
    let m = trim(m.to_vec());
    if m.len() < 2 {
        return false;
    }
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut g = digits(idx, p, d);
            g.push(1);
            if poly_rem(&m, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn digits(mut n: u64, base: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((n % base as u64) as u32);
        n /= base as u64;
    }
    out
}

fn undigits(c: &[u32], base: u32) -> u64 {
    c.iter().rev().fold(0u64, |acc, &d| acc * base as u64 + d as u64)
}

impl Field {
    /// Validates `(p, k, modulus)` and builds the arithmetic tables.
    pub fn new(p: u32, k: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if k == 0 {
            return Err(Error::InvalidArgument("extension degree must be at least 1".into()));
        }
        let q = (p as u64).checked_pow(k).filter(|&q| q <= MAX_ORDER);
        let Some(q) = q else {
            return Err(Error::UnsupportedOrder((p as u64).saturating_pow(k)));
        };
        let modulus = match (k, modulus) {
            (1, None) => vec![0, 1],
            (1, Some(m)) => {
                if m.len() != 2 || m[1] != 1 || m[0] >= p {
                    return Err(Error::BadModulus(m.to_vec(), p));
                }
                vec![0, 1]
            }
            (_, Some(m)) => {
                let ok =
                    m.len() == k as usize + 1 && m[k as usize] == 1 && m.iter().all(|&c| c < p) && is_irreducible(m, p);
                if !ok {
                    return Err(Error::BadModulus(m.to_vec(), p));
                }
                m.to_vec()
            }
            (_, None) => DEFAULT_MODULI
                .iter()
                .find(|(order, _)| *order == q)
                .map(|(_, m)| m.to_vec())
                .ok_or(Error::UnsupportedOrder(q))?,
        };
        let spec = FieldSpec { p, k, modulus };
        Ok(Field(Arc::new(Tables::build(spec))))
    }

    /// `GF(q)` with the built-in modulus (or an explicit one).
    pub fn with_order(q: u64, modulus: Option<&[u32]>) -> Result<Field> {
        let (p, k) = prime_power(q).ok_or(if q >= 2 {
            Error::NotPrime(q)
        } else {
            Error::InvalidArgument(format!("field order {q} is below 2"))
        })?;
        Field::new(p, k, modulus)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    #[inline]
    pub fn q(&self) -> usize {
        self.0.q
    }

    pub fn characteristic(&self) -> u32 {
        self.0.spec.p
    }

    pub fn degree(&self) -> u32 {
        self.0.spec.k
    }

    /// All elements in enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.q()).map(|i| Elem(i as u8))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.q()).map(|i| Elem(i as u8))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        let p = self.characteristic() as i64;
        Elem(n.rem_euclid(p) as u8)
    }

    pub fn elem(&self, index: usize) -> Result<Elem> {
        if index < self.q() {
            Ok(Elem(index as u8))
        } else {
            Err(Error::InvalidArgument(format!("{index} is not an element of GF({})", self.q())))
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.0.add[a.index() * self.0.q + b.index()]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.0.mul[a.index() * self.0.q + b.index()]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.0.neg[a.index()]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse. Panics on zero; see [`Field::checked_inv`].
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(!a.is_zero(), "inverse of zero");
        self.0.inv[a.index()]
    }

    pub fn checked_inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            Err(Error::ZeroInverse)
        } else {
            Ok(self.0.inv[a.index()])
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Coefficient vector of `a`, low degree first.
    pub fn coefficients(&self, a: Elem) -> Vec<u32> {
        digits(a.0 as u64, self.characteristic(), self.degree() as usize)
    }

    pub fn from_coefficients(&self, c: &[u32]) -> Result<Elem> {
        let p = self.characteristic();
        if c.len() != self.degree() as usize || c.iter().any(|&d| d >= p) {
            return Err(Error::InvalidArgument(format!("{c:?} is not a reduced representative")));
        }
        Ok(Elem(undigits(c, p) as u8))
    }

    /// JSON form: an integer for prime fields, the coefficient list otherwise.
    pub fn elem_json(&self, a: Elem) -> Value {
        if self.degree() == 1 {
            json!(a.0)
        } else {
            json!(self.coefficients(a))
        }
    }

    pub fn scalar(&self, a: Elem) -> Scalar {
        Scalar { field: self.clone(), value: a }
    }

    pub fn scalars(&self) -> impl Iterator<Item = Scalar> + '_ {
        self.elements().map(move |a| self.scalar(a))
    }

    /// The `k` powers of the Frobenius map, identity first.
    pub fn automorphisms(&self) -> Vec<Automorphism> {
        (0..self.degree()).map(|e| self.frobenius_power(e)).collect()
    }

    pub fn identity_automorphism(&self) -> Automorphism {
        self.frobenius_power(0)
    }

    /// `a -> a^(p^e)`.
    pub fn frobenius_power(&self, e: u32) -> Automorphism {
        let k = self.degree();
        let e = e % k;
        let mut map: Vec<Elem> = self.elements().collect();
        for _ in 0..e {
            for m in map.iter_mut() {
                *m = self.0.frobenius[m.index()];
            }
        }
        Automorphism { exponent: e, degree: k, map: map.into() }
    }
}

impl Tables {
    fn build(spec: FieldSpec) -> Tables {
        let p = spec.p;
        let k = spec.k as usize;
        let q = spec.order() as usize;
        let coeffs: Vec<Vec<u32>> = (0..q as u64).map(|i| digits(i, p, k)).collect();
        let encode = |mut c: Vec<u32>| {
            c.resize(k, 0);
            Elem(undigits(&c, p) as u8)
        };
        let mut add = vec![Elem::ZERO; q * q];
        let mut mul = vec![Elem::ZERO; q * q];
        for a in 0..q {
            for b in 0..q {
                let sum: Vec<u32> = coeffs[a].iter().zip(&coeffs[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(sum);
                let prod = poly_rem(&poly_mul(&coeffs[a], &coeffs[b], p), &spec.modulus, p);
                mul[a * q + b] = encode(prod);
            }
        }
        let neg = (0..q).map(|a| encode(coeffs[a].iter().map(|&c| (p - c) % p).collect())).collect();
        let mut inv = vec![Elem::ZERO; q];
        for a in 1..q {
            inv[a] = Elem((1..q).find(|&b| mul[a * q + b] == Elem::ONE).expect("field") as u8);
        }
        let mut t = Tables { spec, q, add, mul, neg, inv, frobenius: Vec::new() };
        t.frobenius = (0..q)
            .map(|a| {
                let mut acc = Elem::ONE;
                for _ in 0..p {
                    acc = t.mul[acc.index() * q + a];
                }
                acc
            })
            .collect();
        t
    }
}

/// A field automorphism `a -> a^(p^exponent)`, stored as a lookup table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Automorphism {
    exponent: u32,
    degree: u32,
    map: Arc<[Elem]>,
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Frobenius^{}", self.exponent)
    }
}

impl Automorphism {
    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a.index()]
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_identity(&self) -> bool {
        self.exponent == 0
    }

    pub fn inverse(&self, field: &Field) -> Automorphism {
        field.frobenius_power((self.degree - self.exponent) % self.degree)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism, field: &Field) -> Automorphism {
        field.frobenius_power(self.exponent + other.exponent)
    }
}

/// A field element bundled with its field, for checked arithmetic across
/// field boundaries. The operator impls panic on mixed fields; the `try_*`
/// methods report [`Error::MixedFields`].
#[derive(Clone, PartialEq, Eq)]
pub struct Scalar {
    field: Field,
    value: Elem,
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}∈GF({})", self.value, self.field.q())
    }
}

impl Scalar {
    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self.field.scalar(self.field.add(self.value, other.value)))
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self.field.scalar(self.field.sub(self.value, other.value)))
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self.field.scalar(self.field.mul(self.value, other.value)))
    }

    pub fn inv(&self) -> Result<Scalar> {
        Ok(self.field.scalar(self.field.checked_inv(self.value)?))
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.try_add(&rhs).expect("scalars from different fields")
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.try_sub(&rhs).expect("scalars from different fields")
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.try_mul(&rhs).expect("scalars from different fields")
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let v = self.field.neg(self.value);
        self.field.scalar(v)
    }
}
