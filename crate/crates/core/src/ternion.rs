//! The ternion algebra `T` of upper triangular 2×2 matrices over GF(q),
//! 2×2 matrices over `T`, and the ring maps of `T`.

use std::fmt;

use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gf::{Automorphism, Elem, Field};
use crate::linalg::Matrix;

/// The ternion `[[x, y], [0, z]]`. The (2,1) entry is structurally zero.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ternion {
    pub x: Elem,
    pub y: Elem,
    pub z: Elem,
}

impl fmt::Display for Ternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x, self.y, self.z)
    }
}

impl Ternion {
    pub const ZERO: Ternion = Ternion { x: Elem::ZERO, y: Elem::ZERO, z: Elem::ZERO };
    pub const ONE: Ternion = Ternion { x: Elem::ONE, y: Elem::ZERO, z: Elem::ONE };
    pub const E11: Ternion = Ternion { x: Elem::ONE, y: Elem::ZERO, z: Elem::ZERO };
    pub const E12: Ternion = Ternion { x: Elem::ZERO, y: Elem::ONE, z: Elem::ZERO };
    pub const E22: Ternion = Ternion { x: Elem::ZERO, y: Elem::ZERO, z: Elem::ONE };

    pub fn new(x: Elem, y: Elem, z: Elem) -> Ternion {
        Ternion { x, y, z }
    }

    pub fn from_u8(x: u8, y: u8, z: u8) -> Ternion {
        Ternion::new(Elem(x), Elem(y), Elem(z))
    }

    /// The central ternion `cI`.
    pub fn scalar(c: Elem) -> Ternion {
        Ternion::new(c, Elem::ZERO, c)
    }

    pub fn is_zero(self) -> bool {
        self == Ternion::ZERO
    }

    pub fn add(self, o: Ternion, f: &Field) -> Ternion {
        Ternion::new(f.add(self.x, o.x), f.add(self.y, o.y), f.add(self.z, o.z))
    }

    pub fn sub(self, o: Ternion, f: &Field) -> Ternion {
        Ternion::new(f.sub(self.x, o.x), f.sub(self.y, o.y), f.sub(self.z, o.z))
    }

    pub fn neg(self, f: &Field) -> Ternion {
        Ternion::new(f.neg(self.x), f.neg(self.y), f.neg(self.z))
    }

    /// `(x, y, z)(x', y', z') = (xx', xy' + yz', zz')`.
    pub fn mul(self, o: Ternion, f: &Field) -> Ternion {
        Ternion::new(f.mul(self.x, o.x), f.add(f.mul(self.x, o.y), f.mul(self.y, o.z)), f.mul(self.z, o.z))
    }

    pub fn is_unit(self) -> bool {
        !self.x.is_zero() && !self.z.is_zero()
    }

    pub fn inverse(self, f: &Field) -> Result<Ternion> {
        if !self.is_unit() {
            return Err(Error::NotAUnit(self.to_string()));
        }
        let xi = f.inv(self.x);
        let zi = f.inv(self.z);
        Ok(Ternion::new(xi, f.neg(f.mul(f.mul(self.y, xi), zi)), zi))
    }

    /// Entrywise field automorphism.
    pub fn map_entries(self, sigma: &Automorphism) -> Ternion {
        Ternion::new(sigma.apply(self.x), sigma.apply(self.y), sigma.apply(self.z))
    }

    /// The antiautomorphism `(x, y, z) ↦ (z, y, x)`.
    pub fn iota(self) -> Ternion {
        Ternion::new(self.z, self.y, self.x)
    }

    pub fn to_json(self, f: &Field) -> Value {
        json!([f.elem_json(self.x), f.elem_json(self.y), f.elem_json(self.z)])
    }

    /// All `q³` ternions, lexicographic in `(x, y, z)`.
    pub fn all(f: &Field) -> impl Iterator<Item = Ternion> + '_ {
        f.elements().flat_map(move |x| f.elements().flat_map(move |y| f.elements().map(move |z| Ternion::new(x, y, z))))
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, f: &Field) -> Ternion {
        let q = f.q();
        Ternion::from_u8(rng.gen_range(0..q) as u8, rng.gen_range(0..q) as u8, rng.gen_range(0..q) as u8)
    }

    pub fn random_unit<R: Rng + ?Sized>(rng: &mut R, f: &Field) -> Ternion {
        loop {
            let t = Ternion::random(rng, f);
            if t.is_unit() {
                return t;
            }
        }
    }
}

/// A row `(a, b) ∈ T²`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TernionPair {
    pub a: Ternion,
    pub b: Ternion,
}

impl fmt::Display for TernionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.a, self.b)
    }
}

impl TernionPair {
    pub fn new(a: Ternion, b: Ternion) -> TernionPair {
        TernionPair { a, b }
    }

    pub fn is_zero(self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// `t·(a, b) = (ta, tb)`.
    pub fn left_mul(self, t: Ternion, f: &Field) -> TernionPair {
        TernionPair::new(t.mul(self.a, f), t.mul(self.b, f))
    }

    /// `(a, b)·S = (a a' + b c', a b' + b d')`.
    pub fn act_right(self, s: &TernionMatrix2, f: &Field) -> TernionPair {
        TernionPair::new(self.a.mul(s.a, f).add(self.b.mul(s.c, f), f), self.a.mul(s.b, f).add(self.b.mul(s.d, f), f))
    }

    pub fn map_entries(self, sigma: &Automorphism) -> TernionPair {
        TernionPair::new(self.a.map_entries(sigma), self.b.map_entries(sigma))
    }

    pub fn to_json(self, f: &Field) -> Value {
        json!([self.a.to_json(f), self.b.to_json(f)])
    }

    /// The `index`-th of the `q⁶` pairs, ordered lexicographically by
    /// `(a11, a12, a22, b11, b12, b22)`.
    pub fn from_index(mut index: u64, f: &Field) -> TernionPair {
        let q = f.q() as u64;
        let mut c = [0u8; 6];
        for slot in c.iter_mut().rev() {
            *slot = (index % q) as u8;
            index /= q;
        }
        TernionPair::new(Ternion::from_u8(c[0], c[1], c[2]), Ternion::from_u8(c[3], c[4], c[5]))
    }

    pub fn count(f: &Field) -> u64 {
        (f.q() as u64).pow(6)
    }
}

/// A 2×2 matrix `[[a, b], [c, d]]` over `T`, acting on rows from the right.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct TernionMatrix2 {
    pub a: Ternion,
    pub b: Ternion,
    pub c: Ternion,
    pub d: Ternion,
}

impl TernionMatrix2 {
    pub const IDENTITY: TernionMatrix2 =
        TernionMatrix2 { a: Ternion::ONE, b: Ternion::ZERO, c: Ternion::ZERO, d: Ternion::ONE };

    pub fn new(a: Ternion, b: Ternion, c: Ternion, d: Ternion) -> TernionMatrix2 {
        TernionMatrix2 { a, b, c, d }
    }

    pub fn diagonal(u: Ternion, v: Ternion) -> TernionMatrix2 {
        TernionMatrix2::new(u, Ternion::ZERO, Ternion::ZERO, v)
    }

    /// The 4×4 block form over `F`; zeros at (2,1), (2,3), (4,1), (4,3).
    pub fn to_f4(&self) -> Matrix {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let z = Elem::ZERO;
        Matrix::from_rows(&[[a.x, a.y, b.x, b.y], [z, a.z, z, b.z], [c.x, c.y, d.x, d.y], [z, c.z, z, d.z]])
            .expect("4x4")
    }

    /// Re-partitions a 4×4 matrix into four ternions.
    pub fn from_f4(m: &Matrix) -> Result<TernionMatrix2> {
        if m.rows() != 4 || m.cols() != 4 {
            return Err(Error::Dimension("expected a 4x4 matrix".into()));
        }
        if [(1, 0), (1, 2), (3, 0), (3, 2)].iter().any(|&p| !m[p].is_zero()) {
            return Err(Error::Hypothesis("4x4 matrix does not have the ternion block pattern".into()));
        }
        let t = |r: usize, c: usize| Ternion::new(m[(r, c)], m[(r, c + 1)], m[(r + 1, c + 1)]);
        Ok(TernionMatrix2::new(t(0, 0), t(0, 2), t(2, 0), t(2, 2)))
    }

    /// `(a22 d22 - b22 c22, a11 d11 - b11 c11)`.
    pub fn det_factors(&self, f: &Field) -> (Elem, Elem) {
        let lower = f.sub(f.mul(self.a.z, self.d.z), f.mul(self.b.z, self.c.z));
        let upper = f.sub(f.mul(self.a.x, self.d.x), f.mul(self.b.x, self.c.x));
        (lower, upper)
    }

    /// Determinant of the 4×4 block form, as the product of the two factors.
    pub fn det(&self, f: &Field) -> Elem {
        let (l, u) = self.det_factors(f);
        f.mul(l, u)
    }

    pub fn is_invertible(&self, f: &Field) -> bool {
        let (l, u) = self.det_factors(f);
        !l.is_zero() && !u.is_zero()
    }

    pub fn mul(&self, o: &TernionMatrix2, f: &Field) -> TernionMatrix2 {
        let m = |p: Ternion, q: Ternion, r: Ternion, s: Ternion| p.mul(q, f).add(r.mul(s, f), f);
        TernionMatrix2::new(
            m(self.a, o.a, self.b, o.c),
            m(self.a, o.b, self.b, o.d),
            m(self.c, o.a, self.d, o.c),
            m(self.c, o.b, self.d, o.d),
        )
    }

    /// Inverse via 4×4 elimination over `F` and re-partitioning.
    pub fn inverse(&self, f: &Field) -> Result<TernionMatrix2> {
        let inv = self.to_f4().inverse(f)?;
        TernionMatrix2::from_f4(&inv)
    }

    pub fn map_entries(&self, sigma: &Automorphism) -> TernionMatrix2 {
        TernionMatrix2::new(
            self.a.map_entries(sigma),
            self.b.map_entries(sigma),
            self.c.map_entries(sigma),
            self.d.map_entries(sigma),
        )
    }

    /// Rejection sampling over the twelve scalar entries.
    pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, f: &Field) -> TernionMatrix2 {
        loop {
            let s = TernionMatrix2::new(
                Ternion::random(rng, f),
                Ternion::random(rng, f),
                Ternion::random(rng, f),
                Ternion::random(rng, f),
            );
            if s.is_invertible(f) {
                return s;
            }
        }
    }

    /// All `q¹²` matrices; only sensible for tiny `q`.
    pub fn all(f: &Field) -> impl Iterator<Item = TernionMatrix2> + '_ {
        let q = f.q() as u64;
        (0..q.pow(12)).map(move |mut i| {
            let mut c = [0u8; 12];
            for slot in c.iter_mut().rev() {
                *slot = (i % q) as u8;
                i /= q;
            }
            TernionMatrix2::new(
                Ternion::from_u8(c[0], c[1], c[2]),
                Ternion::from_u8(c[3], c[4], c[5]),
                Ternion::from_u8(c[6], c[7], c[8]),
                Ternion::from_u8(c[9], c[10], c[11]),
            )
        })
    }

    /// `|GL₂(T)| = ((q²-1)(q²-q))² q⁴`.
    pub fn group_order(q: u64) -> u64 {
        let gl2 = (q * q - 1) * (q * q - q);
        gl2 * gl2 * q.pow(4)
    }

    pub fn to_json(&self, f: &Field) -> Value {
        json!([[self.a.to_json(f), self.b.to_json(f)], [self.c.to_json(f), self.d.to_json(f)]])
    }
}

/// Automorphisms and antiautomorphisms of `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingMap {
    FieldAutomorphism(Automorphism),
    /// `t ↦ u t u⁻¹`.
    Inner {
        u: Ternion,
        u_inv: Ternion,
    },
    /// `(x, y, z) ↦ (z, y, x)`.
    Iota,
    /// Applied left to right.
    Composite(Vec<RingMap>),
}

impl RingMap {
    pub fn inner(u: Ternion, f: &Field) -> Result<RingMap> {
        Ok(RingMap::Inner { u, u_inv: u.inverse(f)? })
    }

    pub fn apply(&self, t: Ternion, f: &Field) -> Ternion {
        match self {
            RingMap::FieldAutomorphism(s) => t.map_entries(s),
            RingMap::Inner { u, u_inv } => u.mul(t, f).mul(*u_inv, f),
            RingMap::Iota => t.iota(),
            RingMap::Composite(maps) => maps.iter().fold(t, |acc, m| m.apply(acc, f)),
        }
    }

    /// True when the map reverses products.
    pub fn is_anti(&self) -> bool {
        match self {
            RingMap::Iota => true,
            RingMap::Composite(maps) => maps.iter().filter(|m| m.is_anti()).count() % 2 == 1,
            _ => false,
        }
    }
}
