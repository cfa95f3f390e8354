use std::fmt;

use arrayvec::ArrayVec;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

use super::enumerate::{self, Budget};

/// Largest ambient dimension handled by [`Subspace`].
pub const MAX_DIM: usize = 6;

/// A row vector of `F^n`, zero-padded to [`MAX_DIM`] entries.
pub type Vector = [Elem; MAX_DIM];

pub fn vector(entries: &[u8]) -> Vector {
    let mut v = [Elem::ZERO; MAX_DIM];
    for (slot, &e) in v.iter_mut().zip(entries) {
        *slot = Elem(e);
    }
    v
}

pub fn unit_vector(i: usize) -> Vector {
    let mut v = [Elem::ZERO; MAX_DIM];
    v[i] = Elem::ONE;
    v
}

pub fn is_zero_vector(v: &Vector) -> bool {
    v.iter().all(|e| e.is_zero())
}

pub(crate) fn scale_add(acc: &mut Vector, c: Elem, v: &Vector, n: usize, f: &Field) {
    if c.is_zero() {
        return;
    }
    for i in 0..n {
        acc[i] = f.add(acc[i], f.mul(c, v[i]));
    }
}

/// Brings `rows` to reduced row-echelon form in place and returns the rank.
/// The first `rank` rows hold the reduced basis.
pub fn reduce_rows(rows: &mut [Vector], n: usize, f: &Field) -> usize {
    let mut rank = 0;
    for col in 0..n {
        if rank == rows.len() {
            break;
        }
        let Some(pr) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pr, rank);
        let inv = f.inv(rows[rank][col]);
        if inv != Elem::ONE {
            for e in &mut rows[rank][col..n] {
                *e = f.mul(*e, inv);
            }
        }
        let pivot_row = rows[rank];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let nf = f.neg(row[col]);
                scale_add(row, nf, &pivot_row, n, f);
            }
        }
        rank += 1;
    }
    rank
}

/// Rank by forward elimination only.
pub fn rank_of(rows: &mut [Vector], n: usize, f: &Field) -> usize {
    let mut rank = 0;
    for col in 0..n {
        if rank == rows.len() {
            break;
        }
        let Some(pr) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pr, rank);
        let inv_neg = f.neg(f.inv(rows[rank][col]));
        let pivot_row = rows[rank];
        for row in rows[rank + 1..].iter_mut() {
            if !row[col].is_zero() {
                let c = f.mul(row[col], inv_neg);
                scale_add(row, c, &pivot_row, n, f);
            }
        }
        rank += 1;
    }
    rank
}

/// A subspace of `F^n` stored by its canonical reduced row-echelon basis
/// (leftmost pivots, pivot entries 1). Equal subspaces have identical
/// representations, so `Eq`, `Hash` and `Ord` are geometric.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    n: u8,
    basis: ArrayVec<Vector, MAX_DIM>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<u8>> = self.basis.iter().map(|r| r[..self.n()].iter().map(|e| e.0).collect()).collect();
        write!(f, "<{rows:?}>")
    }
}

impl Subspace {
    pub fn zero(n: usize) -> Subspace {
        assert!(n <= MAX_DIM);
        Subspace { n: n as u8, basis: ArrayVec::new() }
    }

    pub fn full(n: usize) -> Subspace {
        let basis: Vec<Vector> = (0..n).map(unit_vector).collect();
        Subspace::from_canonical(n, &basis)
    }

    /// Span of `vectors` (entries beyond `n` are ignored).
    pub fn from_vectors<I>(n: usize, vectors: I, f: &Field) -> Subspace
    where
        I: IntoIterator<Item = Vector>,
    {
        assert!(n <= MAX_DIM, "ambient dimension {n} exceeds {MAX_DIM}");
        let mut buf: ArrayVec<Vector, 12> = ArrayVec::new();
        for mut v in vectors {
            v[n..].fill(Elem::ZERO);
            if buf.is_full() {
                let r = reduce_rows(&mut buf, n, f);
                buf.truncate(r);
            }
            buf.push(v);
        }
        let r = reduce_rows(&mut buf, n, f);
        Subspace { n: n as u8, basis: buf[..r].iter().copied().collect() }
    }

    /// Checked canonicalization of arbitrary rows.
    pub fn canonicalize<R: AsRef<[Elem]>>(n: usize, rows: &[R], f: &Field) -> Result<Subspace> {
        if n > MAX_DIM {
            return Err(Error::Dimension(format!("ambient dimension {n} exceeds {MAX_DIM}")));
        }
        let mut vs = Vec::with_capacity(rows.len());
        for r in rows {
            let r = r.as_ref();
            if r.len() != n {
                return Err(Error::Dimension(format!("vector of length {} in F^{n}", r.len())));
            }
            if r.iter().any(|e| e.index() >= f.q()) {
                return Err(Error::MixedFields);
            }
            let mut v = [Elem::ZERO; MAX_DIM];
            v[..n].copy_from_slice(r);
            vs.push(v);
        }
        Ok(Subspace::from_vectors(n, vs, f))
    }

    /// Wraps a basis already known to be in canonical form.
    pub(crate) fn from_canonical(n: usize, basis: &[Vector]) -> Subspace {
        Subspace { n: n as u8, basis: basis.iter().copied().collect() }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|r| r.iter().position(|e| !e.is_zero()).expect("nonzero row")).collect()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::Dimension(format!("subspaces of F^{} and F^{}", self.n, other.n)))
        }
    }

    /// Residue of `v` after elimination against the basis; zero iff `v` lies in the span.
    pub fn reduce_vector(&self, v: &Vector, f: &Field) -> Vector {
        let mut v = *v;
        for row in &self.basis {
            let p = row.iter().position(|e| !e.is_zero()).expect("nonzero row");
            if !v[p].is_zero() {
                let c = f.neg(v[p]);
                scale_add(&mut v, c, row, self.n(), f);
            }
        }
        v
    }

    pub fn contains_vector(&self, v: &Vector, f: &Field) -> bool {
        is_zero_vector(&self.reduce_vector(v, f))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subspace, f: &Field) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.includes(other, f))
    }

    /// Unchecked [`Subspace::contains`].
    pub fn includes(&self, other: &Subspace, f: &Field) -> bool {
        other.dim() <= self.dim() && other.basis.iter().all(|v| self.contains_vector(v, f))
    }

    pub fn join(&self, other: &Subspace, f: &Field) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(self.join_unchecked(other, f))
    }

    pub(crate) fn join_unchecked(&self, other: &Subspace, f: &Field) -> Subspace {
        Subspace::from_vectors(self.n(), self.basis.iter().chain(other.basis.iter()).copied(), f)
    }

    pub fn dim_join(&self, other: &Subspace, f: &Field) -> usize {
        debug_assert_eq!(self.n, other.n);
        let mut rows: ArrayVec<Vector, 12> = self.basis.iter().chain(other.basis.iter()).copied().collect();
        rank_of(&mut rows, self.n(), f)
    }

    pub fn dim_meet(&self, other: &Subspace, f: &Field) -> usize {
        self.dim() + other.dim() - self.dim_join(other, f)
    }

    /// `{w : u·wᵀ = 0 for all u in self}`.
    pub fn annihilator(&self, f: &Field) -> Subspace {
        let n = self.n();
        let pivots = self.pivots();
        let vs = (0..n).filter(|c| !pivots.contains(c)).map(|fc| {
            let mut v = [Elem::ZERO; MAX_DIM];
            v[fc] = Elem::ONE;
            for (row, &pc) in self.basis.iter().zip(&pivots) {
                v[pc] = f.neg(row[fc]);
            }
            v
        });
        Subspace::from_vectors(n, vs, f)
    }

    pub fn meet(&self, other: &Subspace, f: &Field) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(self.meet_unchecked(other, f))
    }

    pub(crate) fn meet_unchecked(&self, other: &Subspace, f: &Field) -> Subspace {
        if self.includes(other, f) {
            return other.clone();
        }
        if other.includes(self, f) {
            return self.clone();
        }
        self.annihilator(f).join_unchecked(&other.annihilator(f), f).annihilator(f)
    }

    /// All `d`-dimensional subspaces of `self`, in enumeration order.
    pub fn subspaces_within(&self, d: usize, f: &Field) -> Vec<Subspace> {
        let k = self.dim();
        if d > k {
            return Vec::new();
        }
        enumerate::enumerate_subspaces(k, d, f, &Budget::unlimited())
            .expect("unlimited budget")
            .map(|coords| self.lift_coordinates(&coords, f))
            .collect()
    }

    /// Maps a subspace of `F^dim` (coordinates w.r.t. this basis) into `F^n`.
    pub fn lift_coordinates(&self, coords: &Subspace, f: &Field) -> Subspace {
        debug_assert_eq!(coords.n(), self.dim());
        let vs = coords.basis.iter().map(|c| {
            let mut v = [Elem::ZERO; MAX_DIM];
            for (i, row) in self.basis.iter().enumerate() {
                scale_add(&mut v, c[i], row, self.n(), f);
            }
            v
        });
        Subspace::from_vectors(self.n(), vs, f)
    }

    pub fn points(&self, f: &Field) -> Vec<Subspace> {
        self.subspaces_within(1, f)
    }

    /// Coordinates `coords` of each basis vector, as a subspace of `F^coords.len()`.
    pub fn project(&self, coords: &[usize], f: &Field) -> Subspace {
        let vs = self.basis.iter().map(|r| {
            let mut v = [Elem::ZERO; MAX_DIM];
            for (i, &c) in coords.iter().enumerate() {
                v[i] = r[c];
            }
            v
        });
        Subspace::from_vectors(coords.len(), vs, f)
    }

    /// Inverse of [`Subspace::project`] on a coordinate subspace: places coordinate
    /// `i` at position `coords[i]` of `F^n`.
    pub fn embed(&self, n: usize, coords: &[usize], f: &Field) -> Subspace {
        let vs = self.basis.iter().map(|r| {
            let mut v = [Elem::ZERO; MAX_DIM];
            for (i, &c) in coords.iter().enumerate() {
                v[c] = r[i];
            }
            v
        });
        Subspace::from_vectors(n, vs, f)
    }

    pub fn to_json(&self, f: &Field) -> Value {
        let basis: Vec<Value> =
            self.basis.iter().map(|r| Value::Array(r[..self.n()].iter().map(|&e| f.elem_json(e)).collect())).collect();
        json!({"n": self.n, "k": self.dim(), "basis": basis})
    }

    /// Short text form used in DOT labels and reports, e.g. `[100000|010000]`.
    pub fn label(&self) -> String {
        let wide = self.basis.iter().any(|r| r.iter().any(|e| e.0 > 9));
        let sep = if wide { "," } else { "" };
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|r| r[..self.n()].iter().map(|e| e.0.to_string()).collect::<Vec<_>>().join(sep))
            .collect();
        format!("[{}]", rows.join("|"))
    }
}
