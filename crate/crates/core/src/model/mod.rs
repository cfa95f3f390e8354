//! From cyclic submodules of `T²` to subspaces of `F⁶`.
//!
//! `Φ` sends `(a, b)` to `(a11, a12, a22, b11, b12, b22)`. The `Φ`-image of
//! the submodule `T(a, b)` is the span of `Φ(E11·(a,b))`, `Φ(E12·(a,b))` and
//! `Φ(E22·(a,b))`, since `E11, E12, E22` span `T` over `F`.

mod catalog;
mod flats;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use catalog::{Catalog, Characterization, PlaneScan};
pub use flats::{alpha_regulus_parametric, quadric_form, Flats, J_COORDS};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg::{Matrix, SemilinearMap, Subspace, Vector, MAX_DIM};
use crate::ternion::{Ternion, TernionMatrix2, TernionPair};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SubmoduleType {
    #[serde(rename = "zero")]
    Zero,
    X,
    Y,
    #[serde(rename = "alpha")]
    Alpha,
    #[serde(rename = "beta")]
    Beta,
    #[serde(rename = "gamma")]
    Gamma,
}

impl SubmoduleType {
    pub const NONZERO: [SubmoduleType; 5] =
        [SubmoduleType::X, SubmoduleType::Y, SubmoduleType::Alpha, SubmoduleType::Beta, SubmoduleType::Gamma];

    /// Position in [`SubmoduleType::NONZERO`].
    pub fn slot(self) -> Option<usize> {
        SubmoduleType::NONZERO.iter().position(|&t| t == self)
    }

    pub fn name(self) -> &'static str {
        match self {
            SubmoduleType::Zero => "zero",
            SubmoduleType::X => "X",
            SubmoduleType::Y => "Y",
            SubmoduleType::Alpha => "alpha",
            SubmoduleType::Beta => "beta",
            SubmoduleType::Gamma => "gamma",
        }
    }

    /// F-dimension of the `Φ`-image.
    pub fn dimension(self) -> usize {
        match self {
            SubmoduleType::Zero => 0,
            SubmoduleType::X | SubmoduleType::Y => 3,
            SubmoduleType::Alpha => 2,
            SubmoduleType::Beta | SubmoduleType::Gamma => 1,
        }
    }

    pub fn is_free(self) -> bool {
        matches!(self, SubmoduleType::X | SubmoduleType::Y)
    }

    /// Orbit representative: `X₀ = T(I,0)`, `Y₀ = T(E22,E12)`, `α₀ = T(E22,0)`,
    /// `β₀ = T(E11,0)`, `γ₀ = T(E12,0)`.
    pub fn representative(self) -> TernionPair {
        let z = Ternion::ZERO;
        match self {
            SubmoduleType::Zero => TernionPair::new(z, z),
            SubmoduleType::X => TernionPair::new(Ternion::ONE, z),
            SubmoduleType::Y => TernionPair::new(Ternion::E22, Ternion::E12),
            SubmoduleType::Alpha => TernionPair::new(Ternion::E22, z),
            SubmoduleType::Beta => TernionPair::new(Ternion::E11, z),
            SubmoduleType::Gamma => TernionPair::new(Ternion::E12, z),
        }
    }

    /// `|𝒢_type|` as a polynomial in `q`.
    pub fn expected_count(self, q: u64) -> u64 {
        match self {
            SubmoduleType::Zero => 1,
            SubmoduleType::X => q * (q + 1) * (q + 1),
            SubmoduleType::Y | SubmoduleType::Alpha | SubmoduleType::Gamma => q + 1,
            SubmoduleType::Beta => q * q * q + q * q,
        }
    }
}

impl fmt::Display for SubmoduleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn phi(v: &TernionPair) -> Vector {
    let mut out = [Elem::ZERO; MAX_DIM];
    out.copy_from_slice(&[v.a.x, v.a.y, v.a.z, v.b.x, v.b.y, v.b.z]);
    out
}

pub fn phi_inverse(w: &Vector) -> TernionPair {
    TernionPair::new(Ternion::new(w[0], w[1], w[2]), Ternion::new(w[3], w[4], w[5]))
}

/// The 6×6 matrix of the linear map `Φ ∘ (v ↦ v·S) ∘ Φ⁻¹`.
pub fn block6(s: &TernionMatrix2) -> Matrix {
    let (a, b, c, d) = (s.a, s.b, s.c, s.d);
    let o = Elem::ZERO;
    Matrix::from_rows(&[
        [a.x, a.y, o, b.x, b.y, o],
        [o, a.z, o, o, b.z, o],
        [o, o, a.z, o, o, b.z],
        [c.x, c.y, o, d.x, d.y, o],
        [o, c.z, o, o, d.z, o],
        [o, o, c.z, o, o, d.z],
    ])
    .expect("6x6")
}

pub fn block6_lift(s: &TernionMatrix2, f: &Field) -> Result<SemilinearMap> {
    if !s.is_invertible(f) {
        return Err(Error::Singular);
    }
    SemilinearMap::linear(block6(s), f)
}

/// Reads `S` back from a 6×6 matrix, if the matrix has exactly the block-6 pattern.
pub fn block6_pattern(m: &Matrix) -> Option<TernionMatrix2> {
    if m.rows() != 6 || m.cols() != 6 {
        return None;
    }
    let t = |r: usize, c: usize| Ternion::new(m[(r, c)], m[(r, c + 1)], m[(r + 1, c + 1)]);
    let s = TernionMatrix2::new(t(0, 0), t(0, 3), t(3, 0), t(3, 3));
    (block6(&s) == *m).then_some(s)
}

/// `Φ(T(a, b))`.
pub fn cyclic_span(v: &TernionPair, f: &Field) -> Subspace {
    let gens = [Ternion::E11, Ternion::E12, Ternion::E22].map(|t| phi(&v.left_mul(t, f)));
    Subspace::from_vectors(6, gens, f)
}

/// Closed-form classification from the generator coordinates.
pub fn classify(v: &TernionPair, f: &Field) -> SubmoduleType {
    let (a, b) = (v.a, v.b);
    let diag11 = !a.x.is_zero() || !b.x.is_zero();
    let diag22 = !a.z.is_zero() || !b.z.is_zero();
    let off12 = !a.y.is_zero() || !b.y.is_zero();
    match (diag22, diag11) {
        (false, true) => SubmoduleType::Beta,
        (false, false) if off12 => SubmoduleType::Gamma,
        (false, false) => SubmoduleType::Zero,
        (true, true) => SubmoduleType::X,
        (true, false) => {
            let minor = f.sub(f.mul(a.z, b.y), f.mul(b.z, a.y));
            if minor.is_zero() {
                SubmoduleType::Alpha
            } else {
                SubmoduleType::Y
            }
        }
    }
}

/// Classification by the dimension of the span and its position relative to `K` and `L`.
pub fn classify_by_rank(v: &TernionPair, flats: &Flats, f: &Field) -> SubmoduleType {
    let span = cyclic_span(v, f);
    match span.dim() {
        0 => SubmoduleType::Zero,
        1 if flats.l.includes(&span, f) => SubmoduleType::Gamma,
        1 => SubmoduleType::Beta,
        2 => SubmoduleType::Alpha,
        _ if flats.k.includes(&span, f) => SubmoduleType::Y,
        _ => SubmoduleType::X,
    }
}

/// Whether `a x + b y = 1` is solvable in `T`, as an F-linear system in the
/// six coordinates of `(x, y)`.
pub fn is_unimodular(v: &TernionPair, f: &Field) -> bool {
    let basis = [Ternion::E11, Ternion::E12, Ternion::E22];
    let images = basis.iter().map(|&t| v.a.mul(t, f)).chain(basis.iter().map(|&t| v.b.mul(t, f))).map(|t| {
        let mut w = [Elem::ZERO; MAX_DIM];
        w[..3].copy_from_slice(&[t.x, t.y, t.z]);
        w
    });
    let image = Subspace::from_vectors(3, images, f);
    let one = Ternion::ONE;
    let mut target = [Elem::ZERO; MAX_DIM];
    target[..3].copy_from_slice(&[one.x, one.y, one.z]);
    image.contains_vector(&target, f)
}

/// The line of `PG(3, q)` representing a unimodular point, spanned by
/// `(a11, a12, b11, b12)` and `(0, a22, 0, b22)`.
pub fn line_model(v: &TernionPair, f: &Field) -> Result<Subspace> {
    let t = classify(v, f);
    if t != SubmoduleType::X {
        return Err(Error::WrongType { expected: "X", got: t.to_string() });
    }
    let mut r1 = [Elem::ZERO; MAX_DIM];
    let mut r2 = [Elem::ZERO; MAX_DIM];
    r1[..4].copy_from_slice(&[v.a.x, v.a.y, v.b.x, v.b.y]);
    r2[..4].copy_from_slice(&[Elem::ZERO, v.a.z, Elem::ZERO, v.b.z]);
    Ok(Subspace::from_vectors(4, [r1, r2], f))
}

/// The axis of the special linear complex in `PG(3, q)`.
pub fn line_model_axis(f: &Field) -> Subspace {
    Subspace::from_vectors(4, [crate::linalg::unit_vector(1), crate::linalg::unit_vector(3)], f)
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::linalg::{unit_vector, vector};

    fn gf(q: u64) -> Field {
        Field::with_order(q, None).unwrap()
    }

    fn span(idx: &[usize], f: &Field) -> Subspace {
        Subspace::from_vectors(6, idx.iter().map(|&i| unit_vector(i)), f)
    }

    #[test]
    fn phi_examples() {
        let gamma0 = SubmoduleType::Gamma.representative();
        assert_eq!(phi(&gamma0), vector(&[0, 1, 0, 0, 0, 0]));
        assert_eq!(phi(&TernionPair::default()), [Elem::ZERO; 6]);
        assert_eq!(phi(&SubmoduleType::X.representative()), vector(&[1, 0, 1, 0, 0, 0]));
        let f = gf(3);
        for i in 0..729 {
            let v = TernionPair::from_index(i, &f);
            assert_eq!(phi_inverse(&phi(&v)), v);
        }
    }

    #[test]
    fn representative_spans() {
        let f = gf(2);
        assert_eq!(cyclic_span(&SubmoduleType::X.representative(), &f), span(&[0, 1, 2], &f));
        assert_eq!(cyclic_span(&SubmoduleType::Y.representative(), &f), span(&[1, 2, 4], &f));
        assert_eq!(cyclic_span(&SubmoduleType::Alpha.representative(), &f), span(&[1, 2], &f));
        assert_eq!(cyclic_span(&SubmoduleType::Beta.representative(), &f), span(&[0], &f));
        assert_eq!(cyclic_span(&SubmoduleType::Gamma.representative(), &f), span(&[1], &f));
    }

    #[test]
    fn span_is_the_set_of_left_multiples() {
        let f = gf(2);
        let ts: Vec<_> = Ternion::all(&f).collect();
        for i in 0..64 {
            let v = TernionPair::from_index(i, &f);
            let s = cyclic_span(&v, &f);
            let mut elems: Vec<Vector> = ts.iter().map(|&t| phi(&v.left_mul(t, &f))).collect();
            elems.sort();
            elems.dedup();
            assert_eq!(elems.len(), 1 << s.dim());
            assert!(elems.iter().all(|w| s.contains_vector(w, &f)));
        }
    }

    #[test]
    fn classify_examples() {
        let f = gf(3);
        assert_eq!(classify(&SubmoduleType::X.representative(), &f), SubmoduleType::X);
        assert_eq!(classify(&TernionPair::new(Ternion::E22, Ternion::E12), &f), SubmoduleType::Y);
        assert_eq!(classify(&TernionPair::new(Ternion::E12, Ternion::ZERO), &f), SubmoduleType::Gamma);
        assert_eq!(classify(&TernionPair::default(), &f), SubmoduleType::Zero);
    }

    #[test]
    fn unimodular_examples() {
        let f = gf(2);
        assert!(is_unimodular(&SubmoduleType::X.representative(), &f));
        assert!(!is_unimodular(&SubmoduleType::Y.representative(), &f));
        for i in 0..64 {
            let v = TernionPair::from_index(i, &f);
            assert_eq!(is_unimodular(&v, &f), classify(&v, &f) == SubmoduleType::X, "{v}");
        }
    }

    #[test]
    fn block6_identity_and_pattern() {
        let f = gf(3);
        assert_eq!(block6(&TernionMatrix2::IDENTITY), Matrix::identity(6));
        let s = TernionMatrix2::new(Ternion::ONE, Ternion::from_u8(0, 0, 2), Ternion::ZERO, Ternion::ONE);
        let m = block6(&s);
        for (r, c) in [(0, 2), (0, 5), (1, 0), (1, 2), (2, 0), (2, 1), (3, 2), (4, 3), (5, 4)] {
            assert!(m[(r, c)].is_zero());
        }
        assert_eq!(m[(1, 4)], Elem(2));
        assert_eq!(m[(2, 5)], Elem(2));
        assert_eq!(block6_pattern(&m), Some(s));
        let mut broken = m.clone();
        broken[(2, 0)] = Elem::ONE;
        assert_eq!(block6_pattern(&broken), None);
        assert!(
            block6_lift(&TernionMatrix2::new(Ternion::ZERO, Ternion::ZERO, Ternion::ZERO, Ternion::ONE), &f).is_err()
        );
    }

    #[test]
    fn block6_is_equivariant_and_multiplicative() {
        let f = gf(2);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let s = TernionMatrix2::random_invertible(&mut rng, &f);
            let t = TernionMatrix2::random_invertible(&mut rng, &f);
            let m = block6(&s);
            for i in 0..64 {
                let v = TernionPair::from_index(i, &f);
                let lhs = phi(&v.act_right(&s, &f));
                let rhs = m.apply_row(&phi(&v), &f);
                assert_eq!(&lhs[..], &rhs[..]);
            }
            assert_eq!(block6(&s.mul(&t, &f)), m.mul(&block6(&t), &f).unwrap());
        }
        let f = gf(4);
        for _ in 0..50 {
            let s = TernionMatrix2::random_invertible(&mut rng, &f);
            let v = TernionPair::from_index(rng.gen_range(0..4096), &f);
            let lift = block6_lift(&s, &f).unwrap();
            assert_eq!(cyclic_span(&v.act_right(&s, &f), &f), lift.apply(&cyclic_span(&v, &f), &f).unwrap());
        }
    }

    #[test]
    fn line_model_of_x0() {
        let f = gf(2);
        let l = line_model(&SubmoduleType::X.representative(), &f).unwrap();
        assert_eq!(l, Subspace::from_vectors(4, [unit_vector(0), unit_vector(1)], &f));
        assert!(line_model(&SubmoduleType::Y.representative(), &f).is_err());
    }
}
