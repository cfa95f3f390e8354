use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg::{unit_vector, Subspace, Vector, MAX_DIM};

/// Coordinates `x1, x2, x4, x5` identifying `J` with `F⁴`.
pub const J_COORDS: [usize; 4] = [0, 1, 3, 4];

/// `x2·x6 − x3·x5`.
pub fn quadric_form(v: &Vector, f: &Field) -> Elem {
    f.sub(f.mul(v[1], v[5]), f.mul(v[2], v[4]))
}

/// The α-lines `span{(0,a,0,0,b,0), (0,0,a,0,0,b)}`, one per `(a:b)`.
pub fn alpha_regulus_parametric(f: &Field) -> Vec<Subspace> {
    let line = |a: Elem, b: Elem| {
        let mut u = [Elem::ZERO; MAX_DIM];
        let mut w = [Elem::ZERO; MAX_DIM];
        (u[1], u[4], w[2], w[5]) = (a, b, a, b);
        Subspace::from_vectors(6, [u, w], f)
    };
    let mut out: Vec<Subspace> =
        std::iter::once(line(Elem::ZERO, Elem::ONE)).chain(f.elements().map(|b| line(Elem::ONE, b))).collect();
    out.sort();
    out
}

/// The solids `J`, `K`, their meet `L`, and the hyperbolic quadric `H ⊂ K`.
#[derive(Clone, Debug)]
pub struct Flats {
    pub j: Subspace,
    pub k: Subspace,
    pub l: Subspace,
    pub quadric_points: Vec<Subspace>,
    /// The regulus of `H` not containing `L`.
    pub regulus_alpha: Vec<Subspace>,
    /// The regulus of `H` containing `L`.
    pub regulus_opposite: Vec<Subspace>,
}

impl Flats {
    pub fn new(f: &Field) -> Result<Flats> {
        let solid = |zero: [usize; 2]| {
            let mut eqs = Subspace::from_vectors(6, zero.map(unit_vector), f);
            eqs = eqs.annihilator(f);
            eqs
        };
        let j = solid([2, 5]);
        let k = solid([0, 3]);
        let l = j.meet(&k, f)?;

        let on_h = |p: &Subspace| quadric_form(&p.basis()[0], f).is_zero();
        let quadric_points: Vec<Subspace> = k.points(f).into_iter().filter(on_h).collect();
        let mut alpha = Vec::new();
        let mut opposite = Vec::new();
        for line in k.subspaces_within(2, f) {
            if !line.points(f).iter().all(on_h) {
                continue;
            }
            match line.dim_meet(&l, f) {
                2 | 0 => opposite.push(line),
                _ => alpha.push(line),
            }
        }
        alpha.sort();
        opposite.sort();

        let flats = Flats { j, k, l, quadric_points, regulus_alpha: alpha, regulus_opposite: opposite };
        flats.validate(f)?;
        Ok(flats)
    }

    /// Each family is pairwise skew, lines of different families meet in a point,
    /// and the α-family agrees with its parametric form.
    fn validate(&self, f: &Field) -> Result<()> {
        let q = f.q();
        let fail = |what: &str| Err(Error::Hypothesis(format!("quadric: {what}")));
        if self.quadric_points.len() != (q + 1) * (q + 1) {
            return fail("wrong number of points");
        }
        if self.regulus_alpha.len() != q + 1 || self.regulus_opposite.len() != q + 1 {
            return fail("reguli do not have q + 1 lines");
        }
        for fam in [&self.regulus_alpha, &self.regulus_opposite] {
            for (i, a) in fam.iter().enumerate() {
                if fam[i + 1..].iter().any(|b| a.dim_meet(b, f) != 0) {
                    return fail("lines of one regulus meet");
                }
            }
        }
        for a in &self.regulus_alpha {
            if self.regulus_opposite.iter().any(|b| a.dim_meet(b, f) != 1) {
                return fail("lines of opposite reguli are skew");
            }
        }
        if self.regulus_alpha != alpha_regulus_parametric(f) {
            return fail("α-regulus differs from its parametric form");
        }
        Ok(())
    }

    /// The α-line through a point of `H`.
    pub fn alpha_line_through(&self, point: &Subspace, f: &Field) -> Option<&Subspace> {
        self.regulus_alpha.iter().find(|m| m.includes(point, f))
    }

    /// The opposite line `R_(s:t) = span{(0,s,t,0,0,0), (0,0,0,0,s,t)}`.
    pub fn opposite_line(s: Elem, t: Elem, f: &Field) -> Subspace {
        let mut u = [Elem::ZERO; MAX_DIM];
        let mut w = [Elem::ZERO; MAX_DIM];
        (u[1], u[2], w[4], w[5]) = (s, t, s, t);
        Subspace::from_vectors(6, [u, w], f)
    }
}
