//! The bijection `ξ` of `𝒢_X` induced by an antiautomorphism of `T`, seen
//! through the line model in `J`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::linalg::{Correlation, Matrix, Subspace};
use crate::model::{Catalog, SubmoduleType, J_COORDS};

/// `δ_J`: the point `(a, b, c, d)` of `J` goes to the plane
/// `b·X1 + a·X2 + d·X4 + c·X5 = 0`. It maps `L` to itself.
pub fn delta_j(f: &Field) -> Correlation {
    let m = Matrix::from_u8_rows(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]);
    Correlation::new(m, f.identity_automorphism(), f).expect("invertible")
}

/// `M ∩ J` in the coordinates `x1, x2, x4, x5`.
pub fn j_trace(m: &Subspace, c: &Catalog) -> Subspace {
    let f = c.field();
    m.meet_unchecked(&c.flats().j, f).project(&J_COORDS, f)
}

/// The `𝒢_X`-plane whose `J`-trace is `line` (in `J` coordinates): the join
/// of the line with the α-line through its point on `L`.
pub fn from_j_trace(line: &Subspace, c: &Catalog) -> Result<Subspace> {
    let f = c.field();
    let fl = c.flats();
    let n = line.embed(6, &J_COORDS, f);
    let p = n.meet(&fl.l, f)?;
    if n.dim() != 2 || p.dim() != 1 {
        return Err(Error::Hypothesis(format!("{n:?} is not a line meeting L in a point")));
    }
    let alpha =
        fl.alpha_line_through(&p, f).ok_or_else(|| Error::Hypothesis("no α-line through a point of L".into()))?;
    let m = n.join(alpha, f)?;
    match c.type_of(&m) {
        Some(SubmoduleType::X) => Ok(m),
        _ => Err(Error::Hypothesis(format!("{m:?} rebuilt from a J-trace is not in G_X"))),
    }
}

/// `ξ` as a permutation of the indices of `𝒢_X`.
pub fn xi_permutation(c: &Catalog) -> Result<Vec<usize>> {
    let f = c.field();
    let delta = delta_j(f);
    c.g_x()
        .iter()
        .map(|m| {
            let image = from_j_trace(&delta.apply(&j_trace(m, c), f)?, c)?;
            Ok(c.lookup(&image).expect("in G_X").1)
        })
        .collect()
}

pub fn xi_map(m: &Subspace, c: &Catalog) -> Result<Subspace> {
    match c.lookup(m) {
        Some((SubmoduleType::X, i)) => Ok(c.g_x()[xi_permutation(c)?[i]].clone()),
        other => {
            Err(Error::WrongType { expected: "X", got: other.map_or("not in catalog".into(), |(t, _)| t.to_string()) })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiReport {
    pub is_permutation: bool,
    /// First adjacent pair (catalog order) whose images meet in a single `𝒢_β` point.
    pub witness: Option<(usize, usize)>,
    /// Adjacent pairs with non-adjacent images.
    pub broken_adjacencies: usize,
    pub adjacent_pairs: usize,
    /// Pairs where skewness of the planes and of their images differ.
    pub skew_mismatches: usize,
    pub skew_pairs: usize,
    pub pairs: usize,
}

impl XiReport {
    pub fn holds(&self) -> bool {
        self.is_permutation && self.witness.is_some() && self.skew_mismatches == 0
    }

    pub fn to_json(&self, c: &Catalog) -> Value {
        let f = c.field();
        let witness = self.witness.map(|(i, j)| {
            let xi = xi_permutation(c).expect("checked");
            let (m1, m2) = (&c.g_x()[i], &c.g_x()[j]);
            let (n1, n2) = (&c.g_x()[xi[i]], &c.g_x()[xi[j]]);
            json!({
                "M1": m1.to_json(f),
                "M2": m2.to_json(f),
                "meet": m1.meet_unchecked(m2, f).to_json(f),
                "xi_M1": n1.to_json(f),
                "xi_M2": n2.to_json(f),
                "xi_meet": n1.meet_unchecked(n2, f).to_json(f),
            })
        });
        json!({
            "is_permutation": self.is_permutation,
            "witness": witness,
            "adjacent_pairs": self.adjacent_pairs,
            "broken_adjacencies": self.broken_adjacencies,
            "pairs": self.pairs,
            "skew_pairs": self.skew_pairs,
            "skew_mismatches": self.skew_mismatches,
        })
    }
}

/// Checks every pair of `𝒢_X`.
pub fn xi_witnesses(c: &Catalog) -> Result<XiReport> {
    let f = c.field();
    let gx = c.g_x();
    let xi = xi_permutation(c)?;
    let mut seen = vec![false; xi.len()];
    let is_permutation = xi.iter().all(|&j| !std::mem::replace(&mut seen[j], true));
    let mut report = XiReport {
        is_permutation,
        witness: None,
        broken_adjacencies: 0,
        adjacent_pairs: 0,
        skew_mismatches: 0,
        skew_pairs: 0,
        pairs: 0,
    };
    for i in 0..gx.len() {
        for j in i + 1..gx.len() {
            report.pairs += 1;
            let (m1, m2) = (&gx[i], &gx[j]);
            let (n1, n2) = (&gx[xi[i]], &gx[xi[j]]);
            let d = m1.dim_meet(m2, f);
            let d_img = n1.dim_meet(n2, f);
            if d == 0 {
                report.skew_pairs += 1;
            }
            if (d == 0) != (d_img == 0) {
                report.skew_mismatches += 1;
            }
            if d == 2 {
                report.adjacent_pairs += 1;
                if d_img != 2 {
                    report.broken_adjacencies += 1;
                }
                if report.witness.is_none()
                    && d_img == 1
                    && c.type_of(&n1.meet_unchecked(n2, f)) == Some(SubmoduleType::Beta)
                {
                    report.witness = Some((i, j));
                }
            }
        }
    }
    Ok(report)
}
