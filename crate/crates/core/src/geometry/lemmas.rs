use serde_json::{json, Value};

use crate::error::Result;
use crate::exec::Exec;
use crate::linalg::{gaussian_binomial, scan_subspaces, Budget, Subspace};
use crate::model::Catalog;

/// Budget for the line and solid scans. The default admits `q ≤ 5`; the
/// line scan at `q = 7` already has `6 865 251` items.
pub fn scan_budget(allow_large: bool) -> Budget {
    if allow_large {
        Budget::unlimited()
    } else {
        Budget::from_env()
    }
}

/// Whether `s` meets every plane of `planes` in dimension `d`.
fn meets_all_in(s: &Subspace, planes: &[Subspace], d: usize, c: &Catalog) -> bool {
    planes.iter().all(|m| s.dim_meet(m, c.field()) == d)
}

/// Every line meeting each `𝒢_X`-plane in a point, in enumeration order.
pub fn scan_lines(c: &Catalog, budget: &Budget, exec: Exec) -> Result<Vec<Subspace>> {
    let gx = c.g_x();
    let mut out = scan_subspaces(6, 2, c.field(), budget, exec, |q| meets_all_in(q, gx, 1, c).then(|| q.clone()))?;
    out.sort();
    Ok(out)
}

/// Every solid meeting each `𝒢_X`-plane in a line.
pub fn scan_solids(c: &Catalog, budget: &Budget, exec: Exec) -> Result<Vec<Subspace>> {
    let gx = c.g_x();
    let mut out = scan_subspaces(6, 4, c.field(), budget, exec, |v| meets_all_in(v, gx, 2, c).then(|| v.clone()))?;
    out.sort();
    Ok(out)
}

pub fn scan_size(k: usize, q: usize) -> u128 {
    gaussian_binomial(6, k as u32, q as u64)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// No duality of `PG(5, q)` fixes `𝒢_X`, nor `𝒢_X ∪ 𝒢_Y`.
    NoDuality,
    /// Equal counts; the counting argument says nothing.
    Inconclusive,
}

/// A duality fixing `𝒢_X` would send the lines met by every `𝒢_X`-plane in a
/// point bijectively onto the solids met by every `𝒢_X`-plane in a line.
/// A duality fixing `𝒢_X ∪ 𝒢_Y` restricts to an adjacency preserver, which
/// fixes `𝒢_X`, so the same count settles the union.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoDualityCertificate {
    pub q: usize,
    pub lines: usize,
    pub solids: usize,
    pub verdict: Verdict,
}

impl NoDualityCertificate {
    pub fn from_counts(q: usize, lines: usize, solids: usize) -> NoDualityCertificate {
        let verdict = if lines != solids { Verdict::NoDuality } else { Verdict::Inconclusive };
        NoDualityCertificate { q, lines, solids, verdict }
    }

    pub fn from_scans(c: &Catalog, lines: &[Subspace], solids: &[Subspace]) -> NoDualityCertificate {
        NoDualityCertificate::from_counts(c.q(), lines.len(), solids.len())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "q": self.q,
            "lines": self.lines,
            "solids": self.solids,
            "verdict": match self.verdict {
                Verdict::NoDuality => "no duality fixes G_X or G_X ∪ G_Y",
                Verdict::Inconclusive => "inconclusive",
            },
        })
    }
}
