//! Exact subspace algebra over GF(q): canonical forms, meets and joins,
//! Grassmannian enumeration, pencils, collineations and correlations.

pub mod enumerate;
mod maps;
mod matrix;
mod subspace;

pub use enumerate::{enumerate_subspaces, gaussian_binomial, scan_subspaces, Budget};
pub use maps::{Correlation, SemilinearMap};
pub use matrix::Matrix;
pub use subspace::{is_zero_vector, rank_of, reduce_rows, unit_vector, vector, Subspace, Vector, MAX_DIM};

use crate::error::{Error, Result};
use crate::gf::Field;

/// The interval `[lower, upper]_k`: every `k`-subspace `U` with
/// `lower ⊆ U ⊆ upper`, sorted. For `dim lower = k - 1` and
/// `dim upper = k + 1` this is a pencil with `q + 1` members.
pub fn pencil(lower: &Subspace, upper: &Subspace, k: usize, f: &Field) -> Result<Vec<Subspace>> {
    if !upper.contains(lower, f)? {
        return Err(Error::NotContained(format!("{lower:?}"), format!("{upper:?}")));
    }
    if k < lower.dim() || k > upper.dim() {
        return Ok(Vec::new());
    }
    // Extend a basis of `lower` to one of `upper`; the extra vectors span a
    // complement whose (k - dim lower)-subspaces parametrize the interval.
    let mut complement = Vec::new();
    let mut acc = lower.clone();
    for v in upper.basis() {
        if !acc.contains_vector(v, f) {
            complement.push(*v);
            acc = Subspace::from_vectors(lower.n(), acc.basis().iter().copied().chain([*v]), f);
        }
    }
    let m = complement.len();
    let d = k - lower.dim();
    let mut out: Vec<Subspace> = enumerate::enumerate_subspaces(m, d, f, &Budget::unlimited())?
        .map(|coords| {
            let vs = coords.basis().iter().map(|c| enumerate::combine(&complement, &c[..m], lower.n(), f));
            Subspace::from_vectors(lower.n(), lower.basis().iter().copied().chain(vs), f)
        })
        .collect();
    out.sort();
    Ok(out)
}
