use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::linalg::Subspace;
use crate::model::{Catalog, SubmoduleType};

/// `P ⊆ Q` or `Q ⊆ P`.
pub fn incident(p: &Subspace, q: &Subspace, c: &Catalog) -> bool {
    let f = c.field();
    if p.dim() <= q.dim() {
        q.includes(p, f)
    } else {
        p.includes(q, f)
    }
}

/// Number of members of `𝒢_X, 𝒢_Y, 𝒢_α, 𝒢_β, 𝒢_γ` incident with `p0`.
pub fn incidence_counts(p0: &Subspace, c: &Catalog) -> Result<[usize; 5]> {
    if c.lookup(p0).is_none() {
        return Err(Error::NotInCatalog);
    }
    Ok(SubmoduleType::NONZERO.map(|t| c.set(t).iter().filter(|q| incident(p0, q, c)).count()))
}

/// The row of the incidence table for `P0` of type `t`.
pub fn expected_row(t: SubmoduleType, q: usize) -> [usize; 5] {
    match t {
        SubmoduleType::X => [1, 0, 1, q, 1],
        SubmoduleType::Y => [0, 1, 1, 0, q + 1],
        SubmoduleType::Alpha => [q * q + q, 1, 1, 0, 1],
        SubmoduleType::Beta => [q + 1, 0, 0, 1, 0],
        SubmoduleType::Gamma => [q * q + q, q + 1, 1, 0, 1],
        SubmoduleType::Zero => [0; 5],
    }
}

/// Per-type outcome of comparing every `P0` with its table row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceTable {
    pub q: usize,
    /// The common row for each type, or `None` if members of the type disagree.
    pub rows: [Option<[usize; 5]>; 5],
    /// Number of `P0` checked per type.
    pub checked: [usize; 5],
    /// First `P0` whose row differs from the expected one.
    pub mismatches: Vec<(SubmoduleType, Subspace, [usize; 5])>,
}

impl IncidenceTable {
    pub fn matches(&self) -> bool {
        self.mismatches.is_empty()
            && SubmoduleType::NONZERO.iter().zip(&self.rows).all(|(&t, r)| *r == Some(expected_row(t, self.q)))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("P0,X,Y,alpha,beta,gamma\n");
        for (t, row) in SubmoduleType::NONZERO.iter().zip(&self.rows) {
            let cells: Vec<String> = match row {
                Some(r) => r.iter().map(usize::to_string).collect(),
                None => vec!["?".into(); 5],
            };
            out.push_str(&format!("{},{}\n", t.name(), cells.join(",")));
        }
        out
    }
}

/// Counts incidences for `P0` drawn from `sample(t)` of each type. `None`
/// means every member.
pub fn incidence_table(
    c: &Catalog,
    exec: Exec,
    sample: impl Fn(SubmoduleType) -> Option<Vec<usize>>,
) -> IncidenceTable {
    let q = c.q();
    let mut rows = [None; 5];
    let mut checked = [0; 5];
    let mut mismatches = Vec::new();
    for (slot, t) in SubmoduleType::NONZERO.into_iter().enumerate() {
        let set = c.set(t);
        let picks = sample(t).unwrap_or_else(|| (0..set.len()).collect());
        let counts = exec.map_slice(&picks, |&i| incidence_counts(&set[i], c).expect("catalog member"));
        checked[slot] = picks.len();
        let expected = expected_row(t, q);
        if let Some(first) = counts.first() {
            rows[slot] = counts.iter().all(|r| r == first).then_some(*first);
        }
        if let Some((i, r)) = picks.iter().zip(&counts).find(|(_, r)| **r != expected) {
            mismatches.push((t, set[*i].clone(), *r));
        }
    }
    IncidenceTable { q, rows, checked, mismatches }
}
