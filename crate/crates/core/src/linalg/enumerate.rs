//! Exhaustive enumeration of the Grassmannian of `k`-subspaces of `F^n`.
//!
//! Subspaces are generated directly in reduced row-echelon form: choose the
//! pivot columns (lexicographic combinations), then fill the free cells, i.e.
//! the entries right of a pivot that are not themselves pivot columns. Each
//! subspace appears exactly once.

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::gf::{Elem, Field};

use super::subspace::{Subspace, Vector, MAX_DIM};

/// Environment variable overriding [`Budget::DEFAULT_ITEMS`].
pub const BUDGET_ENV: &str = "TERNION_BUDGET";

/// Upper bound on the number of items an exhaustive enumeration may visit.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_items: u128,
}

impl Budget {
    pub const DEFAULT_ITEMS: u128 = 5_000_000;

    pub fn unlimited() -> Budget {
        Budget { max_items: u128::MAX }
    }

    /// Default budget, or the value of `TERNION_BUDGET` when it parses.
    pub fn from_env() -> Budget {
        let max_items =
            std::env::var(BUDGET_ENV).ok().and_then(|v| v.trim().parse::<u128>().ok()).unwrap_or(Self::DEFAULT_ITEMS);
        Budget { max_items }
    }

    pub fn check(&self, needed: u128) -> Result<()> {
        if needed > self.max_items {
            Err(Error::BudgetExceeded { needed, budget: self.max_items })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::from_env()
    }
}

/// Number of `k`-subspaces of `F^n` for `|F| = q`.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

#[derive(Clone, Debug)]
pub struct PivotPattern {
    pub pivots: Vec<usize>,
    /// `(row, column)` of each free cell, most significant first.
    pub free: Vec<(usize, usize)>,
}

impl PivotPattern {
    pub fn count(&self, q: usize) -> u64 {
        (q as u64).pow(self.free.len() as u32)
    }

    /// The `index`-th subspace with this pivot pattern.
    pub fn subspace(&self, n: usize, mut index: u64, f: &Field) -> Subspace {
        let q = f.q() as u64;
        let mut rows = [[Elem::ZERO; MAX_DIM]; MAX_DIM];
        for (r, &p) in self.pivots.iter().enumerate() {
            rows[r][p] = Elem::ONE;
        }
        for &(r, c) in self.free.iter().rev() {
            rows[r][c] = Elem((index % q) as u8);
            index /= q;
        }
        Subspace::from_canonical(n, &rows[..self.pivots.len()])
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn pivot_patterns(n: usize, k: usize) -> Vec<PivotPattern> {
    combinations(n, k)
        .into_iter()
        .map(|pivots| {
            let free = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &p)| (p + 1..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
                .collect::<Vec<_>>();
            PivotPattern { pivots, free }
        })
        .collect()
}

fn check_args(n: usize, k: usize) -> Result<()> {
    if n > MAX_DIM || k > n {
        return Err(Error::Dimension(format!("cannot enumerate {k}-subspaces of F^{n}")));
    }
    Ok(())
}

/// Streams every `k`-subspace of `F^n` once, in a fixed order.
pub fn enumerate_subspaces(n: usize, k: usize, f: &Field, budget: &Budget) -> Result<impl Iterator<Item = Subspace>> {
    check_args(n, k)?;
    budget.check(gaussian_binomial(n as u32, k as u32, f.q() as u64))?;
    let f = f.clone();
    let q = f.q();
    Ok(pivot_patterns(n, k).into_iter().flat_map(move |pat| {
        let f = f.clone();
        (0..pat.count(q)).map(move |i| pat.subspace(n, i, &f))
    }))
}

/// Visits every `k`-subspace of `F^n` and keeps the images `keep` returns,
/// in enumeration order regardless of the execution strategy.
pub fn scan_subspaces<R, F>(n: usize, k: usize, f: &Field, budget: &Budget, exec: Exec, keep: F) -> Result<Vec<R>>
where
    R: Send,
    F: Fn(&Subspace) -> Option<R> + Sync + Send,
{
    check_args(n, k)?;
    let total = gaussian_binomial(n as u32, k as u32, f.q() as u64);
    budget.check(total)?;
    let patterns = pivot_patterns(n, k);
    let mut offsets = Vec::with_capacity(patterns.len() + 1);
    let mut acc = 0u64;
    for p in &patterns {
        offsets.push(acc);
        acc += p.count(f.q());
    }
    debug_assert_eq!(acc as u128, total);
    Ok(exec.filter_map(acc, |i| {
        let slot = offsets.partition_point(|&o| o <= i) - 1;
        let s = patterns[slot].subspace(n, i - offsets[slot], f);
        keep(&s)
    }))
}

/// Builds the vector `Σ coeffs[i] · basis[i]`.
pub fn combine(basis: &[Vector], coeffs: &[Elem], n: usize, f: &Field) -> Vector {
    let mut v = [Elem::ZERO; MAX_DIM];
    for (row, &c) in basis.iter().zip(coeffs) {
        super::subspace::scale_add(&mut v, c, row, n, f);
    }
    v
}
