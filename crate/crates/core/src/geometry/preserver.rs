use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Value};

use super::adjacency::{alpha_index, AdjacencyGraph};
use crate::error::{Error, Result};
use crate::linalg::{pencil, SemilinearMap, Subspace};
use crate::model::{Catalog, SubmoduleType};

/// The cliques `[P, P+J]₃`, one per α-line `P` (regulus order), each sorted,
/// with the position of the marked plane `P+L`.
#[derive(Clone, Debug)]
pub struct CliqueSystem {
    pub cliques: Vec<Vec<Subspace>>,
    pub marked: Vec<usize>,
}

impl CliqueSystem {
    pub fn new(c: &Catalog) -> Result<CliqueSystem> {
        let f = c.field();
        let fl = c.flats();
        let mut cliques = Vec::new();
        let mut marked = Vec::new();
        for p in &fl.regulus_alpha {
            let clique = pencil(p, &p.join(&fl.j, f)?, 3, f)?;
            let y = p.join(&fl.l, f)?;
            marked.push(
                clique.iter().position(|m| *m == y).ok_or_else(|| Error::Hypothesis("P+L outside [P,P+J]".into()))?,
            );
            cliques.push(clique);
        }
        Ok(CliqueSystem { cliques, marked })
    }

    /// `(p, i)` with `z` the `i`-th member of the `p`-th clique.
    pub fn locate(&self, z: &Subspace, c: &Catalog) -> Option<(usize, usize)> {
        let p = alpha_index(z, c)?;
        let i = self.cliques[p].binary_search(z).ok()?;
        Some((p, i))
    }

    pub fn clique_size(&self) -> usize {
        self.cliques.first().map_or(0, Vec::len)
    }
}

fn is_permutation(v: &[usize]) -> bool {
    let mut seen = vec![false; v.len()];
    v.iter().all(|&i| i < v.len() && !std::mem::replace(&mut seen[i], true))
}

/// A permutation `μ` of the α-lines and, for each `P`, a bijection
/// `ψ_P: [P, P+J]₃ → [μ(P), μ(P)+J]₃` with `ψ_P(P+L) = μ(P)+L`, stored as
/// positions in a [`CliqueSystem`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreserverRecipe {
    mu: Vec<usize>,
    psi: Vec<Vec<usize>>,
}

impl PreserverRecipe {
    pub fn new(mu: Vec<usize>, psi: Vec<Vec<usize>>, cs: &CliqueSystem) -> Result<PreserverRecipe> {
        let n = cs.cliques.len();
        if mu.len() != n || !is_permutation(&mu) {
            return Err(Error::InvalidRecipe("μ is not a permutation of the α-lines".into()));
        }
        if psi.len() != n {
            return Err(Error::InvalidRecipe(format!("{} maps ψ_P for {n} α-lines", psi.len())));
        }
        for (p, map) in psi.iter().enumerate() {
            if map.len() != cs.cliques[p].len() || !is_permutation(map) {
                return Err(Error::InvalidRecipe(format!("ψ_{p} is not a bijection")));
            }
            if map[cs.marked[p]] != cs.marked[mu[p]] {
                return Err(Error::InvalidRecipe(format!("ψ_{p} does not send P+L to μ(P)+L")));
            }
        }
        Ok(PreserverRecipe { mu, psi })
    }

    pub fn identity(cs: &CliqueSystem) -> PreserverRecipe {
        let mu = (0..cs.cliques.len()).collect();
        let psi = cs.cliques.iter().map(|c| (0..c.len()).collect()).collect();
        PreserverRecipe { mu, psi }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, cs: &CliqueSystem) -> PreserverRecipe {
        let mut mu: Vec<usize> = (0..cs.cliques.len()).collect();
        mu.shuffle(rng);
        let psi = (0..cs.cliques.len())
            .map(|p| {
                let (from, to) = (cs.marked[p], cs.marked[mu[p]]);
                let mut targets: Vec<usize> = (0..cs.cliques[p].len()).filter(|&j| j != to).collect();
                targets.shuffle(rng);
                targets.insert(from, to);
                targets
            })
            .collect();
        PreserverRecipe::new(mu, psi, cs).expect("valid by construction")
    }

    pub fn mu(&self) -> &[usize] {
        &self.mu
    }

    pub fn psi(&self, p: usize) -> &[usize] {
        &self.psi[p]
    }

    /// `λ` as a map of graph vertex indices.
    pub fn build(&self, cs: &CliqueSystem, g: &AdjacencyGraph, c: &Catalog) -> Result<Vec<usize>> {
        (0..g.len())
            .map(|v| {
                let (p, i) = cs.locate(g.vertex(v), c).ok_or(Error::NotInCatalog)?;
                let image = &cs.cliques[self.mu[p]][self.psi[p][i]];
                g.index_of(image).ok_or(Error::NotInCatalog)
            })
            .collect()
    }

    /// Reads `μ` and `ψ_P` off a vertex map of `𝒢_X ∪ 𝒢_Y`.
    pub fn extract(map: &[usize], cs: &CliqueSystem, g: &AdjacencyGraph, c: &Catalog) -> Result<PreserverRecipe> {
        let mut mu = Vec::with_capacity(cs.cliques.len());
        let mut psi = Vec::with_capacity(cs.cliques.len());
        for clique in &cs.cliques {
            let mut target = None;
            let mut positions = Vec::with_capacity(clique.len());
            for z in clique {
                let v = g.index_of(z).ok_or(Error::NotInCatalog)?;
                let (q, j) = cs.locate(g.vertex(map[v]), c).ok_or(Error::NotInCatalog)?;
                if *target.get_or_insert(q) != q {
                    return Err(Error::InvalidRecipe("a clique is split between two cliques".into()));
                }
                positions.push(j);
            }
            mu.push(target.unwrap_or(0));
            psi.push(positions);
        }
        PreserverRecipe::new(mu, psi, cs)
    }

    pub fn to_json(&self) -> Value {
        json!({"mu": self.mu, "psi": self.psi})
    }
}

/// Bijectivity and adjacency preservation in both directions, edge by edge.
pub fn verify_preserver(map: &[usize], g: &AdjacencyGraph) -> bool {
    map.len() == g.len()
        && is_permutation(map)
        && (0..g.len()).all(|i| (i + 1..g.len()).all(|j| g.is_adjacent(i, j) == g.is_adjacent(map[i], map[j])))
}

/// `λ(𝒢_X) = 𝒢_X` and `λ(𝒢_Y) = 𝒢_Y`.
pub fn fixes_types(map: &[usize], g: &AdjacencyGraph) -> bool {
    (0..g.len()).all(|v| g.kind(v) == g.kind(map[v]))
}

/// The vertex map induced by a semilinear bijection, if it fixes `𝒢_X ∪ 𝒢_Y`.
pub fn induced_vertex_map(f_map: &SemilinearMap, g: &AdjacencyGraph, c: &Catalog) -> Option<Vec<usize>> {
    let f = c.field();
    (0..g.len()).map(|v| g.index_of(&f_map.image(g.vertex(v), f))).collect()
}

/// Indices of the `𝒢_Y` vertices.
pub fn y_vertices(g: &AdjacencyGraph) -> Vec<usize> {
    (0..g.len()).filter(|&v| g.kind(v) == SubmoduleType::Y).collect()
}
