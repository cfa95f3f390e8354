use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::gf::Field;
use crate::linalg::{pencil, Subspace};
use crate::model::{Catalog, SubmoduleType};

/// `Z1 ~ Z2`: distinct `k`-subspaces meeting in dimension `k - 1`.
pub fn adjacent(z1: &Subspace, z2: &Subspace, f: &Field) -> Result<bool> {
    if z1.n() != z2.n() || z1.dim() != z2.dim() || z1.dim() == 0 {
        return Err(Error::Dimension(format!("adjacency of {z1:?} and {z2:?}")));
    }
    Ok(z1.dim_meet(z2, f) + 1 == z1.dim())
}

/// The unique `𝒢_Y`-plane adjacent to `M ∈ 𝒢_X`: `(M∩K) + L`.
pub fn companion_y(m: &Subspace, c: &Catalog) -> Result<Subspace> {
    match c.type_of(m) {
        Some(SubmoduleType::X) => {}
        other => {
            let got = other.map_or("not in catalog".to_string(), |t| t.to_string());
            return Err(Error::WrongType { expected: "X", got });
        }
    }
    let f = c.field();
    let fl = c.flats();
    Ok(m.meet_unchecked(&fl.k, f).join_unchecked(&fl.l, f))
}

/// Index of the α-line contained in `m`. Every plane of `𝒢_X ∪ 𝒢_Y` contains
/// exactly one, so this is the clique `[P, P+J]₃` holding `m`.
pub fn alpha_index(m: &Subspace, c: &Catalog) -> Option<usize> {
    let f = c.field();
    c.flats().regulus_alpha.iter().position(|p| m.includes(p, f))
}

/// The adjacency graph on `𝒢_X ∪ 𝒢_Y`: the `𝒢_X`-planes first, then `𝒢_Y`,
/// each in catalog order.
#[derive(Clone, Debug)]
pub struct AdjacencyGraph {
    vertices: Vec<Subspace>,
    kinds: Vec<SubmoduleType>,
    neighbours: Vec<Vec<usize>>,
    index: HashMap<Subspace, usize>,
}

impl AdjacencyGraph {
    pub fn build(c: &Catalog, exec: Exec) -> AdjacencyGraph {
        let f = c.field();
        let vertices: Vec<Subspace> = c.g_x().iter().chain(c.g_y()).cloned().collect();
        let kinds: Vec<SubmoduleType> = std::iter::repeat_n(SubmoduleType::X, c.g_x().len())
            .chain(std::iter::repeat_n(SubmoduleType::Y, c.g_y().len()))
            .collect();
        let neighbours = exec.map(vertices.len() as u64, |i| {
            let v = &vertices[i as usize];
            (0..vertices.len()).filter(|&j| j != i as usize && v.dim_meet(&vertices[j], f) == 2).collect()
        });
        let index = vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        AdjacencyGraph { vertices, kinds, neighbours, index }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> &Subspace {
        &self.vertices[i]
    }

    pub fn vertices(&self) -> &[Subspace] {
        &self.vertices
    }

    pub fn kind(&self, i: usize) -> SubmoduleType {
        self.kinds[i]
    }

    pub fn index_of(&self, s: &Subspace) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn neighbours(&self, i: usize) -> &[usize] {
        &self.neighbours[i]
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        self.neighbours[i].binary_search(&j).is_ok()
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len()).flat_map(|i| self.neighbours[i].iter().filter(move |&&j| i < j).map(move |&j| (i, j))).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbours.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// BFS distances from `s` together with the number of shortest paths.
    pub fn bfs(&self, s: usize) -> (Vec<Option<usize>>, Vec<u64>) {
        let mut dist = vec![None; self.len()];
        let mut paths = vec![0u64; self.len()];
        dist[s] = Some(0);
        paths[s] = 1;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.neighbours[u] {
                match dist[w] {
                    None => {
                        dist[w] = Some(du + 1);
                        paths[w] = paths[u];
                        queue.push_back(w);
                    }
                    Some(dw) if dw == du + 1 => paths[w] += paths[u],
                    Some(_) => {}
                }
            }
        }
        (dist, paths)
    }

    pub fn distance(&self, i: usize, j: usize) -> Option<usize> {
        self.bfs(i).0[j]
    }

    pub fn is_connected(&self) -> bool {
        self.is_empty() || self.bfs(0).0.iter().all(Option::is_some)
    }

    /// One shortest path from `i` to `j`, smallest vertex first at each step.
    pub fn shortest_path(&self, i: usize, j: usize) -> Option<Vec<usize>> {
        let (dist, _) = self.bfs(j);
        dist[i]?;
        let mut path = vec![i];
        let mut u = i;
        while u != j {
            let du = dist[u].unwrap();
            u = *self.neighbours[u].iter().find(|&&w| dist[w] == Some(du - 1)).unwrap();
            path.push(u);
        }
        Some(path)
    }

    /// Every maximal clique (Bron–Kerbosch with pivoting), each sorted, in sorted order.
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        fn expand(
            g: &AdjacencyGraph,
            r: &mut Vec<usize>,
            mut p: Vec<usize>,
            mut x: Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if p.is_empty() {
                if x.is_empty() {
                    let mut c = r.clone();
                    c.sort_unstable();
                    out.push(c);
                }
                return;
            }
            let pivot =
                *p.iter().chain(&x).max_by_key(|&&u| p.iter().filter(|&&v| g.is_adjacent(u, v)).count()).unwrap();
            let candidates: Vec<usize> = p.iter().copied().filter(|&v| !g.is_adjacent(pivot, v)).collect();
            for v in candidates {
                r.push(v);
                let np = p.iter().copied().filter(|&w| g.is_adjacent(v, w)).collect();
                let nx = x.iter().copied().filter(|&w| g.is_adjacent(v, w)).collect();
                expand(g, r, np, nx, out);
                r.pop();
                p.retain(|&w| w != v);
                x.push(v);
            }
        }
        let mut out = Vec::new();
        expand(self, &mut Vec::new(), (0..self.len()).collect(), Vec::new(), &mut out);
        out.sort();
        out
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(a, &i)| set[a + 1..].iter().all(|&j| self.is_adjacent(i, j)))
    }

    /// A clique no further vertex extends.
    pub fn is_maximal_clique(&self, set: &[usize]) -> bool {
        self.is_clique(set) && (0..self.len()).all(|v| set.contains(&v) || !set.iter().all(|&u| self.is_adjacent(u, v)))
    }

    /// Clique ids of vertex `i`: `0` for `[L,K]₃` and `1 + j` for `[P_j, P_j+J]₃`.
    pub fn clique_ids(&self, i: usize, c: &Catalog) -> Vec<usize> {
        let mut ids = Vec::new();
        if self.kinds[i] == SubmoduleType::Y {
            ids.push(0);
        }
        ids.extend(alpha_index(&self.vertices[i], c).map(|j| j + 1));
        ids
    }

    pub fn to_dot(&self, c: &Catalog) -> String {
        let mut out = String::from("graph adjacency {\n");
        for i in 0..self.len() {
            let ids: Vec<String> = self.clique_ids(i, c).iter().map(usize::to_string).collect();
            let _ = writeln!(
                out,
                "  v{i} [label=\"{} {}\", type=\"{}\", clique=\"{}\"];",
                self.kinds[i],
                self.vertices[i].label(),
                self.kinds[i],
                ids.join(",")
            );
        }
        for (i, j) in self.edges() {
            let _ = writeln!(out, "  v{i} -- v{j};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self, c: &Catalog) -> Value {
        let f = c.field();
        let vertices: Vec<Value> = (0..self.len())
            .map(|i| {
                json!({
                    "id": i,
                    "type": self.kinds[i].name(),
                    "cliques": self.clique_ids(i, c),
                    "subspace": self.vertices[i].to_json(f),
                })
            })
            .collect();
        let edges: Vec<[usize; 2]> = self.edges().into_iter().map(|(i, j)| [i, j]).collect();
        json!({"vertices": vertices, "edges": edges})
    }
}

/// `𝒢_X` grouped by `K`-trace, in the order of the α-regulus.
pub fn adjacency_classes(c: &Catalog) -> Vec<Vec<Subspace>> {
    let f = c.field();
    let fl = c.flats();
    let mut classes = vec![Vec::new(); fl.regulus_alpha.len()];
    for m in c.g_x() {
        let trace = m.meet_unchecked(&fl.k, f);
        if let Some(j) = fl.regulus_alpha.iter().position(|p| *p == trace) {
            classes[j].push(m.clone());
        }
    }
    classes
}

/// `[P, P+J]₃ \ {P+L}` for each α-line `P`.
pub fn expected_classes(c: &Catalog) -> Result<Vec<Vec<Subspace>>> {
    let f = c.field();
    let fl = c.flats();
    fl.regulus_alpha
        .iter()
        .map(|p| {
            let y = p.join(&fl.l, f)?;
            let mut planes = pencil(p, &p.join(&fl.j, f)?, 3, f)?;
            planes.retain(|m| *m != y);
            Ok(planes)
        })
        .collect()
}

/// `[L, K]₃` and `[P, P+J]₃` for each α-line `P`, each sorted.
pub fn expected_cliques(c: &Catalog) -> Result<Vec<Vec<Subspace>>> {
    let f = c.field();
    let fl = c.flats();
    let mut out = vec![pencil(&fl.l, &fl.k, 3, f)?];
    for p in &fl.regulus_alpha {
        out.push(pencil(p, &p.join(&fl.j, f)?, 3, f)?);
    }
    Ok(out)
}

/// Whether the planes of `clique`, with the pencils they contain as lines,
/// form a projective plane of order `q`.
pub fn is_projective_plane(clique: &[Subspace], f: &Field) -> bool {
    let q = f.q();
    let n = q * q + q + 1;
    if clique.len() != n {
        return false;
    }
    let mut lines: Vec<Vec<usize>> = Vec::new();
    for (a, m1) in clique.iter().enumerate() {
        for m2 in &clique[a + 1..] {
            let (lo, hi) = (m1.meet_unchecked(m2, f), m1.join_unchecked(m2, f));
            let Ok(members) = pencil(&lo, &hi, 3, f) else { return false };
            let mut idx: Vec<usize> = Vec::new();
            for m in &members {
                match clique.iter().position(|x| x == m) {
                    Some(i) => idx.push(i),
                    None => return false,
                }
            }
            idx.sort_unstable();
            if !lines.contains(&idx) {
                lines.push(idx);
            }
        }
    }
    let meet = |a: &[usize], b: &[usize]| a.iter().filter(|i| b.contains(i)).count();
    lines.len() == n
        && lines.iter().all(|l| l.len() == q + 1)
        && lines.iter().enumerate().all(|(i, a)| lines[i + 1..].iter().all(|b| meet(a, b) == 1))
}
