use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Map, Value};

use super::{classify, cyclic_span, Flats, SubmoduleType};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::gf::Field;
use crate::linalg::{gaussian_binomial, pencil, scan_subspaces, Budget, Subspace};
use crate::ternion::TernionPair;

/// How the `𝒢_X` characterization looks for planes.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PlaneScan {
    /// Every plane of `PG(5, q)`.
    Full,
    /// Only the planes through an α-line.
    Targeted,
}

impl PlaneScan {
    pub fn default_for(q: usize) -> PlaneScan {
        if q <= 3 {
            PlaneScan::Full
        } else {
            PlaneScan::Targeted
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PlaneScan::Full => "full",
            PlaneScan::Targeted => "targeted",
        }
    }
}

/// Outcome of comparing each catalog list with its geometric description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Characterization {
    pub gamma: bool,
    pub beta: bool,
    pub alpha: bool,
    pub y: bool,
    pub x: bool,
    pub scan: PlaneScan,
    pub planes_scanned: u128,
}

impl Characterization {
    pub fn all(&self) -> bool {
        self.gamma && self.beta && self.alpha && self.y && self.x
    }
}

/// Every nonzero cyclic submodule of `T²`, as subspaces of `F⁶` sorted by
/// canonical basis and split by type.
#[derive(Clone, Debug)]
pub struct Catalog {
    field: Field,
    flats: Flats,
    sets: [Vec<Subspace>; 5],
    witnesses: [Vec<TernionPair>; 5],
    index: HashMap<Subspace, (SubmoduleType, usize)>,
}

impl Catalog {
    pub fn build(f: &Field, budget: &Budget, exec: Exec) -> Result<Catalog> {
        let pairs = TernionPair::count(f);
        budget.check(pairs as u128)?;
        let flats = Flats::new(f)?;
        let found = exec.filter_map(pairs, |i| {
            let v = TernionPair::from_index(i, f);
            let t = classify(&v, f);
            (t != SubmoduleType::Zero).then(|| (cyclic_span(&v, f), t, v))
        });
        // Generators arrive in lexicographic order, so the first one seen is the least.
        let mut unique: BTreeMap<Subspace, (SubmoduleType, TernionPair)> = BTreeMap::new();
        for (span, t, v) in found {
            match unique.get(&span) {
                None => {
                    unique.insert(span, (t, v));
                }
                Some(&(seen, _)) if seen != t => {
                    return Err(Error::Hypothesis(format!("{span:?} generated by a {seen} and a {t} generator")));
                }
                Some(_) => {}
            }
        }
        let mut sets: [Vec<Subspace>; 5] = Default::default();
        let mut witnesses: [Vec<TernionPair>; 5] = Default::default();
        let mut index = HashMap::with_capacity(unique.len());
        for (span, (t, v)) in unique {
            let slot = t.slot().expect("nonzero type");
            index.insert(span.clone(), (t, sets[slot].len()));
            sets[slot].push(span);
            witnesses[slot].push(v);
        }
        Ok(Catalog { field: f.clone(), flats, sets, witnesses, index })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> usize {
        self.field.q()
    }

    pub fn flats(&self) -> &Flats {
        &self.flats
    }

    pub fn set(&self, t: SubmoduleType) -> &[Subspace] {
        t.slot().map_or(&[], |s| &self.sets[s])
    }

    pub fn g_x(&self) -> &[Subspace] {
        self.set(SubmoduleType::X)
    }

    pub fn g_y(&self) -> &[Subspace] {
        self.set(SubmoduleType::Y)
    }

    pub fn g_alpha(&self) -> &[Subspace] {
        self.set(SubmoduleType::Alpha)
    }

    pub fn g_beta(&self) -> &[Subspace] {
        self.set(SubmoduleType::Beta)
    }

    pub fn g_gamma(&self) -> &[Subspace] {
        self.set(SubmoduleType::Gamma)
    }

    /// Least generator of the `i`-th member of `𝒢_t`.
    pub fn witness(&self, t: SubmoduleType, i: usize) -> Option<TernionPair> {
        t.slot().and_then(|s| self.witnesses[s].get(i).copied())
    }

    pub fn lookup(&self, s: &Subspace) -> Option<(SubmoduleType, usize)> {
        self.index.get(s).copied()
    }

    pub fn type_of(&self, s: &Subspace) -> Option<SubmoduleType> {
        self.lookup(s).map(|(t, _)| t)
    }

    /// `(|𝒢_X|, |𝒢_Y|, |𝒢_α|, |𝒢_β|, |𝒢_γ|)`.
    pub fn counts(&self) -> [usize; 5] {
        self.sets.each_ref().map(Vec::len)
    }

    pub fn expected_counts(q: usize) -> [usize; 5] {
        SubmoduleType::NONZERO.map(|t| t.expected_count(q as u64) as usize)
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    /// Whether `m` is a plane with `M∩J` a line other than `L` and `M∩K` an α-line.
    pub fn is_x_plane(m: &Subspace, flats: &Flats, f: &Field) -> bool {
        if m.dim() != 3 || m.dim_meet(&flats.j, f) != 2 || m.dim_meet(&flats.k, f) != 2 {
            return false;
        }
        m.meet_unchecked(&flats.j, f) != flats.l && flats.regulus_alpha.contains(&m.meet_unchecked(&flats.k, f))
    }

    /// Compares each list with the subspaces described purely in terms of `J`, `K`, `L` and `H`.
    pub fn characterize(&self, scan: PlaneScan, budget: &Budget, exec: Exec) -> Result<Characterization> {
        let f = &self.field;
        let fl = &self.flats;
        let sorted = |mut v: Vec<Subspace>| {
            v.sort();
            v
        };
        let gamma = sorted(fl.l.points(f));
        let beta = sorted(fl.j.points(f).into_iter().filter(|p| !fl.l.includes(p, f)).collect());
        let y = pencil(&fl.l, &fl.k, 3, f)?;
        let (x, planes_scanned) = match scan {
            PlaneScan::Full => {
                let x = scan_subspaces(6, 3, f, budget, exec, |m| Catalog::is_x_plane(m, fl, f).then(|| m.clone()))?;
                (x, gaussian_binomial(6, 3, f.q() as u64))
            }
            PlaneScan::Targeted => {
                let full = Subspace::full(6);
                let mut x = Vec::new();
                let mut scanned = 0u128;
                for line in &fl.regulus_alpha {
                    let planes = pencil(line, &full, 3, f)?;
                    scanned += planes.len() as u128;
                    x.extend(
                        exec.map_slice(&planes, |m| Catalog::is_x_plane(m, fl, f).then(|| m.clone()))
                            .into_iter()
                            .flatten(),
                    );
                }
                (x, scanned)
            }
        };
        Ok(Characterization {
            gamma: self.g_gamma() == gamma,
            beta: self.g_beta() == beta,
            alpha: self.g_alpha() == fl.regulus_alpha,
            y: self.g_y() == y,
            x: self.g_x() == sorted(x),
            scan,
            planes_scanned,
        })
    }

    pub fn to_json(&self) -> Value {
        let f = &self.field;
        let spec = f.spec();
        let mut sets = Map::new();
        for t in SubmoduleType::NONZERO {
            let slot = t.slot().unwrap();
            let members: Vec<Value> = self.sets[slot]
                .iter()
                .zip(&self.witnesses[slot])
                .map(|(s, w)| json!({"type": t.name(), "subspace": s.to_json(f), "witness": w.to_json(f)}))
                .collect();
            sets.insert(t.name().to_string(), Value::Array(members));
        }
        let counts: Map<String, Value> =
            SubmoduleType::NONZERO.iter().zip(self.counts()).map(|(t, c)| (t.name().to_string(), json!(c))).collect();
        json!({
            "field": {"q": f.q(), "p": spec.p, "k": spec.k, "modulus": spec.modulus},
            "counts": counts,
            "sets": sets,
        })
    }
}
