//! Semilinear bijections of `F⁶` fixing the model, and their factorisation
//! into a field automorphism, a homothety and a block-6 lift.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::gf::{Automorphism, Elem, Field};
use crate::linalg::{unit_vector, Matrix, SemilinearMap, Subspace, Vector, MAX_DIM};
use crate::model::{block6, block6_pattern, phi, phi_inverse, quadric_form, Catalog, Flats, SubmoduleType};
use crate::ternion::{Ternion, TernionMatrix2, TernionPair};

/// RNG for trial `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// The three geometric conditions on a semilinear bijection `f`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Theorem1Report {
    /// `f(𝒢_X ∪ 𝒢_Y) = 𝒢_X ∪ 𝒢_Y`.
    pub ii: bool,
    /// `f(𝒢_X) = 𝒢_X`.
    pub iii: bool,
    pub fixes_j: bool,
    pub fixes_h: bool,
}

impl Theorem1Report {
    /// `f(J) = J` and `f(H) = H`.
    pub fn iv(&self) -> bool {
        self.fixes_j && self.fixes_h
    }

    pub fn all(&self) -> bool {
        self.ii && self.iii && self.iv()
    }

    /// The three conditions hold together or fail together.
    pub fn consistent(&self) -> bool {
        self.ii == self.iii && self.iii == self.iv()
    }
}

fn on_h(v: &Vector, fl: &Flats, f: &Field) -> bool {
    fl.k.contains_vector(v, f) && quadric_form(v, f).is_zero()
}

/// Images are compared as sets; `f` is a bijection, so inclusion of the
/// image in a finite set of the same size is equality.
pub fn check_map(m: &SemilinearMap, c: &Catalog) -> Theorem1Report {
    let f = c.field();
    let fl = c.flats();
    let image_type = |z: &Subspace| c.type_of(&m.image(z, f));
    let iii = c.g_x().iter().all(|z| image_type(z) == Some(SubmoduleType::X));
    let ii = c.g_x().iter().chain(c.g_y()).all(|z| matches!(image_type(z), Some(SubmoduleType::X | SubmoduleType::Y)));
    let fixes_j = m.image(&fl.j, f) == fl.j;
    let fixes_h = fl.quadric_points.iter().all(|p| on_h(&m.apply_vector(&p.basis()[0], f), fl, f));
    Theorem1Report { ii, iii, fixes_j, fixes_h }
}

/// `v ↦ σ(v)·block6(S)`, the map induced by `(a, b) ↦ (σ(a), σ(b))·S`.
pub fn induced_map(s: &TernionMatrix2, sigma: &Automorphism, f: &Field) -> Result<SemilinearMap> {
    if !s.is_invertible(f) {
        return Err(Error::Singular);
    }
    SemilinearMap::new(block6(s), sigma.clone(), f)
}

pub fn theorem1_check(s: &TernionMatrix2, sigma: &Automorphism, c: &Catalog) -> Result<Theorem1Report> {
    Ok(check_map(&induced_map(s, sigma, c.field())?, c))
}

/// `diag(1, G, 1, G)` for `G = [[1, 0], [a, b]]`.
pub fn homothety_matrix(a: Elem, b: Elem) -> Matrix {
    let mut m = Matrix::identity(6);
    for base in [1, 4] {
        m[(base + 1, base)] = a;
        m[(base + 1, base + 1)] = b;
    }
    m
}

/// `f = f3 ∘ f2 ∘ f1` with `f1` entrywise `σ`, `f2 = diag(1, G, 1, G)` and `f3 = block6(S)`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub sigma: Automorphism,
    pub a: Elem,
    pub b: Elem,
    pub s: TernionMatrix2,
    pub f1: SemilinearMap,
    pub f2: SemilinearMap,
    pub f3: SemilinearMap,
}

impl Decomposition {
    /// The ternion `Gᵗ = [[1, a], [0, b]]`.
    pub fn g_transpose(&self) -> Ternion {
        Ternion::new(Elem::ONE, self.a, self.b)
    }

    /// `g = g3 ∘ g2 ∘ g1`: `(A, B) ↦ (Gᵗ·(σ(A), σ(B)))·S`.
    pub fn apply_g(&self, v: &TernionPair, f: &Field) -> TernionPair {
        v.map_entries(&self.sigma).left_mul(self.g_transpose(), f).act_right(&self.s, f)
    }

    /// `Φ∘g = f∘Φ` on every vector when `q⁶ ≤ 4096`, else on the unit vectors
    /// and `samples` random vectors.
    pub fn round_trip(&self, m: &SemilinearMap, f: &Field, samples: u64, seed: u64) -> bool {
        let check = |v: &Vector| phi(&self.apply_g(&phi_inverse(v), f)) == m.apply_vector(v, f);
        let total = TernionPair::count(f);
        if total <= 4096 {
            return (0..total).all(|i| check(&phi(&TernionPair::from_index(i, f))));
        }
        let mut rng = trial_rng(seed, 0);
        (0..6).all(|i| check(&unit_vector(i)))
            && (0..samples).all(|_| check(&phi(&TernionPair::from_index(rng.gen_range(0..total), f))))
    }

    pub fn to_json(&self, f: &Field) -> Value {
        json!({
            "sigma_exponent": self.sigma.exponent(),
            "a": f.elem_json(self.a),
            "b": f.elem_json(self.b),
            "S": self.s.to_json(f),
        })
    }
}

/// The automorphism accompanying `m`, read from `m(c·e1) = σ(c)·m(e1)`.
pub fn extract_sigma(m: &SemilinearMap, f: &Field) -> Result<Automorphism> {
    let e1 = unit_vector(0);
    let w = m.apply_vector(&e1, f);
    let pos = w.iter().position(|e| !e.is_zero()).ok_or(Error::Singular)?;
    let mut table = Vec::with_capacity(f.q());
    for c in f.elements() {
        let mut v = [Elem::ZERO; MAX_DIM];
        v[0] = c;
        table.push(f.div(m.apply_vector(&v, f)[pos], w[pos]));
    }
    f.automorphisms()
        .into_iter()
        .find(|s| f.elements().all(|c| s.apply(c) == table[c.index()]))
        .ok_or_else(|| Error::Hypothesis("map is not semilinear".into()))
}

/// Parameter `s/t` of the opposite line `R_(s:t)`, `None` for `L`.
fn opposite_parameter(line: &Subspace, f: &Field) -> Result<Option<Elem>> {
    let x23 = Subspace::from_vectors(6, [unit_vector(1), unit_vector(2)], f);
    let p = line.meet_unchecked(&x23, f);
    if p.dim() != 1 {
        return Err(Error::Hypothesis(format!("{line:?} is not an opposite line")));
    }
    let v = p.basis()[0];
    Ok((!v[2].is_zero()).then(|| f.div(v[1], v[2])))
}

/// Factorises a semilinear bijection with `f(J) = J` and `f(H) = H`.
pub fn decompose_semilinear(m: &SemilinearMap, c: &Catalog) -> Result<Decomposition> {
    let f = c.field();
    let report = check_map(m, c);
    if !report.iv() {
        return Err(Error::Hypothesis("map does not fix J and H".into()));
    }
    let sigma = extract_sigma(m, f)?;
    let f1 = SemilinearMap::field_automorphism(6, sigma.clone());
    // The linear part: h = f ∘ f1⁻¹ has matrix rows h(e_i) = f(e_i).
    let h_rows: Vec<Vec<Elem>> = (0..6).map(|i| m.apply_vector(&unit_vector(i), f)[..6].to_vec()).collect();
    let h = Matrix::from_rows(&h_rows)?;
    let h_map = SemilinearMap::linear(h.clone(), f)?;
    let image_param = |r: Elem| -> Result<Elem> {
        let line = Flats::opposite_line(r, Elem::ONE, f);
        opposite_parameter(&h_map.image(&line, f), f)?
            .ok_or_else(|| Error::Hypothesis("an affine opposite line maps to L".into()))
    };
    let a0 = image_param(Elem::ZERO)?;
    let a1 = image_param(Elem::ONE)?;
    let b = f.checked_inv(f.sub(a1, a0))?;
    let a = f.mul(a0, b);
    let m2 = homothety_matrix(a, b);
    let m3 = m2.inverse(f)?.mul(&h, f)?;
    let s = block6_pattern(&m3).ok_or_else(|| Error::Hypothesis("third factor is not of block-6 form".into()))?;
    Ok(Decomposition { sigma, a, b, s, f1, f2: SemilinearMap::linear(m2, f)?, f3: SemilinearMap::linear(m3, f)? })
}

/// Outcome of the random non-block controls.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ControlSummary {
    pub trials: u64,
    /// Maps failing at least one of the conditions.
    pub rejected: u64,
    /// Maps satisfying all of them despite not being of block-6 form.
    pub admissible: u64,
    /// Maps for which the conditions disagree.
    pub inconsistent: u64,
}

impl ControlSummary {
    pub fn passed(&self) -> bool {
        self.inconsistent == 0 && self.rejected + self.admissible == self.trials
    }

    pub fn to_json(&self) -> Value {
        json!({
            "trials": self.trials,
            "rejected": self.rejected,
            "admissible": self.admissible,
            "inconsistent": self.inconsistent,
        })
    }
}

/// A uniformly random invertible 6×6 matrix that is not a block-6 matrix.
pub fn random_non_block<R: Rng + ?Sized>(rng: &mut R, f: &Field) -> Matrix {
    loop {
        let mut m = Matrix::zeros(6, 6);
        for r in 0..6 {
            for col in 0..6 {
                m[(r, col)] = Elem(rng.gen_range(0..f.q()) as u8);
            }
        }
        if block6_pattern(&m).is_none() && m.rank(f) == 6 {
            return m;
        }
    }
}

pub fn negative_controls(c: &Catalog, trials: u64, seed: u64, exec: Exec) -> ControlSummary {
    let f = c.field();
    let reports = exec.map(trials, |i| {
        let m = random_non_block(&mut trial_rng(seed, i), f);
        check_map(&SemilinearMap::linear(m, f).expect("invertible"), c)
    });
    let mut out = ControlSummary { trials, ..Default::default() };
    for r in reports {
        if r.all() {
            out.admissible += 1;
        } else {
            out.rejected += 1;
        }
        if !r.consistent() {
            out.inconsistent += 1;
        }
    }
    out
}

/// Outcome of the random `(S, σ)` sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepSummary {
    pub trials: u64,
    /// Maps satisfying all conditions.
    pub passed: u64,
    /// Maps whose decomposition recovered `σ` and `S` and round-tripped.
    pub decomposed: u64,
}

impl SweepSummary {
    pub fn ok(&self) -> bool {
        self.passed == self.trials && self.decomposed == self.trials
    }

    pub fn to_json(&self) -> Value {
        json!({"trials": self.trials, "passed": self.passed, "decomposed": self.decomposed})
    }
}

/// One random trial: `f = diag(1,G,1,G)·block6(S)` after `σ`, with `G` random
/// on odd indices and the identity on even ones.
fn sweep_trial(c: &Catalog, seed: u64, i: u64) -> (bool, bool) {
    let f = c.field();
    let mut rng = trial_rng(seed, i);
    let s = TernionMatrix2::random_invertible(&mut rng, f);
    let autos = f.automorphisms();
    let sigma = autos[rng.gen_range(0..autos.len())].clone();
    let (a, b) = if i % 2 == 1 {
        (Elem(rng.gen_range(0..f.q()) as u8), Elem(rng.gen_range(1..f.q()) as u8))
    } else {
        (Elem::ZERO, Elem::ONE)
    };
    let matrix = homothety_matrix(a, b).mul(&block6(&s), f).expect("6x6");
    let m = SemilinearMap::new(matrix, sigma.clone(), f).expect("invertible");
    let passed = check_map(&m, c).all();
    let decomposed = match decompose_semilinear(&m, c) {
        Ok(d) => d.sigma == sigma && d.a == a && d.b == b && d.s == s && d.round_trip(&m, f, 64, seed ^ i),
        Err(_) => false,
    };
    (passed, decomposed)
}

pub fn theorem1_sweep(c: &Catalog, trials: u64, seed: u64, exec: Exec) -> SweepSummary {
    let results = exec.map(trials, |i| sweep_trial(c, seed, i));
    SweepSummary {
        trials,
        passed: results.iter().filter(|r| r.0).count() as u64,
        decomposed: results.iter().filter(|r| r.1).count() as u64,
    }
}

/// Every block-6 lift of `GL₂(T)` with every field automorphism; exhaustive,
/// so meant for `q = 2`.
pub fn exhaustive_block_maps(c: &Catalog, exec: Exec) -> (u64, u64) {
    let f = c.field();
    let group: Vec<TernionMatrix2> = TernionMatrix2::all(f).filter(|s| s.is_invertible(f)).collect();
    let mut total = 0;
    let mut passed = 0;
    for sigma in f.automorphisms() {
        let ok = exec.map_slice(&group, |s| theorem1_check(s, &sigma, c).map(|r| r.all()).unwrap_or(false));
        total += ok.len() as u64;
        passed += ok.iter().filter(|&&b| b).count() as u64;
    }
    (total, passed)
}
