use std::cell::Cell;
use std::time::{Duration, Instant};

use rand::seq::index::sample;
use serde_json::{json, Value};

use super::{Check, Status, Suite, VerifyConfig};
use crate::error::Result;
use crate::geometry::{self, AdjacencyGraph, CliqueSystem, NoDualityCertificate, PreserverRecipe};
use crate::linalg::{SemilinearMap, Subspace};
use crate::model::{
    block6, block6_lift, classify, classify_by_rank, cyclic_span, is_unimodular, line_model, line_model_axis, Catalog,
    PlaneScan, SubmoduleType,
};
use crate::ternion::{TernionMatrix2, TernionPair};

pub(super) struct Context<'a> {
    catalog: &'a Catalog,
    config: &'a VerifyConfig,
    graph: Option<AdjacencyGraph>,
    scans: Option<(Vec<Subspace>, Vec<Subspace>)>,
    /// Start of the check being computed; work shared by later checks is charged to the first.
    mark: Cell<Instant>,
}

struct Pending {
    id: &'static str,
    claim: &'static str,
    ok: bool,
    details: Value,
    elapsed: Duration,
}

impl<'a> Context<'a> {
    pub(super) fn new(catalog: &'a Catalog, config: &'a VerifyConfig) -> Context<'a> {
        Context { catalog, config, graph: None, scans: None, mark: Cell::new(Instant::now()) }
    }

    pub(super) fn run(&mut self, suite: Suite) -> Result<Vec<Check>> {
        self.mark.set(Instant::now());
        let results = match suite {
            Suite::Counts => self.counts()?,
            Suite::Incidence => self.incidence(),
            Suite::Adjacency => self.adjacency()?,
            Suite::Lemmas => self.lemmas()?,
            Suite::Thm1 => self.thm1()?,
            Suite::Thm2 => self.thm2()?,
            Suite::Remark => self.remark()?,
        };
        Ok(results
            .into_iter()
            .map(|p| Check {
                id: p.id,
                suite,
                claim: p.claim,
                status: Status::from_bool(p.ok),
                details: p.details,
                elapsed: p.elapsed,
            })
            .collect())
    }

    fn pending(&self, id: &'static str, claim: &'static str, ok: bool, details: Value) -> Pending {
        let now = Instant::now();
        let elapsed = now - self.mark.replace(now);
        Pending { id, claim, ok, details, elapsed }
    }

    fn graph(&mut self) -> &AdjacencyGraph {
        let (c, exec) = (self.catalog, self.config.exec);
        self.graph.get_or_insert_with(|| AdjacencyGraph::build(c, exec))
    }

    fn scans(&mut self) -> Result<&(Vec<Subspace>, Vec<Subspace>)> {
        if self.scans.is_none() {
            let budget = geometry::scan_budget(self.config.allow_large);
            let lines = geometry::scan_lines(self.catalog, &budget, self.config.exec)?;
            let solids = geometry::scan_solids(self.catalog, &budget, self.config.exec)?;
            self.scans = Some((lines, solids));
        }
        Ok(self.scans.as_ref().unwrap())
    }

    fn counts(&mut self) -> Result<Vec<Pending>> {
        let c = self.catalog;
        let f = c.field();
        let q = c.q();
        let exec = self.config.exec;
        let mut out = Vec::new();

        let counts = c.counts();
        let expected = Catalog::expected_counts(q);
        let dims_ok = SubmoduleType::NONZERO.iter().all(|&t| c.set(t).iter().all(|s| s.dim() == t.dimension()));
        out.push(self.pending(
            "prop:G",
            "the nonzero cyclic submodules give |G_X|=q(q+1)^2, |G_Y|=|G_alpha|=|G_gamma|=q+1, |G_beta|=q^3+q^2 distinct subspaces",
            counts == expected && dims_ok,
            json!({"counts": counts, "expected": expected, "total": c.len(), "dimensions_ok": dims_ok}),
        ));

        let pairs = TernionPair::count(f);
        let mismatches = exec.count(pairs, |i| {
            let v = TernionPair::from_index(i, f);
            let t = classify(&v, f);
            t != classify_by_rank(&v, c.flats(), f)
                || is_unimodular(&v, f) != (t == SubmoduleType::X)
                || cyclic_span(&v, f).dim() != t.dimension()
        });
        out.push(self.pending(
            "prop:classify",
            "closed-form classifier, rank classifier and unimodularity agree on every generator",
            mismatches == 0,
            json!({"generators": pairs, "mismatches": mismatches}),
        ));

        let scan = if q <= 3 || self.config.allow_large { PlaneScan::Full } else { PlaneScan::default_for(q) };
        let ch = c.characterize(scan, &self.config.catalog_budget(), exec)?;
        let scan_info = json!({"scan": ch.scan.name(), "planes_scanned": ch.planes_scanned.to_string()});
        out.push(self.pending(
            "prop:gamma",
            "G_gamma is the point set of L",
            ch.gamma,
            json!({"size": c.g_gamma().len()}),
        ));
        out.push(self.pending(
            "prop:beta",
            "G_beta is the point set of J off L",
            ch.beta,
            json!({"size": c.g_beta().len()}),
        ));
        out.push(self.pending(
            "prop:alpha",
            "G_alpha is the regulus of H not containing L",
            ch.alpha,
            json!({"size": c.g_alpha().len()}),
        ));
        out.push(self.pending("prop:Y", "G_Y is the pencil [L,K]_3", ch.y, json!({"size": c.g_y().len()})));
        out.push(self.pending(
            "prop:X",
            "G_X is the set of planes meeting J in a line other than L and K in a line of G_alpha",
            ch.x,
            scan_info,
        ));

        out.push(self.lift_invariance());
        if q == 2 {
            out.push(self.orbits());
        }
        out.push(self.line_model());
        Ok(out)
    }

    fn lift_invariance(&self) -> Pending {
        let c = self.catalog;
        let f = c.field();
        let fl = c.flats();
        let maps: Vec<TernionMatrix2> = if c.q() == 2 {
            TernionMatrix2::all(f).filter(|s| s.is_invertible(f)).collect()
        } else {
            let mut rng = geometry::trial_rng(self.config.seed, u64::MAX);
            (0..200).map(|_| TernionMatrix2::random_invertible(&mut rng, f)).collect()
        };
        let mut quadric = fl.quadric_points.clone();
        quadric.sort();
        let ok = self.config.exec.map_slice(&maps, |s| {
            let m = block6_lift(s, f).expect("invertible");
            let mut image: Vec<Subspace> = quadric.iter().map(|p| m.image(p, f)).collect();
            image.sort();
            m.image(&fl.j, f) == fl.j && m.image(&fl.k, f) == fl.k && m.image(&fl.l, f) == fl.l && image == quadric
        });
        let failures = ok.iter().filter(|&&b| !b).count();
        self.pending(
            "lift:invariant",
            "every block-6 lift fixes J, K, L and the point set of H",
            failures == 0,
            json!({"maps": maps.len(), "exhaustive": c.q() == 2, "failures": failures}),
        )
    }

    fn orbits(&self) -> Pending {
        let c = self.catalog;
        let f = c.field();
        let group: Vec<TernionMatrix2> = TernionMatrix2::all(f).filter(|s| s.is_invertible(f)).collect();
        let mut sizes = Vec::new();
        let mut ok = group.len() as u64 == TernionMatrix2::group_order(2);
        for t in SubmoduleType::NONZERO {
            let rep = cyclic_span(&t.representative(), f);
            let mut orbit: Vec<Subspace> =
                group.iter().map(|s| SemilinearMap::linear(block6(s), f).unwrap().image(&rep, f)).collect();
            orbit.sort();
            orbit.dedup();
            ok &= orbit == c.set(t);
            sizes.push(orbit.len());
        }
        self.pending(
            "orbit:five",
            "GL2(T) acts transitively on each of the five types",
            ok,
            json!({"group_order": group.len(), "orbit_sizes": sizes}),
        )
    }

    fn line_model(&self) -> Pending {
        let c = self.catalog;
        let f = c.field();
        let axis = line_model_axis(f);
        let mut lines = Vec::new();
        let mut ok = true;
        for (i, m) in c.g_x().iter().enumerate() {
            let w = c.witness(SubmoduleType::X, i).expect("witness");
            let line = line_model(&w, f).expect("unimodular witness");
            ok &= line == geometry::j_trace(m, c) && line.dim_meet(&axis, f) == 1;
            lines.push(line);
        }
        lines.sort();
        let before = lines.len();
        lines.dedup();
        ok &= lines.len() == before;
        self.pending(
            "rem:line-model",
            "M -> M∩J is injective on G_X and its image lines meet the axis in one point",
            ok,
            json!({"lines": lines.len()}),
        )
    }

    fn incidence(&mut self) -> Vec<Pending> {
        let c = self.catalog;
        let limit = self.config.incidence_sample;
        let seed = self.config.seed;
        let table = geometry::incidence_table(c, self.config.exec, |t| {
            let n = c.set(t).len();
            (c.q() >= 5 && n > limit).then(|| {
                let mut rng = geometry::trial_rng(seed, t.slot().unwrap() as u64);
                let mut picks = sample(&mut rng, n, limit).into_vec();
                picks.sort_unstable();
                picks
            })
        });
        let rows: Vec<Value> = SubmoduleType::NONZERO
            .iter()
            .zip(&table.rows)
            .zip(&table.checked)
            .map(|((t, r), n)| json!({"P0": t.name(), "row": r, "expected": geometry::expected_row(*t, c.q()), "checked": n}))
            .collect();
        vec![self.pending(
            "prop:I",
            "incidence counts of every P0 match the table with |F| = q",
            table.matches(),
            json!({"rows": rows, "csv": table.to_csv()}),
        )]
    }

    fn adjacency(&mut self) -> Result<Vec<Pending>> {
        let c = self.catalog;
        let f = c.field();
        let fl = c.flats();
        let q = c.q();
        let g = self.graph().clone();
        let nx = c.g_x().len();
        let mut out = Vec::new();

        let k_traces: Vec<Subspace> = c.g_x().iter().map(|m| m.meet_unchecked(&fl.k, f)).collect();
        let mut criterion_ok = true;
        for i in 0..nx {
            for j in 0..nx {
                let cong = i == j || g.is_adjacent(i, j);
                criterion_ok &= cong == (k_traces[i] == k_traces[j]);
            }
        }
        let classes = geometry::adjacency_classes(c);
        let expected = geometry::expected_classes(c)?;
        let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
        out.push(self.pending(
            "adj:X",
            "on G_X, adjacent-or-equal means equal K-traces; the classes are [P,P+J]_3 minus P+L",
            criterion_ok && classes == expected && sizes.iter().all(|&s| s == q * q + q) && classes.len() == q + 1,
            json!({"classes": classes.len(), "sizes": sizes}),
        ));

        let mut companion_ok = true;
        for i in 0..nx {
            let ys: Vec<usize> = g.neighbours(i).iter().copied().filter(|&j| g.kind(j) == SubmoduleType::Y).collect();
            let comp = geometry::companion_y(g.vertex(i), c)?;
            companion_ok &= ys.len() == 1 && g.vertex(ys[0]) == &comp;
        }
        out.push(self.pending(
            "adj:companion",
            "each M in G_X has exactly one G_Y neighbour, (M∩K)+L",
            companion_ok,
            json!({"planes": nx}),
        ));

        let found: Vec<Vec<Subspace>> = {
            let mut v: Vec<Vec<Subspace>> = g
                .maximal_cliques()
                .into_iter()
                .map(|cl| {
                    let mut s: Vec<Subspace> = cl.iter().map(|&i| g.vertex(i).clone()).collect();
                    s.sort();
                    s
                })
                .collect();
            v.sort();
            v
        };
        let mut expected = geometry::expected_cliques(c)?;
        let planes_ok = expected[1..].iter().all(|cl| geometry::is_projective_plane(cl, f));
        let maximal_ok = expected.iter().all(|cl| {
            let idx: Vec<usize> = cl.iter().map(|z| g.index_of(z).expect("vertex")).collect();
            g.is_maximal_clique(&idx)
        });
        expected.sort();
        let plane = q * q + q + 1;
        let expected_edges = (q + 1) * plane * (plane - 1) / 2 + (q + 1) * q / 2;
        out.push(self.pending(
            "adj:cliques",
            "the maximal cliques of G_X ∪ G_Y are [L,K]_3 and the projective planes [P,P+J]_3",
            found == expected && planes_ok && maximal_ok && g.edge_count() == expected_edges,
            json!({
                "cliques": found.len(),
                "sizes": found.iter().map(Vec::len).collect::<Vec<_>>(),
                "edges": g.edge_count(),
                "expected_edges": expected_edges,
            }),
        ));

        let connected = g.is_connected();
        let mut dist_ok = connected;
        let mut histogram = [0usize; 4];
        let mut geodesic_pairs = 0usize;
        for i in 0..nx {
            let (dist, paths) = g.bfs(i);
            let ci = g.index_of(&geometry::companion_y(g.vertex(i), c)?).expect("vertex");
            for j in 0..g.len() {
                if i == j {
                    continue;
                }
                let Some(d) = dist[j] else {
                    dist_ok = false;
                    continue;
                };
                if j < nx {
                    histogram[d.min(3)] += 1;
                    if d == 3 {
                        let cj = g.index_of(&geometry::companion_y(g.vertex(j), c)?).expect("vertex");
                        geodesic_pairs += 1;
                        dist_ok &= paths[j] == 1 && g.shortest_path(i, j) == Some(vec![i, ci, cj, j]);
                    } else {
                        dist_ok &= d == 1;
                    }
                } else {
                    dist_ok &= d == if j == ci { 1 } else { 2 };
                }
            }
        }
        out.push(self.pending(
            "adj:distance",
            "G_X ∪ G_Y is connected, X-X distances are 1 or 3, and M1 ~ (M1∩K)+L ~ (M2∩K)+L ~ M2 is the only geodesic",
            dist_ok,
            json!({"connected": connected, "ordered_pairs_at_1": histogram[1], "ordered_pairs_at_3": histogram[3], "geodesics_checked": geodesic_pairs}),
        ));
        Ok(out)
    }

    fn lemmas(&mut self) -> Result<Vec<Pending>> {
        let c = self.catalog;
        let (lines, solids) = self.scans()?.clone();
        let mut js = vec![c.flats().j.clone(), c.flats().k.clone()];
        js.sort();
        let q = c.q();
        Ok(vec![
            self.pending(
                "lem:line",
                "the lines meeting every G_X plane in a point are the opposite regulus",
                lines == c.flats().regulus_opposite,
                json!({"found": lines.len(), "scanned": geometry::scan_size(2, q).to_string()}),
            ),
            self.pending(
                "lem:solid",
                "the solids meeting every G_X plane in a line are J and K",
                solids == js,
                json!({"found": solids.len(), "scanned": geometry::scan_size(4, q).to_string()}),
            ),
        ])
    }

    fn thm1(&mut self) -> Result<Vec<Pending>> {
        let c = self.catalog;
        let f = c.field();
        let cfg = self.config;
        let mut out = Vec::new();

        let sweep = geometry::theorem1_sweep(c, cfg.thm1_trials, cfg.seed, cfg.exec);
        out.push(self.pending(
            "thm:1",
            "maps from T-semilinear bijections fix G_X ∪ G_Y, G_X, J and H, and factor as sigma, diag(1,G,1,G), block6(S)",
            sweep.ok(),
            sweep.to_json(),
        ));

        let id = SemilinearMap::identity(6, f);
        let mut decomp_ok = geometry::decompose_semilinear(&id, c)
            .map(|d| d.s == TernionMatrix2::IDENTITY && d.f2 == id && d.sigma.is_identity())
            .unwrap_or(false);
        for sigma in f.automorphisms() {
            let m = SemilinearMap::field_automorphism(6, sigma.clone());
            decomp_ok &= geometry::decompose_semilinear(&m, c)
                .map(|d| d.sigma == sigma && d.s == TernionMatrix2::IDENTITY && d.f2 == id)
                .unwrap_or(false);
        }
        out.push(self.pending(
            "thm:1-factors",
            "the identity and pure field automorphisms factor trivially",
            decomp_ok,
            json!({"automorphisms": f.automorphisms().len()}),
        ));

        if c.q() == 2 {
            let (total, passed) = geometry::exhaustive_block_maps(c, cfg.exec);
            out.push(self.pending(
                "thm:1-exhaustive",
                "every block-6 lift of GL2(T) satisfies all three conditions",
                total == passed && total == TernionMatrix2::group_order(2),
                json!({"maps": total, "passed": passed}),
            ));
        }

        let controls = geometry::negative_controls(c, cfg.controls(), cfg.seed, cfg.exec);
        out.push(self.pending(
            "thm:1-controls",
            "random non-block invertible maps satisfy all or none of the three conditions",
            controls.passed(),
            controls.to_json(),
        ));

        let g = self.graph().clone();
        let cs = CliqueSystem::new(c)?;
        let recipes: Vec<u64> = (0..cfg.preserver_recipes).collect();
        let results = cfg.exec.map_slice(&recipes, |&i| {
            let r = PreserverRecipe::random(&mut geometry::trial_rng(cfg.seed ^ 0x5eed, i), &cs);
            let map = r.build(&cs, &g, c).expect("recipe on catalog");
            (geometry::verify_preserver(&map, &g), geometry::fixes_types(&map, &g))
        });
        let preserving = results.iter().filter(|r| r.0).count();
        let typed = results.iter().filter(|r| r.1).count();
        out.push(self.pending(
            "prop:adj",
            "recipes (mu, psi_P) give adjacency preservers of G_X ∪ G_Y",
            preserving == results.len(),
            json!({"recipes": results.len(), "preservers": preserving}),
        ));
        out.push(self.pending(
            "cor:1",
            "adjacency preservers fix G_X and G_Y setwise",
            typed == results.len(),
            json!({"recipes": results.len(), "type_preserving": typed}),
        ));

        let mut rng = geometry::trial_rng(cfg.seed, u64::MAX - 1);
        let mut extracted = 0;
        let samples = 20;
        for _ in 0..samples {
            let s = TernionMatrix2::random_invertible(&mut rng, f);
            let m = SemilinearMap::linear(block6(&s), f)?;
            let ok = geometry::induced_vertex_map(&m, &g, c).is_some_and(|map| {
                geometry::verify_preserver(&map, &g)
                    && PreserverRecipe::extract(&map, &cs, &g, c)
                        .is_ok_and(|r| r.build(&cs, &g, c).is_ok_and(|b| b == map))
            });
            extracted += ok as usize;
        }
        out.push(self.pending(
            "prop:adj-extract",
            "preservers induced by block-6 lifts yield recipes that rebuild them",
            extracted == samples,
            json!({"maps": samples, "rebuilt": extracted}),
        ));
        Ok(out)
    }

    fn thm2(&mut self) -> Result<Vec<Pending>> {
        let c = self.catalog;
        let (lines, solids) = self.scans()?.clone();
        let cert = NoDualityCertificate::from_scans(c, &lines, &solids);
        Ok(vec![self.pending(
            "thm:2",
            "no duality fixes G_X or G_X ∪ G_Y: q+1 special lines against two special solids",
            cert.verdict == geometry::Verdict::NoDuality && cert.lines == c.q() + 1 && cert.solids == 2,
            cert.to_json(),
        )])
    }

    fn remark(&mut self) -> Result<Vec<Pending>> {
        let c = self.catalog;
        let r = geometry::xi_witnesses(c)?;
        Ok(vec![self.pending(
            "rem:xi",
            "xi permutes G_X, breaks adjacency for some pair meeting in a G_beta point, and preserves skew pairs",
            r.holds(),
            r.to_json(c),
        )])
    }
}
