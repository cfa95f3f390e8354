//! Verification suites over a built catalog, with a deterministic JSON
//! report. Timings only appear in the text summary.

mod export;
mod suites;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde_json::{json, Value};

pub use export::{catalog_csv, catalog_json, SetSelector};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::gf::Field;
use crate::linalg::Budget;
use crate::model::Catalog;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Adjacency,
    Counts,
    Incidence,
    Lemmas,
    Remark,
    Thm1,
    Thm2,
}

impl Suite {
    /// Every suite, ordered by name.
    pub const ALL: [Suite; 7] =
        [Suite::Adjacency, Suite::Counts, Suite::Incidence, Suite::Lemmas, Suite::Remark, Suite::Thm1, Suite::Thm2];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Adjacency => "adjacency",
            Suite::Counts => "counts",
            Suite::Incidence => "incidence",
            Suite::Lemmas => "lemmas",
            Suite::Remark => "remark",
            Suite::Thm1 => "thm1",
            Suite::Thm2 => "thm2",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite '{s}'")))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

/// One verified claim.
#[derive(Clone, Debug)]
pub struct Check {
    pub id: &'static str,
    pub suite: Suite,
    pub claim: &'static str,
    pub status: Status,
    pub details: Value,
    pub elapsed: Duration,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "suite": self.suite.name(),
            "claim": self.claim,
            "status": self.status.name(),
            "details": self.details,
        })
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub q: u64,
    pub modulus: Option<Vec<u32>>,
    pub suites: Vec<Suite>,
    pub seed: u64,
    pub allow_large: bool,
    pub exec: Exec,
    /// Random `(S, σ)` maps per run of the collineation sweep.
    pub thm1_trials: u64,
    /// Random non-block matrices; the default is `10⁵` at `q = 2` and `10³` otherwise.
    pub controls: Option<u64>,
    pub preserver_recipes: u64,
    /// `P0` sampled per type once a type has more members than this.
    pub incidence_sample: usize,
}

impl VerifyConfig {
    pub fn new(q: u64) -> VerifyConfig {
        VerifyConfig {
            q,
            modulus: None,
            suites: Suite::ALL.to_vec(),
            seed: 0,
            allow_large: false,
            exec: Exec::default(),
            thm1_trials: 1000,
            controls: None,
            preserver_recipes: 100,
            incidence_sample: 100,
        }
    }

    pub fn controls(&self) -> u64 {
        self.controls.unwrap_or(if self.q == 2 { 100_000 } else { 1000 })
    }

    pub fn catalog_budget(&self) -> Budget {
        if self.allow_large {
            Budget::unlimited()
        } else {
            Budget::from_env()
        }
    }

    pub fn field(&self) -> Result<Field> {
        if self.q < 2 {
            return Err(Error::InvalidArgument(format!("q must be at least 2, got {}", self.q)));
        }
        Field::with_order(self.q, self.modulus.as_deref())
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub field: Field,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn to_json(&self) -> Value {
        let spec = self.field.spec();
        let mut suites: Vec<&str> = self.checks.iter().map(|c| c.suite.name()).collect();
        suites.dedup();
        json!({
            "field": {"q": self.field.q(), "p": spec.p, "k": spec.k, "modulus": spec.modulus},
            "seed": self.seed,
            "suites": suites,
            "passed": self.passed(),
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
        })
    }

    /// Pretty JSON with a trailing newline; byte-identical across runs.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{} {:<22} {:<10} {:>9.1} ms  {}\n",
                c.status.name(),
                c.id,
                c.suite.name(),
                c.elapsed.as_secs_f64() * 1e3,
                c.claim
            ));
        }
        let failed = self.failures().count();
        out.push_str(&format!("{} checks, {} failed (q = {})\n", self.checks.len(), failed, self.field.q()));
        out
    }
}

/// Builds the catalog and runs the selected suites in name order.
pub fn run(config: &VerifyConfig) -> Result<Report> {
    let field = config.field()?;
    let catalog = Catalog::build(&field, &config.catalog_budget(), config.exec)?;
    run_on(&catalog, config)
}

pub fn run_on(catalog: &Catalog, config: &VerifyConfig) -> Result<Report> {
    let mut suites = config.suites.clone();
    suites.sort();
    suites.dedup();
    let mut ctx = suites::Context::new(catalog, config);
    let mut checks = Vec::new();
    for suite in suites {
        checks.extend(ctx.run(suite)?);
    }
    Ok(Report { field: catalog.field().clone(), seed: config.seed, checks })
}
