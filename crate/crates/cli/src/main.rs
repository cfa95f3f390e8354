//! `ternion`: build the plane model, run the verification suites, export
//! catalogs and the adjacency graph.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ternion_geometry::geometry::AdjacencyGraph;
use ternion_geometry::verify::{self, catalog_csv, catalog_json, Report, SetSelector, Suite, VerifyConfig};
use ternion_geometry::{Catalog, Exec};

#[derive(Parser)]
#[command(name = "ternion", version, about = "Plane model of the projective line over the ternions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and report PASS/FAIL per claim.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Comma-separated suites, or `all`.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        suite: Vec<String>,
        /// Run every scan at full size, ignoring the budget guards.
        #[arg(long)]
        allow_large: bool,
        /// Random `(S, σ)` trials for the collineation sweep.
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Non-block negative controls (default 100000 at q = 2, else 1000).
        #[arg(long)]
        controls: Option<u64>,
    },
    /// Write the catalog, or one of its five lists.
    Enumerate {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "all")]
        set: String,
    },
    /// Write the adjacency graph on G_X ∪ G_Y.
    Graph {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    q: u64,
    /// Irreducible polynomial coefficients, constant term first, e.g. `1,1,0,1`.
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Single-threaded execution.
    #[arg(long)]
    sequential: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
}

impl Common {
    fn exec(&self) -> Exec {
        if self.sequential {
            Exec::Sequential
        } else {
            Exec::default()
        }
    }

    fn config(&self) -> VerifyConfig {
        let mut cfg = VerifyConfig::new(self.q);
        cfg.modulus = self.modulus.clone();
        cfg.seed = self.seed;
        cfg.exec = self.exec();
        cfg
    }

    fn catalog(&self, allow_large: bool) -> Result<Catalog> {
        let mut cfg = self.config();
        cfg.allow_large = allow_large;
        let field = cfg.field()?;
        Ok(Catalog::build(&field, &cfg.catalog_budget(), cfg.exec)?)
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn parse_suites(names: &[String]) -> Result<Vec<Suite>> {
    if names.iter().any(|s| s == "all") {
        return Ok(Suite::ALL.to_vec());
    }
    Ok(names.iter().map(|s| s.parse()).collect::<Result<_, _>>()?)
}

fn report_csv(report: &Report) -> String {
    let mut out = String::from("id,suite,status,claim\n");
    for c in &report.checks {
        out.push_str(&format!("{},{},{},\"{}\"\n", c.id, c.suite, c.status.name(), c.claim.replace('"', "\"\"")));
    }
    out
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify { common, suite, allow_large, trials, controls } => {
            let mut cfg = common.config();
            cfg.suites = parse_suites(&suite)?;
            cfg.allow_large = allow_large;
            cfg.thm1_trials = trials;
            cfg.controls = controls;
            let report = verify::run(&cfg)?;
            let body = match common.format {
                None if common.out.is_none() => report.summary(),
                None | Some(Format::Json) => report.to_json_string(),
                Some(Format::Csv) => report_csv(&report),
                Some(Format::Dot) => bail!("verify reports are json or csv"),
            };
            emit(common.out.as_deref(), &body)?;
            if common.out.is_some() {
                print!("{}", report.summary());
            }
            Ok(report.passed())
        }
        Command::Enumerate { common, set } => {
            let sel: SetSelector = set.parse()?;
            let catalog = common.catalog(false)?;
            let body = match common.format.unwrap_or(Format::Json) {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&catalog_json(&catalog, sel))?;
                    s.push('\n');
                    s
                }
                Format::Csv => catalog_csv(&catalog, sel),
                Format::Dot => bail!("enumerate writes json or csv"),
            };
            emit(common.out.as_deref(), &body)?;
            Ok(true)
        }
        Command::Graph { common } => {
            let catalog = common.catalog(false)?;
            let graph = AdjacencyGraph::build(&catalog, common.exec());
            let body = match common.format.unwrap_or(Format::Dot) {
                Format::Dot => graph.to_dot(&catalog),
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&graph.to_json(&catalog))?;
                    s.push('\n');
                    s
                }
                Format::Csv => bail!("graph writes dot or json"),
            };
            emit(common.out.as_deref(), &body)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
