//! Command-line front end: argument parsing, JSON reports, the result cache
//! and the theorem-verification harness.
//!
//! Exit codes: 0 success, 1 failed verification, 2 invalid spec or input,
//! 3 cap exceeded, 4 method not applicable.

mod cache;
mod commands;
mod report;
mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub use cache::{Cache, CacheEntry};
pub use commands::{
    central_product_experiment, compute_b0, B0Method, B0Outcome, Caps, CocycleB0, FastpathB0,
};
pub use report::{Report, SCHEMA_VERSION, TOOL_VERSION};
pub use verify::{verify_theorem, RowStatus, VerifyBundle, VerifyRow, VerifySummary};

use crate::catalog::{corpus, make, GroupSpec};
use crate::cohomology::{DEFAULT_BOUNDARY_ROW_CAP, DEFAULT_COHOMOLOGY_CAP};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::rigidity::DEFAULT_RIGIDITY_CAP;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ASSERTION: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_NOT_APPLICABLE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "bgm", version, about = "Bogomolov and Schur multipliers, class-preserving automorphisms and isoclinism of small finite groups")]
pub struct Cli {
    /// Largest group order handed to the cocycle pipeline.
    #[arg(long, global = true, env = "MAX_COHOMOLOGY_ORDER", default_value_t = DEFAULT_COHOMOLOGY_CAP)]
    pub max_cohomology_order: usize,

    /// Row limit for the degree-two boundary matrix, `(|G|-1)^3` rows; the
    /// default admits orders below 64.
    #[arg(long, global = true, env = "MAX_BOUNDARY_ROWS", default_value_t = DEFAULT_BOUNDARY_ROW_CAP)]
    pub max_boundary_rows: usize,

    /// Largest group order for automorphism enumeration.
    #[arg(long, global = true, env = "MAX_RIGIDITY_ORDER", default_value_t = DEFAULT_RIGIDITY_CAP)]
    pub max_rigidity_order: usize,

    /// Bypass the result cache for reads and writes.
    #[arg(long, global = true)]
    pub no_cache: bool,

    #[arg(long, global = true, default_value = ".bgm-cache")]
    pub cache_dir: PathBuf,

    /// Worker threads for corpus commands (default: one per core).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order, characteristic subgroups, classes, abelianization and predicates.
    Info { spec: String },
    /// Invariant factors of the Schur multiplier.
    Schur { spec: String },
    /// The Bogomolov multiplier.
    B0 {
        spec: String,
        #[arg(long, value_enum, default_value_t = B0Method::Auto)]
        method: B0Method,
    },
    /// Order of the group of class-preserving outer automorphisms.
    Outc { spec: String },
    /// Sha-rigidity verdict with a witness when not rigid.
    Rigid { spec: String },
    /// Whether two groups are isoclinic, with a witness.
    Isoclinic { spec1: String, spec2: String },
    /// Blackburn / Dedekind classification.
    Blackburn { spec: String },
    /// Checks B0 = 0 and Sha-rigidity across the tagged corpus.
    VerifyTheorem {
        #[arg(long, default_value_t = 32)]
        max_order: usize,
        /// Write the full JSON bundle here.
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    #[command(subcommand)]
    Experiment(ExperimentCommand),
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Debug, Subcommand)]
pub enum ExperimentCommand {
    /// B0 of two factors and of their central product.
    CentralProduct {
        spec1: String,
        spec2: String,
        /// Order of the identified central subgroups (default: largest possible).
        #[arg(long)]
        identify_order: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogCommand {
    /// The tagged corpus up to an order bound.
    List {
        #[arg(long, default_value_t = 32)]
        max_order: usize,
    },
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::NotApplicable(_) | Error::EvenPrimeUnsupported | Error::NotPGroup => {
            EXIT_NOT_APPLICABLE
        }
        _ => EXIT_INVALID,
    }
}

struct Context {
    caps: Caps,
    cache: Option<Cache>,
}

impl Context {
    /// Runs `compute` through the cache unless disabled, timing the whole call.
    fn report(
        &self,
        command: &str,
        spec: String,
        groups: &[&FiniteGroup],
        requested_method: &str,
        compute: impl FnOnce() -> Result<(Option<String>, Value)>,
    ) -> Result<Report> {
        let start = Instant::now();
        let fingerprints: Vec<String> = groups.iter().map(|g| g.fingerprint()).collect();
        let group_fingerprint = match fingerprints.as_slice() {
            [one] => one.clone(),
            many => {
                let mut h = Sha256::new();
                for f in many {
                    h.update(f.as_bytes());
                }
                hex::encode(h.finalize())
            }
        };
        let refs: Vec<&str> = fingerprints.iter().map(String::as_str).collect();
        let key = self
            .cache
            .as_ref()
            .map(|c| c.key(command, requested_method, &refs));
        let hit = match (&self.cache, &key) {
            (Some(c), Some(k)) => c.get(k),
            _ => None,
        };
        let cache_hit = hit.is_some();
        let (method, result) = match hit {
            Some(entry) => (entry.method, entry.result),
            None => {
                let (method, result) = compute()?;
                if let (Some(c), Some(k)) = (&self.cache, key) {
                    c.put(&CacheEntry {
                        key: k,
                        method: method.clone(),
                        result: result.clone(),
                    });
                }
                (method, result)
            }
        };
        Ok(Report {
            schema: SCHEMA_VERSION,
            command: command.into(),
            spec,
            group_fingerprint,
            method,
            result,
            wall_time_ms: start.elapsed().as_millis() as u64,
            cache_hit,
            tool_version: TOOL_VERSION.into(),
        })
    }
}

fn build(spec: &str) -> Result<FiniteGroup> {
    let parsed: GroupSpec = spec.parse()?;
    make(&parsed)
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn execute(cli: &Cli) -> Result<i32> {
    let ctx = Context {
        caps: Caps::new(cli.max_cohomology_order, cli.max_boundary_rows, cli.max_rigidity_order),
        cache: (!cli.no_cache).then(|| Cache::new(&cli.cache_dir, TOOL_VERSION)),
    };
    let caps = ctx.caps;
    let single = |command: &str, spec: &str, method: &str, f: &dyn Fn(&FiniteGroup) -> Result<(Option<String>, Value)>| {
        let g = build(spec)?;
        ctx.report(command, spec.to_string(), &[&g], method, || f(&g))
    };
    let no_method = |v: Result<Value>| v.map(|v| (None, v));

    let report = match &cli.command {
        Command::Info { spec } => single("info", spec, "", &|g| no_method(commands::info(g)))?,
        Command::Schur { spec } => single("schur", spec, "", &|g| {
            commands::schur(g, &caps).map(|v| (Some("cocycle".into()), v))
        })?,
        Command::B0 { spec, method } => single("b0", spec, method.name(), &|g| {
            let outcome = compute_b0(g, *method, &caps)?;
            Ok((Some(outcome.method().into()), serde_json::to_value(&outcome)?))
        })?,
        Command::Outc { spec } => single("outc", spec, "", &|g| no_method(commands::outc(g, &caps)))?,
        Command::Rigid { spec } => single("rigid", spec, "", &|g| no_method(commands::rigid(g, &caps)))?,
        Command::Blackburn { spec } => single("blackburn", spec, "", &|g| no_method(commands::blackburn(g)))?,
        Command::Isoclinic { spec1, spec2 } => {
            let (g1, g2) = (build(spec1)?, build(spec2)?);
            ctx.report("isoclinic", format!("{spec1}; {spec2}"), &[&g1, &g2], "", || {
                no_method(commands::isoclinism(&g1, &g2))
            })?
        }
        Command::Experiment(ExperimentCommand::CentralProduct {
            spec1,
            spec2,
            identify_order,
        }) => {
            let (g1, g2) = (build(spec1)?, build(spec2)?);
            let method = identify_order.map_or("largest".to_string(), |k| format!("order={k}"));
            ctx.report(
                "experiment central-product",
                format!("{spec1}; {spec2}"),
                &[&g1, &g2],
                &method,
                || {
                    let (_, v) = central_product_experiment(&g1, &g2, *identify_order, &caps)?;
                    Ok((Some("auto".into()), v))
                },
            )?
        }
        Command::VerifyTheorem { max_order, json_out } => {
            let bundle = verify_theorem(*max_order, &caps, ctx.cache.as_ref())?;
            let mut out = std::io::stdout().lock();
            for r in &bundle.rows {
                let b0 = r.b0.as_ref().map_or("-".to_string(), |f| format!("{f:?}"));
                let outc = r.outc_order.map_or("-".to_string(), |o| o.to_string());
                writeln!(
                    out,
                    "{:<8} {:>4}  {:<44} {:<32} b0={:<4} ({}) outc={}{}",
                    format!("{:?}", r.status).to_uppercase(),
                    r.order,
                    r.spec,
                    r.tags.join(" "),
                    b0,
                    r.b0_method.as_deref().unwrap_or("-"),
                    outc,
                    if r.notes.is_empty() { String::new() } else { format!("  [{}]", r.notes.join("; ")) },
                )?;
            }
            let s = &bundle.summary;
            writeln!(
                out,
                "summary: {} groups, {} pass, {} fail, {} skipped",
                s.total, s.pass, s.fail, s.skipped
            )?;
            if let Some(path) = json_out {
                std::fs::write(path, serde_json::to_string_pretty(&bundle)? + "\n")?;
            }
            return Ok(if bundle.passed() { EXIT_OK } else { EXIT_ASSERTION });
        }
        Command::Catalog(CatalogCommand::List { max_order }) => {
            let entries: Vec<Value> = corpus(*max_order)?
                .iter()
                .map(|e| {
                    json!({
                        "spec": e.spec.to_string(),
                        "order": e.group.order(),
                        "group_fingerprint": e.group.fingerprint(),
                        "tags": e.tags.iter().map(|t| t.label()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            print_json(&json!({
                "schema": SCHEMA_VERSION,
                "command": "catalog list",
                "max_order": max_order,
                "groups": entries,
                "tool_version": TOOL_VERSION,
            }))?;
            return Ok(EXIT_OK);
        }
    };
    print_json(&report)?;
    Ok(EXIT_OK)
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Errors go to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    let work = || match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("bgm: {e}");
            exit_code(&e)
        }
    };
    match cli.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(work),
            Err(e) => {
                eprintln!("bgm: cannot start {n} worker threads: {e}");
                EXIT_INVALID
            }
        },
        None => work(),
    }
}
