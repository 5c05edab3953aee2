use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use algiso_core::algebra::CoefficientDomain;
use algiso_core::graph::game::DEFAULT_POSITION_BUDGET;
use algiso_core::graph::{ColouredGraph, GamePosition, GameTable};
use algiso_core::iso::{build_iso_system, IsoOptions};
use algiso_core::json::{Artifact, IntegerFile, MlinFile, NssFile, PcLogFile, SystemFile};
use algiso_core::provers::{
    integer_mlin_decide, monomial_pc_decide_with, nss_decide, pc_decide_with, wl_solution, Evidence, Outcome, ProverVerdict, SpanOptions, Witness,
};

use crate::common::{graph_json, load_graph, sha256_hex, write_json};
use crate::verify::verify_files;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
pub enum Prover {
    Nss,
    Mpc,
    Pc,
    Int,
    WlGame,
}

impl Prover {
    pub fn name(self) -> &'static str {
        match self {
            Prover::Nss => "nss",
            Prover::Mpc => "mpc",
            Prover::Pc => "pc",
            Prover::Int => "int",
            Prover::WlGame => "wl-game",
        }
    }
}

#[derive(Args, Debug)]
pub struct DecideArgs {
    /// First graph: a file or a named family.
    #[arg(long)]
    pub g: String,
    #[arg(long)]
    pub h: String,
    #[arg(long, value_delimiter = ',', required = true)]
    pub prover: Vec<Prover>,
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub degree: Vec<usize>,
    /// Q, Z, F<p> or Fp:<p>.
    #[arg(long, value_delimiter = ',', default_value = "Q")]
    pub domain: Vec<CoefficientDomain>,
    #[arg(long)]
    pub no_prune: bool,
    /// Also store witnesses of NotRefuted verdicts.
    #[arg(long)]
    pub emit_certificate: bool,
    /// Cap on game positions, type tuples and span dimension.
    #[arg(long, env = "ALGISO_BUDGET")]
    pub budget: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, default_value = "pair")]
    pub name: String,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

/// One (prover, degree, domain) entry of a report grid.
#[derive(Clone, Copy, Debug)]
pub struct Cell {
    pub prover: Prover,
    pub degree: usize,
    pub domain: CoefficientDomain,
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub prune: bool,
    pub emit_certificate: bool,
    pub budget: Option<usize>,
}

pub struct Instance {
    pub name: String,
    pub g: ColouredGraph,
    pub h: ColouredGraph,
}

pub struct CellResult {
    pub entry: Value,
    pub refuted: bool,
    pub millis: u128,
}

fn domain_tag(d: CoefficientDomain) -> String {
    d.to_string()
}

fn check_cell(c: &Cell) -> Result<()> {
    if c.degree == 0 {
        bail!("degree must be at least 1");
    }
    match (c.prover, c.domain) {
        (Prover::Int, CoefficientDomain::Integers) | (Prover::WlGame, _) => Ok(()),
        (Prover::Int, d) => bail!("prover int needs domain Z, got {d}"),
        (p, CoefficientDomain::Integers) => bail!("prover {} needs a field, got Z", p.name()),
        _ => Ok(()),
    }
}

/// Each cell writes its own copy, so parallel cells never share a file.
fn write_system(out: &Path, stem: &str, inst: &Instance, d: CoefficientDomain, opts: IsoOptions) -> Result<PathBuf> {
    let sys = build_iso_system(&inst.g, &inst.h, d, opts)?;
    let path = out.join(format!("{stem}.system.json"));
    write_json(&path, &SystemFile::new(d, sys.space.registry().names().to_vec(), &sys.axioms))?;
    Ok(path)
}

fn iso_options(c: &Cell, opts: &RunOptions) -> IsoOptions {
    IsoOptions { prune: opts.prune }.for_degree(c.degree)
}

fn run_prover(inst: &Instance, c: &Cell, opts: &RunOptions) -> Result<ProverVerdict> {
    let sys = build_iso_system(&inst.g, &inst.h, c.domain, iso_options(c, opts))?;
    let vars = sys.space.live_vars();
    let span = SpanOptions { max_basis: opts.budget.unwrap_or(SpanOptions::default().max_basis), ..SpanOptions::default() };
    Ok(match c.prover {
        Prover::Nss => nss_decide(&sys.axioms, &vars, c.degree, c.domain)?,
        Prover::Mpc => monomial_pc_decide_with(&sys.axioms, &vars, c.degree, c.domain, span)?,
        Prover::Pc => pc_decide_with(&sys.axioms, &vars, c.degree, c.domain, span)?,
        Prover::Int => integer_mlin_decide(&sys.axioms, &vars, c.degree)?,
        Prover::WlGame => unreachable!("handled by the caller"),
    })
}

/// Runs one cell, stores its artifacts under `out` and replays every stored
/// refutation from disk before returning.
pub fn run_cell(out: &Path, inst: &Instance, c: &Cell, opts: &RunOptions) -> Result<CellResult> {
    check_cell(c)?;
    let start = Instant::now();
    let stem = format!("{}.{}.d{}.{}", inst.name, c.prover.name(), c.degree, domain_tag(c.domain));
    let mut entry = json!({
        "instance": inst.name,
        "prover": c.prover.name(),
        "degree": c.degree,
        "domain": domain_tag(c.domain),
        "prune": opts.prune,
        "certificate": null,
        "witness": null,
    });
    if c.prover == Prover::WlGame {
        let budget = opts.budget.unwrap_or(DEFAULT_POSITION_BUDGET);
        let verdict = GameTable::solve(&inst.g, &inst.h, c.degree, budget)?.verdict(&GamePosition::empty())?;
        entry["verdict"] = json!(if verdict.spoiler_wins() { "spoiler" } else { "duplicator" });
        entry["rounds"] = json!(verdict.rounds);
        if !verdict.spoiler_wins() && opts.emit_certificate {
            let wl = wl_solution(&inst.g, &inst.h, c.degree, IsoOptions { prune: opts.prune }, budget)?;
            let sys_path = write_system(out, &stem, inst, wl.assignment.domain, iso_options(c, opts))?;
            let path = out.join(format!("{stem}.witness.json"));
            write_json(&path, &Artifact::Mlin(MlinFile::from_assignment(&wl.assignment, c.degree, true)))?;
            expect_pass(&path, &sys_path)?;
            entry["witness"] = json!(file_name(&path));
            entry["system"] = json!(file_name(&sys_path));
        }
        return Ok(CellResult { entry, refuted: verdict.spoiler_wins(), millis: start.elapsed().as_millis() });
    }

    let v = run_prover(inst, c, opts)?;
    let refuted = v.refuted();
    entry["verdict"] = json!(if refuted { "refuted" } else { "not-refuted" });
    let artifact = match &v.outcome {
        Outcome::Refuted(Evidence::Nss(cert)) => Some(Artifact::Nss(NssFile::from_certificate(cert))),
        Outcome::Refuted(Evidence::Derivation(log)) => Some(Artifact::PcLog(PcLogFile::from_log(log))),
        Outcome::Refuted(Evidence::Integer(inf)) => Some(Artifact::Integer(IntegerFile::new(c.degree, inf))),
        Outcome::NotRefuted(Witness::Mlin(a)) if opts.emit_certificate => Some(Artifact::Mlin(MlinFile::from_assignment(a, c.degree, false))),
        Outcome::NotRefuted(Witness::Fixpoint { basis_size }) => {
            entry["basis_size"] = json!(basis_size);
            None
        }
        Outcome::NotRefuted(_) => None,
    };
    if let Some(a) = artifact {
        let sys_path = write_system(out, &stem, inst, c.domain, iso_options(c, opts))?;
        let key = if refuted { "certificate" } else { "witness" };
        let path = out.join(format!("{stem}.{key}.json"));
        write_json(&path, &a)?;
        expect_pass(&path, &sys_path)?;
        entry[key] = json!(file_name(&path));
        entry["system"] = json!(file_name(&sys_path));
    }
    Ok(CellResult { entry, refuted, millis: start.elapsed().as_millis() })
}

fn file_name(p: &Path) -> String {
    p.file_name().expect("file path").to_string_lossy().into_owned()
}

fn expect_pass(cert: &Path, sys: &Path) -> Result<()> {
    match verify_files(cert, sys)? {
        Ok(_) => Ok(()),
        Err(msg) => bail!("self-verification of {} failed: {msg}", cert.display()),
    }
}

/// Runs every cell of every instance, optionally in parallel, and writes
/// `report.json` (deterministic) and `timings.json`.
pub fn run_grid(out: &Path, instances: &[Instance], cells: &[Cell], opts: &RunOptions, jobs: usize) -> Result<Vec<CellResult>> {
    std::fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let work: Vec<(&Instance, &Cell)> = instances.iter().flat_map(|i| cells.iter().map(move |c| (i, c))).collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build()?;
    let results: Vec<CellResult> = pool.install(|| work.par_iter().map(|(i, c)| run_cell(out, i, c, opts)).collect::<Result<_>>())?;
    let described: Vec<Value> = instances
        .iter()
        .map(|i| {
            Ok(json!({
                "name": i.name,
                "g_sha256": sha256_hex(graph_json(&i.g)?.as_bytes()),
                "h_sha256": sha256_hex(graph_json(&i.h)?.as_bytes()),
                "g_vertices": i.g.num_vertices(),
                "h_vertices": i.h.num_vertices(),
            }))
        })
        .collect::<Result<_>>()?;
    let report = json!({
        "schema": "algiso.report.v1",
        "version": env!("CARGO_PKG_VERSION"),
        "instances": described,
        "results": results.iter().map(|r| r.entry.clone()).collect::<Vec<_>>(),
    });
    write_json(&out.join("report.json"), &report)?;
    let timings: Vec<Value> = results.iter().map(|r| json!({"cell": r.entry.clone(), "millis": r.millis as u64})).collect();
    write_json(&out.join("timings.json"), &json!({"schema": "algiso.timings.v1", "timings": timings}))?;
    Ok(results)
}

pub fn run(args: &DecideArgs) -> Result<bool> {
    let inst = Instance { name: args.name.clone(), g: load_graph(&args.g)?, h: load_graph(&args.h)? };
    let mut cells = Vec::new();
    for &prover in &args.prover {
        for &degree in &args.degree {
            for &domain in &args.domain {
                let c = Cell { prover, degree, domain };
                check_cell(&c)?;
                cells.push(c);
            }
        }
    }
    let opts = RunOptions { prune: !args.no_prune, emit_certificate: args.emit_certificate, budget: args.budget };
    let results = run_grid(&args.out, &[inst], &cells, &opts, args.jobs)?;
    for r in &results {
        println!(
            "{} {} d={} {}: {}",
            r.entry["instance"].as_str().unwrap_or(""),
            r.entry["prover"].as_str().unwrap_or(""),
            r.entry["degree"],
            r.entry["domain"].as_str().unwrap_or(""),
            r.entry["verdict"].as_str().unwrap_or("")
        );
    }
    Ok(results.iter().any(|r| r.refuted))
}
