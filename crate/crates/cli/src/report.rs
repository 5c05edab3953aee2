use std::path::PathBuf;

use anyhow::Result;
use clap::Args;

use algiso_core::algebra::CoefficientDomain;
use algiso_core::graph::families::{complete, three_triangles_pair, two_triangles_vs_hexagon};
use algiso_core::tseitin::{build_gadget_graphs, tseitin_csp, TseitinInstance};

use crate::decide::{run_grid, Cell, CellResult, Instance, Prover, RunOptions};

#[derive(Args, Debug)]
pub struct ReportArgs {
    #[arg(long, default_value = "report")]
    pub out: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, env = "ALGISO_BUDGET")]
    pub budget: Option<usize>,
}

fn cell(prover: Prover, degree: usize, domain: CoefficientDomain) -> Cell {
    Cell { prover, degree, domain }
}

/// The fixed experiment grid over the three reference pairs.
pub fn run(args: &ReportArgs) -> Result<Vec<CellResult>> {
    let q = CoefficientDomain::Rationals;
    let f = |p| CoefficientDomain::prime_field(p).expect("prime");
    let opts = RunOptions { prune: true, emit_certificate: true, budget: args.budget };

    let (g, h) = two_triangles_vs_hexagon();
    let example = Instance { name: "triangles-vs-hexagon".into(), g, h };
    let mut results = run_grid(
        &args.out.join("triangles-vs-hexagon"),
        &[example],
        &[cell(Prover::WlGame, 2, q), cell(Prover::Mpc, 2, q), cell(Prover::Pc, 2, q), cell(Prover::Nss, 2, q)],
        &opts,
        args.jobs,
    )?;

    let inst = TseitinInstance::new(complete(4)?, [0])?;
    let pair = build_gadget_graphs(&tseitin_csp(&inst)?)?;
    let cfi = Instance { name: "cfi-k4-odd".into(), g: pair.g, h: pair.g_tilde };
    results.extend(run_grid(&args.out.join("cfi-k4-odd"), &[cfi], &[cell(Prover::Nss, 2, f(2)), cell(Prover::Nss, 2, q)], &opts, args.jobs)?);

    let (g, h) = three_triangles_pair();
    let tri = Instance { name: "three-triangles".into(), g, h };
    let mut cells = vec![cell(Prover::Int, 2, CoefficientDomain::Integers), cell(Prover::WlGame, 2, q)];
    cells.extend([2, 3, 5, 7].map(|p| cell(Prover::Nss, 2, f(p))));
    results.extend(run_grid(&args.out.join("three-triangles"), &[tri], &cells, &opts, args.jobs)?);
    Ok(results)
}
