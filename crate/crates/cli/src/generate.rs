use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::{Args, ValueEnum};
use serde_json::json;

use algiso_core::algebra::CoefficientDomain;
use algiso_core::graph::families::{random_coloured_pair, three_triangles_colourings, three_triangles_pair, two_triangles_vs_hexagon};
use algiso_core::graph::ColouredGraph;
use algiso_core::json::SystemFile;
use algiso_core::tseitin::{build_gadget_graphs, tseitin_csp, tseitin_polynomials, TseitinInstance};

use crate::common::{graph_json, load_graph, write_json, write_text};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Cfi,
    Tseitin,
    #[value(name = "paper-example-7")]
    PaperExample7,
    #[value(name = "paper-theorem-14")]
    PaperTheorem14,
    RandomColoured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    pub kind: Kind,
    /// Base graph for cfi/tseitin: a file or cycle:n, grid:AxB, complete:n,
    /// circulant:n:j1,j2, regular:d:n:seed.
    #[arg(long)]
    pub base: Option<String>,
    /// Charged base vertices by id; a leading `v` is optional.
    #[arg(long, value_delimiter = ',')]
    pub charges: Vec<String>,
    /// Charge the first vertex (odd) or none (even) when no charges are given.
    #[arg(long)]
    pub parity: Option<Parity>,
    /// Reject charge sets of odd size.
    #[arg(long)]
    pub satisfiable: bool,
    #[arg(long, default_value_t = 6)]
    pub n: usize,
    #[arg(long, default_value_t = 3)]
    pub colours: usize,
    #[arg(long, default_value_t = 0.4)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

fn resolve_charges(base: &ColouredGraph, args: &GenerateArgs) -> Result<Vec<usize>> {
    let mut charged = Vec::new();
    for c in &args.charges {
        let v = (0..base.num_vertices()).find(|&v| base.vertex_id(v) == c || Some(base.vertex_id(v)) == c.strip_prefix('v'));
        match v {
            Some(v) => charged.push(v),
            None => bail!("no base vertex {c:?}"),
        }
    }
    match (args.parity, charged.is_empty()) {
        (Some(Parity::Odd), true) => charged.push(0),
        (Some(p), false) if (charged.len() % 2 == 1) != (p == Parity::Odd) => bail!("{} charges contradict --parity {p:?}", charged.len()),
        _ => {}
    }
    if args.satisfiable && charged.len() % 2 == 1 {
        bail!("an odd charge set is never satisfiable");
    }
    Ok(charged)
}

fn write_pair(args: &GenerateArgs, g: &ColouredGraph, h: &ColouredGraph) -> Result<Vec<PathBuf>> {
    let (gp, hp) = (args.out.join("g.json"), args.out.join("h.json"));
    write_text(&gp, &graph_json(g)?)?;
    write_text(&hp, &graph_json(h)?)?;
    Ok(vec![gp, hp])
}

fn tagged(mut g: ColouredGraph, meta: serde_json::Value) -> ColouredGraph {
    g.meta = Some(meta);
    g
}

pub fn run(args: &GenerateArgs) -> Result<Vec<PathBuf>> {
    match args.kind {
        Kind::Cfi | Kind::Tseitin => {
            let Some(spec) = &args.base else { bail!("{:?} needs --base", args.kind) };
            let base = load_graph(spec)?;
            let charged = resolve_charges(&base, args)?;
            let inst = TseitinInstance::new(base, charged)?;
            let pair = build_gadget_graphs(&tseitin_csp(&inst)?)?;
            let mut files = write_pair(args, &pair.g, &pair.g_tilde)?;
            if args.kind == Kind::Tseitin {
                let mut value = inst.to_json_value();
                value["schema"] = json!("algiso.tseitin-instance.v1");
                let ip = args.out.join("instance.json");
                write_json(&ip, &value)?;
                let sys = tseitin_polynomials(&inst, CoefficientDomain::Rationals);
                let sp = args.out.join("system.json");
                write_json(&sp, &SystemFile::new(sys.domain, sys.registry.names().to_vec(), &sys.axioms))?;
                files.extend([ip, sp]);
            }
            Ok(files)
        }
        Kind::PaperExample7 => {
            let (g, h) = two_triangles_vs_hexagon();
            let meta = json!({"generator": "paper-example-7"});
            write_pair(args, &tagged(g, meta.clone()), &tagged(h, meta))
        }
        Kind::PaperTheorem14 => {
            let (g, h) = three_triangles_pair();
            let meta = json!({"generator": "paper-theorem-14"});
            let mut files = write_pair(args, &tagged(g, meta.clone()), &tagged(h, meta))?;
            let (c1, c2) = three_triangles_colourings();
            let cp = args.out.join("colourings.json");
            write_json(&cp, &json!({"schema": "algiso.colourings.v1", "colourings": [c1, c2]}))?;
            files.push(cp);
            Ok(files)
        }
        Kind::RandomColoured => {
            if args.n == 0 || args.colours == 0 || !(0.0..=1.0).contains(&args.p) {
                bail!("random-coloured needs n ≥ 1, colours ≥ 1 and p in [0, 1]");
            }
            let (g, h) = random_coloured_pair(args.n, args.colours, args.p, args.seed);
            let meta = json!({"generator": "random-coloured", "n": args.n, "colours": args.colours, "p": args.p, "seed": args.seed});
            write_pair(args, &tagged(g, meta.clone()), &tagged(h, meta))
        }
    }
}
