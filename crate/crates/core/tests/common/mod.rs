#![allow(dead_code)]

use algiso_core::graph::families::{complete, cycle, random_coloured_pair, three_triangles_pair, two_triangles_vs_hexagon};
use algiso_core::graph::ColouredGraph;
use algiso_core::tseitin::{build_gadget_graphs, tseitin_csp, TseitinInstance};

pub struct Pair {
    pub name: String,
    pub g: ColouredGraph,
    pub h: ColouredGraph,
}

impl Pair {
    pub fn new(name: impl Into<String>, g: ColouredGraph, h: ColouredGraph) -> Self {
        Pair { name: name.into(), g, h }
    }
}

pub fn cfi_pair(base: ColouredGraph, charged: &[usize]) -> (ColouredGraph, ColouredGraph) {
    let inst = TseitinInstance::new(base, charged.iter().copied()).unwrap();
    let pair = build_gadget_graphs(&tseitin_csp(&inst).unwrap()).unwrap();
    (pair.g, pair.g_tilde)
}

pub fn disjoint(parts: &[ColouredGraph]) -> ColouredGraph {
    let mut out = ColouredGraph::new();
    for (i, p) in parts.iter().enumerate() {
        out = out.disjoint_union(p, &format!("p{i}_")).unwrap();
    }
    out
}

/// Named instances plus seeded random coloured pairs.
pub fn corpus() -> Vec<Pair> {
    let (g, h) = two_triangles_vs_hexagon();
    let mut out = vec![Pair::new("triangles-vs-hexagon", g, h)];
    let (g, h) = three_triangles_pair();
    out.push(Pair::new("three-triangles", g, h));
    let (g, h) = cfi_pair(complete(4).unwrap(), &[0]);
    out.push(Pair::new("cfi-k4-odd", g, h));
    let (g, h) = cfi_pair(complete(4).unwrap(), &[]);
    out.push(Pair::new("cfi-k4-even", g, h));
    let c3 = cycle(3).unwrap();
    out.push(Pair::new("c6-vs-2c3", cycle(6).unwrap(), disjoint(&[c3.clone(), c3])));
    out.push(Pair::new("c5-vs-c5", cycle(5).unwrap(), cycle(5).unwrap()));
    for seed in 0..14 {
        let n = 3 + (seed as usize) % 4;
        let (g, h) = random_coloured_pair(n, 2 + (seed as usize) % 2, 0.45, 7000 + seed);
        out.push(Pair::new(format!("random-{seed}"), g, h));
    }
    out
}
