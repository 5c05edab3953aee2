//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use algiso_core::algebra::{CoefficientDomain, Polynomial, VariableId};
use algiso_core::graph::families::{circulant, random_coloured_pair, three_triangles_colourings, three_triangles_pair, two_triangles_vs_hexagon};
use algiso_core::graph::game::DEFAULT_POSITION_BUDGET;
use algiso_core::graph::{brute_force_isomorphic, brute_force_isomorphic_capped, ColouredGraph, GamePosition, GameTable, IsoResult};
use algiso_core::iso::{
    build_axb_system, build_iso_system, lift_within_degree, multilinearise, verify_assignment, AssignmentCheck, IsoOptions, IsoSystem, MlinAssignment,
};
use algiso_core::provers::{
    coprime_colouring_solution, integer_mlin_decide, monomial_pc_decide, nss_decide, pc_decide, pc_span, validate_suitable_colouring, wl_solution, Evidence,
    Outcome, ProverVerdict, SpanOptions, Witness,
};
use algiso_core::tseitin::{
    build_gadget_graphs, csp_solution_to_isomorphism, isomorphism_to_csp_solution, reduction_polynomials, solve_parity_csp, tseitin_csp,
    verify_reduction_identities, TseitinInstance,
};

use common::{cfi_pair, corpus, Pair};

type Check = Result<String, String>;

const Q: CoefficientDomain = CoefficientDomain::Rationals;

fn f(p: u64) -> CoefficientDomain {
    CoefficientDomain::prime_field(p).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// `P_iso` for a degree-`r` run, pruned when `r ≥ 2`.
fn system(g: &ColouredGraph, h: &ColouredGraph, d: CoefficientDomain, r: usize) -> Result<(IsoSystem, Vec<VariableId>), String> {
    let sys = build_iso_system(g, h, d, IsoOptions::default().for_degree(r)).map_err(err)?;
    let vars = sys.space.live_vars();
    Ok((sys, vars))
}

fn duplicator_wins(g: &ColouredGraph, h: &ColouredGraph, k: usize) -> Result<bool, String> {
    let table = GameTable::solve(g, h, k, DEFAULT_POSITION_BUDGET).map_err(err)?;
    Ok(!table.verdict(&GamePosition::empty()).map_err(err)?.spoiler_wins())
}

/// Checks the evidence of a verdict independently of the prover.
fn check_evidence(v: &ProverVerdict, axioms: &[Polynomial], vars: &[VariableId]) -> Result<(), String> {
    match &v.outcome {
        Outcome::Refuted(Evidence::Nss(cert)) => {
            ensure(cert.degree <= v.degree, || format!("certificate degree {} above {}", cert.degree, v.degree))?;
            cert.verify(axioms).map_err(err)
        }
        Outcome::Refuted(Evidence::Derivation(log)) => log.replay(axioms).map_err(err),
        Outcome::Refuted(Evidence::Integer(_)) => Ok(()),
        Outcome::NotRefuted(Witness::Mlin(alpha)) => {
            let lifted = lift_within_degree(axioms, vars, v.degree);
            let linear = multilinearise(&lifted.polys, alpha.domain).map_err(err)?;
            match verify_assignment(alpha, &linear, false).map_err(err)? {
                AssignmentCheck::Ok => Ok(()),
                bad => Err(format!("witness fails: {bad:?}")),
            }
        }
        Outcome::NotRefuted(Witness::Fixpoint { .. }) => Ok(()),
    }
}

fn criterion_1() -> Check {
    let (g, h) = two_triangles_vs_hexagon();
    ensure(duplicator_wins(&g, &h, 2)?, || "Spoiler wins the 2-pebble game".into())?;
    let (sys, vars) = system(&g, &h, Q, 2)?;
    let mpc = monomial_pc_decide(&sys.axioms, &vars, 2, Q).map_err(err)?;
    ensure(!mpc.refuted(), || "monomial PC refutes at degree 2".into())?;
    let pc = pc_decide(&sys.axioms, &vars, 2, Q).map_err(err)?;
    let Outcome::Refuted(Evidence::Derivation(log)) = &pc.outcome else {
        return Err("PC does not refute at degree 2".into());
    };
    log.replay(&sys.axioms).map_err(err)?;
    Ok(format!("game=Duplicator mpc=NotRefuted pc=Refuted ({} log lines replayed)", log.lines.len()))
}

fn criterion_2() -> Check {
    let (g, h) = cfi_pair(algiso_core::graph::families::complete(4).map_err(err)?, &[0]);
    let d = f(2);
    let (sys, vars) = system(&g, &h, d, 2)?;
    let v = nss_decide(&sys.axioms, &vars, 2, d).map_err(err)?;
    let Outcome::Refuted(Evidence::Nss(cert)) = &v.outcome else {
        return Err("NSS over F2 does not refute at degree 2".into());
    };
    cert.verify(&sys.axioms).map_err(err)?;
    let iso = brute_force_isomorphic_capped(&g, &h, 32).map_err(err)?;
    ensure(iso == IsoResult::NonIso, || "brute force finds an isomorphism".into())?;
    Ok(format!("nss F2 d2 refuted, certificate replays to 1 over {} variables; brute force NonIso", vars.len()))
}

fn criterion_3() -> Check {
    let (g, h) = three_triangles_pair();
    let (sys, vars) = system(&g, &h, CoefficientDomain::Integers, 2)?;
    let v = integer_mlin_decide(&sys.axioms, &vars, 2).map_err(err)?;
    let Outcome::NotRefuted(Witness::Mlin(alpha)) = &v.outcome else {
        return Err("integer MLIN at degree 2 has no solution".into());
    };
    check_evidence(&v, &sys.axioms, &vars)?;

    let (c1, c2) = three_triangles_colourings();
    let s1 = validate_suitable_colouring(&g, &h, &c1).map_err(err)?;
    let s2 = validate_suitable_colouring(&g, &h, &c2).map_err(err)?;
    ensure((s1.index, s2.index) == (3, 2), || format!("colouring indices {} and {}", s1.index, s2.index))?;
    let beta = coprime_colouring_solution(&g, &h, &s1, &s2).map_err(err)?;
    let lifted = lift_within_degree(&sys.axioms, &vars, 2);
    let linear = multilinearise(&lifted.polys, CoefficientDomain::Integers).map_err(err)?;
    let beta = complete_assignment(beta, &linear)?;
    ensure(verify_assignment(&beta, &linear, false).map_err(err)?.is_ok(), || "coprime solution fails".into())?;

    for p in [2, 3, 5, 7] {
        let d = f(p);
        let (sys, vars) = system(&g, &h, d, 2)?;
        let v = nss_decide(&sys.axioms, &vars, 2, d).map_err(err)?;
        ensure(!v.refuted(), || format!("NSS refutes over F{p}"))?;
        check_evidence(&v, &sys.axioms, &vars)?;
    }
    Ok(format!(
        "int solvable ({} nonzero values), coprime solution verified, nss d2 not refuted over F2/F3/F5/F7",
        alpha.iter().filter(|(_, s)| !s.is_zero()).count()
    ))
}

/// Fills unlisted columns with zero.
fn complete_assignment(mut a: MlinAssignment, s: &algiso_core::algebra::LinearSystem) -> Result<MlinAssignment, String> {
    for c in s.columns() {
        if a.get(c).is_none() {
            a.set(c.clone(), a.domain.zero()).map_err(err)?;
        }
    }
    Ok(a)
}

/// All graphs without isolated vertices and with at most `max_edges` edges,
/// up to isomorphism, grown one edge at a time.
fn small_graphs(max_edges: usize) -> Result<Vec<ColouredGraph>, String> {
    let from_edges = |n: usize, edges: &[(usize, usize)]| {
        let mut g = ColouredGraph::with_vertices(n);
        for &(u, v) in edges {
            g.add_edge(u, v, None).expect("simple");
        }
        g
    };
    // (vertex count, edge list)
    type Shape = (usize, Vec<(usize, usize)>);
    let mut layers: Vec<Vec<Shape>> = vec![vec![(2, vec![(0, 1)])]];
    for _ in 1..max_edges {
        let mut next: BTreeMap<Vec<usize>, Vec<Shape>> = BTreeMap::new();
        for (n, edges) in layers.last().expect("seeded") {
            let mut options = Vec::new();
            for u in 0..*n + 2 {
                for v in u + 1..*n + 2 {
                    let new = (u >= *n) as usize + (v >= *n) as usize;
                    if (v > *n && u < *n) || edges.contains(&(u, v)) {
                        continue;
                    }
                    options.push((n + new, (u, v)));
                }
            }
            for (m, e) in options {
                let mut es = edges.clone();
                es.push(e);
                let cand = from_edges(m, &es);
                let mut degrees: Vec<usize> = (0..m).map(|v| cand.degree(v)).collect();
                degrees.sort();
                let bucket = next.entry(degrees).or_default();
                let mut fresh = true;
                for (bn, be) in bucket.iter() {
                    if brute_force_isomorphic(&cand, &from_edges(*bn, be)).map_err(err)?.is_iso() {
                        fresh = false;
                        break;
                    }
                }
                if fresh {
                    bucket.push((m, es));
                }
            }
        }
        layers.push(next.into_values().flatten().collect());
    }
    Ok(layers.iter().flatten().map(|(n, es)| from_edges(*n, es)).collect())
}

fn criterion_4() -> Check {
    let bases = small_graphs(6)?;
    let mut checked = 0;
    for base in &bases {
        for charged in [vec![], vec![0]] {
            let inst = TseitinInstance::new(base.clone(), charged.clone()).map_err(err)?;
            let csp = tseitin_csp(&inst).map_err(err)?;
            let solution = solve_parity_csp(&csp).map_err(err)?;
            let brute = csp.solve_brute_force(1 << 20).map_err(err)?;
            ensure(solution.is_some() == brute.is_some(), || "parity solver disagrees with enumeration".into())?;
            let pair = build_gadget_graphs(&csp).map_err(err)?;
            let iso = brute_force_isomorphic_capped(&pair.g, &pair.g_tilde, 64).map_err(err)?;
            let tag = || format!("base with {} edges, charges {charged:?}", base.num_edges());
            match (&solution, &iso) {
                (Some(phi), IsoResult::Iso(f)) => {
                    let image = csp_solution_to_isomorphism(&pair, phi).map_err(err)?;
                    ensure(pair.verify_isomorphism(&image), || format!("{}: solution does not map to an isomorphism", tag()))?;
                    let back = isomorphism_to_csp_solution(&pair, f).map_err(err)?;
                    ensure(csp.is_solution(&back), || format!("{}: isomorphism does not map to a solution", tag()))?;
                }
                (None, IsoResult::NonIso) => {}
                _ => return Err(format!("{}: satisfiable={} isomorphic={}", tag(), solution.is_some(), iso.is_iso())),
            }
            checked += 1;
        }
    }
    Ok(format!("{} base graphs, {checked} instances, both directions verified", bases.len()))
}

fn criterion_5() -> Check {
    let mut spoiler = 0;
    for seed in 0..200u64 {
        let n = 2 + (seed as usize) % 6;
        let k = 2 + (seed as usize / 6) % 2;
        let (g, h) = random_coloured_pair(n, 1 + (seed as usize) % 3, 0.4, seed);
        let game = duplicator_wins(&g, &h, k)?;
        let (sys, vars) = system(&g, &h, Q, k)?;
        let mpc = monomial_pc_decide(&sys.axioms, &vars, k, Q).map_err(err)?;
        ensure(game != mpc.refuted(), || format!("seed {seed} (n={n}, k={k}): Duplicator={game}, mpc refuted={}", mpc.refuted()))?;
        spoiler += !game as usize;
    }
    Ok(format!("200 pairs agree ({spoiler} Spoiler wins)"))
}

fn live_vars(p: &Pair) -> Result<usize, String> {
    Ok(system(&p.g, &p.h, Q, 2)?.1.len())
}

fn degrees_for(vars: usize) -> Vec<usize> {
    if vars <= 30 {
        vec![1, 2, 3]
    } else {
        vec![1, 2]
    }
}

fn criterion_6(pairs: &[Pair]) -> Check {
    let (mut refuted, mut solved) = (0, 0);
    for p in pairs {
        for d in [Q, f(2), f(3)] {
            for r in degrees_for(live_vars(p)?) {
                let (sys, vars) = system(&p.g, &p.h, d, r)?;
                let v = nss_decide(&sys.axioms, &vars, r, d).map_err(err)?;
                let tag = || format!("{} nss d{r} over {d}", p.name);
                match &v.outcome {
                    Outcome::Refuted(Evidence::Nss(cert)) => {
                        ensure(cert.degree <= r, || format!("{}: certificate degree {}", tag(), cert.degree))?;
                        cert.verify(&sys.axioms).map_err(|e| format!("{}: {e}", tag()))?;
                        refuted += 1;
                    }
                    Outcome::NotRefuted(Witness::Mlin(_)) => {
                        check_evidence(&v, &sys.axioms, &vars).map_err(|e| format!("{}: {e}", tag()))?;
                        solved += 1;
                    }
                    _ => return Err(format!("{}: verdict without NSS evidence", tag())),
                }
            }
        }
    }
    Ok(format!("{refuted} certificates expand to 1, {solved} MLIN solutions verified"))
}

fn criterion_7() -> Check {
    let inst = TseitinInstance::new(circulant(8, &[1, 2]).map_err(err)?, [0]).map_err(err)?;
    let map = reduction_polynomials(&inst, Q).map_err(err)?;
    let report = verify_reduction_identities(&map, &inst).map_err(err)?;
    ensure(report.edge_factors == 32, || format!("{} edge factor identities", report.edge_factors))?;
    ensure(report.sign_sums == 12, || format!("{} product-sum cases", report.sign_sums))?;
    ensure(report.sums > 0 && report.conflicts > 0, || format!("{} sums, {} conflicts", report.sums, report.conflicts))?;
    Ok(format!("edge factors {}, product-sum cases {}, sums {}, conflicts {}", report.edge_factors, report.sign_sums, report.sums, report.conflicts))
}

fn criterion_8(pairs: &[Pair]) -> Check {
    let mut count = 0;
    for p in pairs.iter().filter(|p| p.g.num_vertices() <= 9) {
        for k in [2, 3] {
            if !duplicator_wins(&p.g, &p.h, k)? {
                continue;
            }
            let sol = wl_solution(&p.g, &p.h, k, IsoOptions::default(), DEFAULT_POSITION_BUDGET).map_err(|e| format!("{} k={k}: {e}", p.name))?;
            ensure(verify_assignment(&sol.assignment, &sol.system, true).map_err(err)?.is_ok(), || format!("{} k={k}: assignment fails", p.name))?;
            count += 1;
        }
    }
    ensure(count > 0, || "no Duplicator wins in the corpus".into())?;
    Ok(format!("{count} Duplicator-win cases verified with downward closure"))
}

fn criterion_9(pairs: &[Pair]) -> Check {
    let mut cases = 0;
    for p in pairs {
        for d in [Q, f(2), f(3)] {
            let mut rows: Vec<[bool; 3]> = Vec::new();
            for r in degrees_for(live_vars(p)?) {
                let (sys, vars) = system(&p.g, &p.h, d, r)?;
                let nss = nss_decide(&sys.axioms, &vars, r, d).map_err(err)?.refuted();
                let mpc = monomial_pc_decide(&sys.axioms, &vars, r, d).map_err(err)?.refuted();
                let pc = pc_decide(&sys.axioms, &vars, r, d).map_err(err)?.refuted();
                ensure((!nss || mpc) && (!mpc || pc), || format!("{} d{r} over {d}: nss={nss} mpc={mpc} pc={pc}", p.name))?;
                if let Some(prev) = rows.last() {
                    for (i, name) in ["nss", "mpc", "pc"].iter().enumerate() {
                        let now = [nss, mpc, pc][i];
                        ensure(!prev[i] || now, || format!("{} over {d}: {name} refutes at d{} but not d{r}", p.name, r - 1))?;
                    }
                }
                rows.push([nss, mpc, pc]);
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (pair, domain, degree) cases ordered"))
}

fn criterion_10() -> Check {
    let mut polys = 0;
    for seed in 0..50u64 {
        let n = 2 + (seed as usize) % 5;
        let (g, h) = random_coloured_pair(n, 1 + (seed as usize) % 3, 0.5, 500 + seed);
        let (sys, vars) = system(&g, &h, Q, 2)?;
        let opts = SpanOptions { stop_on_refutation: false, ..SpanOptions::default() };
        let span = pc_span(&sys.axioms, &vars, 2, Q, opts, false).map_err(err)?;
        for p in build_axb_system(&g, &h, &sys.space, Q) {
            ensure(span.contains(&p).map_err(err)?, || format!("seed {seed}: AX=XB entry outside the degree-2 span"))?;
            polys += 1;
        }
    }
    Ok(format!("{polys} AX=XB polynomials in the degree-2 span over 50 pairs"))
}

fn main() {
    let pairs = corpus();
    type Criterion<'a> = (u32, Option<u64>, Box<dyn Fn() -> Check + 'a>);
    let criteria: Vec<Criterion> = vec![
        (1, Some(5), Box::new(criterion_1)),
        (2, Some(60), Box::new(criterion_2)),
        (3, Some(30), Box::new(criterion_3)),
        (4, None, Box::new(criterion_4)),
        (5, None, Box::new(criterion_5)),
        (6, None, Box::new(|| criterion_6(&pairs))),
        (7, None, Box::new(criterion_7)),
        (8, None, Box::new(|| criterion_8(&pairs))),
        (9, None, Box::new(|| criterion_9(&pairs))),
        (10, None, Box::new(criterion_10)),
    ];
    // ACCEPTANCE_ONLY=4,7 runs a subset
    let only: Option<Vec<u32>> = std::env::var("ACCEPTANCE_ONLY").ok().map(|s| s.split(',').filter_map(|x| x.trim().parse().ok()).collect());
    let mut failed = 0;
    for (id, limit, run) in criteria {
        if only.as_ref().is_some_and(|o| !o.contains(&id)) {
            continue;
        }
        let start = Instant::now();
        let mut result = run();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(secs)) = (&result, limit) {
            if elapsed > Duration::from_secs(secs) {
                result = Err(format!("took {:.1}s, limit {secs}s", elapsed.as_secs_f64()));
            }
        }
        match result {
            Ok(msg) => println!("PASS criterion {id}: {msg} [{:.2}s]", elapsed.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {id}: {msg} [{:.2}s]", elapsed.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
