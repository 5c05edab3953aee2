use algiso_core::algebra::{CoefficientDomain, SquareRule};
use algiso_core::graph::families::{circulant, complete, cycle, random_regular};
use algiso_core::graph::{brute_force_isomorphic_capped, ColouredGraph};
use algiso_core::iso::{build_iso_system, IsoOptions};
use algiso_core::provers::{gadget_parity_derivation, pc_decide, pc_decide_with, pc_span, SpanOptions};
use algiso_core::tseitin::{build_gadget_graphs, reduction_polynomials, solve_parity_csp, tseitin_csp, tseitin_polynomials, TseitinInstance};

const Q: CoefficientDomain = CoefficientDomain::Rationals;

fn sign_rule() -> SpanOptions {
    SpanOptions { square_rule: SquareRule::Sign, ..SpanOptions::default() }
}

/// Least PC degree refuting `P_iso` of the gadget pair, searched up to `max`.
fn iso_refutation_degree(inst: &TseitinInstance, max: usize) -> Option<usize> {
    let pair = build_gadget_graphs(&tseitin_csp(inst).unwrap()).unwrap();
    let sys = build_iso_system(&pair.g, &pair.g_tilde, Q, IsoOptions::default()).unwrap();
    let vars = sys.space.live_vars();
    (1..=max).find(|&d| pc_decide(&sys.axioms, &vars, d, Q).unwrap().refuted())
}

#[test]
fn tseitin_refutation_degree_is_bounded_by_the_iso_degree() {
    let k = 2;
    for n in [3, 4, 5, 6] {
        let inst = TseitinInstance::new(cycle(n).unwrap(), [0]).unwrap();
        let d = iso_refutation_degree(&inst, 3).unwrap_or_else(|| panic!("C{n}: P_iso not refuted up to degree 3"));
        let ts = tseitin_polynomials(&inst, Q);
        let bound = (2 * k).max(d * k);
        let v = pc_decide_with(&ts.axioms, &ts.vars(), bound, Q, sign_rule()).unwrap();
        assert!(v.refuted(), "C{n}: P_iso refuted at {d} but P_Ts not at {bound}");
    }
}

#[test]
fn substituted_axioms_lie_in_the_tseitin_span() {
    for (n, charged) in [(4, vec![]), (5, vec![1, 3]), (5, vec![0]), (6, vec![])] {
        let inst = TseitinInstance::new(cycle(n).unwrap(), charged.clone()).unwrap();
        let map = reduction_polynomials(&inst, Q).unwrap();
        let ts = tseitin_polynomials(&inst, Q);
        let opts = SpanOptions { stop_on_refutation: false, ..sign_rule() };
        let span = pc_span(&ts.axioms, &ts.vars(), 2 * map.k, Q, opts, false).unwrap();
        assert_eq!(span.refutes(), inst.odd());
        for (i, p) in map.substituted_axioms().unwrap().iter().enumerate() {
            assert!(span.contains(p).unwrap(), "C{n} {charged:?}: substituted axiom {i} outside the span");
        }
    }
}

fn cubic_bases() -> Vec<(String, ColouredGraph)> {
    let mut out = vec![("K4".to_string(), complete(4).unwrap()), ("K3,3".to_string(), circulant(6, &[1, 3]).unwrap())];
    out.push(("prism".into(), circulant(6, &[2, 3]).unwrap()));
    for seed in 0..3 {
        out.push((format!("cubic-8-{seed}"), random_regular(3, 8, seed).unwrap()));
    }
    out
}

#[test]
fn gadget_derivation_matches_charge_parity() {
    for (name, base) in cubic_bases() {
        for charged in [vec![], vec![0], vec![1, 2], vec![0, 1, 3]] {
            let inst = TseitinInstance::new(base.clone(), charged.clone()).unwrap();
            let pair = build_gadget_graphs(&tseitin_csp(&inst).unwrap()).unwrap();
            let der = gadget_parity_derivation(&pair).unwrap();
            der.verify().unwrap();
            assert_eq!(der.solution.is_solvable(), !inst.odd(), "{name} {charged:?}");
            assert!(der.log.lines.iter().all(|l| l.value.degree() <= 2), "{name} {charged:?}");
            if inst.odd() {
                der.log.replay(&der.iso.axioms).unwrap();
            }
        }
    }
}

#[test]
fn parity_solver_agrees_with_gadget_isomorphism() {
    for (name, base) in cubic_bases().into_iter().take(3) {
        for charged in [vec![], vec![2]] {
            let inst = TseitinInstance::new(base.clone(), charged.clone()).unwrap();
            let csp = tseitin_csp(&inst).unwrap();
            let pair = build_gadget_graphs(&csp).unwrap();
            let iso = brute_force_isomorphic_capped(&pair.g, &pair.g_tilde, 64).unwrap();
            assert_eq!(solve_parity_csp(&csp).unwrap().is_some(), iso.is_iso(), "{name} {charged:?}");
        }
    }
}
